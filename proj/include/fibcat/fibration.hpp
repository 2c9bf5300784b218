#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibcat/fincat.hpp"

namespace fibcat {

// Number of worker threads used by the exhaustive checks (default 1).
void set_jobs(int n);
int jobs();
// Runs fn(i) for i in [0, n) on jobs() threads. fn must only write to
// disjoint, preallocated slots.
void parallel_for(int n, const std::function<void(int)>& fn);

// A configuration showing that f is not cartesian: over object H, the pair
// (h: H → cod f, g: pH → p(dom f)) with p(h) = p(f)∘g has `count`
// factorizations (0 or >= 2).
struct CartesianCounterexample {
  ObjId H;
  MorId h, g;
  int count;
};
std::optional<CartesianCounterexample> cartesian_counterexample(const FinFunctor& p, MorId f);
bool is_cartesian(const FinFunctor& p, MorId f);

// A functor with every morphism's cartesian flag precomputed. Lifts may be
// missing; see is_fibration.
class CartesianFunctor {
 public:
  explicit CartesianFunctor(FinFunctor p);

  const FinFunctor& functor() const { return p_; }
  const FinCat& total() const { return *p_.dom; }
  const FinCat& base() const { return *p_.cod; }
  const CatPtr& total_ptr() const { return p_.dom; }
  const CatPtr& base_ptr() const { return p_.cod; }
  ObjId over(ObjId E) const { return p_.objMap[E]; }
  MorId over_mor(MorId f) const { return p_.morMap[f]; }
  bool cartesian(MorId f) const { return cart_[f]; }
  bool vertical(MorId f) const { return base().is_identity(p_.morMap[f]); }

  // Cartesian morphisms into E, ascending.
  const std::vector<MorId>& cartesian_into(ObjId E) const { return cartInto_[E]; }
  // Cartesian morphisms into E over u, ascending.
  std::vector<MorId> lifts(MorId u, ObjId E) const;
  const std::vector<ObjId>& objects_over(ObjId I) const { return over_[I]; }

 private:
  FinFunctor p_;
  std::vector<char> cart_;
  std::vector<std::vector<MorId>> cartInto_;
  std::vector<std::vector<ObjId>> over_;
};
using CartPtr = std::shared_ptr<const CartesianFunctor>;
CartPtr analyze(FinFunctor p);

struct LiftFailure {
  MorId u;
  ObjId E;
};
// First (E, u) in index order without a cartesian lift, or nullopt when p is a
// fibration.
std::optional<LiftFailure> find_missing_lift(const CartesianFunctor& p);
bool is_fibration(const CartesianFunctor& p);
// Throws Error("NotAFibration", {u, E}).
void require_fibration(const CartesianFunctor& p);

class Cleavage {
 public:
  // Least-index cartesian lift for every (u, E).
  static Cleavage least_index(CartPtr p);
  // choice(u, E) for every (u, E); throws InvalidChoice(u, E) when the
  // returned morphism is not a cartesian lift of u into E.
  static Cleavage from_function(CartPtr p, const std::function<MorId(MorId u, ObjId E)>& choice);
  // Explicit entries; missing entries fall back to least index.
  static Cleavage from_table(CartPtr p, const std::map<std::pair<MorId, ObjId>, MorId>& table);

  const CartesianFunctor& fibration() const { return *p_; }
  const CartPtr& fibration_ptr() const { return p_; }
  MorId lift(MorId u, ObjId E) const;
  ObjId reindex(MorId u, ObjId E) const { return p_->total().src(lift(u, E)); }
  // Reindexing of a vertical h: E → E' over tgt u: the unique vertical k
  // with lift(u, E')∘k = h∘lift(u, E).
  MorId reindex_vertical(MorId u, MorId h) const;

 private:
  CartPtr p_;
  std::vector<int> posIn_;                 // base: position of u in in(tgt u)
  std::vector<std::vector<MorId>> choice_; // [E][posIn_[u]]
};

struct SplitCheck {
  bool split = true;
  std::string failure;      // "identity", "composite", "functor"
  std::vector<int> indices; // (E) or (u, v, E) or (u, v, h)
};
SplitCheck is_split(const Cleavage& cl);

// Vertical subcategory over I, with the inclusion into the total category.
Subcategory fiber(const CartesianFunctor& p, ObjId I);

struct MorphismFlags {
  bool mono = false, epi = false, splitEpi = false, regularEpi = false, iso = false;
};
std::vector<MorphismFlags> mono_epi_analysis(const FinCat& B);

struct PullbackCone {
  ObjId apex;
  MorId p1, p2;  // apex → dom f, apex → dom g
};
// Least apex (then least projections) with the universal property, or nullopt.
std::optional<PullbackCone> pullback(const FinCat& B, MorId f, MorId g);
bool is_pullback_square(const FinCat& B, MorId f, MorId g, MorId p1, MorId p2);
bool is_coequalizer(const FinCat& B, MorId e, MorId a, MorId b);

// A class of base morphisms (monos for realignment, covers for stacks).
struct MorphismClass {
  std::string name;
  std::vector<char> member;
  bool contains(MorId m) const { return member[m] != 0; }
};
MorphismClass all_monos(const FinCat& B);
MorphismClass regular_epis(const FinCat& B);
MorphismClass all_epis(const FinCat& B);
MorphismClass isomorphisms(const FinCat& B);

bool is_cover_cartesian(const CartesianFunctor& p, MorId f, const MorphismClass& covers);

}  // namespace fibcat
