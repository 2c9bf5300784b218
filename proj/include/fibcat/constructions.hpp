#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibcat/bases.hpp"
#include "fibcat/catalogue.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/fincat.hpp"

namespace fibcat {

// ---------------------------------------------------------------- families

// Families of C-objects indexed by the finite sets 0..N. Objects are
// (k, tuple) ordered by k then tuple; a morphism X → Y is (u, (ū_j)) with
// ū_j: X_j → Y_{u(j)}.
struct Fam {
  CatPtr C;
  int N = 0;
  CatPtr base;
  CartPtr fib;
  std::shared_ptr<const Cleavage> cleavage;  // reindexing by precomposition
  std::vector<std::vector<ObjId>> families;  // per total object: the tuple
  ObjId find(const std::vector<ObjId>& family) const;
};
Fam fam(const CatPtr& C, int N);

// T′ = (classes of C, class ↦ least representative) in fam(C, N).
// Throws Error("BoundTooSmall").
ObjId skeletal_generic_candidate(const Fam& F);

// ------------------------------------------------------- internal categories

// Internal category in a finite base, held through its generalized elements:
// for every base object J the set of "points" J → C1 with source and target
// J → C0, identities, composition, and restriction along base morphisms.
// When C1 is a base object the points at J are exactly hom(J, C1); set-encoded
// categories and componentwise group objects use the same form without
// requiring C1 (or C1 ×_{C0} C1) to exist as a base object.
struct InternalCat {
  CatPtr base;
  ObjId C0 = 0;
  std::vector<int> points;                      // per J
  std::vector<std::vector<MorId>> src, tgt;     // [J][p] ∈ hom(J, C0)
  std::vector<std::vector<int>> identity;       // [J][position of α in hom(J,C0)]
  std::vector<std::vector<int>> comp;           // [J][p*points+q]: p then q, or -1
  std::vector<std::vector<int>> restrict;       // [u][p at tgt u] = point at src u
  std::vector<std::vector<std::string>> pointNames;  // optional

  int compose(ObjId J, int p, int q) const { return comp[J][static_cast<size_t>(p) * points[J] + q]; }
};

// Returns the name of the first failing equation, or nullopt.
std::optional<std::string> check_internal_equations(const InternalCat& ic);
// Throws Error("EquationFailed") naming the equation.
void require_internal_equations(const InternalCat& ic);

// Raw (C0, C1, s, t, i, c) data in B; pullback P = C1 ×_{C0} C1 of (t, s) is
// computed when not supplied. Checks the base-morphism equations, then every
// equation on generalized elements. Throws Error("EquationFailed"), or
// Error("MissingPullback").
struct InternalCatData {
  ObjId C0, C1;
  MorId s, t, i, c;
  std::optional<PullbackCone> P;
};
InternalCat validate_internal_cat(const CatPtr& B, const InternalCatData& data);

// C as an internal category of finite sets: C0 = |C0|, points at J are
// J-tuples of morphisms. Needs N >= |C0| (Error("BoundTooSmall")).
InternalCat encode_small_category(const FinCat& C, int N);

// Group object in a finite base, through generalized elements.
struct GroupObject {
  CatPtr base;
  std::string name;
  ObjId carrier = 0, terminal = 0;
  std::vector<std::vector<int>> mul;   // [J][a*n+b] positions in hom(J, carrier)
  std::vector<int> unit;               // [J] position
  std::vector<std::vector<int>> inv;   // [J][a]
  int elements(ObjId J) const { return static_cast<int>(base->hom(J, carrier).size()); }
};
ObjId terminal_object(const FinCat& B);  // least index; Error("NoTerminalObject")
// Carrier object of a concrete base; component c carries group groups[c]
// acting on its own elements (component size = group order). Products are
// computed pointwise. Error("NotAGroupObject") when a pointwise product is not
// a base morphism.
GroupObject componentwise_group(const CatPtr& B, ObjId carrier, const std::vector<Group>& groups,
                                const std::string& name);
GroupObject trivial_group_object(const CatPtr& B);
std::optional<std::string> check_group_object(const GroupObject& G);
InternalCat internal_deloop(const GroupObject& G);

// --------------------------------------------------- presheaves of categories

struct PshCat {
  CatPtr base;
  std::vector<CatPtr> fibers;       // per base object
  std::vector<FinFunctor> reindex;  // per base morphism u: J → I, fiber(I) → fiber(J)
};
// "identity" / "composite" / functor error text, or nullopt.
std::optional<std::string> check_psh(const PshCat& P);
PshCat psh_of_cats(const InternalCat& ic);

struct Grothendieck {
  std::shared_ptr<const PshCat> psh;
  CartPtr fib;
  std::shared_ptr<const Cleavage> cleavage;   // (u, id) lifts
  std::vector<std::pair<ObjId, ObjId>> objects;  // total object ↦ (I, c)
  std::vector<int> objStart;                     // first total object over I
  std::vector<std::pair<MorId, MorId>> morphisms;  // total morphism ↦ (u, h)
  ObjId object(ObjId I, ObjId c) const { return objStart[I] + c; }
};
Grothendieck grothendieck(const PshCat& P);

struct Externalization {
  Grothendieck g;
  ObjId T;  // (C0, id_{C0})
};
Externalization externalize(const InternalCat& ic);

// ------------------------------------------------------------ split from weak

// The presheaf E• of a generic object T: E•(I) has objects the base maps
// α: I → pT and morphisms α → β the vertical maps between the least-index
// cartesian lifts of α and β into T. Its Grothendieck construction comes with
// the comparison functor back to E.
struct SplitFromWeak {
  Grothendieck g;
  ObjId Tprime;                    // (pT, id)
  FinFunctor comparison;           // ∫E• → E
  bool functorOk = false, overBase = false, essentiallySurjective = false, fullyFaithful = false,
       preservesCartesian = false;
  bool equivalence() const {
    return functorOk && overBase && essentiallySurjective && fullyFaithful && preservesCartesian;
  }
  std::string failure;  // first failed part, empty when an equivalence
};
// Throws Error("NotGeneric", {X}) or Error("NotAFibration", {α, T}).
SplitFromWeak split_from_weak(const CartPtr& p, ObjId T);

// ------------------------------------------------- subfibrations of a map

// Full subfibrations of the arrow fibration over a G-set base B (finite sets
// are G-sets for the trivial group). Domains of arrows range over all G-sets
// of size <= N·|E| so that every pullback of π: E → U along a base map fits.
struct MapFibration {
  GSetBase base;
  MorId pi = kNone;
  std::shared_ptr<const GSetCatalogue> ambient;
  struct Arrow {
    int X;               // ambient index
    ObjId I;             // base object
    std::vector<int> x;  // equivariant X → I
  };
  std::vector<Arrow> arrows;  // ordered by (I, X, x)
  std::vector<char> pulledBack;  // arrow is a pullback of π (in [π])
  ObjId piObject = kNone;
  CartPtr fib;  // null unless materialized
  ObjId find(const Arrow& a) const;
};
// [π]: arrows isomorphic over their codomain to a pullback of π.
MapFibration subfibration_from_map(const GSetBase& B, MorId pi, bool materialize = true);
// {π}: arrows whose pullback along some cover lands in [π].
MapFibration stack_completion(const GSetBase& B, MorId pi, const MorphismClass& covers,
                              bool materialize = true);
// Builds the total category of the arrows and the projection. Throws
// Error("BoundsTooLarge") past kMaxSquares commuting squares.
inline constexpr long kMaxSquares = 200000;
void materialize(MapFibration& M);

}  // namespace fibcat
