#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibcat/constructions.hpp"
#include "fibcat/fibration.hpp"

namespace fibcat {

// A replayable configuration: named indices into the total or base category.
struct Witness {
  std::string text;
  std::vector<std::pair<std::string, int>> path;
};

struct Verdict {
  bool holds = false;
  Witness witness;  // violating configuration, or the checked range
};

Verdict is_generic(const CartesianFunctor& p, ObjId T);
Verdict is_skeletal_generic(const CartesianFunctor& p, ObjId T);
Verdict is_gaunt_generic(const CartesianFunctor& p, ObjId T);
// Throws Error("NotSplitCleavage") unless cl passes is_split.
Verdict is_split_generic(const Cleavage& cl, ObjId T);
Verdict is_acyclic_generic(const CartesianFunctor& p, ObjId T, const MorphismClass& monos);
Verdict is_weak_generic_stack(const CartesianFunctor& p, ObjId T, const MorphismClass& covers);

struct Smallness {
  bool globallySmall = false, locallySmall = false;
  Witness globalWitness, localWitness;
};
Smallness smallness(const CartesianFunctor& p);

// Every generalized element J → G extends along m: J → I.
bool has_rlp(const GroupObject& G, MorId m);
struct RlpCheck {
  bool acyclic = false, rlp = false;
  bool agree() const { return acyclic == rlp; }
  Witness witness;  // failing mono and element when rlp is false
};
RlpCheck acyclic_iff_rlp_check(const GroupObject& G, const MorphismClass& monos);

struct ClassifyOptions {
  std::shared_ptr<const Cleavage> cleavage;  // splitGeneric when set and split
  std::optional<MorphismClass> monos;        // default: all monos
  std::optional<MorphismClass> covers;       // default: regular epis
  bool acyclic = true, weakStack = true;
  std::optional<bool> cleavageSplit;  // skips the split check when known
};

struct GenericReport {
  ObjId candidate = kNone;
  bool generic = false, skeletal = false, gaunt = false;
  std::optional<bool> split, acyclic, weakStack;
  std::string splitSkipped;  // why split was not decided
  std::vector<std::pair<std::string, Witness>> witnesses;
  double timingMs = 0;
};

// Runs the predicates and the implication audit (Error ImplicationViolated,
// an AuditError). Cover and mono classes are computed once per call; use the
// overload with prepared options in loops.
GenericReport classify_object(const CartesianFunctor& p, ObjId T, const ClassifyOptions& opts = {});
// Throws AuditError("ImplicationViolated", {}) naming the two flags.
void audit(const GenericReport& r, bool coversContainIdentities);

inline const std::vector<std::string> kKinds = {"generic", "skeletal", "gaunt", "split", "acyclic", "weakStack"};
std::vector<ObjId> find_generic_objects(const CartesianFunctor& p, const std::string& kind,
                                        const ClassifyOptions& opts = {});

// One row of the terminology table for a notion.
struct Terminology {
  std::string ours, jacobs, phoa, hermida, streicher;
};
const std::vector<Terminology>& terminology();
// "skeletal generic (= Jacobs: generic)" for the strongest notion that holds.
std::string rosetta_row(const GenericReport& r);

// Test hook: "invert-gaunt" flips the gaunt verdict. Empty disables.
void set_mutation(const std::string& name);
const std::string& mutation();

// --------------------------------------------------------------- registry

struct NamedFibration {
  std::string name;
  CartPtr fib;
  std::shared_ptr<const Cleavage> cleavage;  // canonical, when any
  ObjId distinguished = kNone;               // T, π, or the skeletal candidate
  std::shared_ptr<const GroupObject> group;  // deloopings
};
// Builder expressions; see README for the grammar. Throws InputError
// (UnknownBuilder, BadArgument) and the builders' own errors.
CatPtr build_category(const std::string& expr);
NamedFibration build_fibration(const std::string& expr);
std::vector<std::string> builtin_fibration_names();
std::vector<NamedFibration> builtin_fibrations();

// ----------------------------------------------------------------- search

struct SearchBounds {
  int maxCatMorphisms = 6;
  int maxIndex = 2;
};
struct Separation {
  std::string holds, fails;  // A ∧ ¬B
  bool found = false;
  std::string fibration;  // first example
  ObjId object = kNone;
  std::string objectName;
  std::vector<std::pair<std::string, ObjId>> examples;  // all, in grid order
};
struct SearchResult {
  std::vector<Separation> rows;  // every ordered pair of distinct kinds
  int fibrations = 0, objects = 0;
};
// Throws InputError("BoundsTooLarge") beyond maxCatMorphisms 8 or maxIndex 3.
SearchResult counterexample_search(const SearchBounds& b);
std::vector<std::string> search_fibration_names(const SearchBounds& b);

// ------------------------------------------------------- example suite

struct SuiteCheck {
  std::string key;
  bool pass = false;
  std::string detail;
  double ms = 0;
  double limitMs = 0;
};
// Criteria 1..9 of the reproduction suite; each runs in isolation.
SuiteCheck run_suite_check(int n);
std::vector<SuiteCheck> run_suite();

}  // namespace fibcat
