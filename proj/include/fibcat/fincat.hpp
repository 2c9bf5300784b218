#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fibcat/error.hpp"

namespace fibcat {

using ObjId = int;
using MorId = int;
inline constexpr int kNone = -1;

// Dense presentation, as read from / written to the category file format.
// comp[g][f] = g∘f, or -1 when undefined.
struct CategoryPresentation {
  int objects = 0;
  std::vector<ObjId> src, tgt;
  std::vector<MorId> identities;
  std::vector<std::vector<MorId>> comp;
  std::vector<std::string> objectNames, morphismNames;
};

// Optional set-level description of a category whose objects are tuples of
// finite sets and whose morphisms are tuples of functions (FinSet, G-sets,
// arrow categories of those). Used to look morphisms up by their functions.
struct Concrete {
  using Fn = std::vector<int>;
  std::vector<std::vector<int>> sizes;            // per object: component sizes
  std::vector<std::vector<Fn>> functions;         // per morphism: component maps
  std::map<std::vector<int>, MorId> index;        // key(src, tgt, functions)

  static std::vector<int> key(ObjId a, ObjId b, const std::vector<Fn>& fns);
  MorId find(ObjId a, ObjId b, const std::vector<Fn>& fns) const;
};

class FinCat {
 public:
  // g∘f for composable (g, f); only called on composable pairs.
  using ComposeFn = std::function<MorId(MorId g, MorId f)>;

  struct Shape {
    int objects = 0;
    std::vector<ObjId> src, tgt;
    std::vector<MorId> identities;
    std::vector<std::string> objectNames, morphismNames;
    std::shared_ptr<const Concrete> concrete;
  };

  FinCat() = default;

  // Builds the composition table from a callback. Checks shape only
  // (composites land in the right hom-set); the axioms are the caller's
  // responsibility, see check_axioms.
  static FinCat build(Shape shape, const ComposeFn& compose);

  int num_objects() const { return nObj_; }
  int num_morphisms() const { return static_cast<int>(src_.size()); }
  ObjId src(MorId m) const { return src_[m]; }
  ObjId tgt(MorId m) const { return tgt_[m]; }
  MorId id(ObjId o) const { return id_[o]; }
  bool is_identity(MorId m) const { return id_[src_[m]] == m; }

  // g∘f, or kNone when tgt f != src g.
  MorId compose(MorId g, MorId f) const {
    if (tgt_[f] != src_[g]) return kNone;
    return table_[rowStart_[f] + posOut_[g]];
  }

  std::span<const MorId> hom(ObjId a, ObjId b) const {
    size_t k = static_cast<size_t>(a) * nObj_ + b;
    return {homList_.data() + homStart_[k], homList_.data() + homStart_[k + 1]};
  }
  std::span<const MorId> out(ObjId a) const {
    return {outList_.data() + outStart_[a], outList_.data() + outStart_[a + 1]};
  }
  std::span<const MorId> in(ObjId b) const {
    return {inList_.data() + inStart_[b], inList_.data() + inStart_[b + 1]};
  }

  std::string object_name(ObjId o) const;
  std::string morphism_name(MorId m) const;
  const Concrete* concrete() const { return concrete_.get(); }
  std::shared_ptr<const Concrete> concrete_ptr() const { return concrete_; }

  CategoryPresentation presentation() const;
  const std::vector<ObjId>& src_array() const { return src_; }
  const std::vector<ObjId>& tgt_array() const { return tgt_; }

 private:
  int nObj_ = 0;
  std::vector<ObjId> src_, tgt_;
  std::vector<MorId> id_;
  std::vector<int> outStart_, inStart_, homStart_;
  std::vector<MorId> outList_, inList_, homList_;
  std::vector<int> posOut_;    // position of g in out(src g)
  std::vector<int> rowStart_;  // start of f's row; row indexed by posOut_[g]
  std::vector<MorId> table_;
  std::vector<std::string> objNames_, morNames_;
  std::shared_ptr<const Concrete> concrete_;
};

using CatPtr = std::shared_ptr<const FinCat>;

// Shape checks, then the first failing axiom: BadCompositionDomain,
// MissingIdentity, NonAssociative. Throws CategoryError.
FinCat validate_category(const CategoryPresentation& raw);
// Axiom check on an already built category; nullopt when all hold.
std::optional<CategoryError> check_axioms(const FinCat& c);

struct FinFunctor {
  CatPtr dom, cod;
  std::vector<ObjId> objMap;
  std::vector<MorId> morMap;

  ObjId operator()(ObjId o) const { return objMap[o]; }
  MorId on(MorId m) const { return morMap[m]; }
};

// Throws FunctorError: BadIndex, NotPreservingSource, NotPreservingTarget,
// NotPreservingIdentity(o), NotPreservingComposite(g,f).
FinFunctor validate_functor(CatPtr dom, CatPtr cod, std::vector<ObjId> objMap,
                            std::vector<MorId> morMap);
std::optional<FunctorError> check_functor(const FinFunctor& f);
FinFunctor identity_functor(CatPtr c);
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);  // g∘f

// Inverse of m, or kNone.
MorId inverse_of(const FinCat& c, MorId m);
bool is_iso(const FinCat& c, MorId m);

struct IsoClasses {
  std::vector<int> classOf;                 // per object
  std::vector<std::vector<ObjId>> classes;  // ordered by least member
  std::vector<MorId> witness;               // [a*n+b]: least-index iso a→b or kNone
  int n = 0;
  MorId iso(ObjId a, ObjId b) const { return witness[static_cast<size_t>(a) * n + b]; }
};
IsoClasses iso_classes(const FinCat& c);

struct CategoryFlags {
  bool skeletal = false, gaunt = false, groupoid = false, preorder = false;
};
CategoryFlags category_predicates(const FinCat& c);

struct SkeletonData {
  std::vector<int> classOf;
  std::vector<ObjId> section;     // per class: least-index member
  std::vector<MorId> chosenIso;   // per object: iso o → section(classOf o)
};
SkeletonData skeleton_data(const FinCat& c);

// Full subcategory on the given objects (in the given order), with the
// inclusion functor.
struct Subcategory {
  CatPtr cat;
  FinFunctor inclusion;
};
Subcategory full_subcategory(CatPtr c, const std::vector<ObjId>& objects);

}  // namespace fibcat
