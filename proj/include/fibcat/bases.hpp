#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fibcat/catalogue.hpp"
#include "fibcat/fincat.hpp"

namespace fibcat {

// Skeleton of finite sets of size <= N: object k is {0..k-1}, morphisms are
// all functions, ordered by (source, target, lexicographic value tuple).
CatPtr finset_skel(int N);

// A finite G-set: act[g][x] = g·x.
struct GSet {
  int size = 0;
  std::vector<std::vector<int>> act;
};

bool is_action(const Group& G, const GSet& X);
// Orbit representatives, least point of each orbit, ascending.
std::vector<int> orbit_representatives(const GSet& X);
// Disjoint-union name for Z/2-like labeling: "0", "1", "2triv", "rho",
// "1+rho", "2rho"; for other groups orbit sizes "orb[1,2]".
std::string gset_name(const Group& G, const GSet& X);

// Calls visit(f) for every equivariant f: X → Y whose value on each orbit
// representative r satisfies allowed(r, f(r)); stops when visit returns false.
void for_each_equivariant(const Group& G, const GSet& X, const GSet& Y,
                          const std::function<bool(int r, int y)>& allowed,
                          const std::function<bool(const std::vector<int>&)>& visit);
std::vector<std::vector<int>> equivariant_maps(const Group& G, const GSet& X, const GSet& Y);

// All G-sets of size <= N up to isomorphism, each in its canonical labeling
// (the lexicographically least action table over relabelings), ordered by
// size then table.
class GSetCatalogue {
 public:
  GSetCatalogue(Group G, int N);
  const Group& group() const { return G_; }
  int bound() const { return N_; }
  const std::vector<GSet>& objects() const { return objects_; }
  // Index of X's canonical form and an isomorphism X → canonical (as a point map).
  std::pair<int, std::vector<int>> canonicalize(const GSet& X) const;
  int find_by_name(const std::string& name) const;  // -1 if absent

 private:
  Group G_;
  int N_;
  std::vector<GSet> objects_;
  std::map<std::vector<int>, int> byTable_;
};

struct GSetBase {
  std::shared_ptr<const GSetCatalogue> catalogue;
  CatPtr cat;  // concrete, one component per object
  const Group& group() const { return catalogue->group(); }
  const GSet& object(ObjId o) const { return catalogue->objects()[o]; }
};
GSetBase gset_category(const Group& G, int N);

struct ArrowCategory {
  CatPtr cat;
  FinFunctor cod;  // (x: X→I) ↦ I
  CatPtr base;
};
// Objects = morphisms of B (same indices); morphisms = commuting squares
// (a, b) from x to y with y∘a = b∘x, ordered by (x, y, a, b). When B is
// concrete so is the result, components = dom components ++ cod components.
ArrowCategory arrow_category(const CatPtr& B);

// Looks a base object up by name: object_name match, or a number for
// finset-like bases.
ObjId object_by_name(const FinCat& B, const std::string& name);

}  // namespace fibcat
