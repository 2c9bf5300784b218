#pragma once

#include <string>
#include <vector>

#include "fibcat/fincat.hpp"

namespace fibcat {

// Finite group (or monoid) as a multiplication table; unit is element 0.
struct Group {
  std::string name;
  std::vector<std::vector<int>> mul;  // mul[a][b] = a·b
  int order() const { return static_cast<int>(mul.size()); }
  int inverse(int a) const;
};

// Throws InputError unless mul is a group table with unit 0.
void validate_group(const Group& g);
bool is_monoid_table(const std::vector<std::vector<int>>& mul);
Group cyclic_group(int n);
Group trivial_group();
// "Z2", "Z3", ..., "trivial"/"1".
Group group_by_name(const std::string& name);

// One object, morphisms = elements, g∘f = g·f. Works for any monoid table
// with unit 0.
CatPtr deloop(const Group& g);
CatPtr deloop_monoid(const std::vector<std::vector<int>>& mul, const std::string& name);

CatPtr terminal_category();
CatPtr discrete_category(int n);
CatPtr indiscrete_category(int n);
CatPtr walking_arrow();
CatPtr walking_iso();
// Preorder on n objects from a reflexive transitive relation rel[a][b].
CatPtr preorder_category(int n, const std::vector<std::vector<bool>>& rel, const std::string& name);
CatPtr cospan_poset();   // a → c ← b
CatPtr chain(int n);     // 0 → 1 → ... → n-1
CatPtr product_category(const CatPtr& a, const CatPtr& b);
CatPtr coproduct_category(const CatPtr& a, const CatPtr& b);
// {A ≅ B} ⊔ ({C ≅ D} × BZ/2): two iso classes, one with nontrivial
// automorphisms.
CatPtr two_class_groupoid();

// Names accepted: terminal, walkingArrow, walkingIso, discreteN, indiscreteN,
// deloopZn, deloopTrivial, cospan, chainN, twoClassGroupoid.
CatPtr category_by_name(const std::string& name);

struct NamedCategory {
  std::string name;
  CatPtr cat;
};
// Small categories for bounded search: monoids of order <= 3 up to iso,
// preorders on <= 3 objects up to iso, cyclic groups, the named catalogue;
// only those with at most maxMorphisms morphisms. Deterministic order.
std::vector<NamedCategory> small_categories(int maxMorphisms);

}  // namespace fibcat
