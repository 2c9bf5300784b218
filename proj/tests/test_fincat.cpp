#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibcat/catalogue.hpp"
#include "fibcat/fincat.hpp"

using namespace fibcat;

namespace {

// Independent oracle over the dense table: every unit and associativity
// instance, no shortcuts.
bool oracle_is_category(const CategoryPresentation& p) {
  const int m = static_cast<int>(p.src.size());
  for (int o = 0; o < p.objects; ++o) {
    int i = p.identities[o];
    if (p.src[i] != o || p.tgt[i] != o) return false;
  }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      bool composable = p.tgt[f] == p.src[g];
      int r = p.comp[g][f];
      if (composable != (r >= 0)) return false;
      if (r >= 0 && (p.src[r] != p.src[f] || p.tgt[r] != p.tgt[g])) return false;
    }
  for (int f = 0; f < m; ++f)
    if (p.comp[f][p.identities[p.src[f]]] != f || p.comp[p.identities[p.tgt[f]]][f] != f) return false;
  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f) {
        if (p.comp[g][f] < 0 || p.comp[h][g] < 0) continue;
        if (p.comp[h][p.comp[g][f]] != p.comp[p.comp[h][g]][f]) return false;
      }
  return true;
}

CategoryPresentation one_object(const std::vector<std::vector<int>>& comp) {
  CategoryPresentation p;
  p.objects = 1;
  int m = static_cast<int>(comp.size());
  p.src.assign(m, 0);
  p.tgt.assign(m, 0);
  p.identities = {0};
  p.comp = comp;
  return p;
}

bool valid(const CategoryPresentation& p) {
  try {
    validate_category(p);
    return true;
  } catch (const CategoryError&) {
    return false;
  }
}

}  // namespace

TEST_CASE("validate_category accepts small named categories") {
  CHECK(valid(terminal_category()->presentation()));
  auto a = walking_arrow();
  CHECK(a->num_objects() == 2);
  CHECK(a->num_morphisms() == 3);
  CHECK(valid(a->presentation()));
  CHECK(valid(deloop(cyclic_group(2))->presentation()));
}

TEST_CASE("exactly two one-object two-morphism tables are categories") {
  int count = 0;
  for (int code = 0; code < 16; ++code) {
    std::vector<std::vector<int>> comp(2, std::vector<int>(2));
    for (int k = 0; k < 4; ++k) comp[k / 2][k % 2] = code >> k & 1;
    bool v = valid(one_object(comp));
    CHECK(v == oracle_is_category(one_object(comp)));
    count += v;
  }
  CHECK(count == 2);
}

TEST_CASE("validate_category names the offending indices") {
  SUBCASE("non-associative unital table") {
    bool found = false;
    for (int code = 0; code < 81 && !found; ++code) {
      std::vector<std::vector<int>> comp(3, std::vector<int>(3));
      for (int a = 0; a < 3; ++a) comp[0][a] = comp[a][0] = a;
      int c = code;
      for (int a = 1; a < 3; ++a)
        for (int b = 1; b < 3; ++b) {
          comp[a][b] = c % 3;
          c /= 3;
        }
      if (oracle_is_category(one_object(comp))) continue;
      found = true;
      try {
        validate_category(one_object(comp));
        FAIL("accepted a non-associative table");
      } catch (const CategoryError& e) {
        CHECK(e.kind() == "NonAssociative");
        REQUIRE(e.indices().size() == 3);
        int h = e.indices()[0], g = e.indices()[1], f = e.indices()[2];
        CHECK(comp[h][comp[g][f]] != comp[comp[h][g]][f]);
      }
    }
    CHECK(found);
  }
  SUBCASE("broken unit") {
    auto p = one_object({{0, 1}, {1, 1}});
    p.comp[0][1] = 0;
    try {
      validate_category(p);
      FAIL("accepted");
    } catch (const CategoryError& e) {
      CHECK(e.kind() == "MissingIdentity");
    }
  }
  SUBCASE("composite defined on a non-composable pair") {
    auto p = walking_arrow()->presentation();
    int f = 1;  // a→b
    p.comp[f][f] = f;
    try {
      validate_category(p);
      FAIL("accepted");
    } catch (const CategoryError& e) {
      CHECK(e.kind() == "BadCompositionDomain");
      CHECK(e.indices() == std::vector<int>{f, f});
    }
  }
}

TEST_CASE("check_axioms agrees with the oracle on random one-object tables") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    int m = 2 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> comp(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) comp[a][b] = static_cast<int>(rng() % m);
    for (int a = 0; a < m; ++a) comp[0][a] = comp[a][0] = a;
    CHECK(valid(one_object(comp)) == oracle_is_category(one_object(comp)));
  }
}

TEST_CASE("every catalogue category satisfies the oracle and round-trips") {
  for (const auto& nc : small_categories(9)) {
    INFO(nc.name);
    auto p = nc.cat->presentation();
    CHECK(oracle_is_category(p));
    FinCat back = validate_category(p);
    CHECK(back.num_morphisms() == nc.cat->num_morphisms());
  }
  CHECK(oracle_is_category(two_class_groupoid()->presentation()));
  CHECK(oracle_is_category(cospan_poset()->presentation()));
}

TEST_CASE("small_categories counts monoids and preorders up to isomorphism") {
  auto all = small_categories(100);
  auto count = [&](const std::string& prefix) {
    int n = 0;
    for (const auto& nc : all) n += nc.name.rfind(prefix, 0) == 0;
    return n;
  };
  CHECK(count("monoid1#") == 1);
  CHECK(count("monoid2#") == 2);
  CHECK(count("monoid3#") == 7);
  CHECK(count("preorder2#") == 3);
  CHECK(count("preorder3#") == 9);
}

TEST_CASE("validate_functor") {
  auto z2 = deloop(cyclic_group(2));
  auto z3 = deloop(cyclic_group(3));
  auto arrow = walking_arrow();
  auto term = terminal_category();
  CHECK_NOTHROW(validate_functor(arrow, arrow, {0, 1}, {0, 1, 2}));
  CHECK_NOTHROW(validate_functor(arrow, term, {0, 0}, {0, 0, 0}));
  // edge a→b is morphism 1
  CHECK_NOTHROW(validate_functor(arrow, z2, {0, 0}, {0, 1, 0}));
  try {
    validate_functor(z2, z3, {0}, {0, 1});
    FAIL("accepted");
  } catch (const FunctorError& e) {
    CHECK(e.kind() == "NotPreservingComposite");
    CHECK(e.indices() == std::vector<int>{1, 1});
  }
  try {
    validate_functor(z2, z2, {0}, {1, 1});
    FAIL("accepted");
  } catch (const FunctorError& e) {
    CHECK(e.kind() == "NotPreservingIdentity");
    CHECK(e.indices() == std::vector<int>{0});
  }
}

TEST_CASE("iso_classes") {
  CHECK(iso_classes(*walking_iso()).classes.size() == 1);
  CHECK(iso_classes(*walking_arrow()).classes.size() == 2);
  CHECK(iso_classes(*deloop(cyclic_group(2))).classes.size() == 1);
  auto g = two_class_groupoid();
  auto ic = iso_classes(*g);
  CHECK(ic.classes.size() == 2);
  // witnesses form an equivalence relation
  for (int a = 0; a < g->num_objects(); ++a)
    for (int b = 0; b < g->num_objects(); ++b) {
      bool ab = ic.iso(a, b) != kNone;
      CHECK(ab == (ic.iso(b, a) != kNone));
      CHECK(ab == (ic.classOf[a] == ic.classOf[b]));
      if (ab) CHECK(is_iso(*g, ic.iso(a, b)));
    }
}

TEST_CASE("category_predicates") {
  auto z2 = category_predicates(*deloop(cyclic_group(2)));
  CHECK(z2.skeletal);
  CHECK_FALSE(z2.gaunt);
  CHECK(z2.groupoid);
  auto wi = category_predicates(*walking_iso());
  CHECK_FALSE(wi.skeletal);
  CHECK(wi.gaunt);
  auto wa = category_predicates(*walking_arrow());
  CHECK(wa.skeletal);
  CHECK(wa.gaunt);
  CHECK(wa.preorder);
  auto tc = category_predicates(*two_class_groupoid());
  CHECK(two_class_groupoid()->num_morphisms() == 12);
  CHECK_FALSE(tc.skeletal);
  CHECK_FALSE(tc.gaunt);
  CHECK(tc.groupoid);
}

TEST_CASE("skeleton_data") {
  auto wi = walking_iso();
  auto s = skeleton_data(*wi);
  CHECK(s.section == std::vector<ObjId>{0});
  CHECK(wi->src(s.chosenIso[1]) == 1);
  CHECK(wi->tgt(s.chosenIso[1]) == 0);
  CHECK(s.chosenIso[0] == wi->id(0));
  auto z2 = deloop(cyclic_group(2));
  CHECK(skeleton_data(*z2).chosenIso[0] == z2->id(0));

  auto g = two_class_groupoid();
  auto sg = skeleton_data(*g);
  for (int o = 0; o < g->num_objects(); ++o) {
    CHECK(is_iso(*g, sg.chosenIso[o]));
    CHECK(g->tgt(sg.chosenIso[o]) == sg.section[sg.classOf[o]]);
  }
  for (ObjId r : sg.section) CHECK(sg.chosenIso[r] == g->id(r));
  // the full subcategory on the section is skeletal
  auto sub = full_subcategory(g, sg.section);
  CHECK(category_predicates(*sub.cat).skeletal);
  CHECK_FALSE(check_functor(sub.inclusion).has_value());
}
