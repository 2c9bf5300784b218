#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fibcat/bases.hpp"

using namespace fibcat;

namespace {

long count_functions_oracle(int N) {
  long total = 0;
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n) total += static_cast<long>(std::pow(n, m));  // pow(0,0) == 1
  return total;
}

// All maps X → Y by brute force, kept when equivariant.
int equivariant_oracle(const Group& G, const GSet& X, const GSet& Y) {
  int count = 0;
  long total = 1;
  for (int i = 0; i < X.size; ++i) total *= Y.size;
  for (long code = 0; code < total; ++code) {
    std::vector<int> f(X.size);
    long c = code;
    for (int i = 0; i < X.size; ++i) {
      f[i] = static_cast<int>(c % Y.size);
      c /= Y.size;
    }
    bool ok = true;
    for (int g = 0; g < G.order() && ok; ++g)
      for (int x = 0; x < X.size && ok; ++x) ok = f[X.act[g][x]] == Y.act[g][f[x]];
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("finset_skel sizes") {
  for (int N = 0; N <= 3; ++N) {
    auto c = finset_skel(N);
    CHECK(c->num_objects() == N + 1);
    CHECK(c->num_morphisms() == count_functions_oracle(N));
    CHECK_FALSE(check_axioms(*c).has_value());
  }
  CHECK(finset_skel(0)->num_morphisms() == 1);
  CHECK(finset_skel(1)->num_morphisms() == 3);
  CHECK(finset_skel(2)->num_morphisms() == 11);
}

TEST_CASE("gsets over the trivial group coincide with finset_skel") {
  for (int N = 0; N <= 3; ++N) {
    auto a = finset_skel(N)->presentation();
    auto b = gset_category(trivial_group(), N).cat->presentation();
    CHECK(a.src == b.src);
    CHECK(a.tgt == b.tgt);
    CHECK(a.identities == b.identities);
    CHECK(a.comp == b.comp);
    CHECK(a.objectNames == b.objectNames);
  }
}

TEST_CASE("gsets over Z/2") {
  auto base = gset_category(cyclic_group(2), 2);
  const auto& B = *base.cat;
  CHECK(B.num_objects() == 4);
  CHECK(B.num_morphisms() == 17);
  CHECK(B.object_name(0) == "0");
  CHECK(B.object_name(1) == "1");
  CHECK(B.object_name(2) == "2triv");
  CHECK(B.object_name(3) == "rho");
  CHECK(B.hom(2, 3).empty());
  CHECK(B.hom(3, 2).size() == 2);
  CHECK_FALSE(check_axioms(B).has_value());
  CHECK(object_by_name(B, "2") == 2);

  GSetCatalogue big(cyclic_group(2), 4);
  CHECK(big.objects().size() == 9);
  CHECK(big.find_by_name("2rho") >= 0);
  CHECK(big.find_by_name("1+rho") >= 0);
  for (const auto& X : big.objects())
    for (const auto& Y : big.objects())
      CHECK(static_cast<int>(equivariant_maps(big.group(), X, Y).size()) == equivariant_oracle(big.group(), X, Y));
}

TEST_CASE("canonicalize returns an isomorphism onto the catalogue object") {
  GSetCatalogue cat(cyclic_group(2), 4);
  GSet X;  // rho + 1 + rho labelled oddly
  X.size = 4;
  X.act = {{0, 1, 2, 3}, {3, 1, 2, 0}};
  auto [idx, sigma] = cat.canonicalize(X);
  const GSet& C = cat.objects()[idx];
  CHECK(gset_name(cat.group(), C) == "2triv+rho");
  for (int g = 0; g < 2; ++g)
    for (int x = 0; x < 4; ++x) CHECK(sigma[X.act[g][x]] == C.act[g][sigma[x]]);
}

TEST_CASE("gsets over Z/3 and a noncyclic group") {
  auto base = gset_category(cyclic_group(3), 3);
  // sizes 0,1,2,3: trivial sets of each size plus the free orbit of size 3
  CHECK(base.cat->num_objects() == 5);
  Group klein{"V4", {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
  GSetCatalogue v(klein, 2);
  // size 2: trivial, and three transitive actions with different kernels
  CHECK(v.objects().size() == 1 + 1 + 4);
}

TEST_CASE("arrow categories") {
  auto t = arrow_category(terminal_category());
  CHECK(t.cat->num_objects() == 1);
  CHECK(t.cat->num_morphisms() == 1);
  auto w = arrow_category(walking_arrow());
  CHECK(w.cat->num_objects() == 3);
  CHECK(w.cat->num_morphisms() == 6);
  CHECK_FALSE(check_axioms(*w.cat).has_value());
  auto a = arrow_category(finset_skel(2));
  CHECK(a.cat->num_objects() == 11);
  CHECK(a.cat->num_morphisms() == 249);
  CHECK_FALSE(check_axioms(*a.cat).has_value());
  CHECK_FALSE(check_functor(a.cod).has_value());
  REQUIRE(a.cat->concrete() != nullptr);
  CHECK(a.cat->concrete()->sizes[0].size() == 2);
}
