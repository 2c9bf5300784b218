#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibcat/constructions.hpp"
#include "fibcat/fibration.hpp"

using namespace fibcat;

namespace {

// Pullback check straight from the definition, as an oracle: for every
// cone (q1, q2) from every object exactly one mediating map.
bool oracle_pullback(const FinCat& B, MorId f, MorId g, MorId p1, MorId p2) {
  if (B.compose(f, p1) != B.compose(g, p2)) return false;
  for (ObjId Q = 0; Q < B.num_objects(); ++Q)
    for (MorId q1 : B.hom(Q, B.src(f)))
      for (MorId q2 : B.hom(Q, B.src(g))) {
        if (B.compose(f, q1) != B.compose(g, q2)) continue;
        int n = 0;
        for (MorId k : B.hom(Q, B.src(p1))) n += B.compose(p1, k) == q1 && B.compose(p2, k) == q2;
        if (n != 1) return false;
      }
  return true;
}

MorId finset_morphism(const FinCat& B, int m, int n, std::vector<int> f) {
  return B.concrete()->find(m, n, {f});
}

std::vector<CartPtr> sample_fibrations() {
  std::vector<CartPtr> out;
  out.push_back(fam(walking_iso(), 2).fib);
  out.push_back(fam(deloop(cyclic_group(2)), 2).fib);
  out.push_back(fam(walking_arrow(), 2).fib);
  out.push_back(externalize(encode_small_category(*walking_iso(), 2)).g.fib);
  out.push_back(externalize(internal_deloop(componentwise_group(finset_skel(2), 1 + 1, {cyclic_group(2)}, "Z2")))
                    .g.fib);
  return out;
}

}  // namespace

TEST_CASE("identities are cartesian; cartesian squares are pullbacks") {
  auto B = finset_skel(2);
  auto A = arrow_category(B);
  auto cf = analyze(A.cod);
  const FinCat& E = *A.cat;
  int pullbacks = 0;
  for (MorId sq = 0; sq < E.num_morphisms(); ++sq) {
    if (E.is_identity(sq)) CHECK(cf->cartesian(sq));
    // square x → y is (a, b) with y∘a = b∘x
    MorId x = E.src(sq), y = E.tgt(sq);
    MorId b = A.cod.morMap[sq];
    MorId a = kNone;
    for (MorId cand : B->hom(B->src(x), B->src(y)))
      if (E.concrete()->functions[sq][0] == B->concrete()->functions[cand][0]) a = cand;
    REQUIRE(a != kNone);
    bool pb = oracle_pullback(*B, y, b, a, x);
    CHECK(is_pullback_square(*B, y, b, a, x) == pb);
    CHECK(cf->cartesian(sq) == pb);
    pullbacks += pb;
  }
  CHECK(pullbacks > 0);
  CHECK(pullbacks < E.num_morphisms());
}

TEST_CASE("codomain functor is a fibration exactly when the base has pullbacks") {
  auto has_all_pullbacks = [](const FinCat& B) {
    for (MorId f = 0; f < B.num_morphisms(); ++f)
      for (MorId g : B.in(B.tgt(f)))
        if (!pullback(B, f, g)) return false;
    return true;
  };
  for (auto B : {finset_skel(0), finset_skel(1), finset_skel(2), cospan_poset(), walking_arrow()}) {
    auto A = arrow_category(B);
    auto cf = analyze(A.cod);
    CHECK(is_fibration(*cf) == has_all_pullbacks(*B));
  }
  CHECK(is_fibration(*analyze(arrow_category(finset_skel(1)).cod)));
  CHECK_FALSE(is_fibration(*analyze(arrow_category(finset_skel(2)).cod)));
}

TEST_CASE("codomain functor over the cospan poset has a missing lift") {
  auto B = cospan_poset();  // a=0, b=1, c=2
  auto A = arrow_category(B);
  auto cf = analyze(A.cod);
  auto miss = find_missing_lift(*cf);
  REQUIRE(miss.has_value());
  CHECK(cf->lifts(miss->u, miss->E).empty());
  // the witness is a cospan without pullback
  MorId e = miss->E;  // an arrow of B
  CHECK_FALSE(pullback(*B, e, miss->u).has_value());
  try {
    require_fibration(*cf);
    FAIL("accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == "NotAFibration");
  }
}

TEST_CASE("pullbacks in finite sets") {
  auto B2 = finset_skel(2);
  auto z = B2->id(2);
  auto pb = pullback(*B2, z, z);
  REQUIRE(pb);
  CHECK(pb->apex == 2);
  MorId sur = finset_morphism(*B2, 2, 1, {0, 0});
  CHECK_FALSE(pullback(*B2, sur, sur).has_value());
  auto B4 = finset_skel(4);
  MorId sur4 = finset_morphism(*B4, 2, 1, {0, 0});
  auto pb4 = pullback(*B4, sur4, sur4);
  REQUIRE(pb4);
  CHECK(pb4->apex == 4);
  auto P = cospan_poset();
  CHECK_FALSE(pullback(*P, P->hom(0, 2)[0], P->hom(1, 2)[0]).has_value());
}

TEST_CASE("mono_epi_analysis") {
  auto B = finset_skel(2);
  auto fl = mono_epi_analysis(*B);
  MorId sur = finset_morphism(*B, 2, 1, {0, 0});
  CHECK(fl[sur].regularEpi);
  CHECK(fl[sur].splitEpi);
  CHECK_FALSE(fl[sur].mono);
  for (ObjId o = 0; o < B->num_objects(); ++o) {
    auto f = fl[B->id(o)];
    CHECK((f.mono && f.epi && f.splitEpi && f.regularEpi && f.iso));
  }
  MorId inj = finset_morphism(*B, 1, 2, {1});
  CHECK(fl[inj].mono);
  CHECK_FALSE(fl[inj].epi);

  auto G = gset_category(cyclic_group(2), 2);
  auto gl = mono_epi_analysis(*G.cat);
  MorId q = G.cat->hom(3, 1)[0];  // rho → 1
  CHECK(gl[q].regularEpi);
  CHECK(gl[q].epi);
  CHECK_FALSE(gl[q].splitEpi);
}

TEST_CASE("cartesian lifts") {
  auto F = fam(deloop(cyclic_group(2)), 1);
  ObjId T = F.find({0});
  CHECK(F.fib->lifts(F.base->id(1), T).size() == 2);
  for (ObjId E = 0; E < F.fib->total().num_objects(); ++E) {
    auto l = F.fib->lifts(F.base->id(F.fib->over(E)), E);
    CHECK(std::find(l.begin(), l.end(), F.fib->total().id(E)) != l.end());
  }
}

TEST_CASE("cartesian morphisms: composites, isos, uniqueness of lifts up to vertical iso") {
  for (const auto& cf : sample_fibrations()) {
    const FinCat& T = cf->total();
    for (MorId f = 0; f < T.num_morphisms(); ++f) {
      if (is_iso(T, f)) CHECK(cf->cartesian(f));
      if (!cf->cartesian(f)) continue;
      for (MorId g : T.out(T.tgt(f)))
        if (cf->cartesian(g)) CHECK(cf->cartesian(T.compose(g, f)));
    }
    for (ObjId E = 0; E < T.num_objects(); ++E)
      for (MorId u : cf->base().in(cf->over(E))) {
        auto ls = cf->lifts(u, E);
        REQUIRE_FALSE(ls.empty());
        for (MorId a : ls)
          for (MorId b : ls) {
            int n = 0;
            for (MorId k : T.hom(T.src(a), T.src(b)))
              if (cf->vertical(k) && T.compose(b, k) == a) {
                ++n;
                CHECK(is_iso(T, k));
              }
            CHECK(n == 1);
          }
      }
  }
}

TEST_CASE("cartesian counterexample names a factorization failure") {
  auto F = fam(walking_arrow(), 1);
  // vertical a → b over id_1 is not cartesian
  ObjId a = F.find({0}), b = F.find({1});
  MorId v = F.fib->total().hom(a, b)[0];
  auto ce = cartesian_counterexample(F.fib->functor(), v);
  REQUIRE(ce);
  CHECK(ce->count != 1);
  CHECK_FALSE(F.fib->cartesian(v));
}

TEST_CASE("cleavages and splitness") {
  auto F = fam(walking_iso(), 2);
  CHECK(is_split(*F.cleavage).split);
  auto least = Cleavage::least_index(F.fib);
  auto chk = is_split(least);
  CHECK_FALSE(chk.split);
  CHECK_FALSE(chk.failure.empty());

  auto D = fam(discrete_category(2), 2);
  CHECK(is_split(Cleavage::least_index(D.fib)).split);

  // an explicit non-cartesian choice is rejected
  auto W = fam(walking_arrow(), 1);
  ObjId a = W.find({0}), b = W.find({1});
  MorId v = W.fib->total().hom(a, b)[0];
  try {
    Cleavage::from_table(W.fib, {{{W.base->id(1), b}, v}});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == "InvalidChoice");
    CHECK(e.indices() == std::vector<int>{W.base->id(1), b});
  }
}

TEST_CASE("fibers") {
  auto C = two_class_groupoid();
  auto F = fam(C, 2);
  auto f1 = fiber(*F.fib, 1);
  CHECK(f1.cat->num_objects() == C->num_objects());
  CHECK(f1.cat->num_morphisms() == C->num_morphisms());
  CHECK_FALSE(check_axioms(*f1.cat).has_value());
  CHECK_FALSE(check_functor(f1.inclusion).has_value());
  auto f0 = fiber(*F.fib, 0);
  CHECK(f0.cat->num_objects() == 1);
  CHECK(f0.cat->num_morphisms() == 1);

  auto X = externalize(internal_deloop(componentwise_group(finset_skel(2), 2, {cyclic_group(2)}, "Z2")));
  for (ObjId I = 0; I <= 2; ++I) {
    auto fi = fiber(*X.g.fib, I);
    CHECK(fi.cat->num_objects() == 1);
    CHECK(fi.cat->num_morphisms() == (1 << I));
  }
}

TEST_CASE("cover-cartesian morphisms") {
  auto G = gset_category(cyclic_group(2), 2);
  auto idp = analyze(identity_functor(G.cat));
  auto covers = regular_epis(*G.cat);
  MorId q = G.cat->hom(3, 1)[0];
  CHECK(is_cover_cartesian(*idp, q, covers));
  for (ObjId o = 0; o < G.cat->num_objects(); ++o) CHECK(is_cover_cartesian(*idp, G.cat->id(o), covers));
  MorId inj = G.cat->hom(1, 2)[0];  // 1 → 2triv, not epi
  CHECK_FALSE(is_cover_cartesian(*idp, inj, covers));
  auto W = fam(walking_arrow(), 1);
  MorId v = W.fib->total().hom(W.find({0}), W.find({1}))[0];
  CHECK_FALSE(is_cover_cartesian(*W.fib, v, regular_epis(*W.base)));
}
