#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fibcat/constructions.hpp"

using namespace fibcat;

namespace {

// Morphism count of fam(C, N) from the definition: Σ_{X,Y} Σ_u Π_j |hom(X_j, Y_{u j})|.
long fam_morphisms_oracle(const FinCat& C, int N) {
  std::vector<std::vector<int>> fams;
  for (int k = 0; k <= N; ++k) {
    long total = static_cast<long>(std::pow(C.num_objects(), k));
    for (long code = 0; code < total; ++code) {
      std::vector<int> t(k);
      long c = code;
      for (int j = 0; j < k; ++j) {
        t[j] = static_cast<int>(c % C.num_objects());
        c /= C.num_objects();
      }
      fams.push_back(t);
    }
  }
  long count = 0;
  for (const auto& X : fams)
    for (const auto& Y : fams) {
      const int k = static_cast<int>(X.size()), l = static_cast<int>(Y.size());
      long maps = static_cast<long>(std::pow(l, k));
      for (long code = 0; code < maps; ++code) {
        long c = code, prod = 1;
        for (int j = 0; j < k; ++j) {
          prod *= static_cast<long>(C.hom(X[j], Y[c % l]).size());
          c /= l;
        }
        count += prod;
      }
    }
  return count;
}

MorId fs(const CatPtr& B, int m, int n, std::vector<int> f) { return B->concrete()->find(m, n, {f}); }

}  // namespace

TEST_CASE("fam sizes") {
  auto F0 = fam(walking_iso(), 0);
  CHECK(F0.fib->total().num_objects() == 1);
  CHECK(F0.fib->total().num_morphisms() == 1);
  auto F = fam(walking_iso(), 2);
  CHECK(F.fib->total().num_objects() == 7);
  CHECK(F.fib->total().num_morphisms() == 99);
  CHECK(F.fib->objects_over(2).size() == 4);
  for (const auto& nc : small_categories(5))
    for (int N = 0; N <= 2; ++N) {
      INFO(nc.name << " N=" << N);
      auto G = fam(nc.cat, N);
      CHECK(G.fib->total().num_morphisms() == fam_morphisms_oracle(*nc.cat, N));
    }
}

TEST_CASE("fam is a fibration with a split canonical cleavage") {
  for (const auto& nc : small_categories(4)) {
    INFO(nc.name);
    auto F = fam(nc.cat, 2);
    CHECK_FALSE(check_axioms(F.fib->total()).has_value());
    CHECK(is_fibration(*F.fib));
    CHECK(is_split(*F.cleavage).split);
  }
  auto D = fam(deloop(cyclic_group(2)), 1);
  auto f1 = fiber(*D.fib, 1);
  CHECK(f1.cat->num_objects() == 1);
  CHECK(f1.cat->num_morphisms() == 2);
}

TEST_CASE("skeletal_generic_candidate") {
  auto F = fam(walking_iso(), 2);
  ObjId T = skeletal_generic_candidate(F);
  CHECK(F.families[T] == std::vector<ObjId>{0});
  auto G = fam(two_class_groupoid(), 2);
  CHECK(G.families[skeletal_generic_candidate(G)] == std::vector<ObjId>{0, 2});
  auto H = fam(two_class_groupoid(), 1);
  try {
    skeletal_generic_candidate(H);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == "BoundTooSmall");
  }
}

TEST_CASE("set-encoded categories") {
  for (const auto& nc : small_categories(4)) {
    if (nc.cat->num_objects() > 2) continue;
    INFO(nc.name);
    auto ic = encode_small_category(*nc.cat, 2);
    CHECK_FALSE(check_internal_equations(ic).has_value());
    // fiber at the one-point set is C itself
    auto P = psh_of_cats(ic);
    auto a = P.fibers[1]->presentation();
    auto b = nc.cat->presentation();
    CHECK(a.src == b.src);
    CHECK(a.tgt == b.tgt);
    CHECK(a.identities == b.identities);
    CHECK(a.comp == b.comp);
  }
  try {
    encode_small_category(*two_class_groupoid(), 2);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == "BoundTooSmall");
  }
  auto empty = psh_of_cats(encode_small_category(*discrete_category(0), 1));
  CHECK(empty.fibers[1]->num_objects() == 0);
}

TEST_CASE("externalization of an encoded category is fiberwise isomorphic to fam") {
  for (const auto& nc : small_categories(4)) {
    if (nc.cat->num_objects() > 2) continue;
    INFO(nc.name);
    auto X = externalize(encode_small_category(*nc.cat, 2));
    auto F = fam(nc.cat, 2);
    CHECK(X.g.fib->total().num_objects() == F.fib->total().num_objects());
    CHECK(X.g.fib->total().num_morphisms() == F.fib->total().num_morphisms());
    for (ObjId I = 0; I <= 2; ++I) {
      auto a = fiber(*X.g.fib, I);
      auto b = fiber(*F.fib, I);
      CHECK(a.cat->num_objects() == b.cat->num_objects());
      CHECK(a.cat->num_morphisms() == b.cat->num_morphisms());
      // objects line up (both lexicographic); match morphisms by component tuples
      const std::string idName = F.base->morphism_name(F.base->id(I));
      std::map<std::string, MorId> byName;
      for (MorId m = 0; m < a.cat->num_morphisms(); ++m) {
        std::string n = a.cat->morphism_name(m);  // "(id,[..])"
        byName[n.substr(idName.size() + 2, n.size() - idName.size() - 3)] = m;
      }
      std::vector<MorId> morMap;
      for (MorId m = 0; m < b.cat->num_morphisms(); ++m) {
        std::string n = b.cat->morphism_name(m);  // "id[..]"
        auto it = byName.find(n.substr(idName.size()));
        REQUIRE(it != byName.end());
        morMap.push_back(it->second);
      }
      std::vector<ObjId> objMap(b.cat->num_objects());
      for (int o = 0; o < b.cat->num_objects(); ++o) objMap[o] = o;
      FinFunctor iso{b.cat, a.cat, objMap, morMap};
      CHECK_FALSE(check_functor(iso).has_value());
      std::set<MorId> img(morMap.begin(), morMap.end());
      CHECK(img.size() == morMap.size());
    }
    CHECK(is_split(*X.g.cleavage).split);
  }
}

TEST_CASE("validate_internal_cat") {
  auto B = finset_skel(2);
  // discrete internal category on 2
  MorId id2 = B->id(2);
  InternalCatData ok{2, 2, id2, id2, id2, kNone, std::nullopt};
  auto pb = pullback(*B, id2, id2);
  REQUIRE(pb);
  ok.c = pb->p1;
  CHECK_NOTHROW(validate_internal_cat(B, ok));
  InternalCatData bad = ok;
  bad.s = fs(B, 2, 2, {0, 0});
  try {
    validate_internal_cat(B, bad);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == "EquationFailed");
    CHECK(std::string(e.what()).find("s∘i=id") != std::string::npos);
  }
  // corrupting a set-encoded category in presheaf form is caught too
  auto ic = encode_small_category(*walking_iso(), 2);
  ic.comp[1][1 * ic.points[1] + 2] = 1;
  CHECK(check_internal_equations(ic).has_value());
}

TEST_CASE("group objects and internal deloopings") {
  auto B = finset_skel(2);
  auto Z2 = componentwise_group(B, 2, {cyclic_group(2)}, "Z2");
  CHECK_FALSE(check_group_object(Z2).has_value());
  auto X = externalize(internal_deloop(Z2));
  CHECK(X.g.fib->total().num_objects() == 3);
  CHECK(X.g.fib->total().num_morphisms() == 29);
  CHECK(X.g.fib->lifts(B->id(1), X.T).size() == 2);
  for (MorId f = 0; f < X.g.fib->total().num_morphisms(); ++f) CHECK(X.g.fib->cartesian(f));
  CHECK(is_split(*X.g.cleavage).split);

  auto A = arrow_category(finset_skel(2));
  MorId g = fs(B, 1, 2, {0});  // the object 1 → Z/2 of the arrow category
  auto G = componentwise_group(A.cat, g, {trivial_group(), cyclic_group(2)}, "1->Z2");
  CHECK_FALSE(check_group_object(G).has_value());
  auto ic = internal_deloop(G);
  CHECK_FALSE(check_internal_equations(ic).has_value());
  auto XA = externalize(ic);
  CHECK(XA.g.fib->total().num_objects() == 11);
  CHECK(XA.g.fib->total().num_morphisms() == 471);
  for (MorId f = 0; f < XA.g.fib->total().num_morphisms(); ++f) CHECK(XA.g.fib->cartesian(f));
  CHECK(is_fibration(*XA.g.fib));
  CHECK(is_split(*XA.g.cleavage).split);

  auto triv = externalize(internal_deloop(trivial_group_object(A.cat)));
  CHECK(triv.g.fib->total().num_morphisms() == A.cat->num_morphisms());

  // the swap of 2 admits no unit square
  MorId g2 = fs(B, 2, 2, {1, 0});
  CHECK_THROWS(componentwise_group(A.cat, g2, {cyclic_group(2), cyclic_group(2)}, "bad").mul.size());
}

TEST_CASE("grothendieck") {
  auto ic = encode_small_category(*walking_iso(), 2);
  auto X = externalize(ic);
  auto G = grothendieck(psh_of_cats(ic));
  CHECK(G.fib->total().presentation().comp == X.g.fib->total().presentation().comp);
  CHECK(is_fibration(*G.fib));
  CHECK(is_split(*G.cleavage).split);

  // constant presheaf at the terminal category
  auto B = walking_arrow();
  PshCat P;
  P.base = B;
  auto one = terminal_category();
  P.fibers.assign(B->num_objects(), one);
  for (MorId u = 0; u < B->num_morphisms(); ++u) P.reindex.push_back(identity_functor(one));
  auto T = grothendieck(P);
  CHECK(T.fib->total().num_objects() == B->num_objects());
  CHECK(T.fib->total().num_morphisms() == B->num_morphisms());
  CHECK_FALSE(check_psh(P).has_value());

  // a non-functorial reindexing is rejected
  PshCat Q = psh_of_cats(encode_small_category(*deloop(cyclic_group(2)), 1));
  Q.reindex[Q.base->id(1)].morMap = {1, 0};
  CHECK(check_psh(Q).has_value());
}

TEST_CASE("split_from_weak") {
  auto check = [](const CartPtr& p, ObjId T) {
    auto S = split_from_weak(p, T);
    CHECK(S.equivalence());
    CHECK(S.failure.empty());
    CHECK(is_fibration(*S.g.fib));
    CHECK(is_split(*S.g.cleavage).split);
    // T′ = (pT, id) reindexes onto every object along exactly one base map
    const CartesianFunctor& q = *S.g.fib;
    for (ObjId X = 0; X < q.total().num_objects(); ++X) {
      int n = 0;
      for (MorId u : q.base().hom(q.over(X), q.over(S.Tprime))) n += S.g.cleavage->reindex(u, S.Tprime) == X;
      CHECK(n == 1);
    }
    return S;
  };
  auto X = externalize(encode_small_category(*walking_iso(), 2));
  check(X.g.fib, X.T);
  auto F = fam(deloop(cyclic_group(2)), 1);
  check(F.fib, F.find({0}));
  // already split generic: same fiber sizes
  auto Y = externalize(encode_small_category(*walking_arrow(), 2));
  auto S = check(Y.g.fib, Y.T);
  for (ObjId I = 0; I <= 2; ++I) {
    CHECK(S.g.fib->objects_over(I).size() == Y.g.fib->objects_over(I).size());
    CHECK(fiber(*S.g.fib, I).cat->num_morphisms() == fiber(*Y.g.fib, I).cat->num_morphisms());
  }
  // not generic
  auto D = fam(discrete_category(2), 1);
  try {
    split_from_weak(D.fib, D.find({0}));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == "NotGeneric");
  }
}

TEST_CASE("subfibration of a map and its stack completion") {
  auto B = gset_category(cyclic_group(2), 2);
  MorId pi = B.cat->hom(object_by_name(*B.cat, "2triv"), object_by_name(*B.cat, "1"))[0];
  auto sub = subfibration_from_map(B, pi);
  CHECK(sub.arrows.size() == 12);
  auto regular = regular_epis(*B.cat);
  auto st = stack_completion(B, pi, regular);
  CHECK(st.arrows.size() == 13);
  // the extra object is the free orbit over the point
  int extra = 0;
  for (size_t i = 0; i < st.arrows.size(); ++i)
    if (!st.pulledBack[i]) {
      ++extra;
      CHECK(gset_name(B.group(), st.ambient->objects()[st.arrows[i].X]) == "rho");
      CHECK(B.cat->object_name(st.arrows[i].I) == "1");
    }
  CHECK(extra == 1);
  for (const auto& a : sub.arrows) CHECK(st.find(a) != kNone);
  CHECK_FALSE(check_axioms(st.fib->total()).has_value());
  CHECK(is_fibration(*sub.fib));

  // π = id_1: isomorphisms onto I
  auto ids = subfibration_from_map(B, B.cat->id(object_by_name(*B.cat, "1")));
  for (const auto& a : ids.arrows) CHECK(st.ambient->objects()[a.X].size == B.object(a.I).size);
  CHECK(ids.arrows.size() == 1 + 1 + 2 + 2);

  // finite sets: every π has {π} = [π]
  auto F = gset_category(trivial_group(), 3);
  auto fcov = regular_epis(*F.cat);
  for (MorId p = 0; p < F.cat->num_morphisms(); ++p) {
    INFO(F.cat->morphism_name(p));
    auto a = subfibration_from_map(F, p, false);
    auto b = stack_completion(F, p, fcov, false);
    CHECK(a.arrows.size() == b.arrows.size());
  }
  auto two = subfibration_from_map(F, F.cat->hom(2, 1)[0], false);
  CHECK(two.arrows.size() == 1 + 1 + 6 + 90);
}
