#include <algorithm>
#include <map>
#include <tuple>

#include "fibcat/constructions.hpp"

namespace fibcat {

namespace {

int position(const FinCat& B, MorId m) {
  auto h = B.hom(B.src(m), B.tgt(m));
  return static_cast<int>(std::find(h.begin(), h.end(), m) - h.begin());
}

}  // namespace

SplitFromWeak split_from_weak(const CartPtr& pp, ObjId T) {
  const CartesianFunctor& p = *pp;
  const FinCat& E = p.total();
  const CatPtr& Bptr = p.base_ptr();
  const FinCat& B = *Bptr;
  const ObjId U = p.over(T);

  std::vector<char> reaches(E.num_objects(), 0);
  for (MorId f : p.cartesian_into(T)) reaches[E.src(f)] = 1;
  for (ObjId X = 0; X < E.num_objects(); ++X)
    if (!reaches[X]) throw Error("NotGeneric", {X}, "no cartesian map into the candidate");

  std::vector<MorId> chosen(B.num_morphisms(), kNone);
  for (MorId a : B.in(U)) {
    auto ls = p.lifts(a, T);
    if (ls.empty()) throw Error("NotAFibration", {a, T}, "no cartesian lift into the candidate");
    chosen[a] = ls.front();
  }
  auto A = [&](MorId a) { return E.src(chosen[a]); };
  // The unique map A(a∘u) → A(a) over u through which chosen[a∘u] factors.
  std::map<std::pair<MorId, MorId>, MorId> transportCache;
  auto transport = [&](MorId a, MorId u) {
    auto key = std::make_pair(a, u);
    if (auto it = transportCache.find(key); it != transportCache.end()) return it->second;
    const MorId au = B.compose(a, u);
    for (MorId f : E.hom(A(au), A(a)))
      if (p.over_mor(f) == u && E.compose(chosen[a], f) == chosen[au]) return transportCache[key] = f;
    throw Error("Internal", {a, u}, "chosen lift does not factor");
  };

  // Fibers: morphisms are triples (α position, β position, vertical h).
  PshCat P;
  P.base = Bptr;
  using Triple = std::tuple<int, int, MorId>;
  std::vector<std::vector<Triple>> fiberMors(B.num_objects());
  std::vector<std::map<Triple, MorId>> fiberIndex(B.num_objects());
  for (ObjId I = 0; I < B.num_objects(); ++I) {
    auto alphas = B.hom(I, U);
    FinCat::Shape sh;
    sh.objects = static_cast<int>(alphas.size());
    for (MorId a : alphas) sh.objectNames.push_back(B.morphism_name(a));
    for (int i = 0; i < sh.objects; ++i)
      for (int j = 0; j < sh.objects; ++j)
        for (MorId h : E.hom(A(alphas[i]), A(alphas[j]))) {
          if (p.over_mor(h) != B.id(I)) continue;
          fiberIndex[I][{i, j, h}] = static_cast<MorId>(fiberMors[I].size());
          fiberMors[I].emplace_back(i, j, h);
          sh.src.push_back(i);
          sh.tgt.push_back(j);
          sh.morphismNames.push_back(E.morphism_name(h));
        }
    for (int i = 0; i < sh.objects; ++i) sh.identities.push_back(fiberIndex[I].at({i, i, E.id(A(alphas[i]))}));
    const auto& mors = fiberMors[I];
    const auto& idx = fiberIndex[I];
    P.fibers.push_back(std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId g, MorId f) {
      auto [a, b, h] = mors[f];
      auto [b2, c, k] = mors[g];
      (void)b2;
      return idx.at({a, c, E.compose(k, h)});
    })));
  }
  for (MorId u = 0; u < B.num_morphisms(); ++u) {
    const ObjId J = B.src(u), I = B.tgt(u);
    auto alphas = B.hom(I, U);
    FinFunctor F{P.fibers[I], P.fibers[J], {}, {}};
    for (MorId a : alphas) F.objMap.push_back(position(B, B.compose(a, u)));
    for (auto [i, j, h] : fiberMors[I]) {
      const MorId a = alphas[i], b = alphas[j];
      const MorId au = B.compose(a, u), bu = B.compose(b, u);
      const MorId ma = transport(a, u), mb = transport(b, u);
      const MorId target = E.compose(h, ma);
      MorId k = kNone;
      for (MorId c : E.hom(A(au), A(bu)))
        if (p.over_mor(c) == B.id(J) && E.compose(mb, c) == target) {
          k = c;
          break;
        }
      if (k == kNone) throw Error("Internal", {u, h}, "reindexing of a vertical map is missing");
      F.morMap.push_back(fiberIndex[J].at({position(B, au), position(B, bu), k}));
    }
    P.reindex.push_back(std::move(F));
  }

  SplitFromWeak out{grothendieck(P), 0, {}, false, false, false, false, false, ""};
  const Grothendieck& G = out.g;
  out.Tprime = G.object(U, position(B, B.id(U)));

  // Comparison (I, α) ↦ A(α); (u, (α', βu, k)) ↦ transport(β, u) ∘ k.
  const FinCat& S = G.fib->total();
  FinFunctor Phi{G.fib->total_ptr(), p.total_ptr(), {}, {}};
  for (auto [I, c] : G.objects) Phi.objMap.push_back(A(B.hom(I, U)[c]));
  for (MorId m = 0; m < S.num_morphisms(); ++m) {
    auto [u, h] = G.morphisms[m];
    auto [I, c] = G.objects[S.tgt(m)];
    const MorId beta = B.hom(I, U)[c];
    const MorId k = std::get<2>(fiberMors[B.src(u)][h]);
    Phi.morMap.push_back(E.compose(transport(beta, u), k));
  }
  out.comparison = Phi;

  out.functorOk = !check_functor(Phi).has_value();
  out.overBase = true;
  for (ObjId Y = 0; Y < S.num_objects(); ++Y) out.overBase &= p.over(Phi.objMap[Y]) == G.fib->over(Y);
  for (MorId m = 0; m < S.num_morphisms(); ++m) out.overBase &= p.over_mor(Phi.morMap[m]) == G.fib->over_mor(m);

  out.essentiallySurjective = true;
  for (ObjId X = 0; X < E.num_objects() && out.essentiallySurjective; ++X) {
    bool hit = false;
    for (ObjId Y : G.fib->objects_over(p.over(X)))
      for (MorId f : E.hom(X, Phi.objMap[Y]))
        if (p.vertical(f) && is_iso(E, f)) hit = true;
    out.essentiallySurjective = hit;
  }

  out.fullyFaithful = true;
  for (ObjId I = 0; I < B.num_objects() && out.fullyFaithful; ++I)
    for (ObjId Y1 : G.fib->objects_over(I))
      for (ObjId Y2 : G.fib->objects_over(I)) {
        std::vector<MorId> image;
        for (MorId m : S.hom(Y1, Y2))
          if (G.fib->vertical(m)) image.push_back(Phi.morMap[m]);
        std::vector<MorId> target;
        for (MorId f : E.hom(Phi.objMap[Y1], Phi.objMap[Y2]))
          if (p.vertical(f)) target.push_back(f);
        std::sort(image.begin(), image.end());
        if (image != target) out.fullyFaithful = false;
      }

  out.preservesCartesian = true;
  for (MorId m = 0; m < S.num_morphisms(); ++m)
    if (G.fib->cartesian(m) && !p.cartesian(Phi.morMap[m])) out.preservesCartesian = false;

  if (!out.functorOk)
    out.failure = "functor";
  else if (!out.overBase)
    out.failure = "over-base";
  else if (!out.essentiallySurjective)
    out.failure = "essentially-surjective";
  else if (!out.fullyFaithful)
    out.failure = "fully-faithful";
  else if (!out.preservesCartesian)
    out.failure = "cartesian";
  return out;
}

}  // namespace fibcat
