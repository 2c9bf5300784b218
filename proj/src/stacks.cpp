#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fibcat/constructions.hpp"

namespace fibcat {

namespace {

std::vector<std::vector<int>> subgroups(const Group& G) {
  const int n = G.order();
  if (n > 16) throw InputError("BoundsTooLarge", {n}, "group too large for subgroup enumeration");
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); mask += 2) {  // contains the unit
    std::vector<int> els;
    for (int g = 0; g < n; ++g)
      if (mask >> g & 1) els.push_back(g);
    bool closed = true;
    for (int a : els)
      for (int b : els) closed &= (mask >> G.mul[a][b] & 1) != 0;
    if (closed) out.push_back(els);
  }
  return out;
}

// Isomorphism classes of G-sets over a base object I are determined by the
// fibers over the orbit representatives of I as G_i-sets, and those by their
// marks (fixed-point counts of subgroups). marks[i][k] counts points of X over
// i fixed by subgroup k; the signature of the pullback along c: J → I reads
// marks[c(j)][k] for the representatives j of J and subgroups k fixing j.
using Marks = std::vector<std::vector<int>>;

Marks marks(const std::vector<std::vector<int>>& subs, const GSet& X, const std::vector<int>& x, int nI) {
  Marks m(nI, std::vector<int>(subs.size(), 0));
  for (int e = 0; e < X.size; ++e)
    for (size_t k = 0; k < subs.size(); ++k) {
      bool fixed = true;
      for (int g : subs[k]) fixed &= X.act[g][e] == e;
      m[x[e]][k] += fixed;
    }
  return m;
}

using Pattern = std::vector<std::pair<int, int>>;

Pattern pattern(const std::vector<std::vector<int>>& subs, const GSet& J) {
  Pattern pat;
  for (int j : orbit_representatives(J))
    for (size_t k = 0; k < subs.size(); ++k) {
      bool stab = true;
      for (int g : subs[k]) stab &= J.act[g][j] == j;
      if (stab) pat.emplace_back(j, static_cast<int>(k));
    }
  return pat;
}

std::vector<int> signature(const Marks& m, const Pattern& pat, const std::vector<int>* c) {
  std::vector<int> sig;
  sig.reserve(pat.size());
  for (auto [j, k] : pat) sig.push_back(m[c ? (*c)[j] : j][k]);
  return sig;
}

MapFibration build(const GSetBase& B, MorId pi, const MorphismClass* covers, bool mat) {
  const FinCat& C = *B.cat;
  const Concrete& cc = *C.concrete();
  if (pi < 0 || pi >= C.num_morphisms()) throw InputError("BadIndex", {pi}, "no such base morphism");
  auto fn = [&](MorId m) -> const std::vector<int>& { return cc.functions[m][0]; };
  const Group& G = B.group();
  const ObjId Eo = C.src(pi), U = C.tgt(pi);
  MapFibration M;
  M.base = B;
  M.pi = pi;
  const int bound = B.catalogue->bound() * B.object(Eo).size;
  M.ambient = bound <= B.catalogue->bound() ? B.catalogue : std::make_shared<const GSetCatalogue>(G, bound);
  const auto subs = subgroups(G);
  const int nB = C.num_objects();

  std::vector<Pattern> pats;
  for (ObjId I = 0; I < nB; ++I) pats.push_back(pattern(subs, B.object(I)));
  const Marks piMarks = marks(subs, B.object(Eo), fn(pi), B.object(U).size);
  std::vector<std::set<std::vector<int>>> sigs(nB);
  std::vector<std::set<int>> sizes(nB);
  for (ObjId I = 0; I < nB; ++I)
    for (MorId u : C.hom(I, U)) {
      sigs[I].insert(signature(piMarks, pats[I], &fn(u)));
      int n = 0;
      for (int i = 0; i < B.object(I).size; ++i)
        for (int e = 0; e < B.object(Eo).size; ++e) n += fn(u)[i] == fn(pi)[e];
      sizes[I].insert(n);
    }

  const auto& amb = M.ambient->objects();
  for (ObjId I = 0; I < nB; ++I)
    for (int X = 0; X < static_cast<int>(amb.size()); ++X) {
      if (!covers && !sizes[I].count(amb[X].size)) continue;
      for (const auto& x : equivariant_maps(G, amb[X], B.object(I))) {
        const Marks m = marks(subs, amb[X], x, B.object(I).size);
        const bool in = sigs[I].count(signature(m, pats[I], nullptr)) > 0;
        bool keep = in;
        if (!keep && covers)
          for (MorId c : C.in(I))
            if (covers->contains(c) && sigs[C.src(c)].count(signature(m, pats[C.src(c)], &fn(c)))) {
              keep = true;
              break;
            }
        if (!keep) continue;
        M.arrows.push_back({X, I, x});
        M.pulledBack.push_back(in);
      }
    }

  auto [idx, sigma] = M.ambient->canonicalize(B.object(Eo));
  std::vector<int> xc(sigma.size());
  for (size_t e = 0; e < sigma.size(); ++e) xc[sigma[e]] = fn(pi)[e];
  M.piObject = M.find({idx, U, xc});
  if (M.piObject == kNone) throw Error("Internal", {pi}, "the map itself is missing");
  if (mat) materialize(M);
  return M;
}

std::string list_text(const std::vector<int>& xs) {
  std::string s = "[";
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

}  // namespace

ObjId MapFibration::find(const Arrow& a) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].X == a.X && arrows[i].I == a.I && arrows[i].x == a.x) return static_cast<ObjId>(i);
  return kNone;
}

MapFibration subfibration_from_map(const GSetBase& B, MorId pi, bool mat) { return build(B, pi, nullptr, mat); }

MapFibration stack_completion(const GSetBase& B, MorId pi, const MorphismClass& covers, bool mat) {
  return build(B, pi, &covers, mat);
}

void materialize(MapFibration& M) {
  const FinCat& C = *M.base.cat;
  const Concrete& cc = *C.concrete();
  const Group& G = M.base.group();
  const auto& amb = M.ambient->objects();
  const int n = static_cast<int>(M.arrows.size());

  FinCat::Shape sh;
  sh.objects = n;
  for (const auto& a : M.arrows)
    sh.objectNames.push_back(gset_name(G, amb[a.X]) + "->" + C.object_name(a.I) + list_text(a.x));
  struct Square {
    MorId b;
    std::vector<int> a;
  };
  std::vector<Square> squares;
  std::map<std::tuple<int, int, MorId, std::vector<int>>, MorId> index;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto& X = M.arrows[s];
      const auto& Y = M.arrows[t];
      for (MorId b : C.hom(X.I, Y.I)) {
        const auto& bf = cc.functions[b][0];
        for_each_equivariant(
            G, amb[X.X], amb[Y.X], [&](int r, int y) { return Y.x[y] == bf[X.x[r]]; },
            [&](const std::vector<int>& a) {
              if (static_cast<long>(squares.size()) >= kMaxSquares)
                throw InputError("BoundsTooLarge", {n}, "too many commuting squares to materialize");
              index[{s, t, b, a}] = static_cast<MorId>(squares.size());
              squares.push_back({b, a});
              sh.src.push_back(s);
              sh.tgt.push_back(t);
              sh.morphismNames.push_back(C.morphism_name(b) + list_text(a));
              return true;
            });
      }
    }
  for (int s = 0; s < n; ++s) {
    std::vector<int> id(amb[M.arrows[s].X].size);
    for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    sh.identities.push_back(index.at({s, s, C.id(M.arrows[s].I), id}));
  }
  auto src = sh.src, tgt = sh.tgt;
  auto total = std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId g, MorId f) {
    std::vector<int> a(squares[f].a.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = squares[g].a[squares[f].a[i]];
    return index.at({src[f], tgt[g], C.compose(squares[g].b, squares[f].b), a});
  }));
  FinFunctor p{total, M.base.cat, {}, {}};
  for (const auto& a : M.arrows) p.objMap.push_back(a.I);
  for (const auto& sq : squares) p.morMap.push_back(sq.b);
  M.fib = analyze(std::move(p));
}

}  // namespace fibcat
