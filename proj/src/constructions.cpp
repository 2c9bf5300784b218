#include "fibcat/constructions.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace fibcat {

namespace {

std::vector<int> hom_positions(const FinCat& c) {
  std::vector<int> pos(c.num_morphisms());
  for (int a = 0; a < c.num_objects(); ++a)
    for (int b = 0; b < c.num_objects(); ++b) {
      auto h = c.hom(a, b);
      for (size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<int>(i);
    }
  return pos;
}

// All tuples of length k over {0..n-1}, first entry most significant.
std::vector<std::vector<int>> tuples(int k, int n) {
  std::vector<std::vector<int>> out;
  if (k > 0 && n == 0) return out;
  std::vector<int> t(k, 0);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == n - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return out;
}

std::string list_text(const std::vector<std::string>& xs) {
  std::string s = "[";
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s + "]";
}

}  // namespace

// ---------------------------------------------------------------- families

ObjId Fam::find(const std::vector<ObjId>& family) const {
  for (ObjId o = 0; o < static_cast<int>(families.size()); ++o)
    if (families[o] == family) return o;
  return kNone;
}

Fam fam(const CatPtr& C, int N) {
  Fam F;
  F.C = C;
  F.N = N;
  F.base = finset_skel(N);
  const FinCat& B = *F.base;
  const Concrete& bc = *B.concrete();
  const int n0 = C->num_objects();

  std::map<std::vector<int>, ObjId> objIndex;
  FinCat::Shape sh;
  for (int k = 0; k <= N; ++k)
    for (auto& t : tuples(k, n0)) {
      objIndex.emplace(t, static_cast<ObjId>(F.families.size()));
      std::vector<std::string> names;
      for (int x : t) names.push_back(C->object_name(x));
      sh.objectNames.push_back(list_text(names));
      F.families.push_back(t);
    }
  const int nObj = static_cast<int>(F.families.size());
  sh.objects = nObj;

  struct Mor {
    MorId u;
    std::vector<MorId> comps;
  };
  std::vector<Mor> mors;
  std::map<std::vector<int>, MorId> morIndex;  // (X, Y, u, comps...)
  for (ObjId X = 0; X < nObj; ++X)
    for (ObjId Y = 0; Y < nObj; ++Y) {
      const auto& xs = F.families[X];
      const auto& ys = F.families[Y];
      const int k = static_cast<int>(xs.size());
      for (MorId u : B.hom(k, static_cast<int>(ys.size()))) {
        const auto& fn = bc.functions[u][0];
        std::vector<std::span<const MorId>> homs;
        bool empty = false;
        for (int j = 0; j < k; ++j) {
          homs.push_back(C->hom(xs[j], ys[fn[j]]));
          if (homs.back().empty()) empty = true;
        }
        if (empty) continue;
        std::vector<size_t> pos(k, 0);
        while (true) {
          Mor m{u, std::vector<MorId>(k)};
          for (int j = 0; j < k; ++j) m.comps[j] = homs[j][pos[j]];
          std::vector<int> key{X, Y, u};
          key.insert(key.end(), m.comps.begin(), m.comps.end());
          morIndex.emplace(std::move(key), static_cast<MorId>(mors.size()));
          std::vector<std::string> names;
          for (MorId c : m.comps) names.push_back(C->morphism_name(c));
          sh.morphismNames.push_back(B.morphism_name(u) + list_text(names));
          sh.src.push_back(X);
          sh.tgt.push_back(Y);
          mors.push_back(std::move(m));
          if (static_cast<long>(mors.size()) > kMaxSquares)
            throw InputError("BoundsTooLarge", {N}, "family fibration has too many morphisms");
          int j = k - 1;
          while (j >= 0 && pos[j] + 1 == homs[j].size()) pos[j--] = 0;
          if (j < 0) break;
          ++pos[j];
        }
      }
    }
  auto key_of = [](ObjId X, ObjId Y, MorId u, const std::vector<MorId>& comps) {
    std::vector<int> key{X, Y, u};
    key.insert(key.end(), comps.begin(), comps.end());
    return key;
  };
  for (ObjId X = 0; X < nObj; ++X) {
    const auto& xs = F.families[X];
    std::vector<MorId> ids;
    for (int x : xs) ids.push_back(C->id(x));
    sh.identities.push_back(morIndex.at(key_of(X, X, B.id(static_cast<int>(xs.size())), ids)));
  }
  auto src = sh.src, tgt = sh.tgt;
  auto total = std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId g, MorId f) {
    const auto& fu = bc.functions[mors[f].u][0];
    std::vector<MorId> comps(fu.size());
    for (size_t j = 0; j < fu.size(); ++j) comps[j] = C->compose(mors[g].comps[fu[j]], mors[f].comps[j]);
    return morIndex.at(key_of(src[f], tgt[g], B.compose(mors[g].u, mors[f].u), comps));
  }));

  FinFunctor p{total, F.base, {}, {}};
  for (const auto& t : F.families) p.objMap.push_back(static_cast<int>(t.size()));
  for (const auto& m : mors) p.morMap.push_back(m.u);
  F.fib = analyze(std::move(p));
  F.cleavage = std::make_shared<const Cleavage>(Cleavage::from_function(F.fib, [&](MorId u, ObjId Y) {
    const auto& fu = bc.functions[u][0];
    std::vector<ObjId> xs(fu.size());
    std::vector<MorId> ids(fu.size());
    for (size_t j = 0; j < fu.size(); ++j) {
      xs[j] = F.families[Y][fu[j]];
      ids[j] = C->id(xs[j]);
    }
    return morIndex.at(key_of(objIndex.at(xs), Y, u, ids));
  }));
  return F;
}

ObjId skeletal_generic_candidate(const Fam& F) {
  SkeletonData sd = skeleton_data(*F.C);
  int k = static_cast<int>(sd.section.size());
  if (k > F.N) throw Error("BoundTooSmall", {k, F.N}, "more isomorphism classes than the index bound");
  return F.find(sd.section);
}

// ------------------------------------------------------- internal categories

std::optional<std::string> check_internal_equations(const InternalCat& ic) {
  const FinCat& B = *ic.base;
  auto pos = hom_positions(B);
  const int nB = B.num_objects();
  for (ObjId J = 0; J < nB; ++J) {
    auto objs = B.hom(J, ic.C0);
    const int np = ic.points[J];
    for (size_t a = 0; a < objs.size(); ++a) {
      int e = ic.identity[J][a];
      if (e < 0 || e >= np) return "identity-defined";
      if (ic.src[J][e] != objs[a]) return "s∘i=id";
      if (ic.tgt[J][e] != objs[a]) return "t∘i=id";
    }
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < np; ++q) {
        int r = ic.compose(J, p, q);
        if (ic.tgt[J][p] != ic.src[J][q]) {
          if (r != -1) return "composition-domain";
          continue;
        }
        if (r < 0 || r >= np) return "composition-defined";
        if (ic.src[J][r] != ic.src[J][p]) return "s∘c=s∘π1";
        if (ic.tgt[J][r] != ic.tgt[J][q]) return "t∘c=t∘π2";
      }
    for (int p = 0; p < np; ++p) {
      int eS = ic.identity[J][pos[ic.src[J][p]]];
      int eT = ic.identity[J][pos[ic.tgt[J][p]]];
      if (ic.compose(J, eS, p) != p) return "unit-left";
      if (ic.compose(J, p, eT) != p) return "unit-right";
    }
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < np; ++q) {
        int pq = ic.compose(J, p, q);
        if (pq < 0) continue;
        for (int r = 0; r < np; ++r) {
          int qr = ic.compose(J, q, r);
          if (qr < 0) continue;
          if (ic.compose(J, pq, r) != ic.compose(J, p, qr)) return "associativity";
        }
      }
  }
  for (MorId u = 0; u < B.num_morphisms(); ++u) {
    const ObjId J = B.src(u), I = B.tgt(u);
    const auto& ru = ic.restrict[u];
    for (int p = 0; p < ic.points[I]; ++p) {
      int rp = ru[p];
      if (rp < 0 || rp >= ic.points[J]) return "restriction-defined";
      if (ic.src[J][rp] != B.compose(ic.src[I][p], u)) return "naturality-source";
      if (ic.tgt[J][rp] != B.compose(ic.tgt[I][p], u)) return "naturality-target";
    }
    auto objs = B.hom(I, ic.C0);
    for (size_t a = 0; a < objs.size(); ++a)
      if (ru[ic.identity[I][a]] != ic.identity[J][pos[B.compose(objs[a], u)]]) return "naturality-identity";
    for (int p = 0; p < ic.points[I]; ++p)
      for (int q = 0; q < ic.points[I]; ++q) {
        int r = ic.compose(I, p, q);
        if (r >= 0 && ru[r] != ic.compose(J, ru[p], ru[q])) return "naturality-composition";
      }
    if (B.is_identity(u))
      for (int p = 0; p < ic.points[I]; ++p)
        if (ru[p] != p) return "restriction-identity";
    for (MorId w : B.in(J)) {
      const auto& rw = ic.restrict[w];
      const auto& ruw = ic.restrict[B.compose(u, w)];
      for (int p = 0; p < ic.points[I]; ++p)
        if (ruw[p] != rw[ru[p]]) return "restriction-composite";
    }
  }
  return std::nullopt;
}

void require_internal_equations(const InternalCat& ic) {
  if (auto bad = check_internal_equations(ic)) throw Error("EquationFailed", {}, *bad);
}

namespace {

// Presheaf form of a representable C1: points at J are hom(J, C1).
InternalCat representable_form(const CatPtr& B, ObjId C0, ObjId C1, MorId s, MorId t,
                               const std::function<MorId(MorId)>& identityOf,
                               const std::function<MorId(ObjId J, MorId p, MorId q)>& composeOf) {
  const FinCat& b = *B;
  auto pos = hom_positions(b);
  InternalCat ic;
  ic.base = B;
  ic.C0 = C0;
  const int nB = b.num_objects();
  ic.points.resize(nB);
  ic.src.resize(nB);
  ic.tgt.resize(nB);
  ic.identity.resize(nB);
  ic.comp.resize(nB);
  for (ObjId J = 0; J < nB; ++J) {
    auto pts = b.hom(J, C1);
    const int np = static_cast<int>(pts.size());
    ic.points[J] = np;
    for (MorId p : pts) {
      ic.src[J].push_back(b.compose(s, p));
      ic.tgt[J].push_back(b.compose(t, p));
    }
    for (MorId a : b.hom(J, C0)) ic.identity[J].push_back(pos[identityOf(a)]);
    ic.comp[J].assign(static_cast<size_t>(np) * np, -1);
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < np; ++q)
        if (ic.tgt[J][p] == ic.src[J][q]) {
          MorId r = composeOf(J, pts[p], pts[q]);
          ic.comp[J][static_cast<size_t>(p) * np + q] = r < 0 ? -1 : pos[r];
        }
  }
  ic.restrict.resize(b.num_morphisms());
  for (MorId u = 0; u < b.num_morphisms(); ++u)
    for (MorId p : b.hom(b.tgt(u), C1)) ic.restrict[u].push_back(pos[b.compose(p, u)]);
  return ic;
}

}  // namespace

InternalCat validate_internal_cat(const CatPtr& B, const InternalCatData& d) {
  const FinCat& b = *B;
  auto in_range = [&](MorId m, ObjId s, ObjId t) { return m >= 0 && m < b.num_morphisms() && b.src(m) == s && b.tgt(m) == t; };
  if (d.C0 < 0 || d.C0 >= b.num_objects() || d.C1 < 0 || d.C1 >= b.num_objects())
    throw InputError("BadIndex", {d.C0, d.C1}, "object out of range");
  if (!in_range(d.s, d.C1, d.C0) || !in_range(d.t, d.C1, d.C0) || !in_range(d.i, d.C0, d.C1))
    throw InputError("BadIndex", {d.s, d.t, d.i}, "structure map has wrong endpoints");
  if (b.compose(d.s, d.i) != b.id(d.C0)) throw Error("EquationFailed", {d.s, d.i}, "s∘i=id");
  if (b.compose(d.t, d.i) != b.id(d.C0)) throw Error("EquationFailed", {d.t, d.i}, "t∘i=id");
  std::optional<PullbackCone> P = d.P;
  if (!P) P = pullback(b, d.t, d.s);
  if (!P) throw Error("MissingPullback", {d.t, d.s}, "C1 ×_C0 C1 does not exist in the base");
  if (!is_pullback_square(b, d.t, d.s, P->p1, P->p2)) throw InputError("BadPullback", {P->p1, P->p2}, "not a pullback");
  if (!in_range(d.c, P->apex, d.C1)) throw InputError("BadIndex", {d.c}, "composition has wrong endpoints");
  if (b.compose(d.s, d.c) != b.compose(d.s, P->p1)) throw Error("EquationFailed", {d.s, d.c}, "s∘c=s∘π1");
  if (b.compose(d.t, d.c) != b.compose(d.t, P->p2)) throw Error("EquationFailed", {d.t, d.c}, "t∘c=t∘π2");
  PullbackCone cone = *P;
  InternalCat ic = representable_form(
      B, d.C0, d.C1, d.s, d.t, [&](MorId a) { return b.compose(d.i, a); },
      [&](ObjId J, MorId p, MorId q) {
        for (MorId k : b.hom(J, cone.apex))
          if (b.compose(cone.p1, k) == p && b.compose(cone.p2, k) == q) return b.compose(d.c, k);
        return kNone;
      });
  require_internal_equations(ic);
  return ic;
}

InternalCat encode_small_category(const FinCat& C, int N) {
  const int n0 = C.num_objects();
  const int n1 = C.num_morphisms();
  if (n0 > N) throw Error("BoundTooSmall", {n0, N}, "C0 does not fit in the index bound");
  InternalCat ic;
  ic.base = finset_skel(N);
  const FinCat& B = *ic.base;
  const Concrete& bc = *B.concrete();
  ic.C0 = n0;
  const int nB = B.num_objects();
  ic.points.resize(nB);
  ic.src.resize(nB);
  ic.tgt.resize(nB);
  ic.identity.resize(nB);
  ic.comp.resize(nB);
  ic.pointNames.resize(nB);
  std::vector<std::map<std::vector<int>, int>> index(nB);
  std::vector<std::vector<std::vector<int>>> pts(nB);
  for (ObjId J = 0; J < nB; ++J) {  // object J is the set of size J
    pts[J] = tuples(J, n1);
    const int np = static_cast<int>(pts[J].size());
    ic.points[J] = np;
    for (int p = 0; p < np; ++p) {
      const auto& t = pts[J][p];
      index[J].emplace(t, p);
      std::vector<int> s(J), g(J);
      std::vector<std::string> names;
      for (int j = 0; j < J; ++j) {
        s[j] = C.src(t[j]);
        g[j] = C.tgt(t[j]);
        names.push_back(C.morphism_name(t[j]));
      }
      ic.src[J].push_back(bc.find(J, n0, {s}));
      ic.tgt[J].push_back(bc.find(J, n0, {g}));
      ic.pointNames[J].push_back(list_text(names));
    }
    for (MorId a : B.hom(J, n0)) {
      const auto& fa = bc.functions[a][0];
      std::vector<int> t(J);
      for (int j = 0; j < J; ++j) t[j] = C.id(fa[j]);
      ic.identity[J].push_back(index[J].at(t));
    }
    ic.comp[J].assign(static_cast<size_t>(np) * np, -1);
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < np; ++q) {
        if (ic.tgt[J][p] != ic.src[J][q]) continue;
        std::vector<int> t(J);
        for (int j = 0; j < J; ++j) t[j] = C.compose(pts[J][q][j], pts[J][p][j]);
        ic.comp[J][static_cast<size_t>(p) * np + q] = index[J].at(t);
      }
  }
  ic.restrict.resize(B.num_morphisms());
  for (MorId u = 0; u < B.num_morphisms(); ++u) {
    const ObjId J = B.src(u), I = B.tgt(u);
    const auto& fu = bc.functions[u][0];
    for (const auto& t : pts[I]) {
      std::vector<int> r(J);
      for (int j = 0; j < J; ++j) r[j] = t[fu[j]];
      ic.restrict[u].push_back(index[J].at(r));
    }
  }
  return ic;
}

ObjId terminal_object(const FinCat& B) {
  for (ObjId o = 0; o < B.num_objects(); ++o) {
    bool term = true;
    for (ObjId J = 0; J < B.num_objects() && term; ++J) term = B.hom(J, o).size() == 1;
    if (term) return o;
  }
  throw Error("NoTerminalObject", {}, "base has no terminal object");
}

GroupObject componentwise_group(const CatPtr& B, ObjId carrier, const std::vector<Group>& groups,
                                const std::string& name) {
  const Concrete* bc = B->concrete();
  if (!bc) throw InputError("NotConcrete", {}, "componentwise group needs a concrete base");
  const auto& sizes = bc->sizes[carrier];
  if (sizes.size() != groups.size()) throw InputError("BadGroupObject", {carrier}, "one group per component");
  for (size_t c = 0; c < groups.size(); ++c) {
    validate_group(groups[c]);
    if (groups[c].order() != sizes[c]) throw InputError("BadGroupObject", {static_cast<int>(c)}, "component size != group order");
  }
  GroupObject G;
  G.base = B;
  G.name = name;
  G.carrier = carrier;
  G.terminal = terminal_object(*B);
  auto pos = hom_positions(*B);
  const int nB = B->num_objects();
  G.mul.resize(nB);
  G.unit.resize(nB);
  G.inv.resize(nB);
  auto lookup = [&](ObjId J, const std::vector<Concrete::Fn>& fns) {
    MorId m = bc->find(J, carrier, fns);
    if (m == kNone) throw Error("NotAGroupObject", {J}, "pointwise operation leaves the base");
    return pos[m];
  };
  for (ObjId J = 0; J < nB; ++J) {
    auto el = B->hom(J, carrier);
    const int n = static_cast<int>(el.size());
    const auto& js = bc->sizes[J];
    std::vector<Concrete::Fn> unit(groups.size());
    for (size_t c = 0; c < groups.size(); ++c) unit[c].assign(js[c], 0);
    G.unit[J] = lookup(J, unit);
    G.mul[J].assign(static_cast<size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a) {
      const auto& fa = bc->functions[el[a]];
      std::vector<Concrete::Fn> inv = fa;
      for (size_t c = 0; c < groups.size(); ++c)
        for (auto& x : inv[c]) x = groups[c].inverse(x);
      G.inv[J].push_back(lookup(J, inv));
      for (int b = 0; b < n; ++b) {
        const auto& fb = bc->functions[el[b]];
        std::vector<Concrete::Fn> r = fa;
        for (size_t c = 0; c < groups.size(); ++c)
          for (size_t x = 0; x < r[c].size(); ++x) r[c][x] = groups[c].mul[fa[c][x]][fb[c][x]];
        G.mul[J][static_cast<size_t>(a) * n + b] = lookup(J, r);
      }
    }
  }
  return G;
}

GroupObject trivial_group_object(const CatPtr& B) {
  GroupObject G;
  G.base = B;
  G.name = "trivial";
  G.terminal = G.carrier = terminal_object(*B);
  const int nB = B->num_objects();
  G.mul.assign(nB, {0});
  G.unit.assign(nB, 0);
  G.inv.assign(nB, {0});
  return G;
}

std::optional<std::string> check_group_object(const GroupObject& G) {
  const FinCat& B = *G.base;
  auto pos = hom_positions(B);
  for (ObjId J = 0; J < B.num_objects(); ++J) {
    const int n = G.elements(J);
    auto m = [&](int a, int b) { return G.mul[J][static_cast<size_t>(a) * n + b]; };
    for (int a = 0; a < n; ++a) {
      if (m(G.unit[J], a) != a || m(a, G.unit[J]) != a) return "unit";
      if (m(a, G.inv[J][a]) != G.unit[J] || m(G.inv[J][a], a) != G.unit[J]) return "inverse";
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (m(m(a, b), c) != m(a, m(b, c))) return "associativity";
    }
  }
  for (MorId u = 0; u < B.num_morphisms(); ++u) {
    const ObjId J = B.src(u), I = B.tgt(u);
    auto elI = B.hom(I, G.carrier);
    auto elJ = B.hom(J, G.carrier);
    const int nI = static_cast<int>(elI.size()), nJ = static_cast<int>(elJ.size());
    auto res = [&](int a) { return pos[B.compose(elI[a], u)]; };
    if (res(G.unit[I]) != G.unit[J]) return "naturality-unit";
    for (int a = 0; a < nI; ++a)
      for (int b = 0; b < nI; ++b)
        if (res(G.mul[I][static_cast<size_t>(a) * nI + b]) != G.mul[J][static_cast<size_t>(res(a)) * nJ + res(b)])
          return "naturality-multiplication";
  }
  return std::nullopt;
}

InternalCat internal_deloop(const GroupObject& G) {
  if (auto bad = check_group_object(G)) throw Error("EquationFailed", {}, "group object: " + *bad);
  const FinCat& B = *G.base;
  auto pos = hom_positions(B);
  InternalCat ic;
  ic.base = G.base;
  ic.C0 = G.terminal;
  const int nB = B.num_objects();
  ic.points.resize(nB);
  ic.src.resize(nB);
  ic.tgt.resize(nB);
  ic.identity.resize(nB);
  ic.comp.resize(nB);
  for (ObjId J = 0; J < nB; ++J) {
    const int n = G.elements(J);
    MorId bang = B.hom(J, G.terminal)[0];
    ic.points[J] = n;
    ic.src[J].assign(n, bang);
    ic.tgt[J].assign(n, bang);
    ic.identity[J] = {G.unit[J]};
    ic.comp[J].assign(static_cast<size_t>(n) * n, -1);
    // p then q is q·p
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) ic.comp[J][static_cast<size_t>(p) * n + q] = G.mul[J][static_cast<size_t>(q) * n + p];
  }
  ic.restrict.resize(B.num_morphisms());
  for (MorId u = 0; u < B.num_morphisms(); ++u)
    for (MorId a : B.hom(B.tgt(u), G.carrier)) ic.restrict[u].push_back(pos[B.compose(a, u)]);
  require_internal_equations(ic);
  return ic;
}

// --------------------------------------------------- presheaves of categories

std::optional<std::string> check_psh(const PshCat& P) {
  const FinCat& B = *P.base;
  for (MorId u = 0; u < B.num_morphisms(); ++u) {
    const FinFunctor& F = P.reindex[u];
    if (F.dom != P.fibers[B.tgt(u)] || F.cod != P.fibers[B.src(u)]) return "reindexing has wrong fibers";
    if (auto err = check_functor(F)) return std::string("reindexing is not a functor: ") + err->what();
    if (B.is_identity(u)) {
      for (size_t o = 0; o < F.objMap.size(); ++o)
        if (F.objMap[o] != static_cast<int>(o)) return "identity";
      for (size_t m = 0; m < F.morMap.size(); ++m)
        if (F.morMap[m] != static_cast<int>(m)) return "identity";
    }
    for (MorId w : B.in(B.src(u))) {
      FinFunctor both = compose_functors(P.reindex[w], F);
      const FinFunctor& direct = P.reindex[B.compose(u, w)];
      if (both.objMap != direct.objMap || both.morMap != direct.morMap) return "composite";
    }
  }
  return std::nullopt;
}

PshCat psh_of_cats(const InternalCat& ic) {
  const FinCat& B = *ic.base;
  auto pos = hom_positions(B);
  PshCat P;
  P.base = ic.base;
  const int nB = B.num_objects();
  for (ObjId J = 0; J < nB; ++J) {
    auto objs = B.hom(J, ic.C0);
    FinCat::Shape sh;
    sh.objects = static_cast<int>(objs.size());
    for (MorId a : objs) sh.objectNames.push_back(B.morphism_name(a));
    for (int p = 0; p < ic.points[J]; ++p) {
      sh.src.push_back(pos[ic.src[J][p]]);
      sh.tgt.push_back(pos[ic.tgt[J][p]]);
      if (J < static_cast<int>(ic.pointNames.size()) && p < static_cast<int>(ic.pointNames[J].size()))
        sh.morphismNames.push_back(ic.pointNames[J][p]);
      else
        sh.morphismNames.push_back("p" + std::to_string(p));
    }
    sh.identities = ic.identity[J];
    P.fibers.push_back(std::make_shared<const FinCat>(
        FinCat::build(std::move(sh), [&](MorId g, MorId f) { return ic.compose(J, f, g); })));
  }
  for (MorId u = 0; u < B.num_morphisms(); ++u) {
    const ObjId J = B.src(u), I = B.tgt(u);
    FinFunctor F{P.fibers[I], P.fibers[J], {}, ic.restrict[u]};
    for (MorId a : B.hom(I, ic.C0)) F.objMap.push_back(pos[B.compose(a, u)]);
    P.reindex.push_back(std::move(F));
  }
  return P;
}

Grothendieck grothendieck(const PshCat& P) {
  if (auto bad = check_psh(P)) throw Error("NotAPresheaf", {}, *bad);
  Grothendieck G;
  G.psh = std::make_shared<const PshCat>(P);
  const FinCat& B = *P.base;
  FinCat::Shape sh;
  for (ObjId I = 0; I < B.num_objects(); ++I) {
    G.objStart.push_back(static_cast<int>(G.objects.size()));
    for (ObjId c = 0; c < P.fibers[I]->num_objects(); ++c) {
      G.objects.emplace_back(I, c);
      sh.objectNames.push_back("(" + B.object_name(I) + "," + P.fibers[I]->object_name(c) + ")");
    }
  }
  G.objStart.push_back(static_cast<int>(G.objects.size()));
  const int nObj = static_cast<int>(G.objects.size());
  sh.objects = nObj;
  std::vector<std::array<int, 2>> mors;  // (u, h)
  std::map<std::array<int, 4>, MorId> index;
  for (ObjId X = 0; X < nObj; ++X) {
    auto [J, c] = G.objects[X];
    for (ObjId Y = 0; Y < nObj; ++Y) {
      auto [I, d] = G.objects[Y];
      for (MorId u : B.hom(J, I)) {
        ObjId ud = P.reindex[u].objMap[d];
        for (MorId h : P.fibers[J]->hom(c, ud)) {
          index.emplace(std::array<int, 4>{X, Y, u, h}, static_cast<MorId>(mors.size()));
          mors.push_back({u, h});
          sh.src.push_back(X);
          sh.tgt.push_back(Y);
          sh.morphismNames.push_back("(" + B.morphism_name(u) + "," + P.fibers[J]->morphism_name(h) + ")");
        }
      }
    }
  }
  for (ObjId X = 0; X < nObj; ++X) {
    auto [I, c] = G.objects[X];
    sh.identities.push_back(index.at({X, X, B.id(I), P.fibers[I]->id(c)}));
  }
  auto src = sh.src, tgt = sh.tgt;
  auto total = std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId g, MorId f) {
    auto [u, h] = mors[f];
    auto [v, k] = mors[g];
    const ObjId J = B.src(u);
    MorId uk = P.reindex[u].morMap[k];
    return index.at({src[f], tgt[g], B.compose(v, u), P.fibers[J]->compose(uk, h)});
  }));
  FinFunctor p{total, P.base, {}, {}};
  for (auto [I, c] : G.objects) p.objMap.push_back(I);
  for (auto [u, h] : mors) {
    p.morMap.push_back(u);
    G.morphisms.emplace_back(u, h);
  }
  G.fib = analyze(std::move(p));
  G.cleavage = std::make_shared<const Cleavage>(Cleavage::from_function(G.fib, [&](MorId u, ObjId Y) {
    auto [I, d] = G.objects[Y];
    const ObjId J = B.src(u);
    ObjId ud = P.reindex[u].objMap[d];
    return index.at({G.object(J, ud), Y, u, P.fibers[J]->id(ud)});
  }));
  return G;
}

Externalization externalize(const InternalCat& ic) {
  require_internal_equations(ic);
  Externalization X{grothendieck(psh_of_cats(ic)), 0};
  const FinCat& B = *ic.base;
  auto homs = B.hom(ic.C0, ic.C0);
  auto it = std::find(homs.begin(), homs.end(), B.id(ic.C0));
  X.T = X.g.object(ic.C0, static_cast<int>(it - homs.begin()));
  return X;
}

}  // namespace fibcat
