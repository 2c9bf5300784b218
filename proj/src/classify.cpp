#include "fibcat/classify.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace fibcat {

namespace {

std::string g_mutation;

// Cartesian maps X → T grouped by source.
std::vector<std::vector<MorId>> cartesian_to(const CartesianFunctor& p, ObjId T) {
  std::vector<std::vector<MorId>> by(p.total().num_objects());
  for (MorId f : p.cartesian_into(T)) by[p.total().src(f)].push_back(f);
  return by;
}

Witness range(const CartesianFunctor& p, const std::string& what) {
  return {"checked " + what + " over all " + std::to_string(p.total().num_objects()) + " objects", {}};
}

Verdict generic_from(const CartesianFunctor& p, const std::vector<std::vector<MorId>>& into) {
  for (ObjId X = 0; X < p.total().num_objects(); ++X)
    if (into[X].empty()) return {false, {"no cartesian map from X", {{"X", X}}}};
  return {true, range(p, "a cartesian map into T")};
}

Verdict split_generic_unchecked(const Cleavage& cl, ObjId T) {
  const CartesianFunctor& p = cl.fibration();
  const FinCat& B = p.base();
  for (ObjId X = 0; X < p.total().num_objects(); ++X) {
    std::vector<MorId> us;
    for (MorId u : B.hom(p.over(X), p.over(T)))
      if (cl.reindex(u, T) == X) us.push_back(u);
    if (us.size() != 1) {
      Witness w{us.empty() ? "X is no reindexing of T" : "X is the reindexing of T along two base maps", {{"X", X}}};
      for (size_t i = 0; i < us.size() && i < 2; ++i) w.path.emplace_back("u" + std::to_string(i + 1), us[i]);
      return {false, w};
    }
  }
  return {true, range(cl.fibration(), "a unique u with u*T = X")};
}

Verdict acyclic_from(const CartesianFunctor& p, ObjId T, const MorphismClass& monos,
                     const std::vector<std::vector<MorId>>& into) {
  const FinCat& E = p.total();
  if (auto g = generic_from(p, into); !g.holds) return {false, {"not generic: " + g.witness.text, g.witness.path}};
  for (MorId f : p.cartesian_into(T)) {
    const ObjId Uo = E.src(f);
    for (MorId m : E.out(Uo)) {
      if (!p.cartesian(m) || !monos.contains(p.over_mor(m))) continue;
      const ObjId X = E.tgt(m);
      bool filled = false;
      for (MorId g : into[X])
        if (E.compose(g, m) == f) {
          filled = true;
          break;
        }
      if (!filled)
        return {false,
                {"span U → T, U → X has no cartesian filler X → T", {{"U", Uo}, {"X", X}, {"f", f}, {"m", m}}}};
    }
  }
  return {true, {"checked every cartesian span with leg over " + monos.name, {}}};
}

Verdict weak_stack_from(const CartesianFunctor& p, const MorphismClass& covers,
                        const std::vector<std::vector<MorId>>& into) {
  const FinCat& E = p.total();
  for (ObjId X = 0; X < E.num_objects(); ++X) {
    bool ok = false;
    for (MorId c : E.in(X))
      if (!into[E.src(c)].empty() && is_cover_cartesian(p, c, covers)) {
        ok = true;
        break;
      }
    if (!ok) return {false, {"no cover-cartesian X~ → X with X~ mapping cartesianly to T", {{"X", X}}}};
  }
  return {true, range(p, "a cover-cartesian span over " + covers.name)};
}

}  // namespace

void set_mutation(const std::string& name) { g_mutation = name; }
const std::string& mutation() { return g_mutation; }

Verdict is_generic(const CartesianFunctor& p, ObjId T) { return generic_from(p, cartesian_to(p, T)); }

Verdict is_skeletal_generic(const CartesianFunctor& p, ObjId T) {
  auto into = cartesian_to(p, T);
  for (ObjId X = 0; X < p.total().num_objects(); ++X) {
    std::vector<MorId> us, fs;
    for (MorId f : into[X])
      if (std::find(us.begin(), us.end(), p.over_mor(f)) == us.end()) {
        us.push_back(p.over_mor(f));
        fs.push_back(f);
      }
    if (us.size() == 1) continue;
    if (us.empty()) return {false, {"no cartesian map from X", {{"X", X}}}};
    return {false,
            {"cartesian maps from X over two base maps", {{"X", X}, {"u1", us[0]}, {"u2", us[1]}, {"f1", fs[0]}, {"f2", fs[1]}}}};
  }
  return {true, range(p, "exactly one base map carrying cartesian maps into T")};
}

Verdict is_gaunt_generic(const CartesianFunctor& p, ObjId T) {
  auto into = cartesian_to(p, T);
  Verdict v{true, range(p, "exactly one cartesian map into T")};
  for (ObjId X = 0; X < p.total().num_objects(); ++X) {
    if (into[X].size() == 1) continue;
    if (into[X].empty())
      v = {false, {"no cartesian map from X", {{"X", X}}}};
    else
      v = {false, {"two cartesian maps from X", {{"X", X}, {"f1", into[X][0]}, {"f2", into[X][1]}}}};
    break;
  }
  if (g_mutation == "invert-gaunt") v.holds = !v.holds;
  return v;
}

Verdict is_split_generic(const Cleavage& cl, ObjId T) {
  auto chk = is_split(cl);
  if (!chk.split) throw Error("NotSplitCleavage", chk.indices, "cleavage fails at " + chk.failure);
  return split_generic_unchecked(cl, T);
}

Verdict is_acyclic_generic(const CartesianFunctor& p, ObjId T, const MorphismClass& monos) {
  return acyclic_from(p, T, monos, cartesian_to(p, T));
}

Verdict is_weak_generic_stack(const CartesianFunctor& p, ObjId T, const MorphismClass& covers) {
  return weak_stack_from(p, covers, cartesian_to(p, T));
}

Smallness smallness(const CartesianFunctor& p) {
  const FinCat& E = p.total();
  Smallness s;
  s.globalWitness = {"no object receives cartesian maps from every object", {}};
  for (ObjId T = 0; T < E.num_objects(); ++T)
    if (is_generic(p, T).holds) {
      s.globallySmall = true;
      s.globalWitness = {"generic object", {{"T", T}}};
      break;
    }
  s.locallySmall = true;
  s.localWitness = {"every pair in a fiber has a universal span", {}};
  struct Span {
    ObjId H;
    MorId f, g;
  };
  for (ObjId I = 0; I < p.base().num_objects() && s.locallySmall; ++I)
    for (ObjId X : p.objects_over(I)) {
      for (ObjId Y : p.objects_over(I)) {
        std::vector<Span> spans;
        for (ObjId H = 0; H < E.num_objects(); ++H)
          for (MorId f : E.hom(H, X)) {
            if (!p.cartesian(f)) continue;
            for (MorId g : E.hom(H, Y))
              if (p.over_mor(g) == p.over_mor(f)) spans.push_back({H, f, g});
          }
        bool found = false;
        for (const Span& c : spans) {
          bool universal = true;
          for (const Span& k : spans) {
            int n = 0;
            for (MorId m : E.hom(k.H, c.H)) n += E.compose(c.f, m) == k.f && E.compose(c.g, m) == k.g;
            if (n != 1) {
              universal = false;
              break;
            }
          }
          if (universal) {
            found = true;
            break;
          }
        }
        if (!found) {
          s.locallySmall = false;
          s.localWitness = {"no universal span", {{"I", I}, {"X", X}, {"Y", Y}}};
          break;
        }
      }
      if (!s.locallySmall) break;
    }
  return s;
}

bool has_rlp(const GroupObject& G, MorId m) {
  const FinCat& B = *G.base;
  for (MorId g : B.hom(B.src(m), G.carrier)) {
    bool ext = false;
    for (MorId h : B.hom(B.tgt(m), G.carrier))
      if (B.compose(h, m) == g) {
        ext = true;
        break;
      }
    if (!ext) return false;
  }
  return true;
}

RlpCheck acyclic_iff_rlp_check(const GroupObject& G, const MorphismClass& monos) {
  RlpCheck r;
  auto X = externalize(internal_deloop(G));
  auto v = is_acyclic_generic(*X.g.fib, X.T, monos);
  r.acyclic = v.holds;
  r.rlp = true;
  const FinCat& B = *G.base;
  for (MorId m = 0; m < B.num_morphisms() && r.rlp; ++m) {
    if (!monos.contains(m)) continue;
    for (MorId g : B.hom(B.src(m), G.carrier)) {
      bool ext = false;
      for (MorId h : B.hom(B.tgt(m), G.carrier)) ext |= B.compose(h, m) == g;
      if (!ext) {
        r.rlp = false;
        r.witness = {"element does not extend along the mono", {{"m", m}, {"g", g}}};
        break;
      }
    }
  }
  if (r.rlp) r.witness = {"every element extends along every mono in " + monos.name, {}};
  return r;
}

void audit(const GenericReport& r, bool coversContainIdentities) {
  auto fail = [&](const std::string& a, const std::string& b) {
    throw AuditError("ImplicationViolated", {r.candidate}, a + " holds but " + b + " fails");
  };
  if (r.gaunt && !r.skeletal) fail("gaunt", "skeletal");
  if (r.gaunt && r.acyclic && !*r.acyclic) fail("gaunt", "acyclic");
  if (r.skeletal && !r.generic) fail("skeletal", "generic");
  if (r.acyclic && *r.acyclic && !r.generic) fail("acyclic", "generic");
  if (r.split && *r.split && !r.generic) fail("split", "generic");
  if (coversContainIdentities && r.weakStack && r.generic && !*r.weakStack) fail("generic", "weakStack");
}

GenericReport classify_object(const CartesianFunctor& p, ObjId T, const ClassifyOptions& opts) {
  if (T < 0 || T >= p.total().num_objects()) throw InputError("BadIndex", {T}, "no such object");
  auto t0 = std::chrono::steady_clock::now();
  GenericReport r;
  r.candidate = T;
  auto into = cartesian_to(p, T);
  auto note = [&](const std::string& flag, const Verdict& v) { r.witnesses.emplace_back(flag, v.witness); };

  Verdict g = generic_from(p, into);
  r.generic = g.holds;
  note("generic", g);
  Verdict sk = is_skeletal_generic(p, T);
  r.skeletal = sk.holds;
  note("skeletal", sk);
  Verdict ga = is_gaunt_generic(p, T);
  r.gaunt = ga.holds;
  note("gaunt", ga);
  if (opts.cleavage) {
    if (&opts.cleavage->fibration() != &p) throw InputError("BadArgument", {}, "cleavage belongs to another fibration");
    SplitCheck chk;
    if (opts.cleavageSplit)
      chk.split = *opts.cleavageSplit;
    else
      chk = is_split(*opts.cleavage);
    if (chk.split) {
      Verdict sp = split_generic_unchecked(*opts.cleavage, T);
      r.split = sp.holds;
      note("split", sp);
    } else {
      r.splitSkipped = "cleavage is not split (" + chk.failure + ")";
    }
  } else {
    r.splitSkipped = "no cleavage";
  }
  const FinCat& B = p.base();
  if (opts.acyclic) {
    MorphismClass monos = opts.monos ? *opts.monos : all_monos(B);
    Verdict ac = acyclic_from(p, T, monos, into);
    r.acyclic = ac.holds;
    note("acyclic", ac);
  }
  bool idCovers = true;
  if (opts.weakStack) {
    MorphismClass covers = opts.covers ? *opts.covers : regular_epis(B);
    for (ObjId o = 0; o < B.num_objects(); ++o) idCovers &= covers.contains(B.id(o));
    Verdict ws = weak_stack_from(p, covers, into);
    r.weakStack = ws.holds;
    note("weakStack", ws);
  }
  r.timingMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  audit(r, idCovers);
  return r;
}

std::vector<ObjId> find_generic_objects(const CartesianFunctor& p, const std::string& kind,
                                        const ClassifyOptions& opts) {
  if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end())
    throw InputError("UnknownKind", {}, kind);
  std::vector<ObjId> out;
  const FinCat& B = p.base();
  MorphismClass monos = opts.monos ? *opts.monos : all_monos(B);
  MorphismClass covers = opts.covers ? *opts.covers : regular_epis(B);
  if (kind == "split") {
    if (!opts.cleavage) throw InputError("BadArgument", {}, "split needs a cleavage");
    auto chk = is_split(*opts.cleavage);
    if (!chk.split) throw Error("NotSplitCleavage", chk.indices, chk.failure);
  }
  std::vector<char> hit(p.total().num_objects(), 0);
  parallel_for(p.total().num_objects(), [&](int T) {
    if (kind == "generic")
      hit[T] = is_generic(p, T).holds;
    else if (kind == "skeletal")
      hit[T] = is_skeletal_generic(p, T).holds;
    else if (kind == "gaunt")
      hit[T] = is_gaunt_generic(p, T).holds;
    else if (kind == "split")
      hit[T] = split_generic_unchecked(*opts.cleavage, T).holds;
    else if (kind == "acyclic")
      hit[T] = is_acyclic_generic(p, T, monos).holds;
    else
      hit[T] = is_weak_generic_stack(p, T, covers).holds;
  });
  for (ObjId T = 0; T < p.total().num_objects(); ++T)
    if (hit[T]) out.push_back(T);
  return out;
}

const std::vector<Terminology>& terminology() {
  static const std::vector<Terminology> rows = {
      {"weak generic", "---", "---", "---", "weak generic"},
      {"generic", "weak generic", "generic", "generic", "generic"},
      {"acyclic generic", "---", "---", "---", "---"},
      {"skeletal generic", "generic", "---", "---", "---"},
      {"gaunt generic", "strong generic", "skeletal generic", "strong generic", "classifying"},
  };
  return rows;
}

std::string rosetta_row(const GenericReport& r) {
  const Terminology* row = nullptr;
  const auto& t = terminology();
  if (r.gaunt)
    row = &t[4];
  else if (r.skeletal)
    row = &t[3];
  else if (r.acyclic && *r.acyclic)
    row = &t[2];
  else if (r.generic)
    row = &t[1];
  else if (r.weakStack && *r.weakStack)
    row = &t[0];
  if (!row) return "not generic in any sense";
  std::string s = row->ours + " (=";
  std::vector<std::pair<std::string, std::string>> names = {
      {"Jacobs", row->jacobs}, {"Phoa", row->phoa}, {"Hermida", row->hermida}, {"Streicher", row->streicher}};
  bool any = false;
  for (auto& [who, name] : names) {
    if (name == "---") continue;
    s += std::string(any ? ";" : "") + " " + who + ": " + name;
    any = true;
  }
  if (!any) s += " no older name";
  return s + ")";
}

}  // namespace fibcat
