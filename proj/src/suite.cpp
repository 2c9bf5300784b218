#include <chrono>
#include <set>
#include <sstream>

#include "fibcat/classify.hpp"

namespace fibcat {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
  void need(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    note(what);
  }
};

ObjId generic_choice(const NamedFibration& nf) {
  const CartesianFunctor& p = *nf.fib;
  if (nf.distinguished != kNone && is_generic(p, nf.distinguished).holds) return nf.distinguished;
  for (ObjId T = 0; T < p.total().num_objects(); ++T)
    if (is_generic(p, T).holds) return T;
  return kNone;
}

ClassifyOptions with_cleavage(std::shared_ptr<const Cleavage> cl) {
  ClassifyOptions o;
  o.cleavage = std::move(cl);
  return o;
}

int path_value(const Witness& w, const std::string& key) {
  for (const auto& [k, v] : w.path)
    if (k == key) return v;
  return kNone;
}

bool fibers_are_preorders(const CartesianFunctor& p) {
  const FinCat& E = p.total();
  for (ObjId X = 0; X < E.num_objects(); ++X)
    for (ObjId Y : p.objects_over(p.over(X))) {
      int vertical = 0;
      for (MorId f : E.hom(X, Y)) vertical += p.vertical(f);
      if (vertical > 1) return false;
    }
  return true;
}

void check_split_not_skeletal(Outcome& o) {
  auto nf = build_fibration("externalize:walkingIso@finset_skel:2");
  const CartesianFunctor& p = *nf.fib;
  ObjId T = nf.distinguished;
  auto r = classify_object(p, T, with_cleavage(nf.cleavage));
  o.need(r.split && *r.split, "T is not split generic");
  o.need(!r.skeletal, "T is skeletal generic");
  Witness w = is_skeletal_generic(p, T).witness;
  MorId u1 = path_value(w, "u1"), u2 = path_value(w, "u2");
  const FinCat& B = p.base();
  const ObjId one = object_by_name(B, "1"), two = object_by_name(B, "2");
  o.need(u1 != kNone && u2 != kNone && u1 != u2, "no pair of base maps in the witness");
  if (u1 != kNone && u2 != kNone)
    o.need(B.src(u1) == one && B.src(u2) == one && B.tgt(u1) == two && B.tgt(u2) == two,
           "witness maps are not 1 -> 2");
  o.detail << (o.pass ? "split, not skeletal; u1=" + B.morphism_name(u1) + " u2=" + B.morphism_name(u2) : "");
}

void check_delooping(Outcome& o) {
  auto nf = build_fibration("externalize:deloopZ2@finset_skel:2");
  const CartesianFunctor& p = *nf.fib;
  ObjId T = nf.distinguished;
  auto r = classify_object(p, T, with_cleavage(nf.cleavage));
  o.need(r.skeletal, "T is not skeletal generic");
  o.need(!r.gaunt, "T is gaunt generic");
  int endo = 0;
  for (MorId f : p.cartesian_into(T)) endo += p.total().src(f) == T;
  o.need(endo == 2, "T has " + std::to_string(endo) + " cartesian endomorphisms, expected 2");
  if (o.pass) o.detail << "skeletal, not gaunt; 2 cartesian endomorphisms";
}

void check_skeleton(Outcome& o) {
  for (const std::string c : {"walkingIso", "deloopZ2", "walkingArrow", "twoClassGroupoid"}) {
    auto C = category_by_name(c);
    Fam F = fam(C, 2);
    ObjId T = skeletal_generic_candidate(F);
    auto r = classify_object(*F.fib, T, with_cleavage(F.cleavage));
    const auto flags = category_predicates(*C);
    const bool sk = flags.skeletal, ga = flags.gaunt;
    o.need(r.skeletal, c + ": candidate not skeletal generic");
    o.need(r.split.has_value() && *r.split == sk, c + ": split verdict disagrees with skeletality of C");
    o.need(r.gaunt == ga, c + ": gaunt verdict disagrees with gauntness of C");
  }
  if (o.pass) o.detail << "4 categories agree";
}

void check_weak_to_split(Outcome& o) {
  int done = 0;
  for (const auto& name : builtin_fibration_names()) {
    auto nf = build_fibration(name);
    if (!is_fibration(*nf.fib)) continue;
    ObjId T = generic_choice(nf);
    if (T == kNone) continue;
    auto S = split_from_weak(nf.fib, T);
    o.need(is_split(*S.g.cleavage).split, name + ": result cleavage not split");
    o.need(S.g.cleavage && is_split_generic(*S.g.cleavage, S.Tprime).holds, name + ": T' not split generic");
    o.need(S.equivalence(), name + ": comparison fails (" + S.failure + ")");
    ++done;
  }
  o.need(done > 0, "no fibration with a generic object");
  if (o.pass) o.detail << done << " fibrations split";
}

void check_strength(Outcome& o) {
  int objects = 0;
  for (const auto& name : builtin_fibration_names()) {
    auto nf = build_fibration(name);
    const CartesianFunctor& p = *nf.fib;
    ClassifyOptions opts;
    opts.monos = all_monos(p.base());
    opts.covers = regular_epis(p.base());
    if (nf.cleavage) {
      opts.cleavage = nf.cleavage;
      opts.cleavageSplit = is_split(*nf.cleavage).split;
    }
    for (ObjId T = 0; T < p.total().num_objects(); ++T, ++objects) classify_object(p, T, opts);
  }
  auto res = counterexample_search({});
  auto row = [&](const std::string& a, const std::string& b) -> const Separation& {
    for (const auto& s : res.rows)
      if (s.holds == a && s.fails == b) return s;
    throw Error("Internal", {}, "missing search row");
  };
  auto has = [](const Separation& s, const std::string& fib) {
    for (const auto& [f, T] : s.examples)
      if (f == fib) return true;
    return false;
  };
  const std::vector<std::pair<std::string, std::string>> want = {
      {"split", "skeletal"}, {"skeletal", "gaunt"}, {"acyclic", "skeletal"}, {"skeletal", "acyclic"},
      {"weakStack", "generic"}};
  for (const auto& [a, b] : want) o.need(row(a, b).found, a + " without " + b + " not found");
  o.need(!row("gaunt", "skeletal").found, "gaunt without skeletal found");
  const auto iso = build_fibration("externalize:walkingIso@finset_skel:2");
  bool isoT = false;
  for (const auto& [f, T] : row("acyclic", "skeletal").examples) isoT |= f == iso.name && T == iso.distinguished;
  o.need(isoT, "walking-iso T missing from acyclic without skeletal");
  const auto grp = build_fibration("externalize:group:1->Z2@arrow:finset_skel:2");
  bool grpT = false;
  for (const auto& [f, T] : row("skeletal", "acyclic").examples) grpT |= f == grp.name && T == grp.distinguished;
  o.need(grpT, "group-object T missing from skeletal without acyclic");
  o.need(has(row("weakStack", "generic"), "stack:gsetsZ2:2:pi=2triv->1"), "stack example missing");
  if (o.pass)
    o.detail << objects << " builtin objects audited; search covered " << res.fibrations << " fibrations, "
             << res.objects << " objects";
}

void check_rlp(Outcome& o) {
  struct Case {
    std::string expr;
    std::optional<bool> expected;
  };
  const std::vector<Case> cases = {
      {"externalize:group:Z2@finset_skel:2", true},
      {"externalize:group:1->Z2@arrow:finset_skel:2", false},
      {"externalize:group:trivial@finset_skel:2", std::nullopt},
      {"externalize:group:trivial@arrow:finset_skel:2", std::nullopt},
      {"externalize:group:trivial@gsetsZ2:2", std::nullopt},
  };
  for (const auto& c : cases) {
    auto nf = build_fibration(c.expr);
    auto r = acyclic_iff_rlp_check(*nf.group, all_monos(*nf.group->base));
    o.need(r.agree(), c.expr + ": acyclic and lifting property disagree");
    if (c.expected) o.need(r.acyclic == *c.expected, c.expr + ": unexpected acyclicity");
    if (o.pass) o.note(c.expr + (r.acyclic ? " acyclic" : " not acyclic"));
  }
}

void check_stack_completion(Outcome& o) {
  auto nf = build_fibration("stack:gsetsZ2:2:pi=2triv->1");
  const CartesianFunctor& p = *nf.fib;
  auto g = is_generic(p, nf.distinguished);
  o.need(!g.holds, "pi is generic in the stack completion");
  ObjId X = path_value(g.witness, "X");
  o.need(X != kNone && p.total().object_name(X).rfind("rho->1", 0) == 0, "witness is not the free orbit over the point");
  o.need(is_weak_generic_stack(p, nf.distinguished, regular_epis(p.base())).holds, "pi is not a weak generic stack");
  auto F = gset_category(trivial_group(), 3);
  auto covers = regular_epis(*F.cat);
  for (MorId pi = 0; pi < F.cat->num_morphisms(); ++pi) {
    auto a = subfibration_from_map(F, pi, false);
    auto b = stack_completion(F, pi, covers, false);
    bool same = a.arrows.size() == b.arrows.size();
    for (char c : b.pulledBack) same &= c != 0;
    for (const auto& arrow : a.arrows) same &= b.find(arrow) != kNone;
    o.need(same, "finite sets: completion grows for " + F.cat->morphism_name(pi));
  }
  if (o.pass) o.detail << "witness " << p.total().object_name(X) << "; finite sets unchanged";
}

void check_foundations(Outcome& o) {
  auto B = finset_skel(2);
  auto A = arrow_category(B);
  auto cf = analyze(A.cod);
  const FinCat& E = *A.cat;
  bool iff = true;
  for (MorId sq = 0; sq < E.num_morphisms(); ++sq) {
    MorId x = E.src(sq), y = E.tgt(sq), b = A.cod.morMap[sq], a = kNone;
    for (MorId cand : B->hom(B->src(x), B->src(y)))
      if (E.concrete()->functions[sq][0] == B->concrete()->functions[cand][0]) a = cand;
    iff &= cf->cartesian(sq) == is_pullback_square(*B, y, b, a, x);
  }
  o.need(iff, "cartesian squares differ from pullback squares");
  o.note(std::string("cartesian iff pullback: ") + (iff ? "yes" : "no"));
  auto miss = find_missing_lift(*cf);
  o.need(!miss, "codomain functor over finite sets of size <= 2 is not a fibration");
  if (miss)
    o.note("cod over finset_skel:2 lacks a lift (u=" + std::to_string(miss->u) + ", E=" + std::to_string(miss->E) + ")");
  bool cospanFib = is_fibration(*analyze(arrow_category(cospan_poset()).cod));
  o.need(!cospanFib, "codomain functor over the cospan is a fibration");
  o.note(std::string("cospan cod fibration: ") + (cospanFib ? "yes" : "no"));
  int ok = 0;
  for (const auto& name : builtin_fibration_names()) {
    if (name.rfind("fam:", 0) && name.rfind("externalize:", 0) && name.rfind("split:", 0)) continue;
    auto nf = build_fibration(name);
    bool good = is_fibration(*nf.fib) && nf.cleavage && is_split(*nf.cleavage).split;
    o.need(good, name + ": not a fibration with split cleavage");
    ok += good;
  }
  o.note(std::to_string(ok) + " constructed fibrations split");
}

void check_preorders(Outcome& o) {
  int fibs = 0;
  for (const auto& name : builtin_fibration_names()) {
    auto nf = build_fibration(name);
    const CartesianFunctor& p = *nf.fib;
    if (!fibers_are_preorders(p)) continue;
    ++fibs;
    for (ObjId T = 0; T < p.total().num_objects(); ++T)
      o.need(is_skeletal_generic(p, T).holds == is_gaunt_generic(p, T).holds,
             name + ": skeletal and gaunt differ at " + std::to_string(T));
  }
  o.need(fibs > 0, "no fibered preorder among the builtins");
  if (o.pass) o.detail << fibs << " fibered preorders agree";
}

struct Criterion {
  const char* key;
  double limitMs;
  void (*run)(Outcome&);
};

const Criterion kChecks[] = {
    {"split-not-skeletal", 1000, check_split_not_skeletal},
    {"delooping", 1000, check_delooping},
    {"skeleton", 5000, check_skeleton},
    {"weak-to-split", 10000, check_weak_to_split},
    {"strength", 120000, check_strength},
    {"rlp", 30000, check_rlp},
    {"stack-completion", 30000, check_stack_completion},
    {"foundations", 30000, check_foundations},
    {"preorder-coincidence", 5000, check_preorders},
};

}  // namespace

SuiteCheck run_suite_check(int n) {
  if (n < 1 || n > 9) throw InputError("BadIndex", {n}, "suite checks are numbered 1..9");
  const Criterion& s = kChecks[n - 1];
  SuiteCheck c{s.key, false, "", 0, s.limitMs};
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    s.run(o);
  } catch (const Error& e) {
    o.need(false, e.kind() + ": " + e.what());
  }
  c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  o.need(c.ms <= c.limitMs, "over the time limit");
  c.pass = o.pass;
  c.detail = o.detail.str();
  return c;
}

std::vector<SuiteCheck> run_suite() {
  std::vector<SuiteCheck> out;
  for (int n = 1; n <= 9; ++n) out.push_back(run_suite_check(n));
  return out;
}

}  // namespace fibcat
