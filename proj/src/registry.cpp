#include <algorithm>
#include <cctype>
#include <filesystem>

#include "fibcat/classify.hpp"
#include "fibcat/io.hpp"

namespace fibcat {

namespace {

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) return out;
    start = at + sep.size();
  }
}

int number(const std::string& t) {
  if (t.empty() || t.size() > 3 || !std::all_of(t.begin(), t.end(), ::isdigit))
    throw InputError("BadArgument", {}, "expected a small number, got '" + t + "'");
  return std::stoi(t);
}

struct Tokens {
  std::vector<std::string> t;
  size_t i = 0;
  std::string expr;
  const std::string& next() {
    if (i >= t.size()) throw InputError("BadArgument", {}, "expression ends early: " + expr);
    return t[i++];
  }
  bool done() const { return i >= t.size(); }
};

CatPtr named_category(const std::string& name) {
  try {
    return category_by_name(name);
  } catch (const InputError&) {
  }
  static const auto catalogue = small_categories(8);
  for (auto& nc : catalogue)
    if (nc.name == name) return nc.cat;
  throw InputError("UnknownBuilder", {}, "unknown category '" + name + "'");
}

GSetBase parse_gset_base(Tokens& k) {
  const std::string t = k.next();
  if (t == "finset_skel" || t == "finset") return gset_category(trivial_group(), number(k.next()));
  if (t == "gsets") {
    Group G = group_by_name(k.next());
    return gset_category(G, number(k.next()));
  }
  if (t.rfind("gsets", 0) == 0) return gset_category(group_by_name(t.substr(5)), number(k.next()));
  throw InputError("UnknownBuilder", {}, "expected a finite-set or G-set base, got '" + t + "'");
}

CatPtr parse_category(Tokens& k) {
  const std::string t = k.next();
  if (t == "finset_skel" || t == "finset") return finset_skel(number(k.next()));
  if (t == "gsets" || (t.rfind("gsets", 0) == 0 && t.size() > 5)) {
    --k.i;
    return parse_gset_base(k).cat;
  }
  if (t == "arrow") return arrow_category(parse_category(k)).cat;
  if (t == "deloop") return deloop(group_by_name(k.next()));
  return named_category(t);
}

MorId parse_morphism(const GSetBase& B, const std::string& text) {
  const FinCat& C = *B.cat;
  std::string s = text;
  if (s.rfind("pi=", 0) == 0) s = s.substr(3);
  if (!s.empty() && s[0] == '#') {
    int m = number(s.substr(1));
    if (m >= C.num_morphisms()) throw InputError("BadIndex", {m}, "no such base morphism");
    return m;
  }
  auto arrow = s.find("->");
  if (arrow == std::string::npos) throw InputError("BadArgument", {}, "expected pi=E->U, got '" + text + "'");
  std::string from = s.substr(0, arrow), rest = s.substr(arrow + 2), fn;
  if (auto br = rest.find('['); br != std::string::npos) {
    fn = rest.substr(br);
    rest = rest.substr(0, br);
  }
  ObjId E = object_by_name(C, from), U = object_by_name(C, rest);
  auto hom = C.hom(E, U);
  if (hom.empty()) throw InputError("BadArgument", {E, U}, "no base morphism " + s);
  if (fn.empty()) return hom[0];
  for (MorId m : hom)
    if (C.morphism_name(m).find(fn) != std::string::npos) return m;
  std::vector<int> values;
  for (const auto& v : split(fn.substr(1, fn.size() - 2), ",")) values.push_back(number(v));
  MorId m = C.concrete()->find(E, U, {values});
  if (m == kNone) throw InputError("BadArgument", {E, U}, "no base morphism " + s);
  return m;
}

GroupObject parse_group_object(const std::string& groups, const CatPtr& B) {
  if (groups == "trivial") return trivial_group_object(B);
  std::vector<Group> gs;
  for (const auto& g : split(groups, "->")) gs.push_back(group_by_name(g));
  const Concrete* cc = B->concrete();
  if (!cc) throw InputError("BadArgument", {}, "group objects need a concrete base");
  for (ObjId o = 0; o < B->num_objects(); ++o) {
    if (cc->sizes[o].size() != gs.size()) continue;
    bool fits = true;
    for (size_t c = 0; c < gs.size(); ++c) fits &= cc->sizes[o][c] == gs[c].order();
    if (!fits) continue;
    try {
      auto G = componentwise_group(B, o, gs, groups);
      if (!check_group_object(G)) return G;
    } catch (const Error&) {
    }
  }
  throw InputError("BadArgument", {}, "no carrier in the base supports " + groups);
}

ObjId first_generic(const CartesianFunctor& p) {
  for (ObjId T = 0; T < p.total().num_objects(); ++T)
    if (is_generic(p, T).holds) return T;
  return kNone;
}

}  // namespace

CatPtr build_category(const std::string& expr) {
  if (expr.size() > 5 && expr.substr(expr.size() - 5) == ".json" && std::filesystem::exists(expr))
    return category_from_json(read_json_file(expr));
  Tokens k{split(expr, ":"), 0, expr};
  CatPtr c = parse_category(k);
  if (!k.done()) throw InputError("BadArgument", {}, "trailing input in '" + expr + "'");
  return c;
}

NamedFibration build_fibration(const std::string& expr) {
  NamedFibration nf;
  nf.name = expr;
  if (expr.size() > 5 && expr.substr(expr.size() - 5) == ".json" && std::filesystem::exists(expr)) {
    nf.fib = analyze(functor_from_json(read_json_file(expr)));
    return nf;
  }
  auto colon = expr.find(':');
  const std::string head = expr.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : expr.substr(colon + 1);
  if (head == "fam") {
    Tokens k{split(rest, ":"), 0, expr};
    CatPtr C = parse_category(k);
    int N = number(k.next());
    if (!k.done()) throw InputError("BadArgument", {}, "trailing input in '" + expr + "'");
    Fam F = fam(C, N);
    nf.fib = F.fib;
    nf.cleavage = F.cleavage;
    try {
      nf.distinguished = skeletal_generic_candidate(F);
    } catch (const Error&) {
    }
    return nf;
  }
  if (head == "externalize") {
    auto at = rest.find('@');
    if (at == std::string::npos) throw InputError("BadArgument", {}, "expected externalize:<internal>@<base>");
    const std::string inner = rest.substr(0, at), base = rest.substr(at + 1);
    Externalization X;
    if (inner.rfind("group:", 0) == 0) {
      CatPtr B = build_category(base);
      auto G = std::make_shared<const GroupObject>(parse_group_object(inner.substr(6), B));
      X = externalize(internal_deloop(*G));
      nf.group = G;
    } else {
      Tokens k{split(base, ":"), 0, expr};
      if (k.next() != "finset_skel") throw InputError("BadArgument", {}, "encoded categories live over finset_skel:N");
      int N = number(k.next());
      X = externalize(encode_small_category(*build_category(inner), N));
    }
    nf.fib = X.g.fib;
    nf.cleavage = X.g.cleavage;
    nf.distinguished = X.T;
    return nf;
  }
  if (head == "arrow") {
    auto A = arrow_category(build_category(rest));
    nf.fib = analyze(A.cod);
    return nf;
  }
  if (head == "subfib" || head == "stack") {
    auto parts = split(rest, ":");
    std::string pi, covers = "regular";
    std::vector<std::string> baseToks;
    for (const auto& p : parts) {
      if (p.rfind("pi=", 0) == 0)
        pi = p;
      else if (p.rfind("covers=", 0) == 0)
        covers = p.substr(7);
      else
        baseToks.push_back(p);
    }
    if (pi.empty()) throw InputError("BadArgument", {}, "missing pi=E->U");
    Tokens k{baseToks, 0, expr};
    GSetBase B = parse_gset_base(k);
    if (!k.done()) throw InputError("BadArgument", {}, "trailing input in '" + expr + "'");
    MorId m = parse_morphism(B, pi);
    MapFibration M;
    if (head == "subfib") {
      M = subfibration_from_map(B, m);
    } else {
      MorphismClass cov = covers == "regular" ? regular_epis(*B.cat)
                          : covers == "all"   ? all_epis(*B.cat)
                                              : throw InputError("BadArgument", {}, "covers=regular|all");
      M = stack_completion(B, m, cov);
    }
    nf.fib = M.fib;
    nf.distinguished = M.piObject;
    return nf;
  }
  if (head == "split") {
    NamedFibration inner = build_fibration(rest);
    ObjId T = inner.distinguished != kNone && is_generic(*inner.fib, inner.distinguished).holds
                  ? inner.distinguished
                  : first_generic(*inner.fib);
    if (T == kNone) throw Error("NotGeneric", {}, "no generic object in " + rest);
    auto S = split_from_weak(inner.fib, T);
    nf.fib = S.g.fib;
    nf.cleavage = S.g.cleavage;
    nf.distinguished = S.Tprime;
    return nf;
  }
  throw InputError("UnknownBuilder", {}, "unknown fibration builder '" + head + "'");
}

std::vector<std::string> builtin_fibration_names() {
  return {
      "fam:walkingIso:2",
      "fam:deloopZ2:1",
      "fam:deloopZ2:2",
      "fam:walkingArrow:2",
      "fam:twoClassGroupoid:2",
      "fam:discrete2:1",
      "fam:cospan:2",
      "fam:terminal:2",
      "externalize:walkingIso@finset_skel:2",
      "externalize:deloopZ2@finset_skel:2",
      "externalize:walkingArrow@finset_skel:2",
      "externalize:group:Z2@finset_skel:2",
      "externalize:group:1->Z2@arrow:finset_skel:2",
      "externalize:group:trivial@arrow:finset_skel:2",
      "externalize:group:Z2@gsetsZ2:2",
      "subfib:gsetsZ2:2:pi=2triv->1",
      "stack:gsetsZ2:2:pi=2triv->1",
      "subfib:finset_skel:2:pi=2->1",
      "stack:finset_skel:2:pi=2->1",
      "arrow:finset_skel:1",
      "arrow:finset_skel:2",
      "arrow:walkingArrow",
      "split:externalize:walkingIso@finset_skel:2",
      "split:fam:deloopZ2:1",
  };
}

std::vector<NamedFibration> builtin_fibrations() {
  std::vector<NamedFibration> out;
  for (const auto& n : builtin_fibration_names()) out.push_back(build_fibration(n));
  return out;
}

}  // namespace fibcat
