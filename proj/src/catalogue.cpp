#include "fibcat/catalogue.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fibcat {

int Group::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (mul[a][b] == 0 && mul[b][a] == 0) return b;
  return -1;
}

bool is_monoid_table(const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) return false;
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) return false;
    for (int x : row)
      if (x < 0 || x >= n) return false;
  }
  for (int a = 0; a < n; ++a)
    if (mul[0][a] != a || mul[a][0] != a) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) return false;
  return true;
}

void validate_group(const Group& g) {
  if (!is_monoid_table(g.mul)) throw InputError("BadGroup", {}, g.name + ": not a monoid table with unit 0");
  for (int a = 0; a < g.order(); ++a)
    if (g.inverse(a) < 0) throw InputError("BadGroup", {a}, g.name + ": element has no inverse");
}

Group cyclic_group(int n) {
  Group g;
  g.name = n == 1 ? "trivial" : "Z" + std::to_string(n);
  g.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  return g;
}

Group trivial_group() { return cyclic_group(1); }

Group group_by_name(const std::string& name) {
  if (name == "trivial" || name == "1") return trivial_group();
  if (name.size() > 1 && name[0] == 'Z') {
    int n = std::stoi(name.substr(1));
    if (n >= 1 && n <= 12) return cyclic_group(n);
  }
  throw InputError("UnknownGroup", {}, name);
}

CatPtr deloop_monoid(const std::vector<std::vector<int>>& mul, const std::string& name) {
  if (!is_monoid_table(mul)) throw InputError("BadGroup", {}, name + ": not a monoid table with unit 0");
  const int n = static_cast<int>(mul.size());
  FinCat::Shape sh;
  sh.objects = 1;
  sh.src.assign(n, 0);
  sh.tgt.assign(n, 0);
  sh.identities = {0};
  sh.objectNames = {"*"};
  for (int a = 0; a < n; ++a) sh.morphismNames.push_back(a == 0 ? "e" : "g" + std::to_string(a));
  (void)name;
  return std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId g, MorId f) { return mul[g][f]; }));
}

CatPtr deloop(const Group& g) {
  validate_group(g);
  return deloop_monoid(g.mul, g.name);
}

CatPtr preorder_category(int n, const std::vector<std::vector<bool>>& rel, const std::string& names) {
  FinCat::Shape sh;
  sh.objects = n;
  std::vector<std::vector<int>> mor(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rel[a][b]) {
        mor[a][b] = static_cast<int>(sh.src.size());
        sh.src.push_back(a);
        sh.tgt.push_back(b);
      }
  for (int a = 0; a < n; ++a) {
    if (mor[a][a] < 0) throw InputError("BadPreorder", {a}, "relation not reflexive");
    sh.identities.push_back(mor[a][a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (rel[a][b] && rel[b][c] && !rel[a][c]) throw InputError("BadPreorder", {a, b, c}, "relation not transitive");
  for (int a = 0; a < n && a < static_cast<int>(names.size()); ++a) sh.objectNames.push_back(std::string(1, names[a]));
  auto src = sh.src, tgt = sh.tgt;
  return std::make_shared<const FinCat>(
      FinCat::build(std::move(sh), [&](MorId g, MorId f) { return mor[src[f]][tgt[g]]; }));
}

CatPtr terminal_category() { return discrete_category(1); }

CatPtr discrete_category(int n) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) rel[a][a] = true;
  return preorder_category(n, rel, "ABCDEFGH");
}

CatPtr indiscrete_category(int n) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  return preorder_category(n, rel, "ABCDEFGH");
}

CatPtr walking_arrow() { return preorder_category(2, {{true, true}, {false, true}}, "ab"); }

CatPtr walking_iso() { return indiscrete_category(2); }

CatPtr cospan_poset() {
  // objects a=0, b=1, c=2
  return preorder_category(3, {{true, false, true}, {false, true, true}, {false, false, true}}, "abc");
}

CatPtr chain(int n) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) rel[a][b] = true;
  return preorder_category(n, rel, "0123456789");
}

CatPtr product_category(const CatPtr& a, const CatPtr& b) {
  const int na = a->num_objects(), nb = b->num_objects();
  const int ma = a->num_morphisms(), mb = b->num_morphisms();
  FinCat::Shape sh;
  sh.objects = na * nb;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      sh.identities.push_back(a->id(i) * mb + b->id(j));
      sh.objectNames.push_back("(" + a->object_name(i) + "," + b->object_name(j) + ")");
    }
  for (int f = 0; f < ma; ++f)
    for (int g = 0; g < mb; ++g) {
      sh.src.push_back(a->src(f) * nb + b->src(g));
      sh.tgt.push_back(a->tgt(f) * nb + b->tgt(g));
      sh.morphismNames.push_back("(" + a->morphism_name(f) + "," + b->morphism_name(g) + ")");
    }
  return std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId x, MorId y) {
    return a->compose(x / mb, y / mb) * mb + b->compose(x % mb, y % mb);
  }));
}

CatPtr coproduct_category(const CatPtr& a, const CatPtr& b) {
  const int na = a->num_objects(), ma = a->num_morphisms();
  FinCat::Shape sh;
  sh.objects = na + b->num_objects();
  for (int i = 0; i < na; ++i) {
    sh.identities.push_back(a->id(i));
    sh.objectNames.push_back(a->object_name(i));
  }
  for (int i = 0; i < b->num_objects(); ++i) {
    sh.identities.push_back(b->id(i) + ma);
    sh.objectNames.push_back(b->object_name(i));
  }
  for (int f = 0; f < ma; ++f) {
    sh.src.push_back(a->src(f));
    sh.tgt.push_back(a->tgt(f));
    sh.morphismNames.push_back(a->morphism_name(f));
  }
  for (int f = 0; f < b->num_morphisms(); ++f) {
    sh.src.push_back(b->src(f) + na);
    sh.tgt.push_back(b->tgt(f) + na);
    sh.morphismNames.push_back(b->morphism_name(f));
  }
  return std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId g, MorId f) {
    if (f < ma) return a->compose(g, f);
    return b->compose(g - ma, f - ma) + ma;
  }));
}

CatPtr two_class_groupoid() {
  auto left = indiscrete_category(2);
  auto right = product_category(preorder_category(2, {{true, true}, {true, true}}, "CD"), deloop(cyclic_group(2)));
  return coproduct_category(left, right);
}

CatPtr category_by_name(const std::string& name) {
  auto num = [&](const std::string& prefix) -> int {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return -1;
    std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), ::isdigit) || rest.size() > 2) return -1;
    return std::stoi(rest);
  };
  if (name == "terminal") return terminal_category();
  if (name == "walkingArrow") return walking_arrow();
  if (name == "walkingIso") return walking_iso();
  if (name == "cospan") return cospan_poset();
  if (name == "twoClassGroupoid") return two_class_groupoid();
  if (name == "deloopTrivial") return deloop(trivial_group());
  if (int n = num("deloopZ"); n >= 1) return deloop(cyclic_group(n));
  if (int n = num("discrete"); n >= 0) return discrete_category(n);
  if (int n = num("indiscrete"); n >= 1) return indiscrete_category(n);
  if (int n = num("chain"); n >= 1) return chain(n);
  throw InputError("UnknownCategory", {}, name);
}

namespace {

std::vector<std::vector<std::vector<int>>> monoids_up_to_iso(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::set<std::vector<int>> seen;
  const int free = (n - 1) * (n - 1);
  long total = 1;
  for (int i = 0; i < free; ++i) total *= n;
  std::vector<int> perm(n);
  for (long code = 0; code < total; ++code) {
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) mul[0][a] = mul[a][0] = a;
    long c = code;
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b) {
        mul[a][b] = static_cast<int>(c % n);
        c /= n;
      }
    if (!is_monoid_table(mul)) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
      std::vector<int> img(n * n);
      // relabel: x ↦ perm[x]
      std::vector<int> inv(n);
      for (int x = 0; x < n; ++x) inv[perm[x]] = x;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) img[a * n + b] = perm[mul[inv[a]][inv[b]]];
      if (best.empty() || img < best) best = img;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    if (seen.insert(best).second) out.push_back(mul);
  }
  return out;
}

std::vector<std::vector<std::vector<bool>>> preorders_up_to_iso(int n) {
  std::vector<std::vector<std::vector<bool>>> out;
  std::set<std::vector<int>> seen;
  std::vector<std::pair<int, int>> offd;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) offd.emplace_back(a, b);
  for (long mask = 0; mask < (1L << offd.size()); ++mask) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) rel[a][a] = true;
    for (size_t i = 0; i < offd.size(); ++i)
      if (mask >> i & 1) rel[offd[i].first][offd[i].second] = true;
    bool trans = true;
    for (int a = 0; a < n && trans; ++a)
      for (int b = 0; b < n && trans; ++b)
        for (int c = 0; c < n && trans; ++c)
          if (rel[a][b] && rel[b][c] && !rel[a][c]) trans = false;
    if (!trans) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
      std::vector<int> img(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) img[perm[a] * n + perm[b]] = rel[a][b];
      if (best.empty() || img < best) best = img;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.push_back(rel);
  }
  return out;
}

}  // namespace

std::vector<NamedCategory> small_categories(int maxMorphisms) {
  std::vector<NamedCategory> out;
  auto add = [&](std::string name, CatPtr c) {
    if (c->num_morphisms() <= maxMorphisms) out.push_back({std::move(name), std::move(c)});
  };
  add("walkingIso", walking_iso());
  add("walkingArrow", walking_arrow());
  add("deloopZ2", deloop(cyclic_group(2)));
  add("discrete2", discrete_category(2));
  add("cospan", cospan_poset());
  for (int n = 1; n <= 3 && n <= maxMorphisms; ++n) {
    auto ms = monoids_up_to_iso(n);
    for (size_t i = 0; i < ms.size(); ++i)
      add("monoid" + std::to_string(n) + "#" + std::to_string(i), deloop_monoid(ms[i], ""));
  }
  for (int n = 4; n <= maxMorphisms; ++n) add("deloopZ" + std::to_string(n), deloop(cyclic_group(n)));
  for (int n = 2; n <= 3 && n <= maxMorphisms; ++n) {
    auto ps = preorders_up_to_iso(n);
    for (size_t i = 0; i < ps.size(); ++i)
      add("preorder" + std::to_string(n) + "#" + std::to_string(i), preorder_category(n, ps[i], "ABC"));
  }
  return out;
}

}  // namespace fibcat
