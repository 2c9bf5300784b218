#include "fibcat/bases.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace fibcat {

namespace {

using Fns = std::vector<Concrete::Fn>;

struct ConcreteMorphism {
  ObjId src, tgt;
  Fns fns;
  std::string name;
};

// Category of tuples of finite sets given by explicit morphism lists;
// composition is componentwise function composition.
CatPtr concrete_category(std::vector<std::vector<int>> sizes, std::vector<std::string> objNames,
                         std::vector<ConcreteMorphism> mors) {
  auto conc = std::make_shared<Concrete>();
  conc->sizes = std::move(sizes);
  const int n = static_cast<int>(conc->sizes.size());
  std::map<std::vector<int>, MorId> index;
  FinCat::Shape sh;
  sh.objects = n;
  sh.objectNames = std::move(objNames);
  for (int m = 0; m < static_cast<int>(mors.size()); ++m) {
    sh.src.push_back(mors[m].src);
    sh.tgt.push_back(mors[m].tgt);
    sh.morphismNames.push_back(mors[m].name);
    index.emplace(Concrete::key(mors[m].src, mors[m].tgt, mors[m].fns), m);
    conc->functions.push_back(mors[m].fns);
  }
  for (int o = 0; o < n; ++o) {
    Fns ids;
    for (int s : conc->sizes[o]) {
      Concrete::Fn f(s);
      std::iota(f.begin(), f.end(), 0);
      ids.push_back(std::move(f));
    }
    auto it = index.find(Concrete::key(o, o, ids));
    if (it == index.end()) throw CategoryError("MissingIdentity", {o}, "identity function not listed");
    sh.identities.push_back(it->second);
  }
  sh.concrete = conc;
  const auto& fn = conc->functions;
  auto composed = FinCat::build(std::move(sh), [&](MorId g, MorId f) {
    Fns r(fn[f].size());
    for (size_t c = 0; c < r.size(); ++c) {
      r[c].resize(fn[f][c].size());
      for (size_t x = 0; x < r[c].size(); ++x) r[c][x] = fn[g][c][fn[f][c][x]];
    }
    auto it = index.find(Concrete::key(mors[f].src, mors[g].tgt, r));
    return it == index.end() ? kNone : it->second;
  });
  return std::make_shared<const FinCat>(std::move(composed));
}

// All functions {0..m-1} → {0..n-1}, lexicographic with f(0) most significant.
std::vector<std::vector<int>> all_functions(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(m, 0);
  if (m > 0 && n == 0) return out;
  while (true) {
    out.push_back(f);
    int i = m - 1;
    while (i >= 0 && f[i] == n - 1) f[i--] = 0;
    if (i < 0) break;
    ++f[i];
  }
  return out;
}

std::string fn_text(const std::vector<int>& f) {
  std::string s = "[";
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "]";
}

}  // namespace

CatPtr finset_skel(int N) {
  if (N < 0) throw InputError("BadBound", {N}, "finset_skel needs N >= 0");
  // composable pairs a -> b -> c number b^a * c^b
  double pairs = 0;
  for (int a = 0; a <= N; ++a)
    for (int b = 0; b <= N; ++b)
      for (int c = 0; c <= N; ++c) pairs += std::pow(b, a) * std::pow(c, b);
  if (pairs > 2e6) throw InputError("BoundsTooLarge", {N}, "finset_skel is limited to N <= 4");
  std::vector<std::vector<int>> sizes;
  std::vector<std::string> names;
  for (int k = 0; k <= N; ++k) {
    sizes.push_back({k});
    names.push_back(std::to_string(k));
  }
  std::vector<ConcreteMorphism> mors;
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (auto& f : all_functions(m, n))
        mors.push_back({m, n, {f}, std::to_string(m) + "->" + std::to_string(n) + fn_text(f)});
  return concrete_category(std::move(sizes), std::move(names), std::move(mors));
}

bool is_action(const Group& G, const GSet& X) {
  if (static_cast<int>(X.act.size()) != G.order()) return false;
  for (const auto& row : X.act) {
    if (static_cast<int>(row.size()) != X.size) return false;
    for (int y : row)
      if (y < 0 || y >= X.size) return false;
  }
  for (int x = 0; x < X.size; ++x)
    if (X.act[0][x] != x) return false;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      for (int x = 0; x < X.size; ++x)
        if (X.act[G.mul[a][b]][x] != X.act[a][X.act[b][x]]) return false;
  return true;
}

std::vector<int> orbit_representatives(const GSet& X) {
  std::vector<int> reps;
  std::vector<bool> seen(X.size, false);
  for (int x = 0; x < X.size; ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (const auto& row : X.act) seen[row[x]] = true;
  }
  return reps;
}

std::string gset_name(const Group& G, const GSet& X) {
  if (G.order() == 1) return std::to_string(X.size);
  std::vector<int> orbitSizes;
  for (int r : orbit_representatives(X)) {
    std::vector<int> orbit;
    for (const auto& row : X.act) orbit.push_back(row[r]);
    std::sort(orbit.begin(), orbit.end());
    orbitSizes.push_back(static_cast<int>(std::unique(orbit.begin(), orbit.end()) - orbit.begin()));
  }
  if (G.order() == 2) {
    int t = static_cast<int>(std::count(orbitSizes.begin(), orbitSizes.end(), 1));
    int r = static_cast<int>(orbitSizes.size()) - t;
    if (t == 0 && r == 0) return "0";
    std::string tp = t == 0 ? "" : t == 1 ? "1" : std::to_string(t) + "triv";
    std::string rp = r == 0 ? "" : r == 1 ? "rho" : std::to_string(r) + "rho";
    if (tp.empty()) return rp;
    if (rp.empty()) return tp;
    return tp + "+" + rp;
  }
  std::sort(orbitSizes.begin(), orbitSizes.end());
  std::string s = "orb[";
  for (size_t i = 0; i < orbitSizes.size(); ++i) s += (i ? "," : "") + std::to_string(orbitSizes[i]);
  return s + "]";
}

void for_each_equivariant(const Group& G, const GSet& X, const GSet& Y,
                          const std::function<bool(int, int)>& allowed,
                          const std::function<bool(const std::vector<int>&)>& visit) {
  auto reps = orbit_representatives(X);
  std::vector<std::vector<int>> cand(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) {
    int r = reps[i];
    for (int y = 0; y < Y.size; ++y) {
      bool ok = true;
      for (int g = 0; g < G.order() && ok; ++g)
        if (X.act[g][r] == r && Y.act[g][y] != y) ok = false;
      if (ok && allowed(r, y)) cand[i].push_back(y);
    }
    if (cand[i].empty()) return;
  }
  std::vector<int> f(X.size, -1);
  std::vector<size_t> pos(reps.size(), 0);
  bool more = true;
  while (more) {
    for (size_t i = 0; i < reps.size(); ++i) {
      int y = cand[i][pos[i]];
      for (int g = 0; g < G.order(); ++g) f[X.act[g][reps[i]]] = Y.act[g][y];
    }
    if (!visit(f)) return;
    // odometer, last orbit fastest so the order is lexicographic in f
    int i = static_cast<int>(reps.size()) - 1;
    while (i >= 0 && pos[i] + 1 == cand[i].size()) pos[i--] = 0;
    if (i < 0) more = false;
    else ++pos[i];
  }
}

std::vector<std::vector<int>> equivariant_maps(const Group& G, const GSet& X, const GSet& Y) {
  std::vector<std::vector<int>> out;
  for_each_equivariant(G, X, Y, [](int, int) { return true; }, [&](const std::vector<int>& f) {
    out.push_back(f);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Least relabeled table and the relabeling achieving it.
std::pair<std::vector<int>, std::vector<int>> canonical_table(const GSet& X) {
  std::vector<int> sigma(X.size), best, bestSigma;
  std::iota(sigma.begin(), sigma.end(), 0);
  const int ord = static_cast<int>(X.act.size());
  std::vector<int> t(static_cast<size_t>(ord) * X.size);
  do {
    for (int g = 0; g < ord; ++g)
      for (int x = 0; x < X.size; ++x) t[g * X.size + sigma[x]] = sigma[X.act[g][x]];
    if (bestSigma.empty() || t < best) {
      best = t;
      bestSigma = sigma;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return {best, bestSigma};
}

std::vector<int> generators(const Group& G) {
  std::vector<int> gens;
  std::vector<bool> in(G.order(), false);
  in[0] = true;
  for (int a = 1; a < G.order(); ++a) {
    if (in[a]) continue;
    gens.push_back(a);
    // closure
    std::vector<int> members;
    for (int x = 0; x < G.order(); ++x)
      if (in[x]) members.push_back(x);
    members.push_back(a);
    in[a] = true;
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j <= i; ++j)
        for (int p : {G.mul[members[i]][members[j]], G.mul[members[j]][members[i]]})
          if (!in[p]) {
            in[p] = true;
            members.push_back(p);
          }
  }
  return gens;
}

}  // namespace

GSetCatalogue::GSetCatalogue(Group G, int N) : G_(std::move(G)), N_(N) {
  validate_group(G_);
  if (N < 0) throw InputError("BadBound", {N}, "G-set bound must be >= 0");
  const int ord = G_.order();
  auto gens = generators(G_);
  std::vector<std::vector<int>> found;
  for (int k = 0; k <= N; ++k) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<size_t> choice(gens.size(), 0);
    std::vector<std::vector<int>> tables;
    while (true) {
      GSet X;
      X.size = k;
      X.act.assign(ord, std::vector<int>());
      X.act[0] = perms[0];
      std::vector<bool> assigned(ord, false);
      assigned[0] = true;
      // breadth-first over words in the generators
      std::vector<int> queue{0};
      bool ok = true;
      for (size_t qi = 0; qi < queue.size() && ok; ++qi) {
        int h = queue[qi];
        for (size_t s = 0; s < gens.size() && ok; ++s) {
          int sh = G_.mul[gens[s]][h];
          std::vector<int> img(k);
          for (int x = 0; x < k; ++x) img[x] = perms[choice[s]][X.act[h][x]];
          if (!assigned[sh]) {
            assigned[sh] = true;
            X.act[sh] = img;
            queue.push_back(sh);
          } else if (X.act[sh] != img) {
            ok = false;
          }
        }
      }
      if (ok && is_action(G_, X)) {
        auto canon = canonical_table(X).first;
        tables.push_back(canon);
      }
      size_t i = 0;
      while (i < choice.size() && choice[i] + 1 == perms.size()) choice[i++] = 0;
      if (i == choice.size()) break;
      ++choice[i];
    }
    std::sort(tables.begin(), tables.end());
    tables.erase(std::unique(tables.begin(), tables.end()), tables.end());
    for (auto& t : tables) {
      GSet X;
      X.size = k;
      for (int g = 0; g < ord; ++g) X.act.emplace_back(t.begin() + g * k, t.begin() + (g + 1) * k);
      byTable_.emplace(t, static_cast<int>(objects_.size()));
      objects_.push_back(std::move(X));
    }
  }
}

std::pair<int, std::vector<int>> GSetCatalogue::canonicalize(const GSet& X) const {
  auto [t, sigma] = canonical_table(X);
  auto it = byTable_.find(t);
  if (it == byTable_.end()) throw InputError("OutOfBound", {X.size}, "G-set larger than the catalogue bound");
  return {it->second, sigma};
}

int GSetCatalogue::find_by_name(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(objects_.size()); ++i)
    if (gset_name(G_, objects_[i]) == name) return i;
  if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit)) {
    int n = std::stoi(name);
    for (int i = 0; i < static_cast<int>(objects_.size()); ++i) {
      const GSet& X = objects_[i];
      bool trivial = X.size == n;
      for (const auto& row : X.act)
        for (int x = 0; x < X.size && trivial; ++x) trivial = row[x] == x;
      if (trivial) return i;
    }
  }
  return -1;
}

GSetBase gset_category(const Group& G, int N) {
  auto cat = std::make_shared<const GSetCatalogue>(G, N);
  const auto& objs = cat->objects();
  std::vector<std::vector<int>> sizes;
  std::vector<std::string> names;
  for (const auto& X : objs) {
    sizes.push_back({X.size});
    names.push_back(gset_name(G, X));
  }
  std::vector<ConcreteMorphism> mors;
  for (int a = 0; a < static_cast<int>(objs.size()); ++a)
    for (int b = 0; b < static_cast<int>(objs.size()); ++b)
      for (auto& f : equivariant_maps(cat->group(), objs[a], objs[b]))
        mors.push_back({a, b, {f}, names[a] + "->" + names[b] + fn_text(f)});
  return GSetBase{cat, concrete_category(std::move(sizes), std::move(names), std::move(mors))};
}

ArrowCategory arrow_category(const CatPtr& B) {
  const int nb = B->num_morphisms();
  const Concrete* bc = B->concrete();
  FinCat::Shape sh;
  sh.objects = nb;
  std::vector<std::array<int, 2>> sq;  // (a, b)
  std::map<std::array<int, 4>, MorId> index;
  for (int x = 0; x < nb; ++x)
    for (int y = 0; y < nb; ++y)
      for (MorId a : B->hom(B->src(x), B->src(y)))
        for (MorId b : B->hom(B->tgt(x), B->tgt(y)))
          if (B->compose(y, a) == B->compose(b, x)) {
            index.emplace(std::array<int, 4>{x, y, a, b}, static_cast<MorId>(sq.size()));
            sq.push_back({a, b});
            sh.src.push_back(x);
            sh.tgt.push_back(y);
            sh.morphismNames.push_back("(" + B->morphism_name(a) + "," + B->morphism_name(b) + ")");
          }
  for (int x = 0; x < nb; ++x) {
    sh.identities.push_back(index.at({x, x, B->id(B->src(x)), B->id(B->tgt(x))}));
    sh.objectNames.push_back(B->morphism_name(x));
  }
  if (bc) {
    auto conc = std::make_shared<Concrete>();
    for (int x = 0; x < nb; ++x) {
      auto s = bc->sizes[B->src(x)];
      const auto& t = bc->sizes[B->tgt(x)];
      s.insert(s.end(), t.begin(), t.end());
      conc->sizes.push_back(std::move(s));
    }
    for (const auto& [a, b] : sq) {
      auto f = bc->functions[a];
      const auto& g = bc->functions[b];
      f.insert(f.end(), g.begin(), g.end());
      conc->functions.push_back(std::move(f));
    }
    sh.concrete = conc;
  }
  auto src = sh.src, tgt = sh.tgt;
  auto cat = std::make_shared<const FinCat>(FinCat::build(std::move(sh), [&](MorId g, MorId f) {
    return index.at({src[f], tgt[g], B->compose(sq[g][0], sq[f][0]), B->compose(sq[g][1], sq[f][1])});
  }));
  FinFunctor cod{cat, B, {}, {}};
  for (int x = 0; x < nb; ++x) cod.objMap.push_back(B->tgt(x));
  for (const auto& s : sq) cod.morMap.push_back(s[1]);
  return {cat, std::move(cod), B};
}

ObjId object_by_name(const FinCat& B, const std::string& name) {
  for (int o = 0; o < B.num_objects(); ++o)
    if (B.object_name(o) == name) return o;
  if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit)) {
    for (int o = 0; o < B.num_objects(); ++o)
      if (B.object_name(o) == name + "triv") return o;
  }
  throw InputError("UnknownObject", {}, name);
}

}  // namespace fibcat
