#include "fibcat/fibration.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace fibcat {

namespace {
std::atomic<int> gJobs{1};

std::vector<int> hom_positions(const FinCat& c) {
  std::vector<int> pos(c.num_morphisms());
  for (int a = 0; a < c.num_objects(); ++a)
    for (int b = 0; b < c.num_objects(); ++b) {
      auto h = c.hom(a, b);
      for (size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<int>(i);
    }
  return pos;
}

std::optional<CartesianCounterexample> cartesian_check(const FinFunctor& p, const std::vector<int>& posE,
                                                       const std::vector<int>& posB, MorId f) {
  const FinCat& T = *p.dom;
  const FinCat& B = *p.cod;
  const ObjId D = T.src(f), E = T.tgt(f);
  const MorId u = p.morMap[f];
  const ObjId I = B.src(u);
  std::vector<int> counts;
  for (ObjId H = 0; H < T.num_objects(); ++H) {
    auto homHE = T.hom(H, E);
    auto homB = B.hom(p.objMap[H], I);
    const size_t w = homB.size();
    counts.assign(homHE.size() * w, 0);
    for (MorId k : T.hom(H, D)) {
      MorId h = T.compose(f, k);
      ++counts[posE[h] * w + posB[p.morMap[k]]];
    }
    for (size_t i = 0; i < homHE.size(); ++i)
      for (size_t j = 0; j < w; ++j) {
        if (B.compose(u, homB[j]) != p.morMap[homHE[i]]) continue;
        if (counts[i * w + j] != 1) return CartesianCounterexample{H, homHE[i], homB[j], counts[i * w + j]};
      }
  }
  return std::nullopt;
}

}  // namespace

void set_jobs(int n) { gJobs = std::max(1, n); }
int jobs() { return gJobs; }

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(jobs(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex errMu;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (int i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(errMu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::optional<CartesianCounterexample> cartesian_counterexample(const FinFunctor& p, MorId f) {
  return cartesian_check(p, hom_positions(*p.dom), hom_positions(*p.cod), f);
}

bool is_cartesian(const FinFunctor& p, MorId f) { return !cartesian_counterexample(p, f).has_value(); }

CartesianFunctor::CartesianFunctor(FinFunctor p) : p_(std::move(p)) {
  if (auto err = check_functor(p_)) throw *err;
  const FinCat& T = total();
  auto posE = hom_positions(T);
  auto posB = hom_positions(base());
  cart_.assign(T.num_morphisms(), 0);
  parallel_for(T.num_morphisms(), [&](int f) { cart_[f] = !cartesian_check(p_, posE, posB, f).has_value(); });
  cartInto_.assign(T.num_objects(), {});
  for (MorId f = 0; f < T.num_morphisms(); ++f)
    if (cart_[f]) cartInto_[T.tgt(f)].push_back(f);
  over_.assign(base().num_objects(), {});
  for (ObjId E = 0; E < T.num_objects(); ++E) over_[p_.objMap[E]].push_back(E);
}

std::vector<MorId> CartesianFunctor::lifts(MorId u, ObjId E) const {
  std::vector<MorId> out;
  for (MorId f : cartInto_[E])
    if (p_.morMap[f] == u) out.push_back(f);
  return out;
}

CartPtr analyze(FinFunctor p) { return std::make_shared<const CartesianFunctor>(std::move(p)); }

std::optional<LiftFailure> find_missing_lift(const CartesianFunctor& p) {
  const FinCat& B = p.base();
  for (ObjId E = 0; E < p.total().num_objects(); ++E) {
    std::vector<char> has(B.num_morphisms(), 0);
    for (MorId f : p.cartesian_into(E)) has[p.over_mor(f)] = 1;
    for (MorId u : B.in(p.over(E)))
      if (!has[u]) return LiftFailure{u, E};
  }
  return std::nullopt;
}

bool is_fibration(const CartesianFunctor& p) { return !find_missing_lift(p).has_value(); }

void require_fibration(const CartesianFunctor& p) {
  if (auto miss = find_missing_lift(p))
    throw Error("NotAFibration", {miss->u, miss->E}, "no cartesian lift of base morphism into object");
}

namespace {
std::vector<int> in_positions(const FinCat& B) {
  std::vector<int> pos(B.num_morphisms());
  for (ObjId o = 0; o < B.num_objects(); ++o) {
    auto in = B.in(o);
    for (size_t i = 0; i < in.size(); ++i) pos[in[i]] = static_cast<int>(i);
  }
  return pos;
}
}  // namespace

Cleavage Cleavage::from_function(CartPtr p, const std::function<MorId(MorId, ObjId)>& choice) {
  require_fibration(*p);
  Cleavage cl;
  cl.p_ = std::move(p);
  const CartesianFunctor& F = *cl.p_;
  const FinCat& B = F.base();
  const FinCat& T = F.total();
  cl.posIn_ = in_positions(B);
  cl.choice_.resize(T.num_objects());
  for (ObjId E = 0; E < T.num_objects(); ++E) {
    auto in = B.in(F.over(E));
    cl.choice_[E].resize(in.size());
    for (size_t i = 0; i < in.size(); ++i) {
      MorId u = in[i];
      MorId f = choice(u, E);
      if (f < 0 || f >= T.num_morphisms() || T.tgt(f) != E || F.over_mor(f) != u || !F.cartesian(f))
        throw Error("InvalidChoice", {u, E}, "chosen morphism is not a cartesian lift");
      cl.choice_[E][i] = f;
    }
  }
  return cl;
}

Cleavage Cleavage::least_index(CartPtr p) {
  const CartesianFunctor* raw = p.get();
  return from_function(std::move(p), [raw](MorId u, ObjId E) {
    for (MorId f : raw->cartesian_into(E))
      if (raw->over_mor(f) == u) return f;
    return kNone;
  });
}

Cleavage Cleavage::from_table(CartPtr p, const std::map<std::pair<MorId, ObjId>, MorId>& table) {
  const CartesianFunctor* raw = p.get();
  return from_function(std::move(p), [&, raw](MorId u, ObjId E) {
    auto it = table.find({u, E});
    if (it != table.end()) return it->second;
    for (MorId f : raw->cartesian_into(E))
      if (raw->over_mor(f) == u) return f;
    return kNone;
  });
}

MorId Cleavage::lift(MorId u, ObjId E) const {
  if (p_->base().tgt(u) != p_->over(E)) throw Error("BadIndex", {u, E}, "base morphism does not end at p(E)");
  return choice_[E][posIn_[u]];
}

MorId Cleavage::reindex_vertical(MorId u, MorId h) const {
  const FinCat& T = p_->total();
  MorId a = lift(u, T.src(h));
  MorId a2 = lift(u, T.tgt(h));
  MorId target = T.compose(h, a);
  for (MorId k : T.hom(T.src(a), T.src(a2)))
    if (p_->vertical(k) && T.compose(a2, k) == target) return k;
  return kNone;
}

SplitCheck is_split(const Cleavage& cl) {
  const CartesianFunctor& F = cl.fibration();
  const FinCat& T = F.total();
  const FinCat& B = F.base();
  for (ObjId E = 0; E < T.num_objects(); ++E)
    if (cl.lift(B.id(F.over(E)), E) != T.id(E)) return {false, "identity", {E}};
  for (ObjId E = 0; E < T.num_objects(); ++E)
    for (MorId v : B.in(F.over(E))) {
      MorId lv = cl.lift(v, E);
      ObjId vE = T.src(lv);
      for (MorId u : B.in(B.src(v)))
        if (cl.lift(B.compose(v, u), E) != T.compose(lv, cl.lift(u, vE))) return {false, "composite", {u, v, E}};
    }
  // reindexing functors on vertical morphisms
  for (MorId h = 0; h < T.num_morphisms(); ++h) {
    if (!F.vertical(h)) continue;
    ObjId K = F.over(T.src(h));
    if (cl.reindex_vertical(B.id(K), h) != h) return {false, "functor", {B.id(K), B.id(K), h}};
    for (MorId v : B.in(K)) {
      MorId rv = cl.reindex_vertical(v, h);
      for (MorId u : B.in(B.src(v)))
        if (cl.reindex_vertical(B.compose(v, u), h) != cl.reindex_vertical(u, rv)) return {false, "functor", {u, v, h}};
    }
  }
  return {};
}

Subcategory fiber(const CartesianFunctor& p, ObjId I) {
  const FinCat& T = p.total();
  const auto& objs = p.objects_over(I);
  std::vector<int> local(T.num_objects(), -1);
  for (size_t i = 0; i < objs.size(); ++i) local[objs[i]] = static_cast<int>(i);
  std::vector<MorId> mors, localMor(T.num_morphisms(), -1);
  FinCat::Shape sh;
  sh.objects = static_cast<int>(objs.size());
  for (ObjId a : objs)
    for (ObjId b : objs)
      for (MorId m : T.hom(a, b))
        if (p.vertical(m)) {
          localMor[m] = static_cast<int>(mors.size());
          mors.push_back(m);
          sh.src.push_back(local[a]);
          sh.tgt.push_back(local[b]);
          sh.morphismNames.push_back(T.morphism_name(m));
        }
  for (ObjId a : objs) {
    sh.identities.push_back(localMor[T.id(a)]);
    sh.objectNames.push_back(T.object_name(a));
  }
  auto cat = std::make_shared<const FinCat>(
      FinCat::build(std::move(sh), [&](MorId g, MorId f) { return localMor[T.compose(mors[g], mors[f])]; }));
  return {cat, FinFunctor{cat, p.total_ptr(), objs, mors}};
}

bool is_pullback_square(const FinCat& B, MorId f, MorId g, MorId p1, MorId p2) {
  if (B.tgt(f) != B.tgt(g) || B.tgt(p1) != B.src(f) || B.tgt(p2) != B.src(g) || B.src(p1) != B.src(p2)) return false;
  if (B.compose(f, p1) != B.compose(g, p2)) return false;
  const ObjId P = B.src(p1);
  std::set<std::pair<MorId, MorId>> seen;
  for (ObjId Q = 0; Q < B.num_objects(); ++Q) {
    size_t cones = 0;
    for (MorId q1 : B.hom(Q, B.src(f)))
      for (MorId q2 : B.hom(Q, B.src(g))) cones += B.compose(f, q1) == B.compose(g, q2);
    auto ks = B.hom(Q, P);
    if (ks.size() != cones) return false;
    seen.clear();
    for (MorId k : ks)
      if (!seen.insert({B.compose(p1, k), B.compose(p2, k)}).second) return false;
  }
  return true;
}

std::optional<PullbackCone> pullback(const FinCat& B, MorId f, MorId g) {
  if (B.tgt(f) != B.tgt(g)) return std::nullopt;
  for (ObjId P = 0; P < B.num_objects(); ++P)
    for (MorId p1 : B.hom(P, B.src(f)))
      for (MorId p2 : B.hom(P, B.src(g)))
        if (is_pullback_square(B, f, g, p1, p2)) return PullbackCone{P, p1, p2};
  return std::nullopt;
}

bool is_coequalizer(const FinCat& B, MorId e, MorId a, MorId b) {
  if (B.compose(e, a) != B.compose(e, b) || B.compose(e, a) == kNone) return false;
  const ObjId X = B.tgt(e), Y = B.src(e);
  std::set<MorId> seen;
  for (ObjId Z = 0; Z < B.num_objects(); ++Z) {
    size_t coforks = 0;
    for (MorId g : B.hom(Y, Z)) coforks += B.compose(g, a) == B.compose(g, b);
    auto ks = B.hom(X, Z);
    if (ks.size() != coforks) return false;
    seen.clear();
    for (MorId k : ks)
      if (!seen.insert(B.compose(k, e)).second) return false;
  }
  return true;
}

std::vector<MorphismFlags> mono_epi_analysis(const FinCat& B) {
  std::vector<MorphismFlags> out(B.num_morphisms());
  parallel_for(B.num_morphisms(), [&](int f) {
    MorphismFlags fl;
    const ObjId X = B.src(f), Y = B.tgt(f);
    fl.mono = true;
    for (ObjId Z = 0; Z < B.num_objects() && fl.mono; ++Z) {
      std::set<MorId> seen;
      for (MorId a : B.hom(Z, X))
        if (!seen.insert(B.compose(f, a)).second) fl.mono = false;
    }
    fl.epi = true;
    for (ObjId Z = 0; Z < B.num_objects() && fl.epi; ++Z) {
      std::set<MorId> seen;
      for (MorId a : B.hom(Y, Z))
        if (!seen.insert(B.compose(a, f)).second) fl.epi = false;
    }
    for (MorId s : B.hom(Y, X))
      if (B.compose(f, s) == B.id(Y)) fl.splitEpi = true;
    fl.iso = is_iso(B, f);
    if (auto kp = pullback(B, f, f)) {
      fl.regularEpi = is_coequalizer(B, f, kp->p1, kp->p2);
    } else {
      for (ObjId W = 0; W < B.num_objects() && !fl.regularEpi; ++W)
        for (MorId a : B.hom(W, X)) {
          for (MorId b : B.hom(W, X))
            if (is_coequalizer(B, f, a, b)) {
              fl.regularEpi = true;
              break;
            }
          if (fl.regularEpi) break;
        }
    }
    out[f] = fl;
  });
  return out;
}

namespace {
MorphismClass from_flags(const FinCat& B, std::string name, bool MorphismFlags::*flag) {
  auto fl = mono_epi_analysis(B);
  MorphismClass c{std::move(name), std::vector<char>(B.num_morphisms(), 0)};
  for (int m = 0; m < B.num_morphisms(); ++m) c.member[m] = fl[m].*flag;
  return c;
}
}  // namespace

MorphismClass all_monos(const FinCat& B) { return from_flags(B, "monos", &MorphismFlags::mono); }
MorphismClass regular_epis(const FinCat& B) { return from_flags(B, "regularEpis", &MorphismFlags::regularEpi); }
MorphismClass all_epis(const FinCat& B) { return from_flags(B, "allEpis", &MorphismFlags::epi); }
MorphismClass isomorphisms(const FinCat& B) { return from_flags(B, "isos", &MorphismFlags::iso); }

bool is_cover_cartesian(const CartesianFunctor& p, MorId f, const MorphismClass& covers) {
  return p.cartesian(f) && covers.contains(p.over_mor(f));
}

}  // namespace fibcat
