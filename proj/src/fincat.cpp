#include "fibcat/fincat.hpp"

#include <algorithm>
#include <numeric>

namespace fibcat {

std::vector<int> Concrete::key(ObjId a, ObjId b, const std::vector<Fn>& fns) {
  std::vector<int> k{a, b};
  for (const auto& f : fns) {
    k.push_back(static_cast<int>(f.size()));
    k.insert(k.end(), f.begin(), f.end());
  }
  return k;
}

MorId Concrete::find(ObjId a, ObjId b, const std::vector<Fn>& fns) const {
  auto it = index.find(key(a, b, fns));
  return it == index.end() ? kNone : it->second;
}

namespace {

void group_by(int n, const std::vector<int>& keyOf, std::vector<int>& start,
              std::vector<int>& list) {
  start.assign(n + 1, 0);
  for (int k : keyOf) ++start[k + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  list.assign(keyOf.size(), 0);
  std::vector<int> fill(start.begin(), start.end() - 1);
  for (int m = 0; m < static_cast<int>(keyOf.size()); ++m) list[fill[keyOf[m]]++] = m;
}

}  // namespace

FinCat FinCat::build(Shape shape, const ComposeFn& compose) {
  FinCat c;
  c.nObj_ = shape.objects;
  c.src_ = std::move(shape.src);
  c.tgt_ = std::move(shape.tgt);
  c.id_ = std::move(shape.identities);
  c.objNames_ = std::move(shape.objectNames);
  c.morNames_ = std::move(shape.morphismNames);
  const int n = c.nObj_;
  const int m = static_cast<int>(c.src_.size());
  if (static_cast<int>(c.tgt_.size()) != m || static_cast<int>(c.id_.size()) != n)
    throw CategoryError("BadIndex", {}, "array lengths disagree");
  for (int f = 0; f < m; ++f)
    if (c.src_[f] < 0 || c.src_[f] >= n || c.tgt_[f] < 0 || c.tgt_[f] >= n)
      throw CategoryError("BadIndex", {f}, "endpoint out of range");
  for (int o = 0; o < n; ++o)
    if (c.id_[o] < 0 || c.id_[o] >= m) throw CategoryError("BadIndex", {o}, "identity out of range");

  group_by(n, c.src_, c.outStart_, c.outList_);
  group_by(n, c.tgt_, c.inStart_, c.inList_);
  std::vector<int> homKey(m);
  for (int f = 0; f < m; ++f) homKey[f] = c.src_[f] * n + c.tgt_[f];
  group_by(n * n, homKey, c.homStart_, c.homList_);

  c.posOut_.assign(m, 0);
  for (int o = 0; o < n; ++o)
    for (int i = c.outStart_[o]; i < c.outStart_[o + 1]; ++i) c.posOut_[c.outList_[i]] = i - c.outStart_[o];
  c.rowStart_.assign(m, 0);
  size_t total = 0;
  for (int f = 0; f < m; ++f) {
    c.rowStart_[f] = static_cast<int>(total);
    total += c.outStart_[c.tgt_[f] + 1] - c.outStart_[c.tgt_[f]];
  }
  c.table_.assign(total, kNone);
  for (int f = 0; f < m; ++f) {
    for (MorId g : c.out(c.tgt_[f])) {
      MorId r = compose(g, f);
      if (r < 0 || r >= m || c.src_[r] != c.src_[f] || c.tgt_[r] != c.tgt_[g])
        throw CategoryError("BadCompositionDomain", {g, f}, "composite has wrong endpoints");
      c.table_[c.rowStart_[f] + c.posOut_[g]] = r;
    }
  }
  if (shape.concrete) {
    auto conc = std::make_shared<Concrete>(*shape.concrete);
    conc->index.clear();
    for (int f = 0; f < m; ++f)
      conc->index.emplace(Concrete::key(c.src_[f], c.tgt_[f], conc->functions[f]), f);
    c.concrete_ = std::move(conc);
  }
  return c;
}

std::string FinCat::object_name(ObjId o) const {
  if (o >= 0 && o < static_cast<int>(objNames_.size()) && !objNames_[o].empty()) return objNames_[o];
  return std::to_string(o);
}

std::string FinCat::morphism_name(MorId m) const {
  if (m >= 0 && m < static_cast<int>(morNames_.size()) && !morNames_[m].empty()) return morNames_[m];
  return "#" + std::to_string(m);
}

CategoryPresentation FinCat::presentation() const {
  CategoryPresentation p;
  p.objects = nObj_;
  p.src = src_;
  p.tgt = tgt_;
  p.identities = id_;
  const int m = num_morphisms();
  p.comp.assign(m, std::vector<MorId>(m, kNone));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) p.comp[g][f] = compose(g, f);
  p.objectNames = objNames_;
  p.morphismNames = morNames_;
  return p;
}

FinCat validate_category(const CategoryPresentation& raw) {
  const int n = raw.objects;
  const int m = static_cast<int>(raw.src.size());
  if (n < 0) throw CategoryError("BadIndex", {}, "negative object count");
  if (static_cast<int>(raw.tgt.size()) != m) throw CategoryError("BadIndex", {}, "src/tgt length mismatch");
  if (static_cast<int>(raw.identities.size()) != n)
    throw CategoryError("BadIndex", {}, "need one identity per object");
  if (static_cast<int>(raw.comp.size()) != m) throw CategoryError("BadIndex", {}, "comp must be nMor x nMor");
  for (const auto& row : raw.comp)
    if (static_cast<int>(row.size()) != m) throw CategoryError("BadIndex", {}, "comp must be nMor x nMor");
  for (int f = 0; f < m; ++f)
    if (raw.src[f] < 0 || raw.src[f] >= n || raw.tgt[f] < 0 || raw.tgt[f] >= n)
      throw CategoryError("BadIndex", {f}, "morphism endpoint out of range");

  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      MorId r = raw.comp[g][f];
      bool composable = raw.tgt[f] == raw.src[g];
      if (!composable) {
        if (r != kNone) throw CategoryError("BadCompositionDomain", {g, f}, "defined on a non-composable pair");
        continue;
      }
      if (r < 0 || r >= m) throw CategoryError("BadCompositionDomain", {g, f}, "undefined on a composable pair");
      if (raw.src[r] != raw.src[f] || raw.tgt[r] != raw.tgt[g])
        throw CategoryError("BadCompositionDomain", {g, f}, "composite has wrong endpoints");
    }

  for (int o = 0; o < n; ++o) {
    MorId i = raw.identities[o];
    if (i < 0 || i >= m || raw.src[i] != o || raw.tgt[i] != o)
      throw CategoryError("MissingIdentity", {o}, "identity is not an endomorphism of its object");
  }
  for (int f = 0; f < m; ++f) {
    if (raw.comp[f][raw.identities[raw.src[f]]] != f)
      throw CategoryError("MissingIdentity", {raw.src[f], f}, "right unit law fails");
    if (raw.comp[raw.identities[raw.tgt[f]]][f] != f)
      throw CategoryError("MissingIdentity", {raw.tgt[f], f}, "left unit law fails");
  }

  FinCat::Shape shape{n, raw.src, raw.tgt, raw.identities, raw.objectNames, raw.morphismNames, nullptr};
  FinCat c = FinCat::build(std::move(shape), [&](MorId g, MorId f) { return raw.comp[g][f]; });
  if (auto err = check_axioms(c)) throw *err;
  return c;
}

std::optional<CategoryError> check_axioms(const FinCat& c) {
  for (int o = 0; o < c.num_objects(); ++o) {
    MorId i = c.id(o);
    if (c.src(i) != o || c.tgt(i) != o)
      return CategoryError("MissingIdentity", {o}, "identity is not an endomorphism of its object");
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.compose(f, c.id(c.src(f))) != f) return CategoryError("MissingIdentity", {c.src(f), f}, "right unit law fails");
    if (c.compose(c.id(c.tgt(f)), f) != f) return CategoryError("MissingIdentity", {c.tgt(f), f}, "left unit law fails");
  }
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (MorId g : c.out(c.tgt(f))) {
      MorId gf = c.compose(g, f);
      for (MorId h : c.out(c.tgt(g)))
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
          return CategoryError("NonAssociative", {h, g, f}, "h∘(g∘f) != (h∘g)∘f");
    }
  return std::nullopt;
}

std::optional<FunctorError> check_functor(const FinFunctor& F) {
  const FinCat& D = *F.dom;
  const FinCat& C = *F.cod;
  if (static_cast<int>(F.objMap.size()) != D.num_objects() || static_cast<int>(F.morMap.size()) != D.num_morphisms())
    return FunctorError("BadIndex", {}, "map lengths do not match the domain");
  for (int o = 0; o < D.num_objects(); ++o)
    if (F.objMap[o] < 0 || F.objMap[o] >= C.num_objects()) return FunctorError("BadIndex", {o}, "object image out of range");
  for (int m = 0; m < D.num_morphisms(); ++m)
    if (F.morMap[m] < 0 || F.morMap[m] >= C.num_morphisms())
      return FunctorError("BadIndex", {m}, "morphism image out of range");
  for (int m = 0; m < D.num_morphisms(); ++m) {
    if (C.src(F.morMap[m]) != F.objMap[D.src(m)]) return FunctorError("NotPreservingSource", {m});
    if (C.tgt(F.morMap[m]) != F.objMap[D.tgt(m)]) return FunctorError("NotPreservingTarget", {m});
  }
  for (int o = 0; o < D.num_objects(); ++o)
    if (F.morMap[D.id(o)] != C.id(F.objMap[o])) return FunctorError("NotPreservingIdentity", {o});
  for (int f = 0; f < D.num_morphisms(); ++f)
    for (MorId g : D.out(D.tgt(f)))
      if (F.morMap[D.compose(g, f)] != C.compose(F.morMap[g], F.morMap[f]))
        return FunctorError("NotPreservingComposite", {g, f});
  return std::nullopt;
}

FinFunctor validate_functor(CatPtr dom, CatPtr cod, std::vector<ObjId> objMap, std::vector<MorId> morMap) {
  FinFunctor F{std::move(dom), std::move(cod), std::move(objMap), std::move(morMap)};
  if (auto err = check_functor(F)) throw *err;
  return F;
}

FinFunctor identity_functor(CatPtr c) {
  std::vector<ObjId> om(c->num_objects());
  std::vector<MorId> mm(c->num_morphisms());
  std::iota(om.begin(), om.end(), 0);
  std::iota(mm.begin(), mm.end(), 0);
  return FinFunctor{c, c, std::move(om), std::move(mm)};
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor r{f.dom, g.cod, {}, {}};
  r.objMap.reserve(f.objMap.size());
  for (ObjId o : f.objMap) r.objMap.push_back(g.objMap[o]);
  r.morMap.reserve(f.morMap.size());
  for (MorId m : f.morMap) r.morMap.push_back(g.morMap[m]);
  return r;
}

MorId inverse_of(const FinCat& c, MorId m) {
  for (MorId g : c.hom(c.tgt(m), c.src(m)))
    if (c.compose(g, m) == c.id(c.src(m)) && c.compose(m, g) == c.id(c.tgt(m))) return g;
  return kNone;
}

bool is_iso(const FinCat& c, MorId m) { return inverse_of(c, m) != kNone; }

IsoClasses iso_classes(const FinCat& c) {
  const int n = c.num_objects();
  IsoClasses r;
  r.n = n;
  r.witness.assign(static_cast<size_t>(n) * n, kNone);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    size_t k = static_cast<size_t>(c.src(m)) * n + c.tgt(m);
    if (r.witness[k] == kNone && is_iso(c, m)) r.witness[k] = m;
  }
  r.classOf.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (r.classOf[a] != -1) continue;
    int k = static_cast<int>(r.classes.size());
    r.classes.push_back({});
    for (int b = a; b < n; ++b)
      if (r.iso(a, b) != kNone) {
        r.classOf[b] = k;
        r.classes[k].push_back(b);
      }
  }
  return r;
}

CategoryFlags category_predicates(const FinCat& c) {
  CategoryFlags fl;
  IsoClasses ic = iso_classes(c);
  fl.skeletal = static_cast<int>(ic.classes.size()) == c.num_objects();
  fl.gaunt = true;
  fl.groupoid = true;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    bool iso = is_iso(c, m);
    if (!iso) fl.groupoid = false;
    if (iso && c.src(m) == c.tgt(m) && !c.is_identity(m)) fl.gaunt = false;
  }
  fl.preorder = true;
  for (int a = 0; a < c.num_objects(); ++a)
    for (int b = 0; b < c.num_objects(); ++b)
      if (c.hom(a, b).size() > 1) fl.preorder = false;
  return fl;
}

SkeletonData skeleton_data(const FinCat& c) {
  IsoClasses ic = iso_classes(c);
  SkeletonData s;
  s.classOf = ic.classOf;
  for (const auto& cls : ic.classes) s.section.push_back(cls.front());
  s.chosenIso.resize(c.num_objects());
  for (int o = 0; o < c.num_objects(); ++o) {
    ObjId rep = s.section[s.classOf[o]];
    s.chosenIso[o] = rep == o ? c.id(o) : ic.iso(o, rep);
  }
  return s;
}

Subcategory full_subcategory(CatPtr c, const std::vector<ObjId>& objects) {
  std::vector<int> local(c->num_objects(), -1);
  for (int i = 0; i < static_cast<int>(objects.size()); ++i) local[objects[i]] = i;
  std::vector<MorId> mors, localMor(c->num_morphisms(), -1);
  FinCat::Shape sh;
  sh.objects = static_cast<int>(objects.size());
  for (ObjId a : objects)
    for (ObjId b : objects)
      for (MorId m : c->hom(a, b)) {
        localMor[m] = static_cast<int>(mors.size());
        mors.push_back(m);
        sh.src.push_back(local[a]);
        sh.tgt.push_back(local[b]);
        sh.morphismNames.push_back(c->morphism_name(m));
      }
  for (ObjId a : objects) {
    sh.identities.push_back(localMor[c->id(a)]);
    sh.objectNames.push_back(c->object_name(a));
  }
  auto sub = std::make_shared<const FinCat>(
      FinCat::build(std::move(sh), [&](MorId g, MorId f) { return localMor[c->compose(mors[g], mors[f])]; }));
  FinFunctor inc{sub, c, objects, mors};
  return {sub, std::move(inc)};
}

}  // namespace fibcat
