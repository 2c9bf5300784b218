#include "fibcat/classify.hpp"

namespace fibcat {

namespace {

std::optional<bool> flag(const GenericReport& r, const std::string& kind) {
  if (kind == "generic") return r.generic;
  if (kind == "skeletal") return r.skeletal;
  if (kind == "gaunt") return r.gaunt;
  if (kind == "split") return r.split;
  if (kind == "acyclic") return r.acyclic;
  return r.weakStack;
}

}  // namespace

std::vector<std::string> search_fibration_names(const SearchBounds& b) {
  if (b.maxCatMorphisms > 8 || b.maxIndex > 3)
    throw InputError("BoundsTooLarge", {b.maxCatMorphisms, b.maxIndex}, "search bounds are at most 8 morphisms, index 3");
  std::vector<std::string> names;
  if (b.maxCatMorphisms < 1 || b.maxIndex < 1) return names;
  for (const auto& nc : small_categories(b.maxCatMorphisms))
    for (int N = 1; N <= b.maxIndex; ++N) names.push_back("fam:" + nc.name + ":" + std::to_string(N));
  for (const auto& nc : small_categories(b.maxCatMorphisms))
    if (nc.cat->num_objects() <= b.maxIndex)
      names.push_back("externalize:" + nc.name + "@finset_skel:" + std::to_string(b.maxIndex));
  for (int N = 2; N <= b.maxIndex; ++N) names.push_back("externalize:group:Z2@finset_skel:" + std::to_string(N));
  if (b.maxIndex >= 2) {
    // The arrow and G-set bases stay at index 2; index 3 versions exceed the
    // square cap.
    names.push_back("externalize:group:1->Z2@arrow:finset_skel:2");
    names.push_back("externalize:group:trivial@arrow:finset_skel:2");
    names.push_back("externalize:group:Z2@gsetsZ2:2");
    names.push_back("subfib:gsetsZ2:2:pi=2triv->1");
    names.push_back("stack:gsetsZ2:2:pi=2triv->1");
    names.push_back("subfib:finset_skel:2:pi=2->1");
    names.push_back("stack:finset_skel:2:pi=2->1");
  }
  return names;
}

SearchResult counterexample_search(const SearchBounds& b) {
  SearchResult res;
  for (const auto& a : kKinds)
    for (const auto& c : kKinds)
      if (a != c) {
        Separation row;
        row.holds = a;
        row.fails = c;
        res.rows.push_back(row);
      }
  for (const auto& name : search_fibration_names(b)) {
    NamedFibration nf = build_fibration(name);
    const CartesianFunctor& p = *nf.fib;
    const FinCat& B = p.base();
    ClassifyOptions opts;
    opts.monos = all_monos(B);
    opts.covers = regular_epis(B);
    if (nf.cleavage) {
      opts.cleavage = nf.cleavage;
      opts.cleavageSplit = is_split(*nf.cleavage).split;
    }
    ++res.fibrations;
    const int n = p.total().num_objects();
    std::vector<GenericReport> reports(n);
    parallel_for(n, [&](int T) { reports[T] = classify_object(p, T, opts); });
    res.objects += n;
    for (ObjId T = 0; T < n; ++T)
      for (auto& row : res.rows) {
        auto h = flag(reports[T], row.holds), f = flag(reports[T], row.fails);
        if (!h || !f || !*h || *f) continue;
        if (!row.found) {
          row.found = true;
          row.fibration = name;
          row.object = T;
          row.objectName = p.total().object_name(T);
        }
        row.examples.emplace_back(name, T);
      }
  }
  return res;
}

}  // namespace fibcat
