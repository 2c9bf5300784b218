#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "fibcat/classify.hpp"
#include "fibcat/io.hpp"

namespace fibcat {

namespace {

struct Globals {
  bool json = false;
  std::string workspace;
  int jobs = 1;
  std::string mutate;
};

Json load_workspace(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) return Json::object();
  Json w = read_json_file(path);
  if (!w.is_object()) throw InputError("ParseError", {}, path + ": workspace must be a JSON object");
  return w;
}

// A workspace entry name, else the argument itself.
std::string resolve(const Globals& g, const std::string& arg) {
  Json w = load_workspace(g.workspace);
  if (w.contains(arg)) return w[arg].at("expr").get<std::string>();
  return arg;
}

bool is_functor_json(const std::string& s) {
  if (s.size() < 5 || s.substr(s.size() - 5) != ".json" || !std::filesystem::exists(s)) return false;
  Json j = read_json_file(s);
  return j.is_object() && j.contains("dom");
}

// Builder heads that only make fibrations, or a functor JSON file.
bool looks_like_fibration(const std::string& expr) {
  for (const char* h : {"fam:", "externalize:", "subfib:", "stack:", "split:"})
    if (expr.rfind(h, 0) == 0) return true;
  return is_functor_json(expr);
}

ObjId object_arg(const CartesianFunctor& p, const std::string& s) {
  const FinCat& E = p.total();
  if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) {
    ObjId T = std::stoi(s);
    if (T >= E.num_objects()) throw InputError("BadIndex", {T}, "no such object");
    return T;
  }
  for (ObjId T = 0; T < E.num_objects(); ++T)
    if (E.object_name(T) == s) return T;
  throw InputError("BadIndex", {}, "no object named '" + s + "'");
}

MorphismClass mono_class(const FinCat& B, const std::string& s) {
  if (s == "all") return all_monos(B);
  if (s == "iso") return isomorphisms(B);
  throw InputError("BadArgument", {}, "--monos all|iso");
}

MorphismClass cover_class(const FinCat& B, const std::string& s) {
  if (s == "regular") return regular_epis(B);
  if (s == "all") return all_epis(B);
  if (s == "iso") return isomorphisms(B);
  throw InputError("BadArgument", {}, "--covers regular|all|iso");
}

std::string flag_text(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "-"; }

std::string path_text(const Witness& w) {
  std::string s;
  for (const auto& [k, v] : w.path) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

int cmd_validate(const Globals& g, const std::string& arg, std::ostream& out) {
  const std::string expr = resolve(g, arg);
  Json j;
  if (looks_like_fibration(expr)) {
    NamedFibration nf = build_fibration(expr);
    const auto& p = *nf.fib;
    auto miss = find_missing_lift(p);
    j = {{"ok", true},
         {"kind", "functor"},
         {"total", {{"objects", p.total().num_objects()}, {"morphisms", p.total().num_morphisms()}}},
         {"base", {{"objects", p.base().num_objects()}, {"morphisms", p.base().num_morphisms()}}},
         {"fibration", !miss}};
    if (g.json) {
      out << j.dump(2) << "\n";
    } else {
      out << "OK: functor (" << p.total().num_objects() << " objects, " << p.total().num_morphisms()
          << " morphisms over " << p.base().num_objects() << " objects, " << p.base().num_morphisms()
          << " morphisms)\n";
      if (miss)
        out << "not a fibration: no cartesian lift of base morphism " << miss->u << " into object " << miss->E << "\n";
      else
        out << "fibration\n";
    }
    return 0;
  }
  CatPtr c = build_category(expr);
  if (g.json) {
    out << Json{{"ok", true}, {"kind", "category"}, {"objects", c->num_objects()}, {"morphisms", c->num_morphisms()}}
               .dump(2)
        << "\n";
  } else {
    out << "OK: category (" << c->num_objects() << " objects, " << c->num_morphisms() << " morphisms)\n";
  }
  return 0;
}

int cmd_build(const Globals& g, const std::string& arg, const std::string& name, const std::string& outFile,
              std::ostream& out) {
  const std::string expr = resolve(g, arg);
  Json doc;
  std::string kind, summary;
  if (looks_like_fibration(expr) || expr.rfind("arrow:", 0) == 0) {
    NamedFibration nf = build_fibration(expr);
    kind = "fibration";
    doc = functor_to_json(nf.fib->functor());
    if (nf.distinguished != kNone) doc["distinguished"] = nf.distinguished;
    summary = std::to_string(nf.fib->total().num_objects()) + " objects, " +
              std::to_string(nf.fib->total().num_morphisms()) + " morphisms over " +
              std::to_string(nf.fib->base().num_objects()) + " base objects";
  } else {
    CatPtr c = build_category(expr);
    kind = "category";
    doc = category_to_json(*c);
    summary = std::to_string(c->num_objects()) + " objects, " + std::to_string(c->num_morphisms()) + " morphisms";
  }
  if (!name.empty()) {
    if (g.workspace.empty()) throw InputError("BadArgument", {}, "--name needs --workspace");
    Json w = load_workspace(g.workspace);
    w[name] = {{"kind", kind}, {"expr", expr}};
    std::ofstream f(g.workspace);
    f << w.dump(2) << "\n";
  }
  if (!outFile.empty()) {
    std::ofstream f(outFile);
    if (!f) throw InputError("BadArgument", {}, "cannot write " + outFile);
    f << doc.dump(2) << "\n";
  }
  if (g.json && outFile.empty())
    out << doc.dump(2) << "\n";
  else
    out << "built " << kind << " " << expr << ": " << summary << "\n";
  return 0;
}

struct ClassifyArgs {
  std::string fib, object, cleavage = "canonical", monos = "all", covers = "regular", kind;
  bool all = false;
};

int cmd_classify(const Globals& g, const ClassifyArgs& a, std::ostream& out) {
  const std::string expr = resolve(g, a.fib);
  NamedFibration nf = build_fibration(expr);
  const CartesianFunctor& p = *nf.fib;
  ClassifyOptions opts;
  opts.monos = mono_class(p.base(), a.monos);
  opts.covers = cover_class(p.base(), a.covers);
  if (a.cleavage == "canonical")
    opts.cleavage = nf.cleavage;
  else if (a.cleavage == "least")
    opts.cleavage = std::make_shared<const Cleavage>(Cleavage::least_index(nf.fib));
  else if (a.cleavage != "none")
    throw InputError("BadArgument", {}, "--cleavage canonical|least|none");

  if (!a.kind.empty()) {
    auto found = find_generic_objects(p, a.kind, opts);
    if (g.json) {
      Json arr = Json::array();
      for (ObjId T : found) arr.push_back({{"index", T}, {"name", p.total().object_name(T)}});
      out << Json{{"fibration", expr}, {"kind", a.kind}, {"objects", arr}}.dump(2) << "\n";
    } else {
      out << a.kind << " objects in " << expr << ": " << found.size() << "\n";
      for (ObjId T : found) out << "  " << T << " " << p.total().object_name(T) << "\n";
    }
    return 0;
  }

  std::vector<ObjId> targets;
  if (a.all) {
    for (ObjId T = 0; T < p.total().num_objects(); ++T) targets.push_back(T);
  } else if (!a.object.empty()) {
    targets.push_back(object_arg(p, a.object));
  } else if (nf.distinguished != kNone) {
    targets.push_back(nf.distinguished);
  } else {
    throw InputError("BadArgument", {}, "no distinguished object; pass --object or --all");
  }
  if (opts.cleavage) opts.cleavageSplit = is_split(*opts.cleavage).split;
  Json reports = Json::array();
  for (ObjId T : targets) {
    GenericReport r = classify_object(p, T, opts);
    if (g.json) {
      reports.push_back(report_to_json(r, p));
      continue;
    }
    out << "object " << T << " " << p.total().object_name(T) << "\n";
    out << "  " << rosetta_row(r) << "\n";
    out << "  generic=" << flag_text(r.generic) << " skeletal=" << flag_text(r.skeletal)
        << " gaunt=" << flag_text(r.gaunt) << " split=" << flag_text(r.split) << " acyclic=" << flag_text(r.acyclic)
        << " weakStack=" << flag_text(r.weakStack) << "\n";
    for (const auto& [flag, w] : r.witnesses) {
      out << "  " << flag << ": " << w.text;
      if (!w.path.empty()) out << " [" << path_text(w) << "]";
      out << "\n";
    }
    if (!r.splitSkipped.empty()) out << "  split: " << r.splitSkipped << "\n";
  }
  if (g.json) out << Json{{"fibration", expr}, {"reports", reports}}.dump(2) << "\n";
  return 0;
}

int cmd_examples(const Globals& g, int only, std::ostream& out) {
  std::vector<SuiteCheck> checks;
  if (only)
    checks.push_back(run_suite_check(only));
  else
    checks = run_suite();
  bool ok = true;
  Json arr = Json::array();
  for (size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    const int n = only ? only : static_cast<int>(i) + 1;
    ok &= c.pass;
    if (g.json)
      arr.push_back({{"n", n}, {"key", c.key}, {"pass", c.pass}, {"detail", c.detail}, {"limitMs", c.limitMs}});
    else
      out << n << " " << c.key << " " << (c.pass ? "PASS" : "FAIL") << ": " << c.detail << "\n";
  }
  if (g.json) out << Json{{"checks", arr}, {"pass", ok}}.dump(2) << "\n";
  return ok ? 0 : 3;
}

int cmd_search(const Globals& g, const SearchBounds& b, std::ostream& out) {
  SearchResult res = counterexample_search(b);
  if (g.json) {
    Json rows = Json::array();
    for (const auto& s : res.rows) {
      Json row{{"holds", s.holds}, {"fails", s.fails}, {"found", s.found}};
      if (s.found) row["example"] = {{"fibration", s.fibration}, {"object", s.object}, {"name", s.objectName}};
      row["count"] = s.examples.size();
      rows.push_back(row);
    }
    out << Json{{"fibrations", res.fibrations}, {"objects", res.objects}, {"rows", rows}}.dump(2) << "\n";
    return 0;
  }
  out << "searched " << res.fibrations << " fibrations, " << res.objects << " objects\n";
  for (const auto& s : res.rows) {
    out << s.holds << " and not " << s.fails << ": ";
    if (s.found)
      out << s.fibration << " object " << s.object << " " << s.objectName << " (" << s.examples.size()
          << " examples)\n";
    else
      out << "none within bounds\n";
  }
  return 0;
}

void report_error(const Globals& g, const Error& e, std::ostream& out, std::ostream& err) {
  if (g.json)
    out << error_to_json(e).dump(2) << "\n";
  else
    err << "error: " << e.what() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generic objects in finite fibrations", "fibcat"};
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--workspace", g.workspace, "JSON file of named expressions");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1, 64));
  app.add_option("--mutate", g.mutate)->group("");
  app.require_subcommand(1);
  app.fallthrough();

  std::string target;
  auto* validate = app.add_subcommand("validate", "check a category, functor or builder expression");
  validate->add_option("input", target, "expression, JSON file or workspace name")->required();

  std::string name, outFile;
  auto* build = app.add_subcommand("build", "build an expression; optionally store it in the workspace");
  build->add_option("expr", target)->required();
  build->add_option("--name", name, "workspace entry to create");
  build->add_option("--out", outFile, "write the JSON here");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "classify candidate generic objects");
  classify->add_option("fibration", ca.fib)->required();
  classify->add_option("--object", ca.object, "index or name; default: the distinguished object");
  classify->add_flag("--all", ca.all, "every object");
  classify->add_option("--kind", ca.kind, "list the objects of one kind instead");
  classify->add_option("--cleavage", ca.cleavage, "canonical|least|none");
  classify->add_option("--monos", ca.monos, "all|iso");
  classify->add_option("--covers", ca.covers, "regular|all|iso");

  int only = 0;
  auto* examples = app.add_subcommand("paper-examples", "run the reproduction checks");
  examples->add_option("--only", only, "a single check 1..9")->check(CLI::Range(1, 9));

  SearchBounds bounds;
  auto* search = app.add_subcommand("search", "bounded search for separating examples");
  search->add_option("--max-morphisms", bounds.maxCatMorphisms);
  search->add_option("--max-index", bounds.maxIndex);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  set_jobs(g.jobs);
  set_mutation(g.mutate);
  try {
    if (*validate) return cmd_validate(g, target, out);
    if (*build) return cmd_build(g, target, name, outFile, out);
    if (*classify) return cmd_classify(g, ca, out);
    if (*examples) return cmd_examples(g, only, out);
    return cmd_search(g, bounds, out);
  } catch (const AuditError& e) {
    report_error(g, e, out, err);
    return 2;
  } catch (const Error& e) {
    report_error(g, e, out, err);
    return 1;
  } catch (const nlohmann::json::exception& e) {
    report_error(g, InputError("ParseError", {}, e.what()), out, err);
    return 1;
  }
}

}  // namespace fibcat
