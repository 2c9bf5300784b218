#include "fibcat/io.hpp"

#include <fstream>

namespace fibcat {

Json category_to_json(const FinCat& c) {
  auto pr = c.presentation();
  Json j;
  j["objects"] = pr.objects;
  Json mors = Json::array();
  for (size_t m = 0; m < pr.src.size(); ++m) {
    Json e{{"src", pr.src[m]}, {"tgt", pr.tgt[m]}};
    if (m < pr.morphismNames.size()) e["name"] = pr.morphismNames[m];
    mors.push_back(e);
  }
  j["morphisms"] = mors;
  j["identities"] = pr.identities;
  j["comp"] = pr.comp;
  j["objectNames"] = pr.objectNames;
  return j;
}

CategoryPresentation presentation_from_json(const Json& j) {
  try {
    CategoryPresentation pr;
    pr.objects = j.at("objects").get<int>();
    for (const auto& m : j.at("morphisms")) {
      pr.src.push_back(m.at("src").get<int>());
      pr.tgt.push_back(m.at("tgt").get<int>());
      if (m.contains("name")) pr.morphismNames.push_back(m["name"].get<std::string>());
    }
    if (!pr.morphismNames.empty() && pr.morphismNames.size() != pr.src.size()) pr.morphismNames.clear();
    pr.identities = j.at("identities").get<std::vector<int>>();
    pr.comp = j.at("comp").get<std::vector<std::vector<int>>>();
    if (j.contains("objectNames")) pr.objectNames = j["objectNames"].get<std::vector<std::string>>();
    return pr;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("ParseError", {}, std::string("category: ") + e.what());
  }
}

CatPtr category_from_json(const Json& j) {
  if (j.is_string()) return build_category(j.get<std::string>());
  return std::make_shared<const FinCat>(validate_category(presentation_from_json(j)));
}

Json functor_to_json(const FinFunctor& f) {
  return Json{{"dom", category_to_json(*f.dom)},
              {"cod", category_to_json(*f.cod)},
              {"objMap", f.objMap},
              {"morMap", f.morMap}};
}

FinFunctor functor_from_json(const Json& j) {
  try {
    CatPtr dom = category_from_json(j.at("dom"));
    CatPtr cod = category_from_json(j.at("cod"));
    return validate_functor(dom, cod, j.at("objMap").get<std::vector<int>>(), j.at("morMap").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError("ParseError", {}, std::string("functor: ") + e.what());
  }
}

Json witness_to_json(const Witness& w) {
  Json path = Json::object();
  for (const auto& [k, v] : w.path) path[k] = v;
  return Json{{"text", w.text}, {"path", path}};
}

Json report_to_json(const GenericReport& r, const CartesianFunctor& p) {
  Json flags;
  flags["generic"] = r.generic;
  flags["skeletal"] = r.skeletal;
  flags["gaunt"] = r.gaunt;
  flags["split"] = r.split ? Json(*r.split) : Json(nullptr);
  flags["acyclic"] = r.acyclic ? Json(*r.acyclic) : Json(nullptr);
  flags["weakStack"] = r.weakStack ? Json(*r.weakStack) : Json(nullptr);
  Json wit = Json::object();
  for (const auto& [flag, w] : r.witnesses) wit[flag] = witness_to_json(w);
  if (!r.splitSkipped.empty()) wit["split"] = Json{{"text", r.splitSkipped}, {"path", Json::object()}};
  return Json{{"candidate", {{"index", r.candidate}, {"name", p.total().object_name(r.candidate)}}},
              {"flags", flags},
              {"terminology", rosetta_row(r)},
              {"witnesses", wit},
              {"timingMs", r.timingMs}};
}

Json error_to_json(const Error& e) { return Json{{"error", e.kind()}, {"indices", e.indices()}, {"message", e.what()}}; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("ParseError", {}, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("ParseError", {}, path + ": " + e.what());
  }
}

}  // namespace fibcat
