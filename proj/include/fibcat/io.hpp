#pragma once

#include <string>

#include <json.hpp>

#include "fibcat/classify.hpp"
#include "fibcat/fincat.hpp"

namespace fibcat {

using Json = nlohmann::ordered_json;

// {"objects": n, "morphisms": [{"src":i,"tgt":j,"name":..}], "identities": [..],
//  "comp": [[..]], "objectNames": [..]} with -1 for undefined composites.
Json category_to_json(const FinCat& c);
CategoryPresentation presentation_from_json(const Json& j);  // InputError on shape problems
// Validates; a string is a builder expression.
CatPtr category_from_json(const Json& j);

// {"dom": <category or expression>, "cod": .., "objMap": [..], "morMap": [..]}
Json functor_to_json(const FinFunctor& f);
FinFunctor functor_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Json report_to_json(const GenericReport& r, const CartesianFunctor& p);
Json error_to_json(const Error& e);

Json read_json_file(const std::string& path);  // InputError("ParseError")

}  // namespace fibcat
