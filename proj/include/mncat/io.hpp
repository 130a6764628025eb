#pragma once
// JSON (de)serialization for the document envelope and all payload kinds.
// Key ordering is nlohmann's lexicographic default, so reports are byte-stable
// across runs for identical inputs.

#include <json.hpp>
#include <string>

#include "mncat/diagram.hpp"
#include "mncat/dpo.hpp"
#include "mncat/sheaves.hpp"

namespace mncat {

using nlohmann::json;

// Malformed input files / schema violations (CLI maps these to exit 2).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kFormatVersion = "1";

json category_to_json(const CategoryId& cat);
CategoryId category_from_json(const json& j);

json obj_to_json(const Obj& x);
Obj obj_from_json(const CategoryId& cat, const json& j);

json morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const CategoryId& cat, const json& j);

json square_to_json(const Square& sq);
Square square_from_json(const CategoryId& cat, const json& j);

json cube_to_json(const Cube& c);

json rule_to_json(const Rule& r);
// Validates l against M (rule invariant).
Rule rule_from_json(const CategoryId& cat, const json& j, const MorphismClass& M);

// Sites serialize as their object list plus the class tokens used to build
// them; covers/homs are reconstructed on load.
json site_to_json(const FiniteSite& site, const std::string& m_class,
                  const std::string& n_class);
FiniteSite site_from_json(const json& j, std::string* m_class = nullptr,
                          std::string* n_class = nullptr);

// Presheaves are positional against the site's object/hom enumeration order.
json presheaf_to_json(const FinitePresheaf& F);
FinitePresheaf presheaf_from_json(const json& j);

// {format_version, category, payload}
json envelope(const CategoryId& cat, json payload);

struct Envelope {
  std::string format_version;
  CategoryId cat;
  json payload;
};
Envelope parse_envelope(const json& j);

// Read + parse a file, throwing IoError with the path and parse position.
json load_json_file(const std::string& path);

}  // namespace mncat
