// Minimal structural validator for the published schemas: checks `type`,
// `required`, and per-property `type` (the subset the schemas use).
#pragma once

#include <fstream>
#include <string>

#include "anhosc/report.hpp"

namespace anhosc_test {

inline bool type_matches(const anhosc::Json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "number") return value.is_number();
  return false;
}

inline bool validate_against_schema(const anhosc::Json& doc, const anhosc::Json& schema,
                                    std::string* why = nullptr) {
  if (schema.contains("type") &&
      !type_matches(doc, schema["type"].get<std::string>())) {
    if (why) *why = "top-level type mismatch";
    return false;
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"]) {
      if (!doc.contains(key.get<std::string>())) {
        if (why) *why = "missing required key: " + key.get<std::string>();
        return false;
      }
    }
  if (schema.contains("properties"))
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (!doc.contains(key)) continue;
      if (sub.contains("type") &&
          !type_matches(doc[key], sub["type"].get<std::string>())) {
        if (why) *why = "type mismatch at key: " + key;
        return false;
      }
    }
  return true;
}

inline anhosc::Json load_schema(const std::string& name) {
  const std::string path = std::string(ANHOSC_SCHEMA_DIR) + "/" + name;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open schema " + path);
  return anhosc::Json::parse(is);
}

}  // namespace anhosc_test
