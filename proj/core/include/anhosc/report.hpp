// Shared serialization helpers: ordered JSON documents for reports and run
// manifests, and bit-round-trip numeric formatting for CSV emitters.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace anhosc {

using Json = nlohmann::ordered_json;

// %.17g string; strtod round-trips binary64 exactly
std::string format_double(double v);

std::uint64_t fnv1a(const std::string& s);

Json json_vector(std::span<const double> v);

struct Manifest {
  std::string tool = "anhosc";
  std::string version;
  std::string command;
  Json config;  // resolved numeric controls, spec source, seeds
  Json to_json() const;
  static Manifest from_json(const Json& j);
};

}  // namespace anhosc
