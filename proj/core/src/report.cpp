#include "anhosc/report.hpp"

#include <cstdio>

namespace anhosc {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

Json json_vector(std::span<const double> v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

Json Manifest::to_json() const {
  Json j;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["config"] = config;
  return j;
}

Manifest Manifest::from_json(const Json& j) {
  Manifest m;
  m.tool = j.at("tool").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.command = j.at("command").get<std::string>();
  m.config = j.at("config");
  return m;
}

}  // namespace anhosc
