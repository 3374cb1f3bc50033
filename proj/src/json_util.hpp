#pragma once

// Internal helpers for strict JSON parsing: every object is walked through an
// ObjectReader so unknown keys are rejected with their document path.

#include <json.hpp>

#include <string>
#include <vector>

#include "commnet/errors.hpp"

namespace commnet::detail {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

inline json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw MalformedJson("document is not well-formed JSON");
  return j;
}

inline std::string child_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string index_path(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaViolation(path_, "expected an object");
  }

  const std::string& path() const { return path_; }

  bool has(const char* key) const { return j_.contains(key); }

  const json& require(const char* key) {
    auto it = j_.find(key);
    if (it == j_.end()) throw SchemaViolation(path_, std::string("missing key '") + key + "'");
    seen_.push_back(key);
    return *it;
  }

  const json* optional(const char* key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.push_back(key);
    return &*it;
  }

  std::string require_string(const char* key) {
    const json& v = require(key);
    if (!v.is_string()) throw SchemaViolation(child_path(path_, key), "expected a string");
    return v.get<std::string>();
  }

  double require_number(const char* key) {
    const json& v = require(key);
    if (!v.is_number()) throw SchemaViolation(child_path(path_, key), "expected a number");
    return v.get<double>();
  }

  bool require_bool(const char* key) {
    const json& v = require(key);
    if (!v.is_boolean()) throw SchemaViolation(child_path(path_, key), "expected a boolean");
    return v.get<bool>();
  }

  uint64_t require_uint(const char* key) {
    const json& v = require(key);
    if (!v.is_number_unsigned()) {
      throw SchemaViolation(child_path(path_, key), "expected a non-negative integer");
    }
    return v.get<uint64_t>();
  }

  const json& require_array(const char* key) {
    const json& v = require(key);
    if (!v.is_array()) throw SchemaViolation(child_path(path_, key), "expected an array");
    return v;
  }

  // Call last: rejects any key not consumed by require/optional.
  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool known = false;
      for (const auto& s : seen_) {
        if (s == it.key()) {
          known = true;
          break;
        }
      }
      if (!known) throw SchemaViolation(child_path(path_, it.key()), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string> seen_;
};

}  // namespace commnet::detail
