#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace commnet {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedJson : Error {
  using Error::Error;
};

// A document does not match the expected schema. `path` is a dotted/indexed
// locator into the offending document, e.g. "device.categories[0].defense".
struct SchemaViolation : Error {
  SchemaViolation(std::string path_, std::string reason_)
      : Error(path_.empty() ? reason_ : path_ + ": " + reason_),
        path(std::move(path_)),
        reason(std::move(reason_)) {}
  std::string path;
  std::string reason;
};

struct InvariantViolation : Error {
  using Error::Error;
};

struct DuplicateEquipmentId : Error {
  using Error::Error;
};

struct UnknownAttribute : Error {
  UnknownAttribute(std::string attribute_, std::string equipment_kind_)
      : Error("unknown attribute '" + attribute_ + "' for equipment kind '" +
              equipment_kind_ + "'"),
        attribute(std::move(attribute_)),
        equipment_kind(std::move(equipment_kind_)) {}
  std::string attribute;
  std::string equipment_kind;
};

struct NoEligibleCategory : Error {
  using Error::Error;
};

struct EmptyNetwork : Error {
  using Error::Error;
};

struct TooManyEntrypoints : Error {
  using Error::Error;
};

struct UnknownNode : Error {
  using Error::Error;
};

// A node references a category id that the given specification does not define.
struct UnknownCategory : Error {
  using Error::Error;
};

struct NoEntrypoints : Error {
  using Error::Error;
};

struct InvalidNetwork : Error {
  explicit InvalidNetwork(std::vector<std::string> violations_)
      : Error(violations_.empty()
                  ? std::string("invalid network")
                  : "invalid network: " + violations_.front() +
                        (violations_.size() > 1
                             ? " (+" + std::to_string(violations_.size() - 1) +
                                   " more)"
                             : "")),
        violations(std::move(violations_)) {}
  std::vector<std::string> violations;
};

}  // namespace commnet
