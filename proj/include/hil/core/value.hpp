#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hil {

/// Raised for any model-definition or model-execution defect: bad registration,
/// out-of-domain assignment, read-set violation, nondeterminism in the system model.
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Index of a declared finite enumeration inside a model.
struct EnumId {
  std::uint32_t index = 0;
  friend bool operator==(EnumId, EnumId) = default;
};

/// A symbolic value: member `ordinal` of enumeration `enumeration`.
struct Label {
  EnumId enumeration;
  std::uint32_t ordinal = 0;
  friend bool operator==(const Label&, const Label&) = default;
};

/// Tagged scalar held by every model variable.
using Value = std::variant<std::int64_t, bool, Label>;

inline bool is_int(const Value& v) { return std::holds_alternative<std::int64_t>(v); }
inline bool is_bool(const Value& v) { return std::holds_alternative<bool>(v); }
inline bool is_label(const Value& v) { return std::holds_alternative<Label>(v); }

inline std::int64_t as_int(const Value& v) {
  if (const auto* p = std::get_if<std::int64_t>(&v)) return *p;
  throw ModelError("value is not an integer");
}

inline bool as_bool(const Value& v) {
  if (const auto* p = std::get_if<bool>(&v)) return *p;
  throw ModelError("value is not a boolean");
}

inline Label as_label(const Value& v) {
  if (const auto* p = std::get_if<Label>(&v)) return *p;
  throw ModelError("value is not a symbolic label");
}

/// Ordering within one kind. Labels of different enumerations do not compare.
inline bool value_less(const Value& a, const Value& b) {
  if (a.index() != b.index()) throw ModelError("cannot compare values of different kinds");
  if (is_label(a)) {
    const Label la = as_label(a), lb = as_label(b);
    if (!(la.enumeration == lb.enumeration))
      throw ModelError("cannot compare labels of different enumerations");
    return la.ordinal < lb.ordinal;
  }
  if (is_bool(a)) return !as_bool(a) && as_bool(b);
  return as_int(a) < as_int(b);
}

struct Enumeration {
  std::string name;
  std::vector<std::string> labels;
};

/// Declared value set of a variable: an integer range, a boolean, or an enumeration.
struct Domain {
  enum class Kind { Int, Bool, Enum };

  Kind kind = Kind::Int;
  std::int64_t min = 0;
  std::int64_t max = 0;
  EnumId enumeration{};
  std::size_t enum_size = 0;

  static Domain integer(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ModelError("empty integer range");
    Domain d;
    d.kind = Kind::Int;
    d.min = lo;
    d.max = hi;
    return d;
  }
  static Domain boolean() {
    Domain d;
    d.kind = Kind::Bool;
    return d;
  }
  static Domain of_enum(EnumId e, std::size_t size) {
    if (size == 0) throw ModelError("empty enumeration");
    Domain d;
    d.kind = Kind::Enum;
    d.enumeration = e;
    d.enum_size = size;
    return d;
  }

  bool contains(const Value& v) const {
    switch (kind) {
    case Kind::Int:
      return is_int(v) && as_int(v) >= min && as_int(v) <= max;
    case Kind::Bool:
      return is_bool(v);
    case Kind::Enum:
      return is_label(v) && as_label(v).enumeration == enumeration &&
             as_label(v).ordinal < enum_size;
    }
    return false;
  }

  std::uint64_t size() const {
    switch (kind) {
    case Kind::Int:
      return static_cast<std::uint64_t>(max - min) + 1;
    case Kind::Bool:
      return 2;
    case Kind::Enum:
      return enum_size;
    }
    return 0;
  }

  /// Every member in ascending order. Only sensible for small domains.
  std::vector<Value> values() const {
    std::vector<Value> out;
    switch (kind) {
    case Kind::Int:
      for (std::int64_t i = min; i <= max; ++i) out.emplace_back(i);
      break;
    case Kind::Bool:
      out.emplace_back(false);
      out.emplace_back(true);
      break;
    case Kind::Enum:
      for (std::uint32_t i = 0; i < enum_size; ++i) out.emplace_back(Label{enumeration, i});
      break;
    }
    return out;
  }
};

} // namespace hil
