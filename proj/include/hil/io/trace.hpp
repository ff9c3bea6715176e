#pragma once

// Line-delimited trace export. Field order is fixed:
//
//   hil-trace 1
//   header scenario=<name> bound=<n> verdict=<Safe|Unsafe> failed=<assertion|-> states=<k> choices=<m>
//   state iteration=<i> <GC.name>=<value> ...      one per snapshot, variables in declaration order
//   choice iteration=<i> id=<choice id> value=<value>   one per ChoiceLog entry
//
// Integers are decimal, booleans true/false, enumerated values by label.

#include "hil/core/engine.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hil::io {

class TraceFormatError : public std::runtime_error {
public:
  TraceFormatError(std::size_t line, const std::string& msg)
      : std::runtime_error("trace line " + std::to_string(line) + ": " + msg) {}
};

struct TraceHeader {
  std::string scenario;
  std::size_t bound = 0;
  std::string verdict;  // "Safe" or "Unsafe"
  std::string failed;   // "-" when Safe
  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

inline void write_trace(std::ostream& out, const Model& model, const TraceHeader& header, const Trace& trace,
                        const ChoiceLog& log) {
  out << "hil-trace 1\n";
  out << "header scenario=" << header.scenario << " bound=" << header.bound << " verdict=" << header.verdict
      << " failed=" << (header.failed.empty() ? "-" : header.failed) << " states=" << trace.snapshots.size()
      << " choices=" << log.size() << "\n";
  for (const auto& s : trace.snapshots) {
    out << "state iteration=" << s.iteration;
    for (std::uint32_t i = 0; i < model.variable_count(); ++i)
      out << ' ' << model.qualified_name(Var{i}) << '=' << model.format(s.values.at(i));
    out << '\n';
  }
  for (const auto& c : log)
    out << "choice iteration=" << c.iteration << " id=" << c.choice << " value=" << model.format(c.value) << '\n';
}

inline std::string trace_to_string(const Model& model, const TraceHeader& header, const Trace& trace,
                                   const ChoiceLog& log) {
  std::ostringstream os;
  write_trace(os, model, header, trace, log);
  return os.str();
}

/// Raw fields of one record, in file order.
using TraceFields = std::vector<std::pair<std::string, std::string>>;

struct TraceFile {
  TraceHeader header;
  std::vector<TraceFields> states;
  std::vector<TraceFields> choices;
};

namespace detail {

inline TraceFields split_fields(const std::string& rest, std::size_t line) {
  TraceFields out;
  std::istringstream in(rest);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw TraceFormatError(line, "expected key=value, got '" + tok + "'");
    out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

inline const std::string& field(const TraceFields& f, std::string_view key, std::size_t line) {
  for (const auto& [k, v] : f)
    if (k == key) return v;
  throw TraceFormatError(line, "missing field " + std::string(key));
}

inline std::size_t to_size(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw TraceFormatError(line, "bad number '" + s + "'");
  return v;
}

} // namespace detail

inline TraceFile read_trace(std::istream& in) {
  TraceFile out;
  std::string raw;
  std::size_t n = 0;
  bool magic = false, header = false;
  std::size_t want_states = 0, want_choices = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (raw.empty()) continue;
    if (!magic) {
      if (raw != "hil-trace 1") throw TraceFormatError(n, "not a trace file");
      magic = true;
      continue;
    }
    const auto sp = raw.find(' ');
    const std::string kind = raw.substr(0, sp);
    const auto fields = detail::split_fields(sp == std::string::npos ? "" : raw.substr(sp + 1), n);
    if (kind == "header") {
      out.header.scenario = detail::field(fields, "scenario", n);
      out.header.bound = detail::to_size(detail::field(fields, "bound", n), n);
      out.header.verdict = detail::field(fields, "verdict", n);
      out.header.failed = detail::field(fields, "failed", n);
      want_states = detail::to_size(detail::field(fields, "states", n), n);
      want_choices = detail::to_size(detail::field(fields, "choices", n), n);
      header = true;
    } else if (kind == "state") {
      if (!header) throw TraceFormatError(n, "state before header");
      out.states.push_back(fields);
    } else if (kind == "choice") {
      if (!header) throw TraceFormatError(n, "choice before header");
      out.choices.push_back(fields);
    } else {
      throw TraceFormatError(n, "unknown record '" + kind + "'");
    }
  }
  if (!header) throw TraceFormatError(n, "missing header");
  if (out.states.size() != want_states || out.choices.size() != want_choices)
    throw TraceFormatError(n, "record count does not match header");
  return out;
}

/// Parses a formatted value back according to `decl`'s domain.
inline Value parse_value(const Model& model, const Domain& domain, const std::string& text) {
  switch (domain.kind) {
  case Domain::Kind::Bool:
    if (text == "true") return Value{true};
    if (text == "false") return Value{false};
    break;
  case Domain::Kind::Int: {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && p == text.data() + text.size()) return Value{v};
    break;
  }
  case Domain::Kind::Enum: {
    const auto& labels = model.enumerations().at(domain.enumeration.index).labels;
    for (std::uint32_t i = 0; i < labels.size(); ++i)
      if (labels[i] == text) return Value{Label{domain.enumeration, i}};
    break;
  }
  }
  throw ModelError("cannot parse value '" + text + "'");
}

/// Rebuilds a ModelState from a state record; every model variable must be present.
inline ModelState decode_state(const Model& model, const TraceFields& record) {
  ModelState s;
  s.values.resize(model.variable_count());
  std::vector<bool> seen(model.variable_count(), false);
  bool have_iteration = false;
  for (const auto& [k, v] : record) {
    if (k == "iteration") {
      s.iteration = detail::to_size(v, 0);
      have_iteration = true;
      continue;
    }
    const Var var = model.var(k);
    s.values[var.index] = parse_value(model, model.variable(var).domain, v);
    seen[var.index] = true;
  }
  if (!have_iteration) throw ModelError("state record without iteration");
  for (std::uint32_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ModelError("state record lacks " + model.qualified_name(Var{i}));
  return s;
}

inline ChoiceLog decode_choices(const Model& model, const std::vector<TraceFields>& records) {
  ChoiceLog log;
  for (const auto& r : records) {
    const std::string& id = detail::field(r, "id", 0);
    const ChoicePoint* point = nullptr;
    for (const auto& c : model.choices())
      if (c.id == id) point = &c;
    if (point == nullptr) throw ModelError("unknown choice point " + id);
    // All values in a choice domain share one kind; use the first to pick the parser.
    const Value& proto = point->domain.front();
    Domain d = Domain::integer(0, 0);
    if (is_bool(proto)) d = Domain::boolean();
    if (is_label(proto)) d = Domain::of_enum(as_label(proto).enumeration, model.enumerations().at(as_label(proto).enumeration.index).labels.size());
    log.push_back({detail::to_size(detail::field(r, "iteration", 0), 0), id, parse_value(model, d, detail::field(r, "value", 0))});
  }
  return log;
}

} // namespace hil::io
