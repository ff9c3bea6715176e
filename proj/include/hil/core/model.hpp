#pragma once

#include "hil/core/value.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hil {

/// The nine variable groups of the environment / system / behaviour models.
enum class Group : std::uint8_t {
  EnvInput,
  EnvOutput,
  EnvState,
  SysInput,
  SysOutput,
  SysState,
  BehInput,
  BehOutput,
  BehState,
};

inline constexpr std::array<Group, 9> kAllGroups = {
    Group::EnvInput, Group::EnvOutput, Group::EnvState,  Group::SysInput, Group::SysOutput,
    Group::SysState, Group::BehInput,  Group::BehOutput, Group::BehState,
};

inline std::string_view group_code(Group g) {
  switch (g) {
  case Group::EnvInput: return "EI";
  case Group::EnvOutput: return "EO";
  case Group::EnvState: return "ES";
  case Group::SysInput: return "SI";
  case Group::SysOutput: return "SO";
  case Group::SysState: return "SS";
  case Group::BehInput: return "BI";
  case Group::BehOutput: return "BO";
  case Group::BehState: return "BS";
  }
  return "??";
}

inline std::optional<Group> group_from_code(std::string_view code) {
  for (Group g : kAllGroups)
    if (group_code(g) == code) return g;
  return std::nullopt;
}

/// The nine update functions, enumerated in control-loop execution order:
/// inputs (E, S, B), then outputs (E, S, B), then states (E, S, B).
enum class Update : std::uint8_t {
  EnvInput,
  SysInput,
  BehInput,
  EnvOutput,
  SysOutput,
  BehOutput,
  EnvState,
  SysState,
  BehState,
};

inline constexpr std::array<Update, 9> kCanonicalOrder = {
    Update::EnvInput,  Update::SysInput,  Update::BehInput, Update::EnvOutput, Update::SysOutput,
    Update::BehOutput, Update::EnvState,  Update::SysState, Update::BehState,
};

inline std::string_view update_name(Update u) {
  switch (u) {
  case Update::EnvInput: return "f_EI";
  case Update::SysInput: return "f_SI";
  case Update::BehInput: return "f_BI";
  case Update::EnvOutput: return "f_EO";
  case Update::SysOutput: return "f_SO";
  case Update::BehOutput: return "f_BO";
  case Update::EnvState: return "f_ES";
  case Update::SysState: return "f_SS";
  case Update::BehState: return "f_BS";
  }
  return "f_??";
}

inline Group target_group(Update u) {
  switch (u) {
  case Update::EnvInput: return Group::EnvInput;
  case Update::SysInput: return Group::SysInput;
  case Update::BehInput: return Group::BehInput;
  case Update::EnvOutput: return Group::EnvOutput;
  case Update::SysOutput: return Group::SysOutput;
  case Update::BehOutput: return Group::BehOutput;
  case Update::EnvState: return Group::EnvState;
  case Update::SysState: return Group::SysState;
  case Update::BehState: return Group::BehState;
  }
  return Group::EnvInput;
}

/// The groups each update function may read. Inputs are computed from the
/// previous outputs and states; outputs and states from the fresh inputs and
/// the previous state. The environment never sees behaviour outputs.
inline std::vector<Group> permitted_reads(Update u) {
  switch (u) {
  case Update::EnvInput: return {Group::SysOutput, Group::EnvState};
  case Update::SysInput: return {Group::BehOutput, Group::EnvOutput, Group::SysState};
  case Update::BehInput: return {Group::BehState, Group::EnvOutput, Group::SysOutput};
  case Update::EnvOutput: return {Group::EnvInput, Group::EnvState};
  case Update::SysOutput: return {Group::SysInput, Group::SysState};
  case Update::BehOutput: return {Group::BehInput, Group::BehState};
  case Update::EnvState: return {Group::EnvInput, Group::EnvState};
  case Update::SysState: return {Group::SysInput, Group::SysState};
  case Update::BehState: return {Group::BehInput, Group::BehState};
  }
  return {};
}

inline bool is_system_update(Update u) {
  return u == Update::SysInput || u == Update::SysOutput || u == Update::SysState;
}

inline std::uint16_t group_bit(Group g) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(g)); }

struct VarId {
  std::string name;
  Group group = Group::EnvInput;
  friend bool operator==(const VarId&, const VarId&) = default;
};

/// Handle to a declared variable (its slot in a valuation).
struct Var {
  std::uint32_t index = 0;
  friend bool operator==(Var, Var) = default;
};

/// Handle to a declared choice point.
struct ChoiceRef {
  std::uint32_t index = 0;
  friend bool operator==(ChoiceRef, ChoiceRef) = default;
};

struct VariableDecl {
  VarId id;
  Domain domain;
};

/// A named finite-domain nondeterministic assignment. `site` is the update
/// function allowed to draw it; an empty site means the choice picks the
/// initial value of `target`.
struct ChoicePoint {
  std::string id;
  std::vector<Value> domain;
  std::optional<Update> site;
  Var target{};
};

/// One complete valuation of every declared variable.
struct ModelState {
  std::vector<Value> values;
  std::size_t iteration = 0;
  friend bool operator==(const ModelState&, const ModelState&) = default;
};

struct ChoiceEntry {
  std::size_t iteration = 0;
  std::string choice;
  Value value;
  friend bool operator==(const ChoiceEntry&, const ChoiceEntry&) = default;
};

using ChoiceLog = std::vector<ChoiceEntry>;

/// Supplies one domain index per choice-point draw.
class ChoiceResolver {
public:
  virtual ~ChoiceResolver() = default;
  virtual std::size_t choose(const ChoicePoint& point, std::size_t iteration) = 0;
};

class Model;

/// What an update function sees: reads restricted to its declared groups,
/// writes restricted to its target group, and draws restricted to the choice
/// points sited at it.
class UpdateContext {
public:
  UpdateContext(const Model& model, Update fn, std::uint16_t read_mask, ModelState& state,
                ChoiceResolver* resolver, ChoiceLog* log)
      : model_(model), fn_(fn), read_mask_(read_mask), state_(state), resolver_(resolver),
        log_(log) {}

  const Value& get(Var v) const;
  std::int64_t get_int(Var v) const { return as_int(get(v)); }
  bool get_bool(Var v) const { return as_bool(get(v)); }
  Label get_label(Var v) const { return as_label(get(v)); }
  template <class E> E get_enum(Var v) const { return static_cast<E>(get_label(v).ordinal); }

  void set(Var v, Value value);
  void set_int(Var v, std::int64_t x) { set(v, Value{x}); }
  void set_bool(Var v, bool b) { set(v, Value{b}); }
  template <class E> void set_enum(Var v, E e);

  Value draw(ChoiceRef c);

  Update function() const { return fn_; }

private:
  const Model& model_;
  Update fn_;
  std::uint16_t read_mask_;
  ModelState& state_;
  ChoiceResolver* resolver_;
  ChoiceLog* log_;
};

struct UpdateFunction {
  /// Groups the body reads. Must be a subset of permitted_reads(update).
  /// Empty means "all permitted groups".
  std::vector<Group> reads;
  std::function<void(UpdateContext&)> body;
};

/// Read-only view for assertions.
class StateView {
public:
  StateView(const Model& model, const ModelState& state) : model_(model), state_(state) {}
  const Value& get(Var v) const;
  std::int64_t get_int(Var v) const { return as_int(get(v)); }
  bool get_bool(Var v) const { return as_bool(get(v)); }
  template <class E> E get_enum(Var v) const { return static_cast<E>(as_label(get(v)).ordinal); }
  const ModelState& state() const { return state_; }
  const Model& model() const { return model_; }

private:
  const Model& model_;
  const ModelState& state_;
};

struct Assertion {
  std::string id;
  std::function<bool(const StateView&)> predicate;
};

/// Everything needed to register a model. Usually assembled through ModelBuilder.
struct ModelDefinition {
  std::vector<Enumeration> enumerations;
  std::vector<VariableDecl> variables;
  std::array<UpdateFunction, 9> updates{};  // indexed by Update
  std::vector<ChoicePoint> choices;
  std::vector<Assertion> assertions;
  std::vector<std::optional<Value>> initial;  // indexed by Var
  /// Initial-value choices to apply, in order. Empty means every initial
  /// choice in declaration order.
  std::vector<ChoiceRef> initial_order;
};

std::shared_ptr<const Model> register_model(ModelDefinition def);

/// A validated, immutable model.
class Model {
public:
  explicit Model(ModelDefinition def) : def_(std::move(def)) {}

  const ModelDefinition& definition() const { return def_; }
  std::size_t variable_count() const { return def_.variables.size(); }
  const VariableDecl& variable(Var v) const { return def_.variables.at(v.index); }
  const ChoicePoint& choice(ChoiceRef c) const { return def_.choices.at(c.index); }
  const std::vector<ChoicePoint>& choices() const { return def_.choices; }
  const std::vector<Assertion>& assertions() const { return def_.assertions; }
  const std::vector<Enumeration>& enumerations() const { return def_.enumerations; }
  const UpdateFunction& update(Update u) const { return def_.updates[static_cast<std::size_t>(u)]; }
  std::uint16_t read_mask(Update u) const { return read_masks_[static_cast<std::size_t>(u)]; }

  /// Initial valuation before any initial-value choice points are applied.
  const ModelState& initial_state() const { return initial_; }

  /// Choice points that assign initial values, in declaration order.
  const std::vector<ChoiceRef>& initial_choices() const { return initial_choices_; }

  std::optional<Var> find_var(std::string_view name, Group group) const {
    for (std::uint32_t i = 0; i < def_.variables.size(); ++i)
      if (def_.variables[i].id.group == group && def_.variables[i].id.name == name) return Var{i};
    return std::nullopt;
  }

  /// Looks up "GC.name" where GC is a two-letter group code, e.g. "SS.speed".
  std::optional<Var> find_var(std::string_view qualified) const {
    const auto dot = qualified.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    const auto g = group_from_code(qualified.substr(0, dot));
    if (!g) return std::nullopt;
    return find_var(qualified.substr(dot + 1), *g);
  }

  Var var(std::string_view qualified) const {
    if (auto v = find_var(qualified)) return *v;
    throw ModelError("unknown variable: " + std::string(qualified));
  }

  std::string qualified_name(Var v) const {
    const auto& id = variable(v).id;
    return std::string(group_code(id.group)) + "." + id.name;
  }

  std::string format(const Value& value) const {
    if (is_bool(value)) return as_bool(value) ? "true" : "false";
    if (is_int(value)) return std::to_string(as_int(value));
    const Label l = as_label(value);
    return def_.enumerations.at(l.enumeration.index).labels.at(l.ordinal);
  }

private:
  friend std::shared_ptr<const Model> register_model(ModelDefinition def);

  ModelDefinition def_;
  ModelState initial_;
  std::array<std::uint16_t, 9> read_masks_{};
  std::vector<ChoiceRef> initial_choices_;
};

using ModelHandle = std::shared_ptr<const Model>;

inline const Value& UpdateContext::get(Var v) const {
  const auto& decl = model_.variable(v);
  if ((read_mask_ & group_bit(decl.id.group)) == 0)
    throw ModelError(std::string(update_name(fn_)) + " read outside its read-set: " +
                     model_.qualified_name(v));
  return state_.values[v.index];
}

inline void UpdateContext::set(Var v, Value value) {
  const auto& decl = model_.variable(v);
  if (decl.id.group != target_group(fn_))
    throw ModelError(std::string(update_name(fn_)) + " wrote outside its target group: " +
                     model_.qualified_name(v));
  if (!decl.domain.contains(value))
    throw ModelError(std::string(update_name(fn_)) + " produced out-of-domain value " +
                     model_.format(value) + " for " + model_.qualified_name(v));
  state_.values[v.index] = std::move(value);
}

template <class E> void UpdateContext::set_enum(Var v, E e) {
  const auto& decl = model_.variable(v);
  if (decl.domain.kind != Domain::Kind::Enum)
    throw ModelError("not an enumeration variable: " + model_.qualified_name(v));
  set(v, Value{Label{decl.domain.enumeration, static_cast<std::uint32_t>(e)}});
}

inline Value UpdateContext::draw(ChoiceRef c) {
  const auto& point = model_.choice(c);
  if (is_system_update(fn_))
    throw ModelError("system update must be deterministic: " + std::string(update_name(fn_)) +
                     " drew " + point.id);
  if (!point.site || *point.site != fn_)
    throw ModelError("choice point " + point.id + " drawn outside its site by " +
                     std::string(update_name(fn_)));
  if (resolver_ == nullptr) throw ModelError("no resolver for choice point " + point.id);
  const std::size_t idx = resolver_->choose(point, state_.iteration);
  if (idx >= point.domain.size())
    throw ModelError("resolver picked out-of-domain index for " + point.id);
  if (log_ != nullptr) log_->push_back({state_.iteration, point.id, point.domain[idx]});
  return point.domain[idx];
}

inline const Value& StateView::get(Var v) const { return state_.values.at(v.index); }

/// Convenience for assembling a ModelDefinition.
class ModelBuilder {
public:
  EnumId enumeration(std::string name, std::vector<std::string> labels) {
    def_.enumerations.push_back({std::move(name), std::move(labels)});
    return EnumId{static_cast<std::uint32_t>(def_.enumerations.size() - 1)};
  }

  Var variable(std::string name, Group group, Domain domain, std::optional<Value> init = {}) {
    def_.variables.push_back({{std::move(name), group}, domain});
    def_.initial.push_back(std::move(init));
    return Var{static_cast<std::uint32_t>(def_.variables.size() - 1)};
  }

  Var int_var(std::string name, Group group, std::int64_t lo, std::int64_t hi,
              std::optional<std::int64_t> init = {}) {
    std::optional<Value> v;
    if (init) v = Value{*init};
    return variable(std::move(name), group, Domain::integer(lo, hi), v);
  }

  Var bool_var(std::string name, Group group, std::optional<bool> init = {}) {
    std::optional<Value> v;
    if (init) v = Value{*init};
    return variable(std::move(name), group, Domain::boolean(), v);
  }

  Var enum_var(std::string name, Group group, EnumId e, std::optional<std::uint32_t> init = {}) {
    std::optional<Value> v;
    if (init) v = Value{Label{e, *init}};
    return variable(std::move(name), group, Domain::of_enum(e, enum_size(e)), v);
  }

  Label label(EnumId e, std::uint32_t ordinal) const { return Label{e, ordinal}; }

  void init(Var v, Value value) { def_.initial.at(v.index) = std::move(value); }

  ChoiceRef choice(std::string id, std::vector<Value> domain, Update site) {
    def_.choices.push_back({std::move(id), std::move(domain), site, Var{}});
    return ChoiceRef{static_cast<std::uint32_t>(def_.choices.size() - 1)};
  }

  /// Declares a choice over the initial value of `target`.
  ChoiceRef initial_choice(std::string id, Var target, std::vector<Value> domain) {
    def_.choices.push_back({std::move(id), std::move(domain), std::nullopt, target});
    return ChoiceRef{static_cast<std::uint32_t>(def_.choices.size() - 1)};
  }

  void update(Update u, std::vector<Group> reads, std::function<void(UpdateContext&)> body) {
    def_.updates[static_cast<std::size_t>(u)] = {std::move(reads), std::move(body)};
  }

  void assertion(std::string id, std::function<bool(const StateView&)> predicate) {
    def_.assertions.push_back({std::move(id), std::move(predicate)});
  }

  std::size_t enum_size(EnumId e) const { return def_.enumerations.at(e.index).labels.size(); }

  ModelDefinition& definition() { return def_; }
  ModelDefinition build() && { return std::move(def_); }

private:
  ModelDefinition def_;
};

} // namespace hil
