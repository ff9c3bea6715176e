#pragma once

#include "hil/core/model.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hil {

/// Counterexample representation: snapshots[k].iteration == k.
struct Trace {
  std::vector<ModelState> snapshots;
  friend bool operator==(const Trace&, const Trace&) = default;
};

struct StepResult {
  ModelState state;
  ChoiceLog choices;
  std::vector<std::string> violated;
};

struct Instantiation {
  ModelState state;
  ChoiceLog choices;
};

// Verdict ---------------------------------------------------------------------

struct Safe {
  std::size_t bound = 0;
};

struct Unsafe {
  std::string assertion;               // first violated assertion, in declaration order
  std::vector<std::string> violated;   // every assertion violated by the final snapshot
  Trace trace;
  ChoiceLog choices;
};

struct ModelFailure {
  std::string description;
};

struct ExploreStats {
  std::uint64_t paths = 0;
  std::uint64_t steps = 0;
};

struct Verdict {
  std::variant<Safe, Unsafe, ModelFailure> outcome;
  ExploreStats stats;

  bool safe() const { return std::holds_alternative<Safe>(outcome); }
  bool unsafe() const { return std::holds_alternative<Unsafe>(outcome); }
  bool failed() const { return std::holds_alternative<ModelFailure>(outcome); }
  const Unsafe& counterexample() const { return std::get<Unsafe>(outcome); }
};

inline std::string summary(const Verdict& v) {
  if (const auto* s = std::get_if<Safe>(&v.outcome)) return "Safe(" + std::to_string(s->bound) + ")";
  if (const auto* u = std::get_if<Unsafe>(&v.outcome)) return "Unsafe(" + u->assertion + ")";
  return "ModelError(" + std::get<ModelFailure>(v.outcome).description + ")";
}

struct ExploreOptions {
  std::size_t bound = 100;
  std::uint64_t path_ceiling = 100'000'000;
};

// Resolvers -------------------------------------------------------------------

/// Always takes the first domain value.
class FirstChoiceResolver final : public ChoiceResolver {
public:
  std::size_t choose(const ChoicePoint&, std::size_t) override { return 0; }
};

/// Feeds back a recorded ChoiceLog, draw by draw.
class ScriptedResolver final : public ChoiceResolver {
public:
  explicit ScriptedResolver(const ChoiceLog& log) : log_(log) {}

  std::size_t choose(const ChoicePoint& point, std::size_t iteration) override {
    if (next_ >= log_.size())
      throw ModelError("replay diverged: unexpected draw of " + point.id);
    const auto& entry = log_[next_++];
    if (entry.choice != point.id || entry.iteration != iteration)
      throw ModelError("replay diverged at " + point.id + ", log has " + entry.choice);
    const auto it = std::find(point.domain.begin(), point.domain.end(), entry.value);
    if (it == point.domain.end()) throw ModelError("replay value outside domain of " + point.id);
    return static_cast<std::size_t>(it - point.domain.begin());
  }

  bool exhausted() const { return next_ == log_.size(); }

private:
  const ChoiceLog& log_;
  std::size_t next_ = 0;
};

/// Enumerates every draw sequence of a deterministic computation by re-running
/// it: draws inside the recorded prefix repeat, new draws start at index 0, and
/// advance() bumps the deepest draw that still has alternatives.
class BranchCursor final : public ChoiceResolver {
public:
  std::size_t choose(const ChoicePoint& point, std::size_t) override {
    if (pos_ < stack_.size()) {
      if (stack_[pos_].width != point.domain.size())
        throw ModelError("nondeterministic branching structure at " + point.id);
      return stack_[pos_++].index;
    }
    stack_.push_back({0, point.domain.size()});
    ++pos_;
    return 0;
  }

  bool advance() {
    stack_.resize(pos_);
    pos_ = 0;
    while (!stack_.empty()) {
      auto& top = stack_.back();
      if (++top.index < top.width) return true;
      stack_.pop_back();
    }
    return false;
  }

private:
  struct Branch {
    std::size_t index;
    std::size_t width;
  };
  std::vector<Branch> stack_;
  std::size_t pos_ = 0;
};

// Core operations -------------------------------------------------------------

inline std::vector<std::string> check_assertions(const Model& model, const ModelState& state) {
  std::vector<std::string> violated;
  const StateView view(model, state);
  for (const auto& a : model.assertions())
    if (!a.predicate(view)) violated.push_back(a.id);
  return violated;
}

/// Applies the initial-value choice points to the registered initial state.
inline Instantiation instantiate(const Model& model, ChoiceResolver& resolver) {
  Instantiation out{model.initial_state(), {}};
  for (ChoiceRef c : model.initial_choices()) {
    const auto& point = model.choice(c);
    const std::size_t idx = resolver.choose(point, 0);
    if (idx >= point.domain.size())
      throw ModelError("resolver picked out-of-domain index for " + point.id);
    out.state.values[point.target.index] = point.domain[idx];
    out.choices.push_back({0, point.id, point.domain[idx]});
  }
  return out;
}

/// One control-loop iteration. `order` exists so tests can permute functions
/// within a phase; anything other than the canonical order is for checking only.
inline StepResult step(const Model& model, const ModelState& state, ChoiceResolver& resolver,
                       std::span<const Update, 9> order = kCanonicalOrder) {
  if (state.values.size() != model.variable_count())
    throw ModelError("state does not match the model's variables");
  StepResult out{state, {}, {}};
  out.state.iteration = state.iteration + 1;
  for (Update u : order) {
    const auto& fn = model.update(u);
    if (!fn.body) continue;
    UpdateContext ctx(model, u, model.read_mask(u), out.state, &resolver, &out.choices);
    fn.body(ctx);
  }
  out.violated = check_assertions(model, out.state);
  return out;
}

inline StepResult step(const ModelHandle& handle, const ModelState& state, ChoiceResolver& resolver) {
  return step(*handle, state, resolver);
}

struct Simulation {
  Trace trace;
  ChoiceLog choices;
  std::vector<std::string> violated;  // from the last snapshot; empty when the bound was reached
};

/// Runs a single path for up to `bound` iterations, stopping at the first violation.
inline Simulation simulate(const Model& model, std::size_t bound, ChoiceResolver& resolver) {
  Simulation sim;
  auto inst = instantiate(model, resolver);
  sim.choices = std::move(inst.choices);
  sim.violated = check_assertions(model, inst.state);
  sim.trace.snapshots.push_back(std::move(inst.state));
  while (sim.violated.empty() && sim.trace.snapshots.size() <= bound) {
    auto r = step(model, sim.trace.snapshots.back(), resolver);
    sim.choices.insert(sim.choices.end(), r.choices.begin(), r.choices.end());
    sim.violated = std::move(r.violated);
    sim.trace.snapshots.push_back(std::move(r.state));
  }
  return sim;
}

/// Re-executes a recorded ChoiceLog. Throws ModelError if the log does not fit the model.
inline Simulation replay(const Model& model, const ChoiceLog& log, std::size_t bound) {
  ScriptedResolver resolver(log);
  auto sim = simulate(model, bound, resolver);
  if (!resolver.exhausted()) throw ModelError("replay finished with unused choice-log entries");
  return sim;
}

namespace detail {

struct ChoiceExplosion {};

/// Depth-first search below one instantiated initial state.
inline bool explore_from(const Model& model, const Instantiation& root, const ExploreOptions& opt,
                         ExploreStats& stats, Unsafe& found) {
  struct Frame {
    ModelState state;
    BranchCursor cursor;
    std::size_t log_size;
    bool fresh = true;
  };

  std::vector<ModelState> trace{root.state};
  ChoiceLog log = root.choices;

  if (auto v = check_assertions(model, root.state); !v.empty()) {
    ++stats.paths;
    found = {v.front(), std::move(v), Trace{std::move(trace)}, std::move(log)};
    return true;
  }

  std::vector<Frame> stack;
  stack.push_back({root.state, {}, log.size()});
  while (!stack.empty()) {
    Frame& frame = stack.back();
    if (!frame.fresh && !frame.cursor.advance()) {
      stack.pop_back();
      continue;
    }
    frame.fresh = false;
    trace.resize(stack.size());
    log.resize(frame.log_size);

    auto r = step(model, frame.state, frame.cursor);
    ++stats.steps;
    log.insert(log.end(), r.choices.begin(), r.choices.end());
    trace.push_back(r.state);

    if (!r.violated.empty()) {
      ++stats.paths;
      found = {r.violated.front(), std::move(r.violated), Trace{std::move(trace)}, std::move(log)};
      return true;
    }
    if (trace.size() - 1 >= opt.bound) {
      if (++stats.paths > opt.path_ceiling) throw ChoiceExplosion{};
      continue;
    }
    const std::size_t mark = log.size();
    stack.push_back({std::move(r.state), {}, mark});
  }
  return false;
}

} // namespace detail

/// Exhaustive bounded exploration of every choice sequence, depth-first in
/// declared domain order. Returns the first counterexample in that order.
inline Verdict explore(const Model& model, const ExploreOptions& opt) {
  Verdict verdict{Safe{opt.bound}, {}};
  if (opt.bound < 1) {
    verdict.outcome = ModelFailure{"bound must be at least 1"};
    return verdict;
  }
  try {
    BranchCursor init_cursor;
    do {
      const auto root = instantiate(model, init_cursor);
      Unsafe found;
      if (detail::explore_from(model, root, opt, verdict.stats, found)) {
        verdict.outcome = std::move(found);
        return verdict;
      }
    } while (init_cursor.advance());
  } catch (const detail::ChoiceExplosion&) {
    verdict.outcome = ModelFailure{"choice explosion: more than " + std::to_string(opt.path_ceiling) +
                                   " paths"};
  } catch (const ModelError& e) {
    verdict.outcome = ModelFailure{e.what()};
  }
  return verdict;
}

inline Verdict explore(const ModelHandle& handle, std::size_t bound) {
  return explore(*handle, ExploreOptions{bound});
}

inline Verdict explore(const ModelHandle& handle, const ExploreOptions& opt) { return explore(*handle, opt); }

// Registration ----------------------------------------------------------------

inline ModelHandle register_model(ModelDefinition def) {
  if (def.variables.empty()) throw ModelError("no variables");
  if (def.initial.size() != def.variables.size()) throw ModelError("initial valuation size mismatch");

  for (const auto& e : def.enumerations)
    if (e.labels.empty()) throw ModelError("empty enumeration " + e.name);

  std::set<std::pair<Group, std::string>> names;
  for (const auto& v : def.variables) {
    if (v.id.name.empty()) throw ModelError("variable with empty name");
    if (!names.emplace(v.id.group, v.id.name).second)
      throw ModelError("duplicate variable " + std::string(group_code(v.id.group)) + "." + v.id.name);
    if (v.domain.kind == Domain::Kind::Enum && v.domain.enumeration.index >= def.enumerations.size())
      throw ModelError("variable " + v.id.name + " uses an undeclared enumeration");
  }

  auto model = std::make_shared<Model>(std::move(def));
  const auto& d = model->definition();

  model->initial_.values.reserve(d.variables.size());
  for (std::uint32_t i = 0; i < d.variables.size(); ++i) {
    if (!d.initial[i]) throw ModelError("no initial value for " + model->qualified_name(Var{i}));
    if (!d.variables[i].domain.contains(*d.initial[i]))
      throw ModelError("initial value out of range for " + model->qualified_name(Var{i}));
    model->initial_.values.push_back(*d.initial[i]);
  }

  std::set<std::string> choice_ids;
  for (std::uint32_t i = 0; i < d.choices.size(); ++i) {
    const auto& c = d.choices[i];
    if (!choice_ids.insert(c.id).second) throw ModelError("duplicate choice point " + c.id);
    if (c.domain.empty()) throw ModelError("empty choice domain: " + c.id);
    for (std::size_t a = 0; a < c.domain.size(); ++a)
      for (std::size_t b = a + 1; b < c.domain.size(); ++b)
        if (c.domain[a] == c.domain[b]) throw ModelError("duplicate value in choice domain: " + c.id);
    if (c.site) {
      if (is_system_update(*c.site))
        throw ModelError("system update must be deterministic: choice " + c.id + " sited at " +
                         std::string(update_name(*c.site)));
    } else {
      if (c.target.index >= d.variables.size()) throw ModelError("choice " + c.id + " targets no variable");
      for (const auto& v : c.domain)
        if (!d.variables[c.target.index].domain.contains(v))
          throw ModelError("choice " + c.id + " has a value outside its target's domain");
    }
  }

  if (d.initial_order.empty()) {
    for (std::uint32_t i = 0; i < d.choices.size(); ++i)
      if (!d.choices[i].site) model->initial_choices_.push_back(ChoiceRef{i});
  } else {
    std::set<std::uint32_t> seen;
    for (ChoiceRef c : d.initial_order) {
      if (c.index >= d.choices.size() || d.choices[c.index].site || !seen.insert(c.index).second)
        throw ModelError("invalid initial choice order");
      model->initial_choices_.push_back(c);
    }
  }

  for (Update u : kCanonicalOrder) {
    const auto allowed = permitted_reads(u);
    const auto& fn = model->update(u);
    std::uint16_t mask = 0;
    const auto& declared = fn.reads.empty() ? allowed : fn.reads;
    for (Group g : declared) {
      if (std::find(allowed.begin(), allowed.end(), g) == allowed.end())
        throw ModelError("read-set violation: " + std::string(update_name(u)) + " may not read " +
                         std::string(group_code(g)));
      mask |= group_bit(g);
    }
    model->read_masks_[static_cast<std::size_t>(u)] = mask;
  }

  std::set<std::string> assertion_ids;
  for (const auto& a : d.assertions) {
    if (!a.predicate) throw ModelError("assertion without predicate: " + a.id);
    if (!assertion_ids.insert(a.id).second) throw ModelError("duplicate assertion " + a.id);
  }

  // Dry run: surfaces undeclared reads, misplaced draws and out-of-domain
  // writes along the first path before anyone explores the model.
  FirstChoiceResolver first;
  const auto inst = instantiate(*model, first);
  (void)step(*model, inst.state, first);

  return model;
}

/// Explores with `var`'s initial value promoted to a choice over its full domain.
/// The probe choice is resolved first, so a counterexample's ChoiceLog starts
/// with the violating initial value.
inline Verdict probe_variable(const ModelHandle& handle, Var var, const ExploreOptions& opt) {
  const auto& decl = handle->variable(var);
  constexpr std::uint64_t kMaxProbeDomain = 1u << 16;
  if (decl.domain.size() > kMaxProbeDomain)
    return Verdict{ModelFailure{"probe domain too large: " + handle->qualified_name(var)}, {}};

  ModelDefinition def = handle->definition();
  std::vector<ChoiceRef> order{ChoiceRef{static_cast<std::uint32_t>(def.choices.size())}};
  for (ChoiceRef c : handle->initial_choices())
    if (!(def.choices[c.index].target == var)) order.push_back(c);
  def.choices.push_back({"probe:" + handle->qualified_name(var), decl.domain.values(), std::nullopt, var});
  def.initial_order = std::move(order);
  try {
    return explore(*register_model(std::move(def)), opt);
  } catch (const ModelError& e) {
    return Verdict{ModelFailure{e.what()}, {}};
  }
}

inline Verdict probe_variable(const ModelHandle& handle, Var var, std::size_t bound) {
  return probe_variable(handle, var, ExploreOptions{bound});
}

} // namespace hil
