// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. argv[1] is the hil-check executable.

#include "hil/models/acc.hpp"
#include "hil/models/behaviour.hpp"
#include "hil/scenarios/scenario.hpp"
#include "support/random_models.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hil;

struct CliResult {
  int exit_code = -1;
  std::string out;
  double seconds = 0;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CliResult run_cli(const std::string& exe, const std::vector<std::string>& args) {
  std::string cmd = quote(exe);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  CliResult r;
  const auto t0 = std::chrono::steady_clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string verdict_line(const std::string& out) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("verdict: ", 0) == 0) return line.substr(9);
  return "<none>";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
};

const std::vector<std::pair<std::string, std::string>> kExpected = {
    {"lowered-speed", "Unsafe(FatigueBounded)"},
    {"manual-override", "Unsafe(SeparationMaintained)"},
    {"ideal", "Safe(100)"},
};

void scenario_reproduction_and_runtime(const std::string& exe, Criterion& c1, Criterion& c2) {
  for (const auto& [name, want] : kExpected) {
    const auto r = run_cli(exe, {"run", name, "--bound", "100"});
    const auto got = verdict_line(r.out);
    const int want_exit = want.rfind("Safe", 0) == 0 ? 0 : 1;
    std::ostringstream note;
    note << name << " -> " << got << " (exit " << r.exit_code << ", " << r.seconds << "s)";
    c1.notes.push_back(note.str());
    if (got != want || r.exit_code != want_exit) c1.fail(name + ": expected " + want);
    if (r.seconds >= 60.0) c2.fail(name + " took " + std::to_string(r.seconds) + "s");
    c2.notes.push_back(name + " " + std::to_string(r.seconds) + "s");
  }
}

void oracle_equivalence_and_replay(Criterion& c3, Criterion& c4) {
  constexpr std::uint64_t kModels = 300;
  std::size_t unsafe = 0, replayed = 0;
  for (std::uint64_t seed = 0; seed < kModels; ++seed) {
    const auto rm = testing::make_random_model(seed);
    const auto oracle = testing::flat_oracle(*rm.model, rm.bound);
    const auto v = explore(*rm.model, ExploreOptions{rm.bound});
    if (v.failed()) {
      c3.fail("seed " + std::to_string(seed) + ": " + summary(v));
      continue;
    }
    if (v.unsafe() != oracle.unsafe) {
      c3.fail("seed " + std::to_string(seed) + ": verdict differs from oracle");
      continue;
    }
    if (oracle.distinct_paths == 0) c3.fail("seed " + std::to_string(seed) + ": oracle saw no paths");
    if (v.safe() && v.stats.paths != oracle.distinct_paths)
      c3.fail("seed " + std::to_string(seed) + ": path count differs from oracle");
    if (!v.unsafe()) continue;
    ++unsafe;
    const auto& u = v.counterexample();
    if (u.assertion != oracle.assertion || testing::draw_indices(*rm.model, u.choices) != oracle.first_draws)
      c3.fail("seed " + std::to_string(seed) + ": counterexample differs from oracle");
    const auto sim = replay(*rm.model, u.choices, u.trace.snapshots.size() - 1);
    if (sim.trace != u.trace || sim.violated.empty() || sim.violated.front() != u.assertion)
      c4.fail("oracle-family seed " + std::to_string(seed) + " does not replay");
    ++replayed;
  }
  c3.notes.push_back(std::to_string(kModels) + " models, " + std::to_string(unsafe) + " unsafe");

  for (const auto& [name, want] : kExpected) {
    const auto cfg = *scenarios::scenario_by_name(name);
    const auto cs = scenarios::build_case_study(cfg);
    const auto v = explore(*cs.model, ExploreOptions{cfg.bound});
    if (!v.unsafe()) continue;
    const auto& u = v.counterexample();
    const auto sim = replay(*cs.model, u.choices, u.trace.snapshots.size() - 1);
    if (sim.trace != u.trace || sim.choices != u.choices || sim.violated.empty() || sim.violated.front() != u.assertion)
      c4.fail(name + " does not replay");
    ++replayed;
  }
  c4.notes.push_back(std::to_string(replayed) + " counterexamples replayed");
}

void behaviour_properties(Criterion& c) {
  using namespace behaviour;
  std::size_t checks = 0, violations = 0;
  auto expect = [&](bool ok) {
    ++checks;
    if (!ok) ++violations;
  };
  for (auto m : kInputModes)
    for (auto a : kFatigueLevels)
      for (auto b : kFatigueLevels)
        if (severity(a) <= severity(b)) expect(set_reaction_time(m, a) <= set_reaction_time(m, b));
  for (auto f : kFatigueLevels)
    for (auto a : kInputModes)
      for (auto b : kInputModes)
        if (reaction_units(base_reaction(a), {}) <= reaction_units(base_reaction(b), {}))
          expect(set_reaction_time(a, f) <= set_reaction_time(b, f));
  for (auto op : kIntegratorOps)
    for (auto terrain : {environment::Terrain::OnRoad, environment::Terrain::OffRoad})
      for (int d = 0; d <= 6; ++d)
        for (int t = 0; t <= 40; ++t)
          expect(severity(set_driver_fatigue(t, terrain, d, op)) <= severity(set_driver_fatigue(t + 1, terrain, d, op)));
  for (int preset = 1; preset <= 60; ++preset)
    for (int gap = 0; gap <= 80; ++gap) {
      const auto cmd = acc::acc_decide(preset, gap);
      const int fired = (cmd == acc::AccCommand::Maintain) + (cmd == acc::AccCommand::Decelerate) +
                        (cmd == acc::AccCommand::Accelerate);
      expect(fired == 1 && (cmd == acc::AccCommand::Maintain) == (preset == gap) &&
             (cmd == acc::AccCommand::Decelerate) == (preset > gap));
    }
  constexpr int kMaxSpeed = 10;
  for (int lead = 1; lead < kMaxSpeed; ++lead)
    for (int preset = 1; preset <= 40; ++preset)
      for (int gap0 = 0; gap0 <= 80; ++gap0) {
        acc::VehicleState v{lead, gap0};
        const int budget = std::abs(gap0 - preset) + kMaxSpeed;
        int settled = 0;
        for (int t = 0; t <= budget + 200; ++t) {
          if (std::abs(v.gap_to_lead - preset) > 1) settled = t + 1;
          v = acc::apply_command(v, acc::acc_control(preset, v.gap_to_lead, v.speed, lead), lead, kMaxSpeed);
        }
        expect(settled <= budget);
      }
  c.notes.push_back(std::to_string(checks) + " checks, " + std::to_string(violations) + " violations");
  if (violations != 0) c.fail("property violations found");
}

void integrator_independence(const std::string& exe, Criterion& c) {
  for (const auto& op : behaviour::integrator_labels()) {
    const auto r = run_cli(exe, {"run", "ideal", "--bound", "100", "--operators", op});
    const auto got = verdict_line(r.out);
    c.notes.push_back(op + " -> " + got);
    if (got != "Safe(100)" || r.exit_code != 0) c.fail(op + " is not Safe(100)");
  }
}

void determinism(const std::string& exe, Criterion& c) {
  const auto dir = std::filesystem::temp_directory_path() / "hil_acceptance";
  std::filesystem::create_directories(dir);
  for (const auto& [name, want] : kExpected) {
    const auto a = dir / (name + ".a.trace");
    const auto b = dir / (name + ".b.trace");
    run_cli(exe, {"run", name, "--trace-out", a.string(), "--trace-always"});
    run_cli(exe, {"run", name, "--trace-out", b.string(), "--trace-always"});
    const auto ta = slurp(a), tb = slurp(b);
    if (ta.empty()) c.fail(name + ": no trace written");
    if (ta != tb) c.fail(name + ": traces differ");
    c.notes.push_back(name + " " + std::to_string(ta.size()) + " bytes");
  }
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to hil-check>\n";
    return 2;
  }
  const std::string exe = argv[1];
  std::vector<Criterion> cs = {
      {1, "scenario reproduction"},  {2, "runtime under 60s"},   {3, "oracle equivalence"},
      {4, "replay closure"},         {5, "behaviour properties"}, {6, "integrator independence"},
      {7, "determinism"},
  };
  scenario_reproduction_and_runtime(exe, cs[0], cs[1]);
  oracle_equivalence_and_replay(cs[2], cs[3]);
  behaviour_properties(cs[4]);
  integrator_independence(exe, cs[5]);
  determinism(exe, cs[6]);

  bool all = true;
  for (const auto& c : cs) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
    for (std::size_t i = 0; i < c.notes.size(); ++i) std::cout << (i == 0 ? " [" : "; ") << c.notes[i];
    std::cout << (c.notes.empty() ? "" : "]") << "\n";
    all = all && c.pass;
  }
  return all ? 0 : 1;
}
