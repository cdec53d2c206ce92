// Copyright 2026 The gfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gfb/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <sstream>

#include "gfb/dynamics.hpp"
#include "gfb/engine.hpp"
#include "gfb/error.hpp"
#include "gfb/io.hpp"
#include "gfb/ode.hpp"

namespace gfb::cli {

namespace {

struct RunSpec {
  std::string model;
  std::string partition = "all";
  std::string op;
  std::string backend = "auto";
  int trials = 40;
  std::uint64_t prime = 2147483647ULL;
  std::uint64_t seed = 0;
  int cutoff = 22;
  std::string tau_mode;
  int jobs = 1;
  std::string output;
  std::string report;
  bool verbose = false;
  // subcommand specific
  std::string mode = "pairs";
  std::string init;
  int steps = 10;
  std::string reduced;
  bool preserve = false;
  std::uint64_t limit = std::uint64_t{1} << 22;
  bool refine = false;
};

CheckerConfig make_config(const RunSpec& rs, std::ostream& err) {
  CheckerConfig cfg;
  cfg.backend = parse_backend(rs.backend);
  cfg.trials = rs.trials;
  cfg.prime = rs.prime;
  cfg.seed = rs.seed;
  cfg.cutoff = rs.cutoff;
  cfg.jobs = rs.jobs;
  if (rs.tau_mode.empty() || rs.tau_mode == "variable" || rs.tau_mode == "none") {
    cfg.tau_mode = rs.tau_mode == "none" ? TauMode::None : TauMode::TauVariable;
  } else if (rs.tau_mode == "truncate2") {
    cfg.tau_mode = TauMode::Truncate;
    cfg.truncate_order = 2;
  } else {
    throw DomainError("unknown tau mode '" + rs.tau_mode + "'");
  }
  if (rs.verbose) cfg.log = &err;
  cfg.validate();
  return cfg;
}

std::string partition_text(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

Monoid make_monoid(const std::string& op, const Domain& d) {
  if (op.empty()) throw DomainError("--op is required");
  return Monoid(parse_monoid_op(op), d);
}

std::string format_assignment(const DynSystem& sys, const State& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) out += ", ";
    out += (k < sys.vars.size() ? sys.vars[k] : "v" + std::to_string(k)) + "=" + s[k].to_string();
  }
  return out;
}

void print_verdict(const DynSystem& sys, const Verdict& v, std::ostream& out) {
  out << "verdict: " << to_string(v.status) << "\n";
  if (v.status == Status::ProbablyValid)
    out << "trials: " << v.trials << ", per-trial bound: " << v.per_trial_bound << "\n";
  if (v.witness) {
    const Witness& w = *v.witness;
    if (w.i >= 0) out << "pair: " << sys.vars[w.i] << ", " << sys.vars[w.j] << "\n";
    out << "witness: " << format_assignment(sys, w.state) << "\n";
    out << "partner: " << format_assignment(sys, w.partner) << "\n";
  }
}

/// Ode models are checked on their Euler discretization.
DynSystem checked_system(const DynSystem& sys) {
  if (sys.kind == SystemKind::VectorField) return discretize(OdeSystem::from_model(sys));
  return sys;
}

State parse_state(const DynSystem& sys, const std::string& text) {
  State s(sys.size(), sys.domain.is_finite() ? Value::finite(0) : Value(Rational(0)));
  if (text.empty()) return s;
  auto value_of = [&](const std::string& raw) {
    if (sys.domain.is_finite()) return Value::finite(std::stoi(raw));
    return Value(Rational(raw, 10));
  };
  if (text.find('=') == std::string::npos) {
    std::vector<std::string> parts;
    if (text.find(',') != std::string::npos) {
      std::stringstream ss(text);
      for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    } else {
      for (char c : text) parts.emplace_back(1, c);
    }
    if (static_cast<int>(parts.size()) != sys.size())
      throw DomainError("initial state needs " + std::to_string(sys.size()) + " values");
    for (int k = 0; k < sys.size(); ++k) s[k] = value_of(parts[k]);
  } else {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("expected name=value in '" + item + "'");
      auto trim = [](std::string x) {
        x.erase(0, x.find_first_not_of(" \t"));
        x.erase(x.find_last_not_of(" \t") + 1);
        return x;
      };
      std::string name = trim(item.substr(0, eq));
      int idx = sys.index_of(name);
      if (idx < 0) throw DomainError("unknown variable '" + name + "'");
      s[idx] = value_of(trim(item.substr(eq + 1)));
    }
  }
  for (int k = 0; k < sys.size(); ++k)
    if (!s[k].in(sys.domain) || (sys.domain.is_finite() && s[k].as_int() > sys.range_of(k)))
      throw DomainError("initial value of '" + sys.vars[k] + "' outside its range");
  return s;
}

int cmd_reduce(const RunSpec& rs, std::ostream& out, std::ostream& err) {
  const DynSystem sys = checked_system(load_model(rs.model));
  const Monoid monoid = make_monoid(rs.op, sys.domain);
  const CheckerConfig cfg = make_config(rs, err);
  const Partition initial = parse_partition(partition_text(rs.partition), sys);
  auto [partition, report] = refine(sys, initial, monoid, cfg);
  const DynSystem reduced = reduce(sys, partition, monoid);
  const std::string model_text = rs.output.empty() ? emit_model(reduced) : emit_for_path(reduced, rs.output);
  if (rs.output.empty()) {
    out << model_text;
  } else {
    write_file(rs.output, model_text);
    out << "reduced model: " << rs.output << "\n";
  }
  if (!rs.report.empty()) {
    write_file(rs.report, emit_report(report));
    out << "report: " << rs.report << "\n";
  }
  out << "partition: " << partition.to_string(sys.vars) << "\n";
  out << "blocks: " << report.reduced_blocks << " of " << report.original_vars << " (ratio " << report.ratio << ")\n";
  if (rs.verbose)
    err << "iterations " << report.iterations << ", psi checks " << report.psi_checks << ", backend "
        << report.backend << "\n";
  return 0;
}

int cmd_check(const RunSpec& rs, std::ostream& out, std::ostream& err) {
  const DynSystem sys = checked_system(load_model(rs.model));
  const Monoid monoid = make_monoid(rs.op, sys.domain);
  const CheckerConfig cfg = make_config(rs, err);
  const Partition p = parse_partition(partition_text(rs.partition), sys);
  GfbMode mode;
  if (rs.mode == "pairs") {
    mode = GfbMode::Pairs;
  } else if (rs.mode == "definition") {
    mode = GfbMode::Definition;
  } else {
    throw DomainError("unknown mode '" + rs.mode + "'");
  }
  const Verdict v = is_gfb(sys, p, monoid, cfg, mode);
  out << "partition: " << p.to_string(sys.vars) << "\n";
  print_verdict(sys, v, out);
  return v.holds() ? 0 : 1;
}

int cmd_simulate(const RunSpec& rs, std::ostream& out, std::ostream&) {
  const DynSystem sys = load_model(rs.model);
  if (sys.kind == SystemKind::VectorField) throw DomainError("simulate runs discrete-time models");
  const State s0 = parse_state(sys, rs.init);
  const Trajectory traj = simulate(sys, s0, rs.steps);
  for (std::size_t t = 0; t < traj.size(); ++t) out << t << " " << format_state(traj[t]) << "\n";
  if (rs.reduced.empty()) return 0;
  const DynSystem red = load_model(rs.reduced);
  const Monoid monoid = make_monoid(rs.op, sys.domain);
  const Partition p = parse_partition(partition_text(rs.partition), sys);
  if (red.size() != p.num_blocks()) throw DomainError("reduced model does not have one variable per block");
  const CommutationResult r = check_commutation(sys, red, p, monoid, s0, rs.steps);
  if (r.ok) {
    out << "commutation: ok for " << rs.steps << " steps\n";
    return 0;
  }
  out << "commutation: diverges at step " << r.divergence << "\n";
  out << "original: " << format_assignment(sys, r.original) << "\n";
  out << "projected: " << format_state(project(p, monoid, r.original)) << ", reduced: " << format_state(r.reduced)
      << "\n";
  return 1;
}

int cmd_attractors(const RunSpec& rs, std::ostream& out, std::ostream&) {
  const DynSystem sys = load_model(rs.model);
  AttractorOptions opts;
  opts.state_limit = rs.limit;
  opts.jobs = rs.jobs;
  const auto as = attractors(sys, opts);
  const std::string json = attractors_json(as);
  if (rs.output.empty()) {
    out << json;
  } else {
    write_file(rs.output, json);
    out << "attractors: " << as.size() << " written to " << rs.output << "\n";
  }
  if (!rs.preserve) return 0;
  const Monoid monoid = make_monoid(rs.op, sys.domain);
  CheckerConfig cfg;
  cfg.jobs = rs.jobs;
  // the partition is the initial one; preservation is checked on its coarsest GFB refinement
  const Partition initial = parse_partition(partition_text(rs.partition), sys);
  const Partition p = refine(sys, initial, monoid, cfg).partition;
  out << "partition: " << p.to_string(sys.vars) << "\n";
  const DynSystem red = reduce(sys, p, monoid);
  const auto r = check_attractor_preservation(sys, red, p, monoid, opts);
  for (const auto& line : r.report) out << line << "\n";
  out << "preservation: " << (r.ok ? "ok" : "failed") << "\n";
  return r.ok ? 0 : 1;
}

int cmd_lump(const RunSpec& rs, std::ostream& out, std::ostream& err) {
  const DynSystem model = load_model(rs.model);
  const OdeSystem ode = OdeSystem::from_model(model);
  const Monoid monoid = make_monoid(rs.op, Domain::rational());
  CheckerConfig cfg = make_config(rs, err);
  const DynSystem vf = ode.to_model();
  Partition p = parse_partition(partition_text(rs.partition), vf);
  if (rs.refine) {
    DynSystem sys = discretize(ode);
    auto result = refine(sys, with_step_block(p), monoid, cfg);
    std::vector<std::vector<int>> blocks;
    for (const auto& blk : result.partition.blocks())
      if (blk.front() != *sys.tau) blocks.push_back(blk);
    p = Partition::from_blocks(ode.size(), std::move(blocks));
    if (!rs.report.empty()) write_file(rs.report, emit_report(result.report));
  }
  const LumpMode mode = cfg.tau_mode == TauMode::Truncate ? LumpMode::Truncated : LumpMode::Exact;
  const Verdict v = check_lumping(ode, p, monoid, mode, cfg, cfg.truncate_order);
  out << "partition: " << p.to_string(ode.vars) << "\n";
  out << "mode: " << (mode == LumpMode::Truncated ? "truncated(" + std::to_string(cfg.truncate_order) + ")" : std::string("exact")) << "\n";
  print_verdict(discretize(ode), v, out);
  if (!v.holds()) return 1;
  const OdeSystem lumped = lump_ode(ode, p, monoid, cfg.term_cap);
  const std::string text = emit_model(lumped.to_model());
  if (rs.output.empty()) {
    out << text;
  } else {
    write_file(rs.output, text);
    out << "lumped model: " << rs.output << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized forward bisimulation reduction of dynamical systems", "gfb"};
  app.require_subcommand(1);
  RunSpec rs;

  auto common = [&](CLI::App* sub, bool checker) {
    sub->add_option("model", rs.model, "Model file (.bnet or .mdl)")->required();
    if (!checker) return;
    sub->add_option("--op", rs.op, "Monoid: and, or, xor, min, max, plus, times");
    sub->add_option("--partition", rs.partition, "Initial partition text or file");
    sub->add_option("--backend", rs.backend, "auto, exhaustive, randomized or polynomial");
    sub->add_option("--trials", rs.trials, "Randomized trials per formula");
    sub->add_option("--prime", rs.prime, "Modulus of the randomized backend");
    sub->add_option("--seed", rs.seed, "Seed of all randomness");
    sub->add_option("--cutoff", rs.cutoff, "Exhaustive limit, in bits of assignments");
    sub->add_option("--tau-mode", rs.tau_mode, "none, variable or truncate2");
    sub->add_option("--jobs", rs.jobs, "Worker threads");
    sub->add_flag("-v,--verbose", rs.verbose, "Diagnostics on standard error");
  };

  auto* reduce_cmd = app.add_subcommand("reduce", "Refine the partition and emit the reduced model");
  common(reduce_cmd, true);
  reduce_cmd->add_option("--output", rs.output, "Reduced model file");
  reduce_cmd->add_option("--report", rs.report, "JSON report file");

  auto* check_cmd = app.add_subcommand("check", "Decide whether a partition is a GFB");
  common(check_cmd, true);
  check_cmd->add_option("--mode", rs.mode, "pairs or definition");

  auto* sim_cmd = app.add_subcommand("simulate", "Print a trajectory, optionally against a reduced model");
  common(sim_cmd, false);
  sim_cmd->add_option("--init", rs.init, "Initial state: name=value list or one value per variable");
  sim_cmd->add_option("--steps", rs.steps, "Number of steps");
  sim_cmd->add_option("--reduced", rs.reduced, "Reduced model to compare block sums with");
  sim_cmd->add_option("--op", rs.op, "Monoid of the reduction");
  sim_cmd->add_option("--partition", rs.partition, "Partition of the reduction");

  auto* att_cmd = app.add_subcommand("attractors", "Enumerate attractors");
  common(att_cmd, false);
  att_cmd->add_option("--limit", rs.limit, "Largest state space to enumerate");
  att_cmd->add_option("--jobs", rs.jobs, "Worker threads");
  att_cmd->add_option("--output", rs.output, "JSON output file");
  att_cmd->add_flag("--preserve", rs.preserve, "Check that the reduction preserves every attractor");
  att_cmd->add_option("--op", rs.op, "Monoid of the reduction");
  att_cmd->add_option("--partition", rs.partition, "Initial partition of the reduction");

  auto* lump_cmd = app.add_subcommand("lump-ode", "Check a lumping of an ODE model and emit the lumped ODE");
  common(lump_cmd, true);
  lump_cmd->add_flag("--refine", rs.refine, "Refine the partition first");
  lump_cmd->add_option("--output", rs.output, "Lumped model file");
  lump_cmd->add_option("--report", rs.report, "JSON report file when refining");

  std::vector<std::string> argv_store{"gfb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*reduce_cmd) return cmd_reduce(rs, out, err);
    if (*check_cmd) return cmd_check(rs, out, err);
    if (*sim_cmd) return cmd_simulate(rs, out, err);
    if (*att_cmd) return cmd_attractors(rs, out, err);
    if (*lump_cmd) return cmd_lump(rs, out, err);
  } catch (const LumpingError& e) {
    err << "gfb: " << e.what() << "\n";
    for (const auto& m : e.offending_monomials()) err << "  offending monomial: " << m << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "gfb: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gfb::cli
