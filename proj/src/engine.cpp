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

#include "gfb/engine.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <unordered_map>

#include "gfb/error.hpp"
#include "gfb/kernels.hpp"
#include "gfb/modular.hpp"

namespace gfb {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Exhaustive: return "exhaustive";
    case Backend::Randomized: return "randomized";
    case Backend::Polynomial: return "polynomial";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "auto") return Backend::Auto;
  if (name == "exhaustive") return Backend::Exhaustive;
  if (name == "randomized" || name == "random") return Backend::Randomized;
  if (name == "polynomial" || name == "poly") return Backend::Polynomial;
  throw DomainError("unknown backend '" + std::string(name) + "'");
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Valid: return "valid";
    case Status::Invalid: return "invalid";
    case Status::ProbablyValid: return "probably-valid";
  }
  return "?";
}

void CheckerConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (cutoff < 1 || cutoff > 62) throw DomainError("cutoff must lie in 1..62");
  if (prime < 3) throw DomainError("prime must be at least 3");
  if (truncate_order < 1) throw DomainError("truncation order must be at least 1");
  if (jobs < 1) throw DomainError("jobs must be at least 1");
}

Backend resolve_backend(const Domain& domain, const CheckerConfig& cfg) {
  if (cfg.tau_mode == TauMode::Truncate) {
    if (domain.is_finite()) throw DomainError("tau truncation needs a polynomial (rational) model");
    if (cfg.backend != Backend::Auto && cfg.backend != Backend::Polynomial)
      throw DomainError("tau truncation compares polynomials exactly; use the polynomial backend");
    return Backend::Polynomial;
  }
  switch (cfg.backend) {
    case Backend::Auto: return domain.is_finite() ? Backend::Exhaustive : Backend::Randomized;
    case Backend::Exhaustive:
      if (!domain.is_finite()) throw DomainError("exhaustive checking needs a finite domain");
      return Backend::Exhaustive;
    case Backend::Randomized:
    case Backend::Polynomial:
      if (domain.is_finite()) throw DomainError(std::string(to_string(cfg.backend)) + " checking needs domain Q");
      return cfg.backend;
  }
  return cfg.backend;
}

// ---------------------------------------------------------------------------
// Psi construction

PsiInstance build_psi(const DynSystem& sys, const Partition& p, int i, int j, const Monoid& monoid) {
  if (i == j) throw DomainError("Psi needs two distinct variables");
  if (i < 0 || j < 0 || i >= sys.size() || j >= sys.size()) throw DomainError("Psi variable out of range");
  if (p.block_of(i) != p.block_of(j)) throw DomainError("Psi pair lies in different blocks");
  PsiInstance psi{i, j, monoid, sys.size(), sys.tau, {}};
  const Expr zero = Expr::constant(monoid.neutral());
  const Expr sum_ij = combine_expr(monoid, {Expr::var(i), Expr::var(j)});
  for (int b = 0; b < p.num_blocks(); ++b) {
    std::vector<Expr> members;
    bool relevant = false;
    for (int v : p.block(b)) {
      members.push_back(sys.updates[v]);
      relevant = relevant || mentions(sys.updates[v], i) || mentions(sys.updates[v], j);
    }
    if (!relevant) continue;
    Expr lhs = combine_expr(monoid, std::move(members));
    Expr rhs = substitute(substitute(lhs, i, zero), j, sum_ij);
    psi.clauses.push_back({b, lhs, rhs});
  }
  return psi;
}

// ---------------------------------------------------------------------------
// backends

namespace {

std::vector<int> clause_support(const PsiInstance& psi) {
  std::set<int> u;
  for (const auto& c : psi.clauses) {
    for (int v : support(c.lhs)) u.insert(v);
    for (int v : support(c.rhs)) u.insert(v);
  }
  return {u.begin(), u.end()};
}

Witness make_witness(const PsiInstance& psi, State state, const Monoid& m, int block) {
  Witness w;
  w.i = psi.i;
  w.j = psi.j;
  w.block = block;
  w.partner = state;
  w.partner[psi.i] = m.neutral();
  w.partner[psi.j] = combine(m, state[psi.i], state[psi.j]);
  w.state = std::move(state);
  return w;
}

Verdict check_exhaustive(const PsiInstance& psi, const Domain& domain, const CheckerConfig& cfg) {
  Verdict v;
  if (psi.clauses.empty()) return v;
  const std::vector<int> vars = clause_support(psi);
  const int base = domain.size();
  const double bits = static_cast<double>(vars.size()) * std::log2(static_cast<double>(base));
  if (bits > cfg.cutoff + 1e-9)
    throw LimitError("exhaustive support of " + std::to_string(vars.size()) + " variables exceeds the cutoff of 2^" +
                     std::to_string(cfg.cutoff) + " assignments");
  std::vector<Expr> lhs;
  std::vector<Expr> rhs;
  for (const auto& c : psi.clauses) {
    lhs.push_back(c.lhs);
    rhs.push_back(c.rhs);
  }
  std::vector<int> radix(vars.size(), base);
  const std::int64_t hit =
      cfg.jobs > 1 ? kernels::first_mismatch_parallel(lhs, rhs, vars, radix, psi.num_vars, domain.max(), cfg.jobs)
                   : kernels::first_mismatch_serial(lhs, rhs, vars, radix, psi.num_vars, domain.max());
  if (hit < 0) return v;

  State state(psi.num_vars, Value::finite(0));
  std::vector<int> ints(psi.num_vars, 0);
  std::int64_t rest = hit;
  for (std::size_t t = 0; t < vars.size(); ++t) {
    ints[vars[t]] = static_cast<int>(rest % base);
    state[vars[t]] = Value::finite(ints[vars[t]]);
    rest /= base;
  }
  int block = -1;
  for (const auto& c : psi.clauses) {
    if (evaluate_finite(c.lhs, ints, domain.max()) != evaluate_finite(c.rhs, ints, domain.max())) {
      block = c.block;
      break;
    }
  }
  v.status = Status::Invalid;
  v.witness = make_witness(psi, std::move(state), psi.monoid, block);
  return v;
}

Verdict check_randomized(const PsiInstance& psi, const CheckerConfig& cfg) {
  Verdict v;
  int degree = 0;
  for (const auto& c : psi.clauses) degree = std::max({degree, degree_bound(c.lhs), degree_bound(c.rhs)});
  v.trials = cfg.trials;
  v.per_trial_bound = static_cast<double>(degree) / static_cast<double>(cfg.prime);
  if (psi.clauses.empty()) {
    v.status = Status::Valid;
    return v;
  }
  const std::vector<int> vars = clause_support(psi);
  std::vector<std::uint64_t> point(psi.num_vars, 0);
  std::uniform_int_distribution<std::uint64_t> uniform(0, cfg.prime - 1);
  for (int t = 0; t < cfg.trials; ++t) {
    std::mt19937_64 rng(modular::mix_seed(cfg.seed, psi.i, psi.j, t));
    for (int x : vars) point[x] = uniform(rng);
    for (const auto& c : psi.clauses) {
      if (eval_mod(c.lhs, point, cfg.prime) != eval_mod(c.rhs, point, cfg.prime)) {
        State state(psi.num_vars, Value(Rational(0)));
        for (int x : vars) state[x] = Value(Rational(mpz_class(std::to_string(point[x]))));
        Witness w;
        w.i = psi.i;
        w.j = psi.j;
        w.block = c.block;
        w.partner = state;
        w.partner[psi.i] = psi.monoid.neutral();
        std::uint64_t si = point[psi.i];
        std::uint64_t sj = point[psi.j];
        std::uint64_t sum = psi.monoid.op() == MonoidOp::Plus ? modular::add(si, sj, cfg.prime)
                                                               : modular::mul(si, sj, cfg.prime);
        w.partner[psi.j] = Value(Rational(mpz_class(std::to_string(sum))));
        w.state = std::move(state);
        v.status = Status::Invalid;
        v.witness = std::move(w);
        v.trials = t + 1;
        return v;
      }
    }
  }
  v.status = Status::ProbablyValid;
  return v;
}

Verdict check_polynomial(const PsiInstance& psi, const CheckerConfig& cfg) {
  Verdict v;
  const bool truncate = cfg.tau_mode == TauMode::Truncate;
  if (truncate && !psi.tau) throw DomainError("tau truncation needs a discretized system with a step variable");
  for (const auto& c : psi.clauses) {
    Poly l = from_expr(c.lhs, cfg.term_cap);
    Poly r = from_expr(c.rhs, cfg.term_cap);
    if (truncate) {
      l = truncate_tau(l, *psi.tau, cfg.truncate_order);
      r = truncate_tau(r, *psi.tau, cfg.truncate_order);
    }
    Poly diff = poly_sub(l, r);
    if (diff.is_zero()) continue;
    // a nonzero polynomial of degree d vanishes on a random grid point with probability <= d / 2^20
    std::vector<int> vars;
    for (const auto& [m, coef] : diff.terms())
      for (const auto& [x, e] : m) vars.push_back(x);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Rational> point(psi.num_vars, Rational(0));
    std::mt19937_64 rng(modular::mix_seed(cfg.seed, psi.i, psi.j, 0xfeed));
    std::uniform_int_distribution<int> small(1, 1 << 20);
    for (int attempt = 0; attempt < 256; ++attempt) {
      for (int x : vars) point[x] = small(rng);
      if (evaluate(diff, point) != 0) break;
    }
    State state;
    for (const auto& q : point) state.emplace_back(q);
    v.status = Status::Invalid;
    v.witness = make_witness(psi, std::move(state), psi.monoid, c.block);
    return v;
  }
  return v;
}

}  // namespace

Verdict check(const PsiInstance& psi, const Domain& domain, const CheckerConfig& cfg) {
  cfg.validate();
  switch (resolve_backend(domain, cfg)) {
    case Backend::Exhaustive: return check_exhaustive(psi, domain, cfg);
    case Backend::Randomized: return check_randomized(psi, cfg);
    case Backend::Polynomial:
      if (cfg.tau_mode == TauMode::Truncate) return check_polynomial(psi, cfg);
      // past the term cap the unexpanded trees are still cheap to evaluate
      try {
        return check_polynomial(psi, cfg);
      } catch (const LimitError&) {
        return check_randomized(psi, cfg);
      }
    case Backend::Auto: break;
  }
  throw Error("unresolved backend");
}

// ---------------------------------------------------------------------------
// refinement

namespace {

struct PairJob {
  int a;
  int b;
  int block;
};

struct PairOutcome {
  bool related = false;
  int checks = 0;
};

PairOutcome check_pair(const DynSystem& sys, const Partition& p, const Monoid& m, const CheckerConfig& cfg,
                       const PairJob& job) {
  PairOutcome out;
  out.checks = 1;
  if (!check(build_psi(sys, p, job.a, job.b, m), sys.domain, cfg).holds()) return out;
  out.checks = 2;
  out.related = check(build_psi(sys, p, job.b, job.a, m), sys.domain, cfg).holds();
  return out;
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::string backend_label(const Domain& d, const CheckerConfig& cfg) {
  std::string name(to_string(resolve_backend(d, cfg)));
  if (cfg.tau_mode == TauMode::Truncate) name += "-truncated" + std::to_string(cfg.truncate_order);
  return name;
}

}  // namespace

RefineResult refine(const DynSystem& sys, const Partition& initial, const Monoid& monoid, const CheckerConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  sys.validate();
  if (!(monoid.domain() == sys.domain))
    throw DomainError("monoid " + monoid.to_string() + " does not match domain " + sys.domain.to_string());
  check_partition(sys, initial);

  ReductionReport report;
  report.backend = backend_label(sys.domain, cfg);
  report.seed = cfg.seed;
  Partition current = initial;
  CheckerConfig inner = cfg;
  const bool parallel_pairs = cfg.jobs > 1;
  if (parallel_pairs) inner.jobs = 1;

  for (;;) {
    ++report.iterations;
    std::vector<PairJob> jobs;
    for (int b = 0; b < current.num_blocks(); ++b) {
      const auto& blk = current.block(b);
      for (std::size_t x = 0; x < blk.size(); ++x)
        for (std::size_t y = x + 1; y < blk.size(); ++y) jobs.push_back({blk[x], blk[y], b});
    }
    std::vector<PairOutcome> outcomes(jobs.size());
    if (parallel_pairs) {
      std::vector<std::exception_ptr> errors(jobs.size());
      const int n = static_cast<int>(jobs.size());
#pragma omp parallel for num_threads(cfg.jobs) schedule(dynamic, 1)
      for (int k = 0; k < n; ++k) {
        try {
          outcomes[k] = check_pair(sys, current, monoid, inner, jobs[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    } else {
      for (std::size_t k = 0; k < jobs.size(); ++k) outcomes[k] = check_pair(sys, current, monoid, inner, jobs[k]);
    }

    std::vector<int> parent(sys.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::set<std::pair<int, int>> related;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      report.psi_checks += outcomes[k].checks;
      if (!outcomes[k].related) continue;
      related.insert({jobs[k].a, jobs[k].b});
      parent[find(parent, jobs[k].a)] = find(parent, jobs[k].b);
    }
    std::int64_t added = 0;
    for (const auto& job : jobs)
      if (find(parent, job.a) == find(parent, job.b) && !related.count({job.a, job.b})) ++added;
    if (added > 0) {
      report.closure_added_pairs += added;
      if (cfg.log)
        *cfg.log << "refine: transitive closure added " << added << " pairs in sweep " << report.iterations << '\n';
    }

    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < sys.size(); ++v) classes[find(parent, v)].push_back(v);
    std::vector<std::vector<int>> blocks;
    for (auto& [root, members] : classes) blocks.push_back(std::move(members));
    Partition next = Partition::from_blocks(sys.size(), std::move(blocks));
    if (next == current) break;
    current = std::move(next);
  }

  const int tau_blocks = sys.tau ? 1 : 0;
  report.original_vars = sys.size() - tau_blocks;
  report.reduced_blocks = current.num_blocks() - tau_blocks;
  report.ratio = report.original_vars > 0 ? static_cast<double>(report.reduced_blocks) / report.original_vars : 1.0;
  for (const auto& blk : current.blocks()) {
    if (sys.tau && blk.front() == *sys.tau) continue;
    std::vector<std::string> names;
    for (int v : blk) names.push_back(sys.vars[v]);
    report.blocks.push_back(std::move(names));
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return {std::move(current), std::move(report)};
}

// ---------------------------------------------------------------------------
// GFB verification and the brute-force oracle

namespace {

std::vector<int> default_radix(const DynSystem& sys) {
  std::vector<int> r(sys.size());
  for (int v = 0; v < sys.size(); ++v) r[v] = sys.domain.size();
  return r;
}

/// State codes follow the successor table layout (variable 0 most significant).
std::vector<int> decode_state(std::uint32_t code, int n, int base) {
  std::vector<int> s(n);
  for (int v = n; v-- > 0;) {
    s[v] = static_cast<int>(code % base);
    code /= base;
  }
  return s;
}

std::uint64_t block_code(const std::vector<int>& s, const Partition& p, MonoidOp op, int neutral, int base) {
  std::uint64_t key = 0;
  for (const auto& blk : p.blocks()) {
    int acc = neutral;
    for (int v : blk) acc = combine_int(op, acc, s[v]);
    key = key * base + acc;
  }
  return key;
}

Verdict definition_check(const DynSystem& sys, const std::vector<std::uint32_t>& next, const Partition& p,
                         const Monoid& m) {
  const int n = sys.size();
  const int base = sys.domain.size();
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint32_t>> seen;
  seen.reserve(next.size());
  for (std::uint32_t code = 0; code < next.size(); ++code) {
    auto s = decode_state(code, n, base);
    auto fs = decode_state(next[code], n, base);
    std::uint64_t key = block_code(s, p, m.op(), m.neutral_int(), base);
    std::uint64_t image = block_code(fs, p, m.op(), m.neutral_int(), base);
    auto [it, inserted] = seen.try_emplace(key, image, code);
    if (inserted || it->second.first == image) continue;
    Verdict v;
    v.status = Status::Invalid;
    Witness w;
    auto other = decode_state(it->second.second, n, base);
    auto other_f = decode_state(next[it->second.second], n, base);
    for (int x = 0; x < n; ++x) {
      w.state.push_back(Value::finite(s[x]));
      w.partner.push_back(Value::finite(other[x]));
    }
    for (int b = 0; b < p.num_blocks() && w.block < 0; ++b) {
      int a1 = m.neutral_int();
      int a2 = m.neutral_int();
      for (int x : p.block(b)) {
        a1 = combine_int(m.op(), a1, fs[x]);
        a2 = combine_int(m.op(), a2, other_f[x]);
      }
      if (a1 != a2) w.block = b;
    }
    v.witness = std::move(w);
    return v;
  }
  return {};
}

void require_small_finite(const DynSystem& sys, const CheckerConfig& cfg) {
  if (!sys.domain.is_finite()) throw DomainError("definition mode needs a finite domain");
  const double bits = sys.size() * std::log2(static_cast<double>(sys.domain.size()));
  if (bits > cfg.cutoff + 1e-9) throw LimitError("state space exceeds 2^" + std::to_string(cfg.cutoff));
}

}  // namespace

Verdict is_gfb(const DynSystem& sys, const Partition& p, const Monoid& monoid, const CheckerConfig& cfg,
               GfbMode mode) {
  check_partition(sys, p);
  if (!(monoid.domain() == sys.domain))
    throw DomainError("monoid " + monoid.to_string() + " does not match domain " + sys.domain.to_string());
  if (mode == GfbMode::Definition) {
    require_small_finite(sys, cfg);
    auto radix = default_radix(sys);
    auto next = cfg.jobs > 1 ? kernels::successor_table_parallel(sys.updates, radix, sys.domain.max(), cfg.jobs)
                             : kernels::successor_table_serial(sys.updates, radix, sys.domain.max());
    return definition_check(sys, next, p, monoid);
  }
  Verdict overall;
  for (const auto& blk : p.blocks()) {
    for (int a : blk) {
      for (int b : blk) {
        if (a == b) continue;
        Verdict v = check(build_psi(sys, p, a, b, monoid), sys.domain, cfg);
        if (v.status == Status::Invalid) return v;
        if (v.status == Status::ProbablyValid) {
          overall.status = Status::ProbablyValid;
          overall.trials = v.trials;
          overall.per_trial_bound = std::max(overall.per_trial_bound, v.per_trial_bound);
        }
      }
    }
  }
  return overall;
}

namespace {

/// Calls fn on every set partition of items (restricted growth strings).
template <class Fn>
void for_each_set_partition(const std::vector<int>& items, Fn&& fn) {
  const int n = static_cast<int>(items.size());
  std::vector<int> label(n, 0);
  std::vector<int> top(n, 0);  // top[k] = max label among 0..k
  for (;;) {
    int blocks = n == 0 ? 0 : top[n - 1] + 1;
    std::vector<std::vector<int>> parts(blocks);
    for (int k = 0; k < n; ++k) parts[label[k]].push_back(items[k]);
    fn(parts);
    int k = n - 1;
    while (k > 0 && label[k] > top[k - 1]) --k;
    if (k <= 0) return;
    ++label[k];
    top[k] = std::max(top[k - 1], label[k]);
    for (int r = k + 1; r < n; ++r) {
      label[r] = 0;
      top[r] = top[k];
    }
  }
}

}  // namespace

Partition coarsest_gfb_oracle(const DynSystem& sys, const Partition& initial, const Monoid& monoid) {
  if (!sys.domain.is_finite()) throw DomainError("the oracle needs a finite domain");
  if (sys.size() > 8) throw LimitError("the oracle handles at most 8 variables");
  check_partition(sys, initial);
  auto next = kernels::successor_table_serial(sys.updates, default_radix(sys), sys.domain.max());

  // cartesian product of the set partitions of each initial block
  std::vector<std::vector<std::vector<std::vector<int>>>> choices(initial.num_blocks());
  for (int b = 0; b < initial.num_blocks(); ++b)
    for_each_set_partition(initial.block(b), [&](const auto& parts) { choices[b].push_back(parts); });

  std::vector<Partition> valid;
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<std::vector<int>> blocks;
    for (std::size_t b = 0; b < choices.size(); ++b)
      for (const auto& part : choices[b][pick[b]]) blocks.push_back(part);
    Partition cand = Partition::from_blocks(sys.size(), std::move(blocks));
    if (definition_check(sys, next, cand, monoid).holds()) valid.push_back(std::move(cand));
    std::size_t b = 0;
    while (b < pick.size() && ++pick[b] == choices[b].size()) pick[b++] = 0;
    if (b == pick.size()) break;
  }

  std::vector<const Partition*> maximal;
  for (const auto& p : valid) {
    bool dominated = false;
    for (const auto& q : valid)
      if (!(p == q) && p.refines(q)) dominated = true;
    if (!dominated) maximal.push_back(&p);
  }
  if (maximal.size() != 1)
    throw Error("brute force found " + std::to_string(maximal.size()) + " maximal GFB partitions");
  for (const auto& p : valid)
    if (!p.refines(*maximal.front())) throw Error("maximal GFB partition is not the coarsest");
  return *maximal.front();
}

// ---------------------------------------------------------------------------
// reduction

std::vector<std::string> block_names(const DynSystem& sys, const Partition& p) {
  std::vector<std::string> names;
  for (const auto& blk : p.blocks()) {
    if (blk.size() == 1) {
      names.push_back(sys.vars[blk.front()]);
      continue;
    }
    // common stem with numeric suffixes: x1,x2 -> x_1_2, x10,x11 -> x_10_11
    std::string prefix = sys.vars[blk.front()];
    for (int v : blk) {
      const std::string& s = sys.vars[v];
      std::size_t k = 0;
      while (k < prefix.size() && k < s.size() && prefix[k] == s[k]) ++k;
      prefix.resize(k);
    }
    while (!prefix.empty() && std::isdigit(static_cast<unsigned char>(prefix.back()))) prefix.pop_back();
    while (!prefix.empty() && prefix.back() == '_') prefix.pop_back();
    bool usable = !prefix.empty();
    for (int v : blk) {
      std::string rem = sys.vars[v].substr(prefix.size());
      rem.erase(0, rem.find_first_not_of('_') == std::string::npos ? rem.size() : rem.find_first_not_of('_'));
      if (rem.empty() || !std::all_of(rem.begin(), rem.end(), [](unsigned char c) { return std::isdigit(c); }))
        usable = false;
    }
    std::string name = usable ? prefix : "";
    for (std::size_t k = 0; k < blk.size(); ++k) {
      const std::string& s = sys.vars[blk[k]];
      std::string part = usable ? s.substr(prefix.size()) : s;
      while (usable && !part.empty() && part.front() == '_') part.erase(part.begin());
      if (!name.empty()) name += "_";
      name += part;
    }
    names.push_back(name);
  }
  std::set<std::string> singles;
  for (int b = 0; b < p.num_blocks(); ++b)
    if (p.block(b).size() == 1) singles.insert(names[b]);
  std::set<std::string> used;
  for (int b = 0; b < p.num_blocks(); ++b) {
    if (p.block(b).size() > 1) {
      while (singles.count(names[b]) || used.count(names[b])) names[b] = "b_" + names[b];
    }
    used.insert(names[b]);
  }
  return names;
}

DynSystem reduce(const DynSystem& sys, const Partition& p, const Monoid& monoid) {
  check_partition(sys, p);
  if (!(monoid.domain() == sys.domain))
    throw DomainError("monoid " + monoid.to_string() + " does not match domain " + sys.domain.to_string());
  DynSystem out;
  out.name = sys.name.empty() ? "reduced" : sys.name + "_reduced";
  out.domain = sys.domain;
  out.kind = sys.kind;
  out.vars = block_names(sys, p);

  std::map<int, Expr> rename;
  const Expr zero = Expr::constant(monoid.neutral());
  for (int b = 0; b < p.num_blocks(); ++b) {
    for (int v : p.block(b)) rename.emplace(v, v == p.representative(b) ? Expr::var(b) : zero);
  }
  for (int b = 0; b < p.num_blocks(); ++b) {
    std::vector<Expr> members;
    for (int v : p.block(b)) members.push_back(sys.updates[v]);
    Expr sum = combine_expr(monoid, std::move(members));
    out.updates.push_back(simplify(substitute_all(sum, rename), sys.domain));
    if (sys.tau && p.block(b).front() == *sys.tau) out.tau = b;
  }
  if (!sys.ranges.empty()) {
    for (int b = 0; b < p.num_blocks(); ++b) {
      int acc = monoid.neutral_int();
      for (int v : p.block(b)) acc = combine_int(monoid.op(), acc, sys.ranges[v]);
      out.ranges.push_back(acc >= 1 ? acc : sys.domain.max());
    }
  }
  out.validate();
  return out;
}

}  // namespace gfb
