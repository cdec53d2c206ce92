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

#include "gfb/dynamics.hpp"

#include <algorithm>
#include <limits>

#include <nlohmann/json.hpp>

#include "gfb/error.hpp"
#include "gfb/kernels.hpp"

namespace gfb {

State step(const DynSystem& sys, const State& s) {
  if (static_cast<int>(s.size()) != sys.size()) throw DomainError("state size does not match the system");
  State out;
  out.reserve(s.size());
  for (const auto& f : sys.updates) out.push_back(evaluate(f, s, sys.domain));
  return out;
}

Trajectory simulate(const DynSystem& sys, const State& s0, int k) {
  Trajectory t{s0};
  for (int n = 0; n < k; ++n) t.push_back(step(sys, t.back()));
  return t;
}

State project(const Partition& p, const Monoid& monoid, const State& s) {
  if (static_cast<int>(s.size()) != p.num_vars()) throw DomainError("state size does not match the partition");
  State out;
  for (const auto& blk : p.blocks()) {
    Value acc = monoid.neutral();
    for (int v : blk) acc = combine(monoid, acc, s[v]);
    out.push_back(std::move(acc));
  }
  return out;
}

CommutationResult check_commutation(const DynSystem& sys, const DynSystem& reduced, const Partition& p,
                                    const Monoid& monoid, const State& s0, int k) {
  CommutationResult r;
  State s = s0;
  State hat = project(p, monoid, s0);
  for (int t = 0;; ++t) {
    State ps = project(p, monoid, s);
    if (!(ps == hat)) {
      r.ok = false;
      r.divergence = t;
      r.original = s;
      r.reduced = hat;
      return r;
    }
    if (t == k) break;
    s = step(sys, s);
    hat = step(reduced, hat);
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> radix_of(const DynSystem& sys) {
  if (!sys.domain.is_finite()) throw DomainError("state enumeration needs a finite domain");
  std::vector<int> r(sys.size());
  for (int v = 0; v < sys.size(); ++v) r[v] = sys.range_of(v) + 1;
  return r;
}

}  // namespace

std::uint64_t state_count(const DynSystem& sys) {
  std::uint64_t total = 1;
  for (int r : radix_of(sys)) {
    if (total > std::numeric_limits<std::uint64_t>::max() / r) return std::numeric_limits<std::uint64_t>::max();
    total *= r;
  }
  return total;
}

std::uint64_t encode_state(const DynSystem& sys, const State& s) {
  auto radix = radix_of(sys);
  std::uint64_t code = 0;
  for (int v = 0; v < sys.size(); ++v) {
    int x = s.at(v).as_int();
    if (x < 0 || x >= radix[v]) throw DomainError("value outside the range of '" + sys.vars[v] + "'");
    code = code * radix[v] + x;
  }
  return code;
}

State decode_state(const DynSystem& sys, std::uint64_t code) {
  auto radix = radix_of(sys);
  State s(sys.size());
  for (int v = sys.size(); v-- > 0;) {
    s[v] = Value::finite(static_cast<int>(code % radix[v]));
    code /= radix[v];
  }
  return s;
}

std::vector<std::uint32_t> successor_table(const DynSystem& sys, const AttractorOptions& opts) {
  auto radix = radix_of(sys);
  std::uint64_t total = state_count(sys);
  if (total > opts.state_limit)
    throw LimitError("state space of " + std::to_string(total) + " states exceeds the limit of " +
                     std::to_string(opts.state_limit));
  return opts.jobs > 1 ? kernels::successor_table_parallel(sys.updates, radix, sys.domain.max(), opts.jobs)
                       : kernels::successor_table_serial(sys.updates, radix, sys.domain.max());
}

std::vector<Attractor> attractors(const DynSystem& sys, const AttractorOptions& opts) {
  const auto next = successor_table(sys, opts);
  const std::uint32_t n = static_cast<std::uint32_t>(next.size());
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  // owner[s]: attractor index once resolved; walk[s]: id of the walk that is visiting s
  std::vector<std::uint32_t> owner(n, kUnseen);
  std::vector<std::uint32_t> walk(n, kUnseen);
  std::vector<std::vector<std::uint32_t>> cycles;
  std::vector<std::uint32_t> path;

  for (std::uint32_t start = 0; start < n; ++start) {
    if (owner[start] != kUnseen) continue;
    path.clear();
    std::uint32_t s = start;
    while (owner[s] == kUnseen && walk[s] != start) {
      walk[s] = start;
      path.push_back(s);
      s = next[s];
    }
    std::uint32_t id;
    if (owner[s] != kUnseen) {
      id = owner[s];
    } else {
      // s closes a new cycle on the current path
      id = static_cast<std::uint32_t>(cycles.size());
      std::vector<std::uint32_t> cyc;
      std::uint32_t c = s;
      do {
        cyc.push_back(c);
        c = next[c];
      } while (c != s);
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      cycles.push_back(std::move(cyc));
    }
    for (std::uint32_t q : path) owner[q] = id;
  }

  std::vector<std::uint64_t> basin(cycles.size(), 0);
  for (std::uint32_t s = 0; s < n; ++s) ++basin[owner[s]];
  std::vector<std::size_t> order(cycles.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cycles[a][0] < cycles[b][0]; });

  std::vector<Attractor> out;
  for (std::size_t k : order) {
    Attractor a;
    for (std::uint32_t c : cycles[k]) a.states.push_back(decode_state(sys, c));
    a.period = static_cast<int>(cycles[k].size());
    a.basin = basin[k];
    out.push_back(std::move(a));
  }
  return out;
}

PreservationResult check_attractor_preservation(const DynSystem& sys, const DynSystem& reduced, const Partition& p,
                                                const Monoid& monoid, const AttractorOptions& opts) {
  PreservationResult r;
  const auto original = attractors(sys, opts);
  const auto target = attractors(reduced, opts);
  for (const auto& a : original) {
    std::vector<State> image;
    for (const auto& s : a.states) {
      State ps = project(p, monoid, s);
      if (std::find(image.begin(), image.end(), ps) == image.end()) image.push_back(std::move(ps));
    }
    bool closed = true;
    for (const auto& t : image) {
      State ft = step(reduced, t);
      if (std::find(image.begin(), image.end(), ft) == image.end()) closed = false;
    }
    int host = -1;
    for (std::size_t k = 0; k < target.size() && host < 0; ++k) {
      bool inside = std::all_of(image.begin(), image.end(), [&](const State& t) {
        return std::find(target[k].states.begin(), target[k].states.end(), t) != target[k].states.end();
      });
      if (inside) host = static_cast<int>(k);
    }
    bool ok = closed && host >= 0;
    r.ok = r.ok && ok;
    std::string line = format_state(a.states.front()) + " (period " + std::to_string(a.period) + ") -> ";
    line += host >= 0 ? "reduced attractor " + format_state(target[host].states.front()) : "no reduced attractor";
    if (!closed) line += ", image not invariant";
    r.report.push_back(std::move(line));
  }
  return r;
}

std::string format_state(const State& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) out += ",";
    out += s[k].to_string();
  }
  return out + ")";
}

std::string attractors_json(const std::vector<Attractor>& as) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& a : as) {
    nlohmann::ordered_json j;
    j["period"] = a.period;
    nlohmann::ordered_json states = nlohmann::ordered_json::array();
    for (const auto& s : a.states) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const auto& v : s) row.push_back(v.as_int());
      states.push_back(std::move(row));
    }
    j["states"] = std::move(states);
    j["basin"] = a.basin;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace gfb
