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

#include "gfb/model.hpp"

#include <algorithm>
#include <set>

#include "gfb/error.hpp"

namespace gfb {

int DynSystem::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (vars[i] == name) return i;
  return -1;
}

int DynSystem::range_of(int i) const {
  if (!domain.is_finite()) return 0;
  if (ranges.empty()) return domain.max();
  return ranges[i];
}

std::vector<int> DynSystem::state_vars() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (!tau || *tau != i) out.push_back(i);
  return out;
}

std::vector<int> DynSystem::outputs() const {
  std::vector<int> out;
  for (int i : state_vars()) {
    bool used = false;
    for (int k = 0; k < size() && !used; ++k)
      if (k != i && mentions(updates[k], i)) used = true;
    if (!used) out.push_back(i);
  }
  return out;
}

void DynSystem::validate() const {
  if (vars.empty()) throw DomainError("system has no variables");
  if (updates.size() != vars.size())
    throw DomainError("system has " + std::to_string(vars.size()) + " variables but " +
                      std::to_string(updates.size()) + " update functions");
  std::set<std::string> seen;
  for (const auto& v : vars)
    if (!seen.insert(v).second) throw DomainError("duplicate variable '" + v + "'");
  for (const auto& u : updates) gfb::validate(u, domain, size());
  if (!ranges.empty()) {
    if (ranges.size() != vars.size()) throw DomainError("per-variable ranges do not match variables");
    for (int r : ranges)
      if (!domain.is_finite() || r < 1 || r > domain.max()) throw DomainError("variable range outside domain");
  }
  if (kind == SystemKind::DiscretizedODE && !tau) throw DomainError("discretized system without step variable");
  if (tau) {
    if (*tau < 0 || *tau >= size()) throw DomainError("step variable index out of range");
    const Expr& f = updates[*tau];
    if (!(f.is_var() && f.var() == *tau)) throw DomainError("step variable must keep a constant update");
  }
}

// ---------------------------------------------------------------------------

Partition Partition::from_blocks(int num_vars, std::vector<std::vector<int>> blocks) {
  Partition p;
  p.block_of_.assign(num_vars, -1);
  for (auto& b : blocks) {
    if (b.empty()) throw DomainError("partition has an empty block");
    std::sort(b.begin(), b.end());
    for (int v : b) {
      if (v < 0 || v >= num_vars) throw DomainError("partition member out of range");
      if (p.block_of_[v] != -1) throw DomainError("partition blocks overlap at variable " + std::to_string(v));
      p.block_of_[v] = 0;
    }
  }
  for (int v = 0; v < num_vars; ++v)
    if (p.block_of_[v] == -1) throw DomainError("partition does not cover variable " + std::to_string(v));
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  p.blocks_ = std::move(blocks);
  for (int b = 0; b < p.num_blocks(); ++b) {
    p.reps_.push_back(p.blocks_[b].front());
    for (int v : p.blocks_[b]) p.block_of_[v] = b;
  }
  return p;
}

Partition Partition::singletons(int num_vars) {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < num_vars; ++i) blocks.push_back({i});
  return from_blocks(num_vars, std::move(blocks));
}

Partition Partition::single_block(int num_vars) {
  std::vector<int> all(num_vars);
  for (int i = 0; i < num_vars; ++i) all[i] = i;
  return from_blocks(num_vars, {all});
}

void Partition::set_representative(int b, int var) {
  if (block_of_.at(var) != b) throw DomainError("representative must belong to its block");
  reps_[b] = var;
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.num_vars() != num_vars()) return false;
  for (const auto& b : blocks_) {
    int target = coarser.block_of(b.front());
    for (int v : b)
      if (coarser.block_of(v) != target) return false;
  }
  return true;
}

std::string Partition::to_string(std::span<const std::string> names) const {
  std::string out;
  for (int b = 0; b < num_blocks(); ++b) {
    if (b > 0) out += "; ";
    for (std::size_t k = 0; k < blocks_[b].size(); ++k) {
      if (k > 0) out += ",";
      int v = blocks_[b][k];
      out += static_cast<std::size_t>(v) < names.size() ? names[v] : std::to_string(v);
    }
  }
  return out;
}

void check_partition(const DynSystem& sys, const Partition& p) {
  if (p.num_vars() != sys.size())
    throw DomainError("partition covers " + std::to_string(p.num_vars()) + " variables, system has " +
                      std::to_string(sys.size()));
  if (sys.tau && p.block(p.block_of(*sys.tau)).size() != 1)
    throw DomainError("the step variable cannot share a block with state variables");
}

}  // namespace gfb
