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

#ifndef GFB_ODE_HPP
#define GFB_ODE_HPP

#include <string>
#include <vector>

#include "gfb/engine.hpp"
#include "gfb/model.hpp"

namespace gfb {

/// Polynomial vector field dv/dt = field(v) over the rationals.
struct OdeSystem {
  std::string name;
  std::vector<std::string> vars;
  std::vector<Expr> field;

  int size() const { return static_cast<int>(vars.size()); }
  /// Throws DomainError on a non-polynomial right-hand side.
  void validate() const;
  /// From a parsed model holding ode equations.
  static OdeSystem from_model(const DynSystem& sys);
  /// As a VectorField DynSystem, e.g. for emit_model.
  DynSystem to_model() const;
};

/// Euler step with a symbolic step: f_x = x + tau * field_x, plus the variable tau with the
/// constant update f_tau = tau (appended last, renamed if "tau" is taken).
DynSystem discretize(const OdeSystem& ode);

/// Adds the step variable of discretize(ode) to a partition of the ODE variables.
Partition with_step_block(const Partition& p);

enum class LumpMode { Exact, Truncated };

/// Exact: Psi on the discretization with tau as a variable, sufficient for an exact lumping.
/// Truncated: Psi compared after dropping tau^order terms, which characterizes exact
/// lumpability of the block-sum map.
Verdict check_lumping(const OdeSystem& ode, const Partition& p, const Monoid& monoid, LumpMode mode,
                      CheckerConfig cfg = {}, int order = 2);

/// Lumped vector field over one variable per block: the tau-linear coefficient of the
/// reduced discretized update. Throws LumpingError when that coefficient composed with the
/// block map differs from the tau-linear coefficient of the original block sum.
OdeSystem lump_ode(const OdeSystem& ode, const Partition& p, const Monoid& monoid,
                   std::size_t term_cap = kDefaultTermCap);

/// Explicit Euler on doubles; returns the state after steps steps of size dt.
std::vector<double> integrate_euler(const OdeSystem& ode, std::vector<double> v0, double dt, int steps);

}  // namespace gfb

#endif
