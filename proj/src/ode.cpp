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

#include "gfb/ode.hpp"

#include <map>

#include "gfb/error.hpp"
#include "gfb/polynomial.hpp"

namespace gfb {

void OdeSystem::validate() const {
  if (vars.empty()) throw DomainError("ODE has no variables");
  if (field.size() != vars.size()) throw DomainError("ODE needs one right-hand side per variable");
  for (const auto& f : field) gfb::validate(f, Domain::rational(), size());
}

OdeSystem OdeSystem::from_model(const DynSystem& sys) {
  if (sys.kind != SystemKind::VectorField) throw DomainError("model '" + sys.name + "' has no ode equations");
  OdeSystem ode{sys.name, sys.vars, sys.updates};
  ode.validate();
  return ode;
}

DynSystem OdeSystem::to_model() const {
  DynSystem sys;
  sys.name = name;
  sys.domain = Domain::rational();
  sys.vars = vars;
  sys.updates = field;
  sys.kind = SystemKind::VectorField;
  return sys;
}

DynSystem discretize(const OdeSystem& ode) {
  ode.validate();
  DynSystem sys;
  sys.name = ode.name;
  sys.domain = Domain::rational();
  sys.kind = SystemKind::DiscretizedODE;
  sys.vars = ode.vars;
  std::string tau = "tau";
  while (sys.index_of(tau) >= 0) tau = "_" + tau;
  const int t = ode.size();
  sys.vars.push_back(tau);
  for (int x = 0; x < ode.size(); ++x) {
    Expr step = Expr::nary(ExprKind::Mul, {Expr::var(t), ode.field[x]});
    sys.updates.push_back(Expr::nary(ExprKind::Add, {Expr::var(x), step}));
  }
  sys.updates.push_back(Expr::var(t));
  sys.tau = t;
  sys.validate();
  return sys;
}

Partition with_step_block(const Partition& p) {
  std::vector<std::vector<int>> blocks = p.blocks();
  blocks.push_back({p.num_vars()});
  Partition out = Partition::from_blocks(p.num_vars() + 1, std::move(blocks));
  for (int b = 0; b < p.num_blocks(); ++b) out.set_representative(b, p.representative(b));
  return out;
}

namespace {

void require_continuous(const Monoid& m) {
  if (m.op() != MonoidOp::Plus && m.op() != MonoidOp::Times)
    throw DomainError("ODE lumping needs the monoid plus or times");
}

}  // namespace

Verdict check_lumping(const OdeSystem& ode, const Partition& p, const Monoid& monoid, LumpMode mode,
                      CheckerConfig cfg, int order) {
  require_continuous(monoid);
  if (p.num_vars() != ode.size()) throw DomainError("partition does not match the ODE");
  DynSystem sys = discretize(ode);
  if (mode == LumpMode::Truncated) {
    cfg.tau_mode = TauMode::Truncate;
    cfg.truncate_order = order;
  } else {
    cfg.tau_mode = TauMode::TauVariable;
  }
  return is_gfb(sys, with_step_block(p), monoid, cfg);
}

OdeSystem lump_ode(const OdeSystem& ode, const Partition& p, const Monoid& monoid, std::size_t term_cap) {
  require_continuous(monoid);
  if (p.num_vars() != ode.size()) throw DomainError("partition does not match the ODE");
  const DynSystem sys = discretize(ode);
  const Partition full = with_step_block(p);
  const DynSystem red = reduce(sys, full, monoid);
  const int tau = *sys.tau;
  const int red_tau = *red.tau;

  // psi as polynomials in the original variables, indexed by reduced block variable
  std::map<int, Poly> psi;
  for (int b = 0; b < p.num_blocks(); ++b) {
    Poly acc = Poly::constant(monoid.op() == MonoidOp::Plus ? 0 : 1);
    for (int v : p.block(b))
      acc = monoid.op() == MonoidOp::Plus ? poly_add(acc, Poly::variable(v)) : poly_mul(acc, Poly::variable(v), term_cap);
    psi.emplace(b, std::move(acc));
  }

  OdeSystem out;
  out.name = red.name;
  std::vector<std::string> names(red.vars);
  for (int b = 0; b < p.num_blocks(); ++b) {
    Poly reduced = from_expr(red.updates[b], term_cap);
    Poly c0 = tau_coefficient(reduced, red_tau, 0);
    Poly c1 = tau_coefficient(reduced, red_tau, 1);

    std::vector<Expr> members;
    for (int v : p.block(b)) members.push_back(sys.updates[v]);
    Poly original = from_expr(combine_expr(monoid, std::move(members)), term_cap);
    Poly want = tau_coefficient(original, tau, 1);
    Poly got = compose(c1, psi, term_cap);
    Poly diff = poly_sub(got, want);
    if (!diff.is_zero() || !(c0 == Poly::variable(b))) {
      std::vector<std::string> offending;
      for (const auto& [m, c] : diff.terms()) {
        Poly single;
        single.add_term(m, c);
        offending.push_back(single.to_string(ode.vars));
      }
      throw LumpingError("block '" + names[b] + "' has no lumped vector field over the block variables",
                         std::move(offending));
    }
    out.vars.push_back(names[b]);
    out.field.push_back(simplify(to_expr(c1), Domain::rational()));
  }
  out.validate();
  return out;
}

std::vector<double> integrate_euler(const OdeSystem& ode, std::vector<double> v0, double dt, int steps) {
  if (static_cast<int>(v0.size()) != ode.size()) throw DomainError("initial state does not match the ODE");
  std::vector<double> d(v0.size());
  for (int n = 0; n < steps; ++n) {
    for (int x = 0; x < ode.size(); ++x) d[x] = evaluate_double(ode.field[x], v0);
    for (int x = 0; x < ode.size(); ++x) v0[x] += dt * d[x];
  }
  return v0;
}

}  // namespace gfb
