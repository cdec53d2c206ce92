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

#include <nlohmann/json.hpp>

#include "gfb/error.hpp"
#include "gfb/io.hpp"

namespace gfb {

namespace {

Expr bnet_form(const Expr& e) {
  std::vector<Expr> kids;
  for (const auto& k : e.children()) kids.push_back(bnet_form(k));
  switch (e.kind()) {
    case ExprKind::Var:
    case ExprKind::Const: return e;
    case ExprKind::Not: return Expr::lnot(kids[0]);
    case ExprKind::Eq: return e.eq_value() == 1 ? kids[0] : e.eq_value() == 0 ? Expr::lnot(kids[0]) : Expr::constant(0);
    case ExprKind::Xor: {
      Expr acc = kids[0];
      for (std::size_t k = 1; k < kids.size(); ++k) {
        const Expr& b = kids[k];
        acc = Expr::nary(ExprKind::Or, {Expr::nary(ExprKind::And, {acc, Expr::lnot(b)}),
                                        Expr::nary(ExprKind::And, {Expr::lnot(acc), b})});
      }
      return acc;
    }
    case ExprKind::And:
    case ExprKind::Or: return Expr::nary(e.kind(), std::move(kids));
    default: throw DomainError("BoolNet output needs a Boolean system");
  }
}

}  // namespace

std::string emit_bnet(const DynSystem& sys) {
  if (!sys.domain.is_boolean() || sys.kind != SystemKind::Discrete)
    throw DomainError("BoolNet output needs a Boolean system");
  std::string out = "targets, factors\n";
  for (int i = 0; i < sys.size(); ++i) out += sys.vars[i] + ", " + format(bnet_form(sys.updates[i]), sys.vars) + "\n";
  return out;
}

std::string emit_for_path(const DynSystem& sys, const std::string& path) {
  const bool bnet = path.size() >= 5 && path.compare(path.size() - 5, 5, ".bnet") == 0;
  return bnet ? emit_bnet(sys) : emit_model(sys);
}

std::string emit_model(const DynSystem& sys) {
  std::string out;
  if (!sys.name.empty()) out += "model " + sys.name + "\n";
  out += "domain " + sys.domain.to_string() + "\n";
  out += "var ";
  for (int i = 0; i < sys.size(); ++i) {
    if (i > 0) out += ", ";
    out += sys.vars[i];
    if (!sys.ranges.empty() && sys.ranges[i] != sys.domain.max()) out += " 0.." + std::to_string(sys.ranges[i]);
  }
  out += "\n";
  const char* keyword = sys.kind == SystemKind::VectorField ? "ode " : "update ";
  for (int i = 0; i < sys.size(); ++i) out += keyword + sys.vars[i] + " = " + format(sys.updates[i], sys.vars) + "\n";
  if (sys.tau) out += "step " + sys.vars[*sys.tau] + "\n";
  return out;
}

std::string emit_report(const ReductionReport& r) {
  nlohmann::ordered_json j;
  j["original_vars"] = r.original_vars;
  j["reduced_blocks"] = r.reduced_blocks;
  j["ratio"] = r.ratio;
  j["iterations"] = r.iterations;
  j["psi_checks"] = r.psi_checks;
  j["backend"] = r.backend;
  j["seed"] = r.seed;
  j["elapsed_ms"] = r.elapsed_ms;
  j["blocks"] = r.blocks;
  return j.dump(2) + "\n";
}

}  // namespace gfb
