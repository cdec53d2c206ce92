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

#ifndef GFB_IO_HPP
#define GFB_IO_HPP

#include <string>
#include <string_view>

#include "gfb/model.hpp"

namespace gfb {

/// BoolNet text: optional `targets, factors` header, then `name, expression` per line.
/// Operators by decreasing precedence: `!`, `&`, `|`; constants 0 and 1; `#` comments.
DynSystem parse_bnet(std::string_view text, std::string name = {});

/// `.mdl` text. Statements end at a newline or `;`, `#` starts a comment.
///
///     model <name>
///     domain 0..m | domain Q
///     var a, b 0..1, c          # optional; order of first appearance fixes indices
///     update a = <expr>         # discrete-time update
///     ode a = <expr>            # vector field, rational domain only
///     step tau                  # marks `tau` as the Euler step variable
///
/// Finite expressions use `! & ^ |` (lowest last), `min(..)`, `max(..)`, constants and the
/// predicate `x:v`; on multi-valued domains `&` and `|` mean min and max. Rational
/// expressions use `+ - * /`, `^` with an integer exponent, integers and decimals.
DynSystem parse_model(std::string_view text);

/// Partition text: blocks split by `;` or `|`, members by `,`. Block directives:
/// `all` (single block), `outputs` (variables used by no other update), `rest` (one block of
/// everything unlisted) and `singletons(rest)`, also spelled `singletons`. The step
/// variable always stays alone.
Partition parse_partition(std::string_view text, const DynSystem& sys);

/// Model text that parse_model reads back to a semantically equal system.
std::string emit_model(const DynSystem& sys);

/// BoolNet text for a Boolean system. Xor and predicates are rewritten into `! & |`.
std::string emit_bnet(const DynSystem& sys);

/// emit_bnet for `.bnet` paths, emit_model otherwise.
std::string emit_for_path(const DynSystem& sys, const std::string& path);

/// JSON object with original_vars, reduced_blocks, ratio, iterations, psi_checks, backend,
/// seed, elapsed_ms and blocks, in that order.
std::string emit_report(const ReductionReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Picks parse_bnet for `.bnet` files and parse_model otherwise.
DynSystem load_model(const std::string& path);

}  // namespace gfb

#endif
