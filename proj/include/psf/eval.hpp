#pragma once

#include <map>

#include "psf/core.hpp"

namespace psf {

// Built-in rewriting over ground constructor terms:
//   pred(succ(n)) -> n            pred(^0) -> ^0   (saturating, with a note)
//   nat(t)        -> t            (transparent wrapper)
//   gt(a, b)      -> true/false   over numerals; false with a note otherwise
//   eq(a, b)      -> structural equality of normal forms
// Everything else is an inert constructor. Total on ground terms.
DTm eval(DTm term, DiagSink* diag = nullptr);

// true iff eval(lhs) and eval(rhs) are the same normal form.
bool eval_guard(DTm lhs, DTm rhs, DiagSink* diag = nullptr);

using Env = std::map<std::string, DTm>;

// Capture-free substitution; throws UnboundVariable if a variable has no
// binding. Ground guards are folded to their branch or delta on the way.
DTm substitute(DTm term, const Env& env);
Tm substitute(Tm term, const Env& env, DiagSink* diag = nullptr);

// Numeral helpers. A numeral is ^0 under any nesting of succ/nat.
bool is_numeral(DTm t);
std::optional<unsigned> numeral_value(DTm t);

}  // namespace psf
