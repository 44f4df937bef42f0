#pragma once

// Text syntax.
//
//   system  ::= id | const(k) | pow2 | sum(S,S) | prod(S,S) | hat(S) | bhF(S) | NAME
//   term    ::= c[i] | t[i](x1,...,xk) | 0 | 2^{x1}+...+2^{xk}   (last two for pow2)
//   collapse::= s(a) | psi(0) | psi(2^{T}+...+2^{T})
//
// where NAME is a preset, x are element names and T are terms whose
// arguments are collapse terms.

#include <map>
#include <string>
#include <string_view>

#include "ffgh/collapse.hpp"
#include "ffgh/denotation.hpp"

namespace ffgh {

using Presets = std::map<std::string, std::string, std::less<>>;

/// Parses and validates (check_predilator on orders of size <= 2).
System parse_system(std::string_view text, const Presets& presets = {});
System parse_system_unchecked(std::string_view text, const Presets& presets = {});

/// Term over `order`; arguments become positions.
OrdinalTerm parse_term(std::string_view text, const DenotationSystem& d, const FiniteOrder& order);

CollapseExpr parse_collapse(std::string_view text, const DenotationSystem& d, const FiniteOrder& base);

} // namespace ffgh
