#pragma once

#include <functional>
#include <string>

#include "symlab/rational.hpp"

namespace symlab::detail {

// Internal tokenizer shared by parse_poly and parse_weyl. Emits one
// (a, b, p, q, coefficient) tuple per '+/-'-separated term.
void parse_terms(const std::string& text, bool allow_derivatives,
                 const std::function<void(int, int, int, int, const GaussianRational&)>& emit);

} // namespace symlab::detail
