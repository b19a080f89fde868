// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "cep/formula.hpp"

namespace cep {

// Parses a CEL query. Precedence, loosest first: OR, ';', then the postfix
// operators FILTER and '+', applied left to right. Keywords are case-insensitive.
Formula parse_formula(std::string_view text, const Schema& schema);

Predicate parse_predicate(std::string_view text, const Schema& schema);

} // namespace cep
