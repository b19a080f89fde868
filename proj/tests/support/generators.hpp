// SPDX-License-Identifier: Apache-2.0
// Seeded random instances for property tests.
#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cep/cea.hpp"
#include "cep/formula.hpp"
#include "cep/predicate.hpp"

namespace cep::gen {

using Rng = std::mt19937_64;

// A(v:int, w:int); B(v:int); C()
std::shared_ptr<const Schema> small_schema();

// Attribute values drawn from {0, 1, 2}.
Stream random_stream(Rng& rng, std::shared_ptr<const Schema> schema, std::size_t max_len);
Stream random_stream_exact(Rng& rng, std::shared_ptr<const Schema> schema, std::size_t len);

// Unary predicate over `var` with at most `depth` connective levels.
Predicate random_unary_predicate(Rng& rng, const Schema& schema, const std::string& var, int depth);

// Well-formed, unary core formula with variables from {x, y, z, w}. Filters
// only mention variables bound by their body; some filters mix variables
// through AND/OR of unary parts.
Formula random_formula(Rng& rng, const Schema& schema, int depth);

// Random automaton with guards over "x" drawn from a pool of `predicates` guards.
Cea random_cea(Rng& rng, const Schema& schema, std::size_t max_states, std::size_t predicates);

ComplexEvent random_complex_event(Rng& rng, std::size_t universe, std::size_t max_size);

} // namespace cep::gen
