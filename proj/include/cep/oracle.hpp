// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cep/complex_event.hpp"
#include "cep/event.hpp"
#include "cep/formula.hpp"

namespace cep {

// Brute-force reference semantics. Exponential; meant for streams of at most a
// few dozen events. Selection wrappers at the top of `f` are applied to the
// union of outputs. Throws NotWellFormedError for ill-formed formulas.
ComplexEventSet oracle_eval(const Formula& f, const Stream& s);

// Same result grouped by end position.
OutputLog oracle_log(const Formula& f, const Stream& s);

} // namespace cep
