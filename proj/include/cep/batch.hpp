// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "cep/bench.hpp"

namespace cep {

// Evaluates one compiled query over independent streams, one engine per
// stream. Results follow input order. The parallel variant spreads streams
// over OpenMP threads; each engine stays single-threaded.
std::vector<OutputLog> evaluate_streams(const CompiledQuery& query, std::span<const Stream> streams, EngineKind kind,
                                        RunOptions options = {});
std::vector<OutputLog> evaluate_streams_serial(const CompiledQuery& query, std::span<const Stream> streams,
                                               EngineKind kind, RunOptions options = {});

// Independent benchmark configurations, same threading split as above.
std::vector<BenchReport> run_batch(std::span<const BenchConfig> configs);
std::vector<BenchReport> run_batch_serial(std::span<const BenchConfig> configs);

} // namespace cep
