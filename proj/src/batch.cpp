// SPDX-License-Identifier: Apache-2.0
#include "cep/batch.hpp"

#include <exception>

namespace cep {

namespace {

// Runs body(i) for every index in parallel and rethrows the first failure.
template <typename Body>
void parallel_for(std::size_t n, Body body) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(cep_batch_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

OutputLog evaluate_one(const CompiledQuery& query, const Stream& stream, EngineKind kind, RunOptions options) {
    auto engine = make_engine(query, kind, stream.schema_ptr());
    return run_query(*engine, stream, options);
}

} // namespace

std::vector<OutputLog> evaluate_streams(const CompiledQuery& query, std::span<const Stream> streams, EngineKind kind,
                                        RunOptions options) {
    std::vector<OutputLog> out(streams.size());
    parallel_for(streams.size(), [&](std::size_t i) { out[i] = evaluate_one(query, streams[i], kind, options); });
    return out;
}

std::vector<OutputLog> evaluate_streams_serial(const CompiledQuery& query, std::span<const Stream> streams,
                                               EngineKind kind, RunOptions options) {
    std::vector<OutputLog> out;
    out.reserve(streams.size());
    for (const auto& s : streams) out.push_back(evaluate_one(query, s, kind, options));
    return out;
}

std::vector<BenchReport> run_batch(std::span<const BenchConfig> configs) {
    std::vector<BenchReport> out(configs.size());
    parallel_for(configs.size(), [&](std::size_t i) { out[i] = run_bench(configs[i]); });
    return out;
}

std::vector<BenchReport> run_batch_serial(std::span<const BenchConfig> configs) {
    std::vector<BenchReport> out;
    out.reserve(configs.size());
    for (const auto& c : configs) out.push_back(run_bench(c));
    return out;
}

} // namespace cep
