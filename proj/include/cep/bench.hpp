// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cep/pipeline.hpp"

namespace cep {

// Q1..Q6 over the five-relation benchmark schema.
struct BuiltinQuery {
    std::string_view id;
    std::string_view text;
    // Relation whose arrival completes a match in stress mode.
    std::string_view trigger;
};

std::span<const BuiltinQuery> builtin_queries();
const BuiltinQuery* find_builtin_query(std::string_view id);
std::string_view benchmark_schema_text();

enum class BenchMode { Stress, Throughput, Consumption };

std::string_view to_string(BenchMode mode);
std::optional<BenchMode> parse_bench_mode(std::string_view name);

struct TypeWeight {
    std::string relation;
    double weight;
};

// Relative weights per relation, normalized to probabilities on use. An empty
// list means uniform over the schema.
struct TypeDistribution {
    std::vector<TypeWeight> weights;

    static TypeDistribution uniform() { return {}; }
    // Skewed benchmark stream: A 4, B 3, C 2, D 1, E 2.
    static TypeDistribution s2();
    // "uniform", "s2", or "A=4,B=3,...". Throws Error.
    static TypeDistribution parse(std::string_view text);
    std::string to_string() const;
};

struct BenchConfig {
    // Builtin id (Q1..Q6) or path to a query file.
    std::string query = "Q1";
    // Schema file; empty selects the benchmark schema.
    std::string schema_path;
    std::size_t length = 2000;
    TypeDistribution distribution;
    BenchMode mode = BenchMode::Stress;
    Strategy strategy = Strategy::None;
    EngineKind engine = EngineKind::Auto;
    std::uint64_t seed = 1;
    // Stress-mode trigger; defaults to the builtin query's trigger.
    std::string trigger;
};

// Seeded stream over the schema. Stress mode withholds the trigger relation
// and appends one trigger event. Throws Error on length 0 or a bad distribution.
Stream gen_stream(const BenchConfig& config, std::shared_ptr<const Schema> schema);

// Number of subsequences i1 < ... < ik = |s| - 1 whose relations spell `pattern`.
std::uint64_t count_sequence_matches(std::span<const RelationId> pattern, const Stream& s);

struct BenchReport {
    std::string query;
    std::string mode;
    std::string strategy;
    std::string engine;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    double processing_time_s = 0;
    double enumeration_time_s = 0;
    std::size_t memory_bytes = 0;
    std::size_t dag_nodes = 0;
    std::size_t dag_cells = 0;
    double throughput_eps = 0;
    std::uint64_t output_count = 0;
    // Median step latency within each tenth of the stream.
    std::vector<double> step_latency_ns_deciles;
    std::size_t automaton_states = 0;
    std::uint64_t enum_max_gap_ops = 0;

    nlohmann::json to_json() const;
};

// Feeds `stream` through an engine for `query`, enumerating at every position.
BenchReport run_bench(const BenchConfig& config, const CompiledQuery& query, const Stream& stream);

// Resolves the query, generates the stream and runs it.
BenchReport run_bench(const BenchConfig& config);

} // namespace cep
