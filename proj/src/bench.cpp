// SPDX-License-Identifier: Apache-2.0
#include "cep/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "cep/error.hpp"
#include "cep/parser.hpp"

namespace cep {

namespace {

constexpr std::array kBuiltins = {
    BuiltinQuery{"Q1", "A AS x ; B AS y ; C AS z", "C"},
    BuiltinQuery{"Q2", "A AS x ; B AS y ; C AS z ; D AS w", "D"},
    BuiltinQuery{"Q3", "((A AS x OR B AS y) OR C AS z) ; D AS w", "D"},
    BuiltinQuery{"Q4", "(A AS x)+ ; B AS y", "B"},
    BuiltinQuery{"Q5", "(A AS x)+ ; (B AS y)+ ; C AS z", "C"},
    BuiltinQuery{"Q6", "((A AS x)+ ; B AS y)+ ; C AS z", "C"},
};

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Value random_value(ValueKind kind, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> digit(0, 9);
    switch (kind) {
    case ValueKind::Int: return Value(digit(rng));
    case ValueKind::Float: return Value(std::uniform_real_distribution<double>(0.0, 10.0)(rng));
    case ValueKind::String: return Value("v" + std::to_string(digit(rng)));
    case ValueKind::Bool: return Value(digit(rng) % 2 == 0);
    }
    return Value();
}

Event random_event(const Schema& schema, RelationId type, std::mt19937_64& rng) {
    Event e{type, {}};
    for (const auto& attr : schema.relation(type).attributes) e.values.push_back(random_value(attr.kind, rng));
    return e;
}

} // namespace

std::span<const BuiltinQuery> builtin_queries() { return kBuiltins; }

const BuiltinQuery* find_builtin_query(std::string_view id) {
    for (const auto& q : kBuiltins) {
        if (q.id == id) return &q;
    }
    return nullptr;
}

std::string_view benchmark_schema_text() { return "A(); B(); C(); D(); E()"; }

std::string_view to_string(BenchMode mode) {
    switch (mode) {
    case BenchMode::Stress: return "stress";
    case BenchMode::Throughput: return "throughput";
    case BenchMode::Consumption: return "consumption";
    }
    return "?";
}

std::optional<BenchMode> parse_bench_mode(std::string_view name) {
    for (BenchMode m : {BenchMode::Stress, BenchMode::Throughput, BenchMode::Consumption}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

TypeDistribution TypeDistribution::s2() { return {{{"A", 4}, {"B", 3}, {"C", 2}, {"D", 1}, {"E", 2}}}; }

TypeDistribution TypeDistribution::parse(std::string_view text) {
    if (text.empty() || text == "uniform") return uniform();
    if (text == "s2") return s2();
    TypeDistribution d;
    std::string item;
    std::stringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error("bad distribution entry '" + item + "'");
        double w = 0;
        try {
            w = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("bad distribution weight in '" + item + "'");
        }
        if (w < 0) throw Error("negative distribution weight in '" + item + "'");
        d.weights.push_back({item.substr(0, eq), w});
    }
    return d;
}

std::string TypeDistribution::to_string() const {
    if (weights.empty()) return "uniform";
    std::string out;
    for (const auto& w : weights) {
        if (!out.empty()) out += ',';
        std::ostringstream num;
        num << w.weight;
        out += w.relation + "=" + num.str();
    }
    return out;
}

Stream gen_stream(const BenchConfig& config, std::shared_ptr<const Schema> schema) {
    if (config.length == 0) throw Error("stream length must be at least 1");
    std::vector<double> weights(schema->size(), config.distribution.weights.empty() ? 1.0 : 0.0);
    for (const auto& w : config.distribution.weights) {
        auto id = schema->find(w.relation);
        if (!id) throw Error("distribution names unknown relation '" + w.relation + "'");
        weights[*id] += w.weight;
    }
    std::optional<RelationId> trigger;
    if (config.mode == BenchMode::Stress) {
        std::string name = config.trigger;
        if (name.empty()) {
            if (const auto* q = find_builtin_query(config.query)) name = q->trigger;
        }
        if (name.empty()) throw Error("stress mode needs a trigger relation");
        trigger = schema->find(name);
        if (!trigger) throw Error("unknown trigger relation '" + name + "'");
        weights[*trigger] = 0;
    }
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w <= 0; })) {
        throw Error("distribution has no positive weight");
    }
    std::mt19937_64 rng(config.seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<Event> events;
    events.reserve(config.length);
    const std::size_t body = trigger ? config.length - 1 : config.length;
    for (std::size_t i = 0; i < body; ++i) {
        events.push_back(random_event(*schema, static_cast<RelationId>(pick(rng)), rng));
    }
    if (trigger) events.push_back(random_event(*schema, *trigger, rng));
    return Stream(std::move(schema), std::move(events));
}

std::uint64_t count_sequence_matches(std::span<const RelationId> pattern, const Stream& s) {
    if (pattern.empty() || s.empty() || s[s.size() - 1].type != pattern.back()) return 0;
    // ways[j]: matches of pattern[0..j) within the events seen so far.
    std::vector<std::uint64_t> ways(pattern.size(), 0);
    ways[0] = 1;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        for (std::size_t j = pattern.size() - 1; j >= 1; --j) {
            if (s[i].type == pattern[j - 1]) ways[j] += ways[j - 1];
        }
    }
    return ways[pattern.size() - 1];
}

nlohmann::json BenchReport::to_json() const {
    return {
        {"query", query},
        {"mode", mode},
        {"strategy", strategy},
        {"engine", engine},
        {"length", length},
        {"seed", seed},
        {"processing_time_s", processing_time_s},
        {"enumeration_time_s", enumeration_time_s},
        {"memory_bytes", memory_bytes},
        {"dag_nodes", dag_nodes},
        {"dag_cells", dag_cells},
        {"throughput_eps", throughput_eps},
        {"output_count", output_count},
        {"step_latency_ns_deciles", step_latency_ns_deciles},
        {"automaton_states", automaton_states},
        {"enum_max_gap_ops", enum_max_gap_ops},
    };
}

BenchReport run_bench(const BenchConfig& config, const CompiledQuery& query, const Stream& stream) {
    std::vector<Strategy> strategies = query.strategies;
    if (config.strategy != Strategy::None) strategies.push_back(config.strategy);
    auto engine = make_engine(query.automaton, strategies, config.engine, stream.schema_ptr());

    BenchReport r;
    r.query = config.query;
    r.mode = std::string(to_string(config.mode));
    r.strategy = std::string(to_string(config.strategy));
    r.engine = std::string(engine->name());
    r.length = stream.size();
    r.seed = config.seed;

    std::vector<std::uint64_t> latency(stream.size());
    Clock::duration processing{};
    Clock::duration enumeration{};
    EnumStats enum_stats;
    std::size_t peak_memory = 0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        if (i + 1 == stream.size()) peak_memory = engine->stats().memory_bytes;
        const auto t0 = Clock::now();
        engine->step(stream[i]);
        const auto t1 = Clock::now();
        std::uint64_t found = 0;
        engine->enumerate([&](std::span<const std::size_t>) { ++found; }, &enum_stats);
        const auto t2 = Clock::now();
        latency[i] = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        processing += t1 - t0;
        enumeration += t2 - t1;
        r.output_count += found;
        if (found > 0 && config.mode == BenchMode::Consumption) engine->reset();
    }
    const EngineStats stats = engine->stats();
    r.memory_bytes = std::max(peak_memory, stats.memory_bytes);
    r.dag_nodes = stats.dag_nodes;
    r.dag_cells = stats.dag_cells;
    r.automaton_states = stats.automaton_states;
    r.processing_time_s = seconds(processing);
    r.enumeration_time_s = seconds(enumeration);
    r.throughput_eps = r.processing_time_s > 0 ? static_cast<double>(stream.size()) / r.processing_time_s : 0;
    r.enum_max_gap_ops = enum_stats.max_gap_overhead;
    const std::size_t n = latency.size();
    for (std::size_t d = 0; d < 10; ++d) {
        auto first = latency.begin() + static_cast<std::ptrdiff_t>(d * n / 10);
        auto last = latency.begin() + static_cast<std::ptrdiff_t>((d + 1) * n / 10);
        if (first == last) continue;
        auto mid = first + (last - first) / 2;
        std::nth_element(first, mid, last);
        r.step_latency_ns_deciles.push_back(static_cast<double>(*mid));
    }
    return r;
}

BenchReport run_bench(const BenchConfig& config) {
    auto schema = std::make_shared<const Schema>(
        load_schema(config.schema_path.empty() ? std::string(benchmark_schema_text()) : read_file(config.schema_path)));
    const auto* builtin = find_builtin_query(config.query);
    const std::string text = builtin ? std::string(builtin->text) : read_file(config.query);
    const CompiledQuery query = compile_query(parse_formula(text, *schema));
    const Stream stream = gen_stream(config, schema);
    return run_bench(config, query, stream);
}

} // namespace cep
