// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "cep/batch.hpp"
#include "cep/bench.hpp"
#include "cep/error.hpp"
#include "cep/oracle.hpp"
#include "cep/parser.hpp"

using namespace cep;

namespace {

std::shared_ptr<const Schema> letters_schema() { return std::make_shared<const Schema>(load_schema(benchmark_schema_text())); }

std::uint64_t total_outputs(const OutputLog& log) {
    std::uint64_t n = 0;
    for (const auto& [pos, events] : log) n += events.size();
    return n;
}

} // namespace

TEST_SUITE("bench") {
    TEST_CASE("stream generation is seeded") {
        auto schema = letters_schema();
        BenchConfig cfg;
        cfg.length = 200;
        const Stream a = gen_stream(cfg, schema);
        const Stream b = gen_stream(cfg, schema);
        REQUIRE(a.size() == 200);
        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i].type == b[i].type;
        CHECK(same);
        cfg.seed = 2;
        const Stream c = gen_stream(cfg, schema);
        bool differs = false;
        for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i].type != c[i].type;
        CHECK(differs);
        cfg.length = 0;
        CHECK_THROWS(gen_stream(cfg, schema));
    }

    TEST_CASE("stress streams hold the trigger back") {
        auto schema = letters_schema();
        BenchConfig cfg;
        cfg.query = "Q2";
        cfg.length = 500;
        const Stream s = gen_stream(cfg, schema);
        const RelationId d = *schema->find("D");
        for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s[i].type != d);
        CHECK(s[s.size() - 1].type == d);
    }

    TEST_CASE("type distributions") {
        const auto s2 = TypeDistribution::s2();
        REQUIRE(s2.weights.size() == 5);
        CHECK(s2.weights[0].relation == "A");
        CHECK(s2.weights[0].weight == doctest::Approx(4));
        const auto p = TypeDistribution::parse("A=1,C=3");
        REQUIRE(p.weights.size() == 2);
        CHECK(p.weights[1].relation == "C");
        CHECK(p.weights[1].weight == doctest::Approx(3));
        CHECK(TypeDistribution::parse("uniform").weights.empty());
        CHECK(TypeDistribution::parse("s2").weights.size() == 5);
        CHECK_THROWS(TypeDistribution::parse("A=x"));

        auto schema = letters_schema();
        BenchConfig cfg;
        cfg.mode = BenchMode::Throughput;
        cfg.length = 1000;
        cfg.distribution = TypeDistribution::parse("B=1");
        const Stream s = gen_stream(cfg, schema);
        for (const auto& e : s.events()) CHECK(e.type == *schema->find("B"));
    }

    TEST_CASE("mode names") {
        for (BenchMode m : {BenchMode::Stress, BenchMode::Throughput, BenchMode::Consumption}) {
            CHECK(parse_bench_mode(to_string(m)) == m);
        }
        CHECK_FALSE(parse_bench_mode("fast"));
    }

    TEST_CASE("property: sequence counter matches the reference semantics") {
        auto schema = letters_schema();
        for (int q = 1; q <= 2; ++q) {
            const auto* b = find_builtin_query(q == 1 ? "Q1" : "Q2");
            const Formula f = parse_formula(b->text, *schema);
            std::vector<RelationId> pattern;
            for (char c : std::string(q == 1 ? "ABC" : "ABCD")) pattern.push_back(*schema->find(std::string(1, c)));
            for (std::uint64_t seed = 1; seed <= 40; ++seed) {
                BenchConfig cfg;
                cfg.query = b->id;
                cfg.length = 4 + seed % 9;
                cfg.seed = seed;
                const Stream s = gen_stream(cfg, schema);
                const auto log = oracle_log(f, s);
                CHECK(count_sequence_matches(pattern, s) == total_outputs(log));
            }
        }
    }

    TEST_CASE("a lone trigger yields nothing") {
        BenchConfig cfg;
        cfg.length = 1;
        const auto r = run_bench(cfg);
        CHECK(r.output_count == 0);
        CHECK(r.length == 1);
    }

    TEST_CASE("report serialization") {
        BenchConfig cfg;
        cfg.length = 300;
        const auto j = run_bench(cfg).to_json();
        for (const char* key : {"query", "mode", "strategy", "engine", "length", "seed", "processing_time_s",
                                "enumeration_time_s", "memory_bytes", "dag_nodes", "dag_cells", "throughput_eps",
                                "output_count", "step_latency_ns_deciles", "automaton_states", "enum_max_gap_ops"}) {
            CHECK_MESSAGE(j.contains(key), key);
        }
        CHECK(j["step_latency_ns_deciles"].size() == 10);
        CHECK(j["query"] == "Q1");
        CHECK(j["mode"] == "stress");
    }

    TEST_CASE("engine choice does not change counts") {
        for (const char* q : {"Q1", "Q2", "Q3"}) {
            BenchConfig cfg;
            cfg.query = q;
            cfg.length = 600;
            cfg.engine = EngineKind::Det;
            const auto det = run_bench(cfg);
            cfg.engine = EngineKind::NDet;
            const auto ndet = run_bench(cfg);
            CHECK(det.output_count == ndet.output_count);
            CHECK(det.output_count > 0);
        }
    }

    TEST_CASE("consumption mode resets after each match") {
        BenchConfig cfg;
        cfg.mode = BenchMode::Consumption;
        cfg.length = 2000;
        cfg.query = "Q4";
        const auto r = run_bench(cfg);
        cfg.mode = BenchMode::Throughput;
        cfg.strategy = Strategy::Next;
        const auto n = run_bench(cfg);
        CHECK(r.output_count > 0);
        CHECK(n.output_count > 0);
    }

    TEST_CASE("batch evaluation matches the serial reference") {
        auto schema = letters_schema();
        const auto q = compile_query(parse_formula(find_builtin_query("Q5")->text, *schema));
        std::vector<Stream> streams;
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            BenchConfig cfg;
            cfg.mode = BenchMode::Throughput;
            cfg.length = 30;
            cfg.seed = seed;
            streams.push_back(gen_stream(cfg, schema));
        }
        CHECK(evaluate_streams(q, streams, EngineKind::Auto) == evaluate_streams_serial(q, streams, EngineKind::Auto));

        std::vector<BenchConfig> configs;
        for (const char* id : {"Q1", "Q2", "Q3"}) {
            BenchConfig cfg;
            cfg.query = id;
            cfg.length = 400;
            configs.push_back(cfg);
        }
        const auto par = run_batch(configs);
        const auto ser = run_batch_serial(configs);
        REQUIRE(par.size() == ser.size());
        for (std::size_t i = 0; i < par.size(); ++i) {
            CHECK(par[i].query == ser[i].query);
            CHECK(par[i].output_count == ser[i].output_count);
            CHECK(par[i].dag_nodes == ser[i].dag_nodes);
        }
    }

    TEST_CASE("property: builtin queries agree with the reference semantics") {
        auto schema = letters_schema();
        for (const auto& b : builtin_queries()) {
            const Formula f = parse_formula(b.text, *schema);
            const auto q = compile_query(f);
            for (std::uint64_t seed = 1; seed <= 25; ++seed) {
                BenchConfig cfg;
                cfg.query = b.id;
                cfg.mode = BenchMode::Throughput;
                cfg.length = 1 + seed % 12;
                cfg.seed = seed;
                const Stream s = gen_stream(cfg, schema);
                auto e = make_engine(q, EngineKind::Auto, schema);
                INFO(b.id << " seed " << seed);
                CHECK(flatten(run_query(*e, s)) == flatten(oracle_log(f, s)));
            }
        }
    }
}
