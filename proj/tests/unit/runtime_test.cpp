// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "cep/bench.hpp"
#include "cep/error.hpp"
#include "cep/oracle.hpp"
#include "cep/pipeline.hpp"
#include "cep/runtime/engines.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace cep;
using fixture::sensor_query;

namespace {

std::vector<std::vector<std::size_t>> drain(OutputCursor c) {
    std::vector<std::vector<std::size_t>> out;
    while (c.next()) out.emplace_back(c.positions().begin(), c.positions().end());
    return out;
}

ComplexEventSet enumerate_now(Engine& e) {
    ComplexEventSet out;
    e.enumerate([&](std::span<const std::size_t> d) { out.insert(ComplexEvent(std::vector<std::size_t>(d.rbegin(), d.rend()))); });
    return out;
}

std::shared_ptr<const Schema> letters_schema() { return std::make_shared<const Schema>(load_schema(benchmark_schema_text())); }

Stream letters(const std::string& types) {
    auto schema = letters_schema();
    std::vector<Event> events;
    for (char c : types) events.push_back(Event{*schema->find(std::string(1, c)), {}});
    return Stream(schema, std::move(events));
}

} // namespace

TEST_SUITE("runtime") {
    TEST_CASE("black-white stack pops white suffixes at once") {
        BlackWhiteStack s;
        s.push_black({1, 0, 0}, 10);
        s.push_white({2, 0, 0}, 9);
        s.push_black({3, 0, 0}, 8);
        s.push_white({4, 0, 0}, 7);
        s.push_white({5, 0, 0}, 6);
        CHECK(s.size() == 5);
        s.pop_whites();
        CHECK(s.size() == 3);
        CHECK(s.top().node == 3);
        s.whiten_top();
        s.pop_whites();
        CHECK(s.size() == 1);
        CHECK(std::vector<std::size_t>(s.positions().begin(), s.positions().end()) == std::vector<std::size_t>{10});
        s.pop_whites();
        CHECK(s.size() == 1);
        s.pop();
        CHECK(s.empty());
    }

    TEST_CASE("lists are persistent snapshots") {
        OutputDag dag;
        NodeList a = dag.bottom_list();
        NodeId n1 = dag.make_node(1, a);
        NodeList l;
        dag.add(l, n1);
        const NodeList snap = l;
        NodeList other;
        dag.add(other, dag.make_node(2, a));
        dag.append(l, other);
        dag.add(l, dag.make_node(3, a));
        auto count = [&](NodeList x) {
            std::size_t k = 0;
            for (CellId c = x.head;; c = dag.cell(c).next) {
                ++k;
                if (c == x.tail) break;
            }
            return k;
        };
        CHECK(count(snap) == 1);
        CHECK(count(l) == 3);
    }

    TEST_CASE("cursor walks every path in descending order") {
        OutputDag dag;
        NodeList bottom = dag.bottom_list();
        NodeList ones;
        dag.add(ones, dag.make_node(1, bottom));
        dag.add(ones, dag.make_node(0, bottom));
        dag.append(ones, dag.bottom_list());
        NodeList top;
        dag.add(top, dag.make_node(2, ones));
        auto out = drain(OutputCursor(dag, {top}, 2));
        CHECK(std::set<std::vector<std::size_t>>(out.begin(), out.end()) ==
              std::set<std::vector<std::size_t>>{{2, 0}, {2, 1}, {2}});
        CHECK(out.size() == 3);
        CHECK(drain(OutputCursor(dag, {top}, 3)).empty());
    }

    TEST_CASE("deterministic evaluation after three events") {
        auto q = compile_query(sensor_query(fixture::kPhi1));
        DetEngine e(q.automaton, fixture::sensor_schema());
        Stream s = fixture::sensor_stream();
        for (std::size_t i = 0; i < 3; ++i) e.step(s[i]);
        CHECK(enumerate_now(e) == ComplexEventSet{{1, 2}});
        auto paths = drain(e.cursor());
        REQUIRE(paths.size() == 1);
        CHECK(paths[0] == std::vector<std::size_t>{2, 1});
    }

    TEST_CASE("all engines reproduce the running example") {
        auto schema = fixture::sensor_schema();
        const Stream s = fixture::sensor_stream();
        struct Case {
            const char* query;
            Strategy strategy;
            ComplexEventSet expected;
        };
        const std::vector<Case> cases{
            {fixture::kPhi1, Strategy::None, {{1, 2}, {1, 8}, {5, 8}}},
            {fixture::kPhi2, Strategy::None, {{1, 2}, {1, 8}, {5, 8}, {2, 5}}},
            {fixture::kPhi3, Strategy::None, {{3, 4, 6, 7}, {3, 6, 7}, {3, 4, 7}}},
            {fixture::kPhi1, Strategy::Strict, {{1, 2}}},
            {fixture::kPhi1, Strategy::Next, {{1, 2}, {1, 8}}},
            {fixture::kPhi1, Strategy::Last, {{1, 2}, {5, 8}}},
            {fixture::kPhi3, Strategy::Max, {{3, 4, 6, 7}}},
        };
        for (const auto& c : cases) {
            auto q = compile_query(sensor_query(c.query));
            std::vector<Strategy> st;
            if (c.strategy != Strategy::None) st.push_back(c.strategy);
            for (EngineKind k : {EngineKind::Auto, EngineKind::Det, EngineKind::NDet, EngineKind::Naive}) {
                auto e = make_engine(q.automaton, st, k, schema);
                INFO(c.query << " " << to_string(c.strategy) << " " << e->name());
                CHECK(flatten(run_query(*e, s)) == c.expected);
            }
        }
    }

    TEST_CASE("engine dispatch") {
        auto schema = fixture::sensor_schema();
        auto q1 = compile_query(sensor_query(fixture::kPhi1));
        CHECK(make_engine(q1.automaton, {}, EngineKind::Auto, schema)->name() == "det");
        auto q3 = compile_query(sensor_query(fixture::kPhi3));
        CHECK(make_engine(q3.automaton, {}, EngineKind::Auto, schema)->name() == "ndet");
        const std::pair<Strategy, std::string_view> natives[] = {
            {Strategy::Strict, "strict"}, {Strategy::Next, "nxt"}, {Strategy::Last, "last"}, {Strategy::Max, "max"}};
        for (auto [st, name] : natives) {
            std::vector<Strategy> v{st};
            CHECK(make_engine(q1.automaton, v, EngineKind::Auto, schema)->name() == name);
            CHECK(make_engine(q1.automaton, v, EngineKind::Det, schema)->name() == "det");
        }
    }

    TEST_CASE("iteration query over A A B") {
        auto schema = letters_schema();
        auto q = compile_query(parse_formula("(A AS x)+ ; B AS y", *schema));
        auto e = make_engine(q, EngineKind::Auto, schema);
        auto log = run_query(*e, letters("AAB"));
        REQUIRE(log.count(2) == 1);
        CHECK(ComplexEventSet(log[2].begin(), log[2].end()) == ComplexEventSet{{0, 2}, {1, 2}, {0, 1, 2}});
        CHECK(log.size() == 1);
    }

    TEST_CASE("unmatched events and empty streams") {
        auto schema = letters_schema();
        auto q = compile_query(parse_formula("A AS x ; B AS y", *schema));
        auto e = make_engine(q, EngineKind::Auto, schema);
        CHECK(run_query(*e, letters("")).empty());
        e->step(letters("E")[0]);
        CHECK(enumerate_now(*e).empty());
        CHECK(e->position() == 1);
    }

    TEST_CASE("snapshots survive later steps") {
        auto schema = letters_schema();
        auto q = compile_query(parse_formula("A AS x ; B AS y", *schema));
        DetEngine e(q.automaton, schema);
        Stream s = letters("AABB");
        for (std::size_t i = 0; i < 3; ++i) e.step(s[i]);
        ListSnapshot snap = e.snapshot();
        const auto before = drain(e.cursor(snap));
        e.step(s[3]);
        CHECK(drain(e.cursor(snap)) == before);
        CHECK(before.size() == 2);
        CHECK(drain(e.cursor()).size() == 2);
    }

    TEST_CASE("consumption policy resets after a match") {
        auto schema = letters_schema();
        auto q = compile_query(parse_formula("A AS x ; B AS y ; C AS z", *schema));
        auto e = make_engine(q, EngineKind::Auto, schema);
        auto plain = run_query(*e, letters("ABCC"));
        CHECK(plain.size() == 2);
        auto f = make_engine(q, EngineKind::Auto, schema);
        auto consumed = run_query(*f, letters("ABCCABC"), RunOptions{true});
        CHECK(consumed.size() == 2);
        CHECK(consumed.count(2) == 1);
        CHECK(consumed.count(6) == 1);
        CHECK(consumed[6] == std::vector<ComplexEvent>{{4, 5, 6}});
    }

    TEST_CASE("compaction keeps live outputs") {
        auto schema = letters_schema();
        auto q = compile_query(parse_formula("A AS x ; B AS y ; C AS z", *schema));
        BenchConfig cfg;
        cfg.length = 400;
        cfg.mode = BenchMode::Throughput;
        Stream s = gen_stream(cfg, schema);
        DetEngine a(q.automaton, schema);
        DetEngine b(q.automaton, schema);
        for (std::size_t i = 0; i < s.size(); ++i) {
            a.step(s[i]);
            b.step(s[i]);
            if (i % 50 == 49) b.compact();
            CHECK(enumerate_now(a) == enumerate_now(b));
        }
        CHECK(b.dag().node_count() <= a.dag().node_count());
    }

    TEST_CASE("deterministic engine rejects nondeterministic automata") {
        auto schema = gen::small_schema();
        Cea a(2);
        a.add_transition(0, Predicate::truth(), Mark::Take, 1);
        a.add_transition(0, Predicate::truth(), Mark::Take, 0);
        a.set_initial(0);
        a.set_final(1);
        DetEngine e(a, schema);
        CHECK_THROWS_AS(e.step(Event{0, {Value(0), Value(0)}}), Error);
    }

    TEST_CASE("property: letters agree with direct predicate evaluation") {
        gen::Rng rng(51);
        auto schema = gen::small_schema();
        for (int i = 0; i < 100; ++i) {
            std::vector<Predicate> guards;
            for (int k = 0; k < 4; ++k) guards.push_back(gen::random_unary_predicate(rng, *schema, "x", 2));
            LetterClassifier letters(schema, guards);
            Stream s = gen::random_stream_exact(rng, schema, 10);
            for (const auto& e : s.events()) {
                const LetterId l = letters.classify(e);
                for (std::size_t g = 0; g < guards.size(); ++g) {
                    CHECK(letters.holds(l, letters.guard_id(g)) == guards[g].eval_unary(e, *schema));
                }
            }
        }
    }

    TEST_CASE("property: DAG paths are exactly the runs, without duplicates") {
        gen::Rng rng(52);
        auto schema = gen::small_schema();
        for (int i = 0; i < 150; ++i) {
            Cea a = gen::random_cea(rng, *schema, 4, 3);
            Stream s = gen::random_stream(rng, schema, 7);
            NDetEngine nd(a, schema);
            DetEngine det(io_determinize(a), schema);
            for (std::size_t n = 0; n < s.size(); ++n) {
                nd.step(s[n]);
                det.step(s[n]);
                const auto runs = enumerate_runs(a, s, n);
                for (DagEngine* e : {static_cast<DagEngine*>(&nd), static_cast<DagEngine*>(&det)}) {
                    auto paths = drain(e->cursor());
                    ComplexEventSet got;
                    for (const auto& p : paths) got.insert(ComplexEvent(std::vector<std::size_t>(p.rbegin(), p.rend())));
                    CHECK(got.size() == paths.size());
                    CHECK(got == runs);
                }
            }
        }
    }

    TEST_CASE("property: engines agree with the reference semantics") {
        gen::Rng rng(53);
        auto schema = gen::small_schema();
        for (int i = 0; i < 150; ++i) {
            Formula f = gen::random_formula(rng, *schema, 4);
            Stream s = gen::random_stream(rng, schema, 8);
            auto q = compile_query(f);
            for (Strategy st : {Strategy::None, Strategy::Strict, Strategy::Next, Strategy::Last, Strategy::Max}) {
                const auto expected = flatten(oracle_log(Formula::select(st, f), s));
                std::vector<Strategy> v;
                if (st != Strategy::None) v.push_back(st);
                for (EngineKind k : {EngineKind::Auto, EngineKind::Det, EngineKind::NDet}) {
                    auto e = make_engine(q.automaton, v, k, schema);
                    INFO(f.to_string() << " " << to_string(st) << " " << e->name());
                    CHECK(flatten(run_query(*e, s)) == expected);
                }
            }
        }
    }

    TEST_CASE("node and cell counts stay within two per state and event") {
        auto schema = letters_schema();
        BenchConfig cfg;
        cfg.length = 3000;
        cfg.mode = BenchMode::Throughput;
        const Stream s = gen_stream(cfg, schema);
        for (const auto& b : builtin_queries()) {
            auto q = compile_query(parse_formula(b.text, *schema));
            auto e = make_engine(q, EngineKind::Det, schema);
            for (const auto& ev : s.events()) e->step(ev);
            const auto st = e->stats();
            INFO(b.id);
            CHECK(st.dag_nodes + st.dag_cells <= 2 * s.size() * st.automaton_states + 2);
        }
    }

    TEST_CASE("enumeration gaps stay bounded") {
        auto schema = letters_schema();
        auto q = compile_query(parse_formula("A AS x ; B AS y ; C AS z ; D AS w", *schema));
        BenchConfig cfg;
        cfg.query = "Q2";
        cfg.length = 300;
        const Stream s = gen_stream(cfg, schema);
        auto e = make_engine(q, EngineKind::Auto, schema);
        EnumStats stats;
        for (const auto& ev : s.events()) {
            e->step(ev);
            e->enumerate([](std::span<const std::size_t>) {}, &stats);
        }
        CHECK(stats.outputs == count_sequence_matches(std::vector<RelationId>{0, 1, 2, 3}, s));
        CHECK(stats.outputs > 1000);
        CHECK(stats.max_gap_overhead <= 8);
    }
}
