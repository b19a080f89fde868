// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "cep/cea.hpp"
#include "cep/error.hpp"
#include "cep/oracle.hpp"
#include "cep/rewriter.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace cep;
using fixture::sensor_query;

namespace {

Cea compile_text(const char* text) { return remove_epsilon(compile_core(to_lp_normal_form(to_safe(sensor_query(text))))); }

// All complex events ending at n.
std::size_t subsets_ending_at(std::size_t n) { return std::size_t{1} << n; }

} // namespace

TEST_SUITE("cea") {
    TEST_CASE("LP form of the first query compiles to a three-state automaton") {
        EpsilonCea e = compile_core(sensor_query(fixture::kPhi1Lp));
        CHECK(e.automaton.state_count() == 4);
        CHECK_FALSE(e.epsilon.empty());
        Cea a = remove_epsilon(e);
        CHECK(a.state_count() == 3);
        CHECK(is_io_deterministic(a));
        CHECK(flatten(enumerate_all_runs(a, fixture::sensor_stream())) == ComplexEventSet{{1, 2}, {1, 8}, {5, 8}});
    }

    TEST_CASE("compilation preconditions") {
        CHECK_THROWS_AS(compile_core(sensor_query("T AS x ; T AS x")), CompileError);
        CHECK_THROWS_AS(compile_core(sensor_query(fixture::kPhi1)), CompileError);
        CHECK_THROWS_AS(compile_core(sensor_query("(T AS x ; H AS y) FILTER x.id = y.id")), CompileError);
        CHECK_THROWS_AS(compile_core(sensor_query("NXT(T AS x)")), CompileError);
        Cea empty = remove_epsilon(compile_core(Formula::unsat()));
        CHECK(enumerate_all_runs(empty, fixture::sensor_stream()).empty());
    }

    TEST_CASE("running example automata match the reference semantics") {
        const Stream s = fixture::sensor_stream();
        for (const char* q : {fixture::kPhi1, fixture::kPhi2, fixture::kPhi3, fixture::kPhi6}) {
            INFO(q);
            CHECK(flatten(enumerate_all_runs(compile_text(q), s)) == oracle_eval(sensor_query(q), s));
        }
    }

    TEST_CASE("selection constructions on the running example") {
        const Stream s = fixture::sensor_stream();
        Cea a1 = compile_text(fixture::kPhi1);
        CHECK(flatten(enumerate_all_runs(compile_strict(a1), s)) == ComplexEventSet{{1, 2}});
        CHECK(flatten(enumerate_all_runs(compile_next(a1), s)) == ComplexEventSet{{1, 2}, {1, 8}});
        CHECK(flatten(enumerate_all_runs(compile_last(a1), s)) == ComplexEventSet{{1, 2}, {5, 8}});
        CHECK(flatten(enumerate_all_runs(compile_max(compile_text(fixture::kPhi3)), s)) ==
              ComplexEventSet{{3, 4, 6, 7}});
    }

    TEST_CASE("enumerate_runs bounds") {
        Cea a = compile_text(fixture::kPhi1);
        const Stream s = fixture::sensor_stream();
        CHECK_THROWS_AS(enumerate_runs(a, s, 9), Error);
        CHECK(enumerate_runs(a, s, 0).empty());
    }

    TEST_CASE("total preorder keeps first occurrences") {
        std::vector<StateSet> blocks{{1, 2}, {2, 3}, {1}, {4}};
        CHECK(tpo(blocks) == std::vector<StateSet>{{1, 2}, {3}, {4}});
        CHECK(tpo({}).empty());
    }

    TEST_CASE("minterm reasoning") {
        auto schema = fixture::sensor_schema();
        auto p = [&](const char* text) { return parse_predicate(text, *schema); };
        CHECK(provably_unsat({p("x.id = 0"), p("x.id = 1")}));
        CHECK(provably_unsat({p("x.tmp > 40"), p("x.tmp < 30")}));
        CHECK(provably_unsat({p("x.tmp > 40"), Predicate::negation(p("x.tmp > 30"))}));
        CHECK_FALSE(provably_unsat({p("x.tmp > 40"), p("x.tmp < 50")}));
        CHECK(provably_disjoint(Predicate::type_is("x", 0, "H"), Predicate::type_is("x", 1, "T")));
        auto part = minterm_partition({p("x.id = 0"), p("x.id = 1")});
        CHECK(part.minterms.size() == 3);
    }

    TEST_CASE("single final state") {
        gen::Rng rng(41);
        auto schema = gen::small_schema();
        for (int i = 0; i < 100; ++i) {
            Cea a = gen::random_cea(rng, *schema, 5, 3);
            Cea b = single_final(a);
            REQUIRE(b.final_states().size() == 1);
            CHECK(b.outgoing(b.final_states().front()).empty());
            Stream s = gen::random_stream(rng, schema, 6);
            CHECK(enumerate_all_runs(a, s) == enumerate_all_runs(b, s));
        }
    }

    TEST_CASE("property: every event satisfies exactly one minterm") {
        gen::Rng rng(42);
        auto schema = gen::small_schema();
        for (int i = 0; i < 200; ++i) {
            std::vector<Predicate> preds;
            for (int k = 0; k < 3; ++k) preds.push_back(gen::random_unary_predicate(rng, *schema, "x", 2));
            auto part = minterm_partition(preds);
            Stream s = gen::random_stream_exact(rng, schema, 6);
            for (std::size_t j = 0; j < s.size(); ++j) {
                std::size_t hits = 0;
                for (const auto& m : part.minterms) hits += m.predicate.eval_unary(s[j], *schema) ? 1 : 0;
                CHECK(hits == 1);
                const auto k = part.classify(s[j], *schema);
                REQUIRE(k != MintermPartition::npos);
                CHECK(part.minterms[k].predicate.eval_unary(s[j], *schema));
                for (std::size_t b = 0; b < part.base.size(); ++b) {
                    CHECK(part.minterms[k].implies[b] == part.base[b].eval_unary(s[j], *schema));
                }
            }
        }
    }

    TEST_CASE("property: symbolic and concrete transition functions agree") {
        gen::Rng rng(43);
        auto schema = gen::small_schema();
        for (int i = 0; i < 100; ++i) {
            Cea a = gen::random_cea(rng, *schema, 5, 3);
            SymbolicDelta delta(a);
            Stream s = gen::random_stream_exact(rng, schema, 5);
            StateSet all(a.state_count());
            for (StateId q = 0; q < a.state_count(); ++q) all[q] = q;
            for (const auto& e : s.events()) {
                const auto k = delta.partition().classify(e, *schema);
                REQUIRE(k != MintermPartition::npos);
                for (Mark m : {Mark::Take, Mark::Skip}) CHECK(delta(all, k, m) == extended_delta(a, all, m, e, *schema));
            }
        }
    }

    TEST_CASE("property: boolean operations") {
        gen::Rng rng(44);
        auto schema = gen::small_schema();
        for (int i = 0; i < 100; ++i) {
            Cea a = gen::random_cea(rng, *schema, 4, 2);
            Cea b = gen::random_cea(rng, *schema, 4, 2);
            Stream s = gen::random_stream_exact(rng, schema, 4);
            Cea u = union_of(a, b);
            Cea x = intersection_of(a, b);
            Cea c = complement_of(a);
            for (std::size_t n = 0; n < s.size(); ++n) {
                auto ra = enumerate_runs(a, s, n);
                auto rb = enumerate_runs(b, s, n);
                ComplexEventSet both, either = ra;
                either.insert(rb.begin(), rb.end());
                for (const auto& e : ra) {
                    if (rb.count(e)) both.insert(e);
                }
                CHECK(enumerate_runs(u, s, n) == either);
                CHECK(enumerate_runs(x, s, n) == both);
                auto rc = enumerate_runs(c, s, n);
                for (const auto& e : rc) CHECK(ra.count(e) == 0);
                CHECK(rc.size() + ra.size() == subsets_ending_at(n));
            }
        }
    }

    TEST_CASE("property: selection constructions filter outputs") {
        gen::Rng rng(45);
        auto schema = gen::small_schema();
        for (int i = 0; i < 150; ++i) {
            Cea a = gen::random_cea(rng, *schema, 4, 2);
            Stream s = gen::random_stream(rng, schema, 6);
            for (Strategy st : {Strategy::Strict, Strategy::Next, Strategy::Last, Strategy::Max}) {
                Cea sel = compile_selection(st, a);
                for (std::size_t n = 0; n < s.size(); ++n) {
                    INFO(to_string(st) << " n=" << n << "\n" << to_dot(a));
                    CHECK(enumerate_runs(sel, s, n) == apply_selection(st, enumerate_runs(a, s, n)));
                }
            }
        }
    }

    TEST_CASE("property: I/O-determinization") {
        gen::Rng rng(46);
        auto schema = gen::small_schema();
        for (int i = 0; i < 150; ++i) {
            Cea a = gen::random_cea(rng, *schema, 5, 3);
            Cea d = io_determinize(a);
            CHECK(is_io_deterministic(d));
            Stream s = gen::random_stream(rng, schema, 6);
            CHECK(enumerate_all_runs(d, s) == enumerate_all_runs(a, s));
        }
    }

    TEST_CASE("dot output lists states and marks") {
        std::string dot = to_dot(compile_text(fixture::kPhi1));
        CHECK(dot.find("digraph") != std::string::npos);
        CHECK(dot.find("●") != std::string::npos);
    }
}
