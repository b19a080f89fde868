// SPDX-License-Identifier: Apache-2.0
// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cep/bench.hpp"
#include "cep/oracle.hpp"
#include "cep/parser.hpp"
#include "cep/rewriter.hpp"
#include "cep/runtime/engines.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace cep;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::shared_ptr<const Schema> letters_schema() { return std::make_shared<const Schema>(load_schema(benchmark_schema_text())); }

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

// Per-event step latencies in nanoseconds, no enumeration.
std::vector<double> step_latencies(Engine& e, const Stream& s) {
    std::vector<double> ns(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto t0 = Clock::now();
        e.step(s[i]);
        ns[i] = std::chrono::duration<double, std::nano>(Clock::now() - t0).count();
    }
    return ns;
}

std::pair<double, double> first_last_decile_medians(const std::vector<double>& ns) {
    const std::size_t d = ns.size() / 10;
    return {median({ns.begin(), ns.begin() + static_cast<std::ptrdiff_t>(d)}),
            median({ns.end() - static_cast<std::ptrdiff_t>(d), ns.end()})};
}

Outcome running_example() {
    const auto t0 = Clock::now();
    auto schema = fixture::sensor_schema();
    const Stream s = fixture::sensor_stream();
    auto eval = [&](const std::string& text) {
        auto q = compile_query(parse_formula(text, *schema));
        auto e = make_engine(q, EngineKind::Auto, schema);
        return run_query(*e, s);
    };
    auto group = [](const OutputLog& log, std::size_t pos) {
        auto it = log.find(pos);
        return it == log.end() ? ComplexEventSet{} : ComplexEventSet(it->second.begin(), it->second.end());
    };
    const std::string p1 = fixture::kPhi1, p3 = fixture::kPhi3;
    int bad = 0;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            std::printf("  mismatch: %s\n", what);
            ++bad;
        }
    };
    expect(flatten(eval(p1)) == ComplexEventSet{{1, 2}, {1, 8}, {5, 8}}, "phi1");
    expect(flatten(eval(fixture::kPhi2)) == ComplexEventSet{{1, 2}, {1, 8}, {5, 8}, {2, 5}}, "phi2");
    expect(flatten(eval(p3)) == ComplexEventSet{{3, 4, 6, 7}, {3, 6, 7}, {3, 4, 7}}, "phi3");
    expect(flatten(eval("STRICT(" + p1 + ")")) == ComplexEventSet{{1, 2}}, "strict(phi1)");
    expect(group(eval("NXT(" + p1 + ")"), 8) == ComplexEventSet{{1, 8}}, "nxt(phi1) at 8");
    expect(group(eval("LAST(" + p1 + ")"), 8) == ComplexEventSet{{5, 8}}, "last(phi1) at 8");
    expect(flatten(eval("MAX(" + p3 + ")")) == ComplexEventSet{{3, 4, 6, 7}}, "max(phi3)");
    const double t = seconds_since(t0);
    return {bad == 0 && t < 1.0, fmt("7 checks, %d mismatches, %.3f s", bad, t)};
}

Outcome oracle_equivalence() {
    const auto t0 = Clock::now();
    gen::Rng rng(1001);
    auto schema = gen::small_schema();
    const Strategy strategies[] = {Strategy::None, Strategy::Strict, Strategy::Next, Strategy::Last, Strategy::Max};
    const EngineKind kinds[] = {EngineKind::Auto, EngineKind::Det, EngineKind::NDet, EngineKind::Naive};
    std::size_t mismatches = 0, comparisons = 0, nonempty = 0;
    for (int i = 0; i < 1000; ++i) {
        const Formula f = gen::random_formula(rng, *schema, 4);
        const Stream s = gen::random_stream(rng, schema, 8);
        const auto q = compile_query(f);
        const auto all = oracle_eval(f, s);
        nonempty += !all.empty();
        for (Strategy st : strategies) {
            const auto expected = apply_selection(st, all);
            std::vector<Strategy> wrap;
            if (st != Strategy::None) wrap.push_back(st);
            for (EngineKind k : kinds) {
                auto e = make_engine(q.automaton, wrap, k, schema);
                ++comparisons;
                if (flatten(run_query(*e, s)) != expected) {
                    ++mismatches;
                    std::printf("  mismatch: %s %s engine=%s\n", std::string(to_string(st)).c_str(), f.to_string().c_str(),
                                std::string(e->name()).c_str());
                }
            }
        }
    }
    const double t = seconds_since(t0);
    return {mismatches == 0 && t < 300,
            fmt("1000 instances, %zu comparisons, %zu nonempty, %zu mismatches, %.1f s", comparisons, nonempty,
                mismatches, t)};
}

Outcome rewriting_soundness() {
    gen::Rng rng(1002);
    auto schema = gen::small_schema();
    std::size_t bad = 0;
    for (int i = 0; i < 500; ++i) {
        const Formula f = gen::random_formula(rng, *schema, 4);
        const Stream s = gen::random_stream(rng, schema, 8);
        const auto expected = oracle_eval(f, s);
        const Formula dnf = to_dnf(f);
        const Formula safe = to_safe(rename_apart(f));
        const Formula lp = to_lp_normal_form(safe);
        const bool ok = oracle_eval(dnf, s) == expected && oracle_eval(safe, s) == expected &&
                        oracle_eval(lp, s) == expected && analyze(safe).safe && analyze(lp).safe &&
                        is_lp_normal_form(lp);
        if (!ok) {
            ++bad;
            std::printf("  mismatch: %s\n", f.to_string().c_str());
        }
    }
    return {bad == 0, fmt("500 instances, %zu mismatches", bad)};
}

Outcome order_axioms() {
    gen::Rng rng(1003);
    std::size_t violations = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
        const auto a = gen::random_complex_event(rng, 12, 6);
        const auto b = gen::random_complex_event(rng, 12, 6);
        const auto c = gen::random_complex_event(rng, 12, 6);
        for (auto leq : {&leq_next, &leq_last}) {
            if (!leq(a, a)) ++violations;
            if (!leq(a, b) && !leq(b, a)) ++violations;
            if (leq(a, b) && leq(b, a) && a != b) ++violations;
            if (leq(a, b) && leq(b, c) && !leq(a, c)) ++violations;
        }
    }
    return {violations == 0, fmt("%d triples for both orders, %zu violations", samples, violations)};
}

Outcome constant_update_time() {
    auto schema = letters_schema();
    const auto* q2 = find_builtin_query("Q2");
    const auto q = compile_query(parse_formula(q2->text, *schema));
    BenchConfig cfg;
    cfg.query = "Q2";
    cfg.length = 100000;
    const Stream s = gen_stream(cfg, schema);

    auto engine = make_engine(q, EngineKind::Auto, schema);
    step_latencies(*engine, s);
    engine->reset();
    const auto [first, last] = first_last_decile_medians(step_latencies(*engine, s));
    const bool flat = last <= 2 * first;

    // Naive baseline on a prefix of the same stream.
    const std::size_t prefix = 600;
    std::vector<Event> head(s.events().begin(), s.events().begin() + prefix);
    const Stream p(schema, std::move(head));
    NaiveEngine naive(trim(q.automaton), schema);
    const auto [nfirst, nlast] = first_last_decile_medians(step_latencies(naive, p));
    const double growth = nlast / std::max(nfirst, 1.0);
    const bool diverges = growth > 10;
    return {flat && diverges,
            fmt("engine median first/last decile %.0f/%.0f ns (ratio %.2f); naive on %zu events %.0f/%.0f ns "
                "(ratio %.1f, %zu runs)",
                first, last, last / first, prefix, nfirst, nlast, growth, naive.run_count())};
}

Outcome memory_linearity() {
    auto schema = letters_schema();
    const double c = 2.0;
    const std::size_t n = 100000;
    bool ok = true;
    std::string detail = fmt("c = %.1f;", c);
    for (const auto& b : builtin_queries()) {
        const auto q = compile_query(parse_formula(b.text, *schema));
        BenchConfig cfg;
        cfg.query = std::string(b.id);
        cfg.length = n;
        const Stream s = gen_stream(cfg, schema);
        auto e = make_engine(q, EngineKind::Auto, schema);
        std::size_t tenth_nodes = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            e->step(s[i]);
            if (i + 1 == n / 10) tenth_nodes = e->stats().dag_nodes;
        }
        const auto st = e->stats();
        const double ratio = static_cast<double>(st.dag_nodes) / static_cast<double>(n * st.automaton_states);
        const bool within = static_cast<double>(st.dag_nodes) <= c * static_cast<double>(n * st.automaton_states);
        ok = ok && within;
        detail += fmt(" %s nodes=%zu (n/10: %zu) |A|=%zu nodes/(n|A|)=%.3f;", std::string(b.id).c_str(), st.dag_nodes,
                      tenth_nodes, st.automaton_states, ratio);
    }
    detail.pop_back();
    return {ok, detail};
}

Outcome constant_delay() {
    auto schema = letters_schema();
    const auto q = compile_query(parse_formula(find_builtin_query("Q2")->text, *schema));
    BenchConfig cfg;
    cfg.query = "Q2";
    cfg.length = 1000;
    const Stream s = gen_stream(cfg, schema);
    auto e = make_engine(q, EngineKind::Auto, schema);
    EnumStats stats;
    for (const auto& ev : s.events()) {
        e->step(ev);
        e->enumerate([](std::span<const std::size_t>) {}, &stats);
    }
    const std::uint64_t bound = 8;
    return {stats.outputs >= 1000000 && stats.max_gap_overhead <= bound,
            fmt("%llu outputs, %llu stack/link ops, max ops between outputs beyond the output itself %llu (bound %llu)",
                static_cast<unsigned long long>(stats.outputs), static_cast<unsigned long long>(stats.ops),
                static_cast<unsigned long long>(stats.max_gap_overhead), static_cast<unsigned long long>(bound))};
}

Outcome stress_counts() {
    auto schema = letters_schema();
    bool ok = true;
    std::string detail;
    const std::pair<const char*, double> targets[] = {{"Q1", 2e5}, {"Q2", 2e7}};
    for (auto [id, reference] : targets) {
        BenchConfig cfg;
        cfg.query = id;
        cfg.length = 2000;
        const auto q = compile_query(parse_formula(find_builtin_query(id)->text, *schema));
        const Stream s = gen_stream(cfg, schema);
        std::vector<RelationId> pattern;
        for (char ch : std::string(id == std::string("Q1") ? "ABC" : "ABCD")) pattern.push_back(*schema->find(std::string(1, ch)));
        const std::uint64_t expected = count_sequence_matches(pattern, s);
        const BenchReport r = run_bench(cfg, q, s);
        const double magnitude = std::abs(std::log10(static_cast<double>(r.output_count) / reference));
        const bool good = r.output_count == expected && magnitude <= 0.5 && r.enumeration_time_s < 60;
        ok = ok && good;
        detail += fmt("%s%s outputs=%llu counter=%llu log10 distance=%.2f enumeration %.2f s", detail.empty() ? "" : "; ",
                      id, static_cast<unsigned long long>(r.output_count), static_cast<unsigned long long>(expected),
                      magnitude, r.enumeration_time_s);
    }
    return {ok, detail};
}

Outcome io_determinization() {
    gen::Rng rng(1009);
    auto schema = gen::small_schema();
    std::size_t bad = 0;
    for (int i = 0; i < 200; ++i) {
        const Cea a = gen::random_cea(rng, *schema, 5, 3);
        const Cea d = io_determinize(a);
        bool ok = is_io_deterministic(d);
        for (int k = 0; k < 3 && ok; ++k) {
            const Stream s = gen::random_stream(rng, schema, 6);
            ok = enumerate_all_runs(a, s) == enumerate_all_runs(d, s);
        }
        bad += !ok;
    }
    return {bad == 0, fmt("200 automata, 3 streams each, %zu mismatches", bad)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> only;
    app.add_option("criteria", only, "criterion numbers to run (default: all)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"running example fidelity", running_example},
        {"oracle equivalence", oracle_equivalence},
        {"rewriting soundness", rewriting_soundness},
        {"order axioms", order_axioms},
        {"constant update time", constant_update_time},
        {"memory linearity", memory_linearity},
        {"constant-delay enumeration", constant_delay},
        {"stress output counts", stress_counts},
        {"io-determinization", io_determinization},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
