// SPDX-License-Identifier: Apache-2.0
// Command-line front end: compile, run and bench subcommands.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cep/bench.hpp"
#include "cep/error.hpp"
#include "cep/oracle.hpp"
#include "cep/parser.hpp"
#include "cep/pipeline.hpp"

namespace {

using namespace cep;

enum Exit : int { kOk = 0, kParse = 1, kNotWellFormed = 2, kNotUnary = 3, kFailure = 4 };

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::shared_ptr<const Schema> schema_from(const std::string& path) {
    return std::make_shared<const Schema>(load_schema(path.empty() ? std::string(benchmark_schema_text()) : read_file(path)));
}

Formula query_from(const std::string& arg, const Schema& schema) {
    if (const auto* q = find_builtin_query(arg)) return parse_formula(q->text, schema);
    return parse_formula(read_file(arg), schema);
}

Strategy strategy_from(const std::string& name) {
    auto s = parse_strategy(name);
    if (!s) throw Error("unknown strategy '" + name + "'");
    return *s;
}

struct CompileArgs {
    std::string query;
    std::string schema;
    std::string strategy = "none";
    std::string emit = "report";
    bool determinize = false;
};

// The automaton the runtime would be built from, with optional strategy and
// I/O-determinization applied.
Cea final_automaton(const CompiledQuery& q, Strategy extra, bool determinize) {
    Cea a = q.automaton;
    auto strategies = q.strategies;
    if (extra != Strategy::None) strategies.push_back(extra);
    for (Strategy s : strategies) a = trim(compile_selection(s, a));
    return determinize ? io_determinize(a) : a;
}

int cmd_compile(const CompileArgs& args) {
    auto schema = schema_from(args.schema);
    const Formula parsed = query_from(args.query, *schema);
    const Strategy extra = strategy_from(args.strategy);
    if (args.emit == "rewritten") {
        std::cout << rewrite_query(parsed).to_string() << '\n';
        return kOk;
    }
    const CompiledQuery q = compile_query(parsed);
    const Cea a = final_automaton(q, extra, args.determinize);
    if (args.emit == "dot") {
        std::cout << to_dot(a);
    } else if (args.emit == "stats") {
        nlohmann::ordered_json j = {
            {"formula_size", formula_size(q.core)},
            {"rewritten_size", formula_size(q.rewritten)},
            {"epsilon_states", q.thompson.automaton.state_count()},
            {"epsilon_transitions", q.thompson.epsilon.size()},
            {"core_states", q.automaton.state_count()},
            {"states", a.state_count()},
            {"transitions", a.transitions().size()},
            {"io_deterministic", is_io_deterministic(a)},
        };
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "query:       " << parsed.to_string() << '\n';
        std::vector<Strategy> shown = q.strategies;
        if (extra != Strategy::None) shown.push_back(extra);
        std::cout << "strategies:";
        if (shown.empty()) std::cout << " none";
        for (Strategy s : shown) std::cout << ' ' << to_string(s);
        std::cout << '\n';
        std::cout << std::boolalpha << "well-formed: " << q.analysis.well_formed << "  safe: " << q.analysis.safe
                  << "  unary: " << q.analysis.unary << '\n';
        for (const auto& issue : q.analysis.issues) std::cout << "issue:       " << issue << '\n';
        std::cout << "rewritten:   " << q.rewritten_query().to_string() << '\n';
        std::cout << "automaton:   " << a.state_count() << " states, " << a.transitions().size()
                  << " transitions, io-deterministic " << is_io_deterministic(a) << '\n';
    }
    return kOk;
}

struct RunArgs {
    std::string query;
    std::string schema;
    std::string stream = "-";
    std::string format;
    std::string strategy = "none";
    std::string engine = "auto";
    bool consumption_policy = false;
    bool trace = false;
};

void print_event(std::ostream& out, std::size_t n, std::span<const std::size_t> desc) {
    out << n << ": {";
    for (std::size_t i = desc.size(); i-- > 0;) out << desc[i] << (i ? "," : "");
    out << "}\n";
}

int cmd_run(const RunArgs& args) {
    auto schema = schema_from(args.schema);
    const Formula parsed = query_from(args.query, *schema);
    const Strategy extra = strategy_from(args.strategy);
    Stream stream = [&] {
        if (args.stream != "-") {
            if (args.format.empty()) return load_stream_file(args.stream, schema);
            std::ifstream in(args.stream);
            if (!in) throw Error("cannot open '" + args.stream + "'");
            return load_stream(in, schema, args.format == "csv" ? StreamFormat::Csv : StreamFormat::Jsonl);
        }
        return load_stream(std::cin, schema, args.format == "csv" ? StreamFormat::Csv : StreamFormat::Jsonl);
    }();

    if (args.engine == "oracle") {
        auto split = split_selection(parsed);
        if (extra != Strategy::None) split.strategies.push_back(extra);
        const OutputLog log = oracle_log(apply_wrappers(split.strategies, split.core), stream);
        for (const auto& [n, events] : log) {
            for (const auto& c : events) {
                std::vector<std::size_t> desc(c.positions().rbegin(), c.positions().rend());
                print_event(std::cout, n, desc);
            }
        }
        return kOk;
    }

    const CompiledQuery q = compile_query(parsed);
    auto strategies = q.strategies;
    if (extra != Strategy::None) strategies.push_back(extra);
    EngineKind kind = EngineKind::Auto;
    if (args.engine == "det") kind = EngineKind::Det;
    else if (args.engine == "ndet") kind = EngineKind::NDet;
    else if (args.engine == "naive") kind = EngineKind::Naive;
    else if (args.engine != "auto") throw Error("unknown engine '" + args.engine + "'");
    auto engine = make_engine(q.automaton, strategies, kind, schema);

    for (std::size_t i = 0; i < stream.size(); ++i) {
        engine->step(stream[i]);
        bool any = false;
        if (args.trace) {
            std::ostringstream line;
            engine->enumerate([&](std::span<const std::size_t> desc) {
                line << " #";
                for (auto p : desc) line << ' ' << p;
                any = true;
            });
            if (any) std::cout << i << ':' << line.str() << " #\n";
        } else {
            engine->enumerate([&](std::span<const std::size_t> desc) {
                print_event(std::cout, i, desc);
                any = true;
            });
        }
        if (any && args.consumption_policy) engine->reset();
    }
    return kOk;
}

struct BenchArgs {
    BenchConfig config;
    std::string dist = "uniform";
    std::string mode = "stress";
    std::string strategy = "none";
    std::string engine = "auto";
    bool consumption_policy = false;
};

int cmd_bench(BenchArgs args) {
    auto mode = parse_bench_mode(args.mode);
    if (!mode) throw Error("unknown mode '" + args.mode + "'");
    args.config.mode = args.consumption_policy ? BenchMode::Consumption : *mode;
    args.config.strategy = strategy_from(args.strategy);
    args.config.distribution = TypeDistribution::parse(args.dist);
    if (args.engine == "auto") args.config.engine = EngineKind::Auto;
    else if (args.engine == "det") args.config.engine = EngineKind::Det;
    else if (args.engine == "ndet") args.config.engine = EngineKind::NDet;
    else if (args.engine == "naive") args.config.engine = EngineKind::Naive;
    else throw Error("unknown engine '" + args.engine + "'");
    std::cout << run_bench(args.config).to_json().dump(2) << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complex event processing over streams with CEL queries"};
    app.require_subcommand(1);

    CompileArgs compile_args;
    auto* compile = app.add_subcommand("compile", "Rewrite and compile a query");
    compile->add_option("--query,-q", compile_args.query, "Query file or Q1..Q6")->required();
    compile->add_option("--schema,-s", compile_args.schema, "Schema file (default: benchmark schema)");
    compile->add_option("--strategy", compile_args.strategy, "none|strict|nxt|last|max");
    compile->add_option("--emit", compile_args.emit, "report|rewritten|dot|stats")
        ->check(CLI::IsMember({"report", "rewritten", "dot", "stats"}));
    compile->add_flag("--determinize", compile_args.determinize, "I/O-determinize the automaton");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Evaluate a query over a stream");
    run->add_option("--query,-q", run_args.query, "Query file or Q1..Q6")->required();
    run->add_option("--schema,-s", run_args.schema, "Schema file (default: benchmark schema)");
    run->add_option("--stream", run_args.stream, "Stream file, '-' for standard input");
    run->add_option("--format", run_args.format, "jsonl|csv (default: by file extension)")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    run->add_option("--strategy", run_args.strategy, "none|strict|nxt|last|max");
    run->add_option("--engine", run_args.engine, "auto|oracle|det|ndet|naive");
    run->add_flag("--consumption-policy", run_args.consumption_policy, "Reset after every output");
    run->add_flag("--trace", run_args.trace, "Print the raw '#'-framed enumeration");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Generate a stream and report metrics as JSON");
    bench->add_option("--query,-q", bench_args.config.query, "Q1..Q6 or a query file");
    bench->add_option("--schema,-s", bench_args.config.schema_path, "Schema file (default: benchmark schema)");
    bench->add_option("--len", bench_args.config.length, "Stream length");
    bench->add_option("--dist", bench_args.dist, "uniform|s2|A=w,B=w,...");
    bench->add_option("--mode", bench_args.mode, "stress|throughput|consumption");
    bench->add_option("--strategy", bench_args.strategy, "none|strict|nxt|last|max");
    bench->add_option("--engine", bench_args.engine, "auto|det|ndet|naive");
    bench->add_option("--seed", bench_args.config.seed, "Generator seed");
    bench->add_option("--trigger", bench_args.config.trigger, "Stress-mode trigger relation");
    bench->add_flag("--consumption-policy", bench_args.consumption_policy, "Same as --mode consumption");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kFailure;
    }

    try {
        if (*compile) return cmd_compile(compile_args);
        if (*run) return cmd_run(run_args);
        return cmd_bench(bench_args);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const SchemaError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const StreamError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const NotWellFormedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotWellFormed;
    } catch (const NotUnaryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotUnary;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
