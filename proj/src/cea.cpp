// SPDX-License-Identifier: Apache-2.0
#include "cep/cea.hpp"

#include <set>
#include <sstream>

#include "cep/analysis.hpp"
#include "cep/error.hpp"
#include "cep/rewriter.hpp"

namespace cep {

std::string_view to_string(Mark m) { return m == Mark::Take ? "●" : "○"; }

StateId Cea::add_state() {
    outgoing_.emplace_back();
    return static_cast<StateId>(outgoing_.size() - 1);
}

void Cea::add_states(std::size_t n) { outgoing_.resize(outgoing_.size() + n); }

void Cea::add_transition(StateId from, Predicate guard, Mark mark, StateId to) {
    if (from >= state_count() || to >= state_count()) throw Error("transition endpoint out of range");
    outgoing_[from].push_back(transitions_.size());
    transitions_.push_back({from, std::move(guard), mark, to});
}

void Cea::set_initial(StateId q) {
    if (q >= state_count()) throw Error("initial state out of range");
    if (!contains(initial_, q)) initial_.insert(std::upper_bound(initial_.begin(), initial_.end(), q), q);
}

void Cea::set_final(StateId q) {
    if (q >= state_count()) throw Error("final state out of range");
    if (!contains(final_, q)) final_.insert(std::upper_bound(final_.begin(), final_.end(), q), q);
}

std::vector<Predicate> Cea::guards() const {
    std::vector<Predicate> out;
    for (const auto& t : transitions_) out.push_back(t.guard);
    return out;
}

namespace {

using K = Formula::Kind;

struct Fragment {
    StateId init;
    StateId fin;
};

class CoreBuilder {
public:
    Fragment build(const Formula& f) {
        switch (f.kind()) {
        case K::Assign: return definition(f, Predicate::truth());
        case K::Filter:
            if (f.body().kind() != K::Assign) throw CompileError("compile_core: filter not attached to a definition");
            return definition(f.body(), f.predicate());
        case K::Or: {
            Fragment l = build(f.lhs()), r = build(f.rhs());
            Fragment out{out_.automaton.add_state(), out_.automaton.add_state()};
            epsilon(out.init, l.init);
            epsilon(out.init, r.init);
            epsilon(l.fin, out.fin);
            epsilon(r.fin, out.fin);
            return out;
        }
        case K::Seq: {
            Fragment l = build(f.lhs()), r = build(f.rhs());
            epsilon(l.fin, r.init);
            return {l.init, r.fin};
        }
        case K::Plus: {
            Fragment b = build(f.body());
            epsilon(b.fin, b.init);
            return b;
        }
        case K::Select: throw CompileError("compile_core: selection wrapper below the top level");
        case K::Unsat: throw CompileError("compile_core: nested UNSAT; run prune_unsat first");
        }
        throw CompileError("compile_core: unknown node");
    }

    EpsilonCea take() { return std::move(out_); }

private:
    Fragment definition(const Formula& assign, const Predicate& filter) {
        Fragment g{out_.automaton.add_state(), out_.automaton.add_state()};
        Predicate type = Predicate::type_is(assign.var(), assign.relation(), assign.relation_name());
        Predicate guard = filter.kind() == Predicate::Kind::True ? type : Predicate::conj(type, filter);
        out_.automaton.add_transition(g.init, Predicate::truth(), Mark::Skip, g.init);
        out_.automaton.add_transition(g.init, guard.with_var("x"), Mark::Take, g.fin);
        return g;
    }
    void epsilon(StateId from, StateId to) { out_.epsilon.emplace_back(from, to); }

    EpsilonCea out_;
};

} // namespace

EpsilonCea compile_core(const Formula& f) {
    if (f.kind() == K::Unsat) {
        EpsilonCea out;
        out.automaton.set_initial(out.automaton.add_state());
        return out;
    }
    auto report = analyze(f);
    if (!report.well_formed) throw CompileError("compile_core: formula is not well-formed");
    if (!report.safe) throw CompileError("compile_core: formula is not safe");
    if (!report.unary) throw CompileError("compile_core: formula has a non-unary filter");
    if (!is_lp_normal_form(f)) throw CompileError("compile_core: formula is not in LP-normal form");
    CoreBuilder builder;
    Fragment top = builder.build(f);
    EpsilonCea out = builder.take();
    out.automaton.set_initial(top.init);
    out.automaton.set_final(top.fin);
    return out;
}

Cea trim(const Cea& a) {
    const std::size_t n = a.state_count();
    std::vector<std::vector<StateId>> incoming(n);
    for (const auto& t : a.transitions()) incoming[t.to].push_back(t.from);
    auto sweep = [&](const StateSet& seeds, auto&& next) {
        std::vector<char> seen(n, 0);
        std::vector<StateId> work(seeds.begin(), seeds.end());
        for (StateId q : seeds) seen[q] = 1;
        while (!work.empty()) {
            StateId q = work.back();
            work.pop_back();
            next(q, [&](StateId r) {
                if (!seen[r]) {
                    seen[r] = 1;
                    work.push_back(r);
                }
            });
        }
        return seen;
    };
    auto fwd = sweep(a.initial(), [&](StateId q, auto&& visit) {
        for (auto i : a.outgoing(q)) visit(a.transition(i).to);
    });
    auto bwd = sweep(a.final_states(), [&](StateId q, auto&& visit) {
        for (StateId r : incoming[q]) visit(r);
    });
    std::vector<StateId> renum(n, static_cast<StateId>(-1));
    Cea out;
    for (StateId q = 0; q < n; ++q) {
        if (fwd[q] && bwd[q]) renum[q] = out.add_state();
    }
    if (out.state_count() == 0) {
        Cea empty;
        empty.set_initial(empty.add_state());
        return empty;
    }
    for (const auto& t : a.transitions()) {
        if (renum[t.from] != static_cast<StateId>(-1) && renum[t.to] != static_cast<StateId>(-1))
            out.add_transition(renum[t.from], t.guard, t.mark, renum[t.to]);
    }
    for (StateId q : a.initial()) {
        if (renum[q] != static_cast<StateId>(-1)) out.set_initial(renum[q]);
    }
    for (StateId q : a.final_states()) {
        if (renum[q] != static_cast<StateId>(-1)) out.set_final(renum[q]);
    }
    return out;
}

Cea remove_epsilon(const EpsilonCea& e) {
    if (e.epsilon.empty()) return e.automaton;
    const Cea& a = e.automaton;
    const std::size_t n = a.state_count();
    std::vector<std::vector<StateId>> eps(n);
    for (auto [p, q] : e.epsilon) eps[p].push_back(q);
    std::vector<StateSet> closure(n);
    for (StateId p = 0; p < n; ++p) {
        StateSet& c = closure[p];
        std::vector<StateId> work{p};
        c.push_back(p);
        while (!work.empty()) {
            StateId q = work.back();
            work.pop_back();
            for (StateId r : eps[q]) {
                if (std::find(c.begin(), c.end(), r) == c.end()) {
                    c.push_back(r);
                    work.push_back(r);
                }
            }
        }
        normalize(c);
    }
    Cea out(n);
    for (const auto& t : a.transitions()) {
        for (StateId q : closure[t.to]) {
            bool dup = false;
            for (auto i : out.outgoing(t.from)) {
                const auto& u = out.transition(i);
                dup = dup || (u.to == q && u.mark == t.mark && u.guard == t.guard);
            }
            if (!dup) out.add_transition(t.from, t.guard, t.mark, q);
        }
    }
    for (StateId i : a.initial()) {
        for (StateId q : closure[i]) out.set_initial(q);
    }
    for (StateId f : a.final_states()) out.set_final(f);
    return trim(out);
}

Cea single_final(const Cea& a) {
    Cea out(a.state_count());
    StateId fin = out.add_state();
    for (const auto& t : a.transitions()) {
        out.add_transition(t.from, t.guard, t.mark, t.to);
        if (t.mark == Mark::Take && a.is_final(t.to)) out.add_transition(t.from, t.guard, t.mark, fin);
    }
    for (StateId q : a.initial()) out.set_initial(q);
    out.set_final(fin);
    return out;
}

ComplexEventSet enumerate_runs(const Cea& a, const Stream& s, std::size_t n) {
    if (n >= 64) throw Error("enumerate_runs supports positions below 64");
    if (n >= s.size()) throw Error("enumerate_runs position beyond the stream");
    std::set<std::pair<StateId, std::uint64_t>> frontier;
    for (StateId q : a.initial()) frontier.insert({q, 0});
    ComplexEventSet out;
    for (std::size_t i = 0; i <= n && !frontier.empty(); ++i) {
        std::set<std::pair<StateId, std::uint64_t>> next;
        for (auto [q, mask] : frontier) {
            for (auto idx : a.outgoing(q)) {
                const auto& t = a.transition(idx);
                if (!t.guard.eval_unary(s[i], s.schema())) continue;
                std::uint64_t m = t.mark == Mark::Take ? mask | (std::uint64_t{1} << i) : mask;
                if (i < n) {
                    next.insert({t.to, m});
                } else if (t.mark == Mark::Take && a.is_final(t.to)) {
                    std::vector<std::size_t> pos;
                    for (std::size_t b = 0; b <= n; ++b) {
                        if (m >> b & 1) pos.push_back(b);
                    }
                    out.insert(ComplexEvent(std::move(pos)));
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

OutputLog enumerate_all_runs(const Cea& a, const Stream& s) {
    OutputLog log;
    for (std::size_t n = 0; n < s.size(); ++n) {
        auto found = enumerate_runs(a, s, n);
        if (!found.empty()) log[n].assign(found.begin(), found.end());
    }
    return log;
}

StateSet extended_delta(const Cea& a, const StateSet& from, Mark m, const Event& event, const Schema& schema) {
    StateSet out;
    for (StateId q : from) {
        for (auto idx : a.outgoing(q)) {
            const auto& t = a.transition(idx);
            if (t.mark == m && t.guard.eval_unary(event, schema)) out.push_back(t.to);
        }
    }
    normalize(out);
    return out;
}

SymbolicDelta::SymbolicDelta(const Cea& a) : a_(&a), partition_(minterm_partition(a.guards())) {
    guard_index_.reserve(a.transitions().size());
    for (const auto& t : a.transitions()) {
        std::size_t i = 0;
        while (!(partition_.base[i] == t.guard)) ++i;
        guard_index_.push_back(i);
    }
}

StateSet SymbolicDelta::operator()(const StateSet& from, std::size_t k, Mark m) const {
    const auto& implies = partition_.minterms[k].implies;
    StateSet out;
    for (StateId q : from) {
        for (auto idx : a_->outgoing(q)) {
            const auto& t = a_->transition(idx);
            if (t.mark == m && implies[guard_index_[idx]]) out.push_back(t.to);
        }
    }
    normalize(out);
    return out;
}

std::string to_dot(const Cea& a) {
    std::ostringstream out;
    out << "digraph cea {\n  rankdir=LR;\n";
    for (StateId q = 0; q < a.state_count(); ++q) {
        out << "  q" << q << " [label=\"" << q << "\", shape=" << (a.is_final(q) ? "doublecircle" : "circle") << "];\n";
    }
    for (StateId q : a.initial()) out << "  start" << q << " [shape=point];\n  start" << q << " -> q" << q << ";\n";
    for (const auto& t : a.transitions()) {
        std::string label = t.guard.to_string() + " | " + std::string(to_string(t.mark));
        std::string escaped;
        for (char c : label) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        out << "  q" << t.from << " -> q" << t.to << " [label=\"" << escaped << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::vector<StateSet> tpo(const std::vector<StateSet>& blocks) {
    std::vector<StateSet> out;
    StateSet seen;
    for (const auto& b : blocks) {
        StateSet fresh = set_difference(b, seen);
        if (fresh.empty()) continue;
        seen = set_union(seen, fresh);
        out.push_back(std::move(fresh));
    }
    return out;
}

} // namespace cep
