// SPDX-License-Identifier: Apache-2.0
#include "cep/oracle.hpp"

#include <array>
#include <functional>
#include <bit>
#include <map>
#include <unordered_set>

#include "cep/analysis.hpp"
#include "cep/error.hpp"

namespace cep {

namespace {

constexpr std::size_t kMaxVars = 24;
constexpr std::size_t kMaxLength = 64;

// A complex event together with the valuation fragment that witnesses it. An
// unassigned slot (-1) means the row holds for every value of that variable.
struct Row {
    std::uint64_t mask = 0;
    std::array<std::int8_t, kMaxVars> val{};

    Row() { val.fill(-1); }
    friend bool operator==(const Row&, const Row&) = default;
};

struct RowHash {
    std::size_t operator()(const Row& r) const {
        std::size_t h = std::hash<std::uint64_t>{}(r.mask);
        for (auto v : r.val) h = h * 131 + static_cast<std::size_t>(v + 1);
        return h;
    }
};

using Rows = std::unordered_set<Row, RowHash>;

class Evaluator {
public:
    Evaluator(const Stream& s, const VarSet& vars) : s_(s) {
        if (vars.size() > kMaxVars) throw Error("oracle supports at most 24 variables");
        if (s.size() > kMaxLength) throw Error("oracle supports streams of at most 64 events");
        std::size_t i = 0;
        for (const auto& v : vars) index_[v] = i++;
    }

    Rows eval(const Formula& f) {
        using K = Formula::Kind;
        switch (f.kind()) {
        case K::Assign: return assign(f);
        case K::Filter: return filter(eval(f.body()), f.predicate());
        case K::Or: {
            Rows out = eval(f.lhs());
            Rows rhs = eval(f.rhs());
            out.insert(rhs.begin(), rhs.end());
            return out;
        }
        case K::Seq: {
            Rows out;
            join(eval(f.lhs()), eval(f.rhs()), {}, out);
            return out;
        }
        case K::Plus: return plus(f.body());
        case K::Unsat: return {};
        case K::Select: throw CompileError("nested selection strategies are not supported");
        }
        return {};
    }

private:
    Rows assign(const Formula& f) {
        Rows out;
        const std::size_t x = index_.at(f.var());
        for (std::size_t i = 0; i < s_.size(); ++i) {
            if (s_[i].type != f.relation()) continue;
            Row r;
            r.mask = std::uint64_t{1} << i;
            r.val[x] = static_cast<std::int8_t>(i);
            out.insert(r);
        }
        return out;
    }

    Rows filter(const Rows& in, const Predicate& p) {
        std::vector<std::size_t> slots;
        for (const auto& v : p.vars()) slots.push_back(index_.at(v));
        Rows out;
        for (const Row& r : in) {
            std::vector<std::size_t> free;
            for (auto slot : slots) {
                if (r.val[slot] < 0) free.push_back(slot);
            }
            Row cur = r;
            std::function<void(std::size_t)> choose = [&](std::size_t k) {
                if (k == free.size()) {
                    auto lookup = [&](const std::string& v) -> const Event* {
                        auto pos = cur.val[index_.at(v)];
                        return pos < 0 ? nullptr : &s_[static_cast<std::size_t>(pos)];
                    };
                    if (p.eval(lookup, s_.schema())) out.insert(cur);
                    return;
                }
                for (std::size_t i = 0; i < s_.size(); ++i) {
                    cur.val[free[k]] = static_cast<std::int8_t>(i);
                    choose(k + 1);
                }
                cur.val[free[k]] = -1;
            };
            choose(0);
        }
        return out;
    }

    // Concatenates compatible rows; slots listed in `drop` are cleared in the
    // left row first (they are existentially quantified away).
    static void join(const Rows& left, const Rows& right, const std::vector<std::size_t>& drop, Rows& out) {
        for (const Row& a : left) {
            const int a_max = 63 - std::countl_zero(a.mask);
            Row la = a;
            for (auto d : drop) la.val[d] = -1;
            for (const Row& b : right) {
                if (std::countr_zero(b.mask) <= a_max) continue;
                Row merged = la;
                merged.mask |= b.mask;
                bool ok = true;
                for (std::size_t i = 0; i < kMaxVars && ok; ++i) {
                    if (b.val[i] < 0) continue;
                    if (merged.val[i] >= 0 && merged.val[i] != b.val[i]) ok = false;
                    merged.val[i] = b.val[i];
                }
                if (ok) out.insert(merged);
            }
        }
    }

    Rows plus(const Formula& body) {
        std::vector<std::size_t> fresh;
        for (const auto& v : plus_free_defined_vars(body)) fresh.push_back(index_.at(v));
        const Rows once = eval(body);
        Rows all;
        for (Row r : once) {
            for (auto d : fresh) r.val[d] = -1;
            all.insert(r);
        }
        Rows delta = all;
        while (!delta.empty()) {
            Rows next;
            join(once, delta, fresh, next);
            Rows added;
            for (const Row& r : next) {
                if (all.insert(r).second) added.insert(r);
            }
            delta = std::move(added);
        }
        return all;
    }

    const Stream& s_;
    std::map<std::string, std::size_t> index_;
};

} // namespace

ComplexEventSet oracle_eval(const Formula& f, const Stream& s) {
    auto split = split_selection(f);
    auto report = analyze(split.core);
    if (!report.well_formed) throw NotWellFormedError(report.issues.front());
    Evaluator ev(s, report.var_all);
    ComplexEventSet out;
    for (const Row& r : ev.eval(split.core)) {
        std::vector<std::size_t> positions;
        for (std::uint64_t m = r.mask; m; m &= m - 1) positions.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        out.insert(ComplexEvent(std::move(positions)));
    }
    for (Strategy st : split.strategies) out = apply_selection(st, out);
    return out;
}

OutputLog oracle_log(const Formula& f, const Stream& s) {
    OutputLog log;
    for (const auto& c : oracle_eval(f, s)) log[c.max()].push_back(c);
    return log;
}

} // namespace cep
