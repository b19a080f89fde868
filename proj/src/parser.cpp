// SPDX-License-Identifier: Apache-2.0
#include "cep/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "cep/error.hpp"

namespace cep {

namespace {

enum class Tok {
    Ident, Int, Float, String, LParen, RParen, LBracket, RBracket, Semi, Plus, Dot,
    Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::vector<Token> lex(std::string_view src) {
    static const std::pair<std::string_view, Tok> symbols[] = {
        {"\xE2\x88\xA7", Tok::And}, {"\xE2\x88\xA8", Tok::Or}, {"\xC2\xAC", Tok::Not},
        {"\xE2\x89\xA4", Tok::Le},  {"\xE2\x89\xA5", Tok::Ge}, {"\xE2\x89\xA0", Tok::Ne},
        {"&&", Tok::And}, {"||", Tok::Or}, {"!=", Tok::Ne}, {"<>", Tok::Ne}, {"<=", Tok::Le},
        {">=", Tok::Ge}, {"==", Tok::Eq}, {"=", Tok::Eq}, {"<", Tok::Lt}, {">", Tok::Gt},
        {"!", Tok::Not}, {"(", Tok::LParen}, {")", Tok::RParen}, {"[", Tok::LBracket},
        {"]", Tok::RBracket}, {";", Tok::Semi}, {"+", Tok::Plus}, {".", Tok::Dot},
    };
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '#' || (c == '-' && i + 1 < src.size() && src[i + 1] == '-')) {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isalpha(c) || c == '_') {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
            continue;
        }
        if (std::isdigit(c) || (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            ++i;
            bool is_float = false;
            while (i < src.size()) {
                const char d = src[i];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    ++i;
                } else if (d == '.' && !is_float) {
                    is_float = true;
                    ++i;
                } else if ((d == 'e' || d == 'E') && i + 1 < src.size()) {
                    is_float = true;
                    ++i;
                    if (src[i] == '+' || src[i] == '-') ++i;
                } else {
                    break;
                }
            }
            out.push_back({is_float ? Tok::Float : Tok::Int, std::string(src.substr(start, i - start)), start});
            continue;
        }
        if (c == '"') {
            std::string text;
            ++i;
            while (i < src.size() && src[i] != '"') {
                if (src[i] == '\\' && i + 1 < src.size()) ++i;
                text += src[i++];
            }
            if (i >= src.size()) throw ParseError(start, "unterminated string literal");
            ++i;
            out.push_back({Tok::String, std::move(text), start});
            continue;
        }
        bool matched = false;
        for (const auto& [sym, kind] : symbols) {
            if (src.substr(i, sym.size()) == sym) {
                out.push_back({kind, std::string(sym), start});
                i += sym.size();
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(start, "unexpected character '" + std::string(1, src[i]) + "'");
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const Schema& schema) : toks_(lex(text)), schema_(schema) {}

    Formula formula() {
        if (peek().kind == Tok::End) throw ParseError(peek().offset, "empty query");
        Formula f = or_expr();
        expect(Tok::End, "end of query");
        return f;
    }

    Predicate predicate_only() {
        Predicate p = or_pred();
        expect(Tok::End, "end of predicate");
        return p;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool keyword(std::string_view kw, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && upper(peek(k).text) == kw;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw ParseError(t.offset, what + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"));
    }
    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what);
        return advance();
    }
    std::string identifier(const std::string& what) {
        if (peek().kind != Tok::Ident || is_reserved(peek().text)) fail("expected " + what);
        return advance().text;
    }
    static bool is_reserved(std::string_view word) {
        static const char* reserved[] = {"AS", "FILTER", "OR", "AND", "NOT", "TRUE", "FALSE", "UNSAT"};
        const std::string u = upper(word);
        for (const char* r : reserved) {
            if (u == r) return true;
        }
        return false;
    }

    Formula or_expr() {
        Formula f = seq_expr();
        while (keyword("OR")) {
            advance();
            f = Formula::disj(f, seq_expr());
        }
        return f;
    }

    Formula seq_expr() {
        Formula f = postfix();
        while (peek().kind == Tok::Semi) {
            advance();
            f = Formula::seq(f, postfix());
        }
        return f;
    }

    Formula postfix() {
        Formula f = primary();
        for (;;) {
            if (keyword("FILTER")) {
                advance();
                f = Formula::filter(f, filter_predicate());
            } else if (peek().kind == Tok::Plus) {
                advance();
                f = Formula::plus(f);
            } else {
                return f;
            }
        }
    }

    Formula primary() {
        const Token& t = peek();
        if (t.kind == Tok::LParen || t.kind == Tok::LBracket) {
            const Tok close = t.kind == Tok::LParen ? Tok::RParen : Tok::RBracket;
            advance();
            Formula f = or_expr();
            expect(close, close == Tok::RParen ? "')'" : "']'");
            return f;
        }
        if (keyword("UNSAT")) {
            advance();
            return Formula::unsat();
        }
        if (t.kind == Tok::Ident && peek(1).kind == Tok::LParen) {
            auto strategy = parse_strategy(t.text);
            if (!strategy || *strategy == Strategy::None)
                throw ParseError(t.offset, "unknown selection strategy '" + t.text + "'");
            advance();
            advance();
            Formula body = or_expr();
            expect(Tok::RParen, "')'");
            return Formula::select(*strategy, body);
        }
        if (t.kind == Tok::Ident && !is_reserved(t.text)) {
            const Token rel = advance();
            auto id = schema_.find(rel.text);
            if (!id) throw ParseError(rel.offset, "unknown relation '" + rel.text + "'");
            if (!keyword("AS")) fail("expected AS");
            advance();
            std::string var = identifier("variable name");
            return Formula::assign(*id, rel.text, std::move(var));
        }
        fail("expected a formula");
    }

    // A parenthesized predicate, or an unparenthesized conjunction of literals.
    Predicate filter_predicate() {
        if (peek().kind == Tok::LParen) {
            advance();
            Predicate p = or_pred();
            expect(Tok::RParen, "')'");
            return p;
        }
        Predicate p = not_pred();
        while (peek().kind == Tok::And || keyword("AND")) {
            advance();
            p = Predicate::conj(p, not_pred());
        }
        return p;
    }

    Predicate or_pred() {
        Predicate p = and_pred();
        while (peek().kind == Tok::Or || keyword("OR")) {
            advance();
            p = Predicate::disj(p, and_pred());
        }
        return p;
    }

    Predicate and_pred() {
        Predicate p = not_pred();
        while (peek().kind == Tok::And || keyword("AND")) {
            advance();
            p = Predicate::conj(p, not_pred());
        }
        return p;
    }

    Predicate not_pred() {
        if (peek().kind == Tok::Not || keyword("NOT")) {
            advance();
            return Predicate::negation(not_pred());
        }
        if (peek().kind == Tok::LParen) {
            advance();
            Predicate p = or_pred();
            expect(Tok::RParen, "')'");
            return p;
        }
        if (keyword("TRUE")) {
            advance();
            return Predicate::truth();
        }
        if (keyword("FALSE")) {
            advance();
            return Predicate::falsity();
        }
        return atom();
    }

    struct Operand {
        std::optional<AttrRef> ref;
        Value constant;
        std::size_t offset;
    };

    Operand operand() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Int: {
            std::int64_t v{};
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc{}) fail("integer literal out of range");
            advance();
            return {std::nullopt, Value(v), t.offset};
        }
        case Tok::Float: {
            double v = std::strtod(t.text.c_str(), nullptr);
            advance();
            return {std::nullopt, Value(v), t.offset};
        }
        case Tok::String: {
            Operand o{std::nullopt, Value(t.text), t.offset};
            advance();
            return o;
        }
        case Tok::Ident: {
            if (keyword("TRUE") || keyword("FALSE")) {
                bool v = keyword("TRUE");
                std::size_t off = t.offset;
                advance();
                return {std::nullopt, Value(v), off};
            }
            std::size_t off = t.offset;
            std::string var = identifier("variable");
            expect(Tok::Dot, "'.'");
            const Token& attr = expect(Tok::Ident, "attribute name");
            if (!schema_.has_attribute(attr.text))
                throw ParseError(attr.offset, "unknown attribute '" + attr.text + "'");
            return {AttrRef{std::move(var), attr.text}, {}, off};
        }
        default: fail("expected an attribute reference or a constant");
        }
    }

    CompareOp compare_op() {
        switch (advance().kind) {
        case Tok::Eq: return CompareOp::Eq;
        case Tok::Ne: return CompareOp::Ne;
        case Tok::Lt: return CompareOp::Lt;
        case Tok::Le: return CompareOp::Le;
        case Tok::Gt: return CompareOp::Gt;
        case Tok::Ge: return CompareOp::Ge;
        default: --pos_; fail("expected a comparison operator");
        }
    }

    static CompareOp mirror(CompareOp op) {
        switch (op) {
        case CompareOp::Lt: return CompareOp::Gt;
        case CompareOp::Le: return CompareOp::Ge;
        case CompareOp::Gt: return CompareOp::Lt;
        case CompareOp::Ge: return CompareOp::Le;
        default: return op;
        }
    }

    void check_kind(const AttrRef& ref, const Value& constant, std::size_t offset) const {
        for (const auto& rel : schema_.relations()) {
            auto idx = rel.attribute_index(ref.attr);
            if (idx && same_class(rel.attributes[*idx].kind, constant.kind())) return;
        }
        throw ParseError(offset, "constant " + constant.literal() + " cannot be compared with attribute '" +
                                     ref.attr + "'");
    }

    Predicate atom() {
        if (keyword("TYPE") && peek(1).kind == Tok::LParen) {
            advance();
            advance();
            std::string var = identifier("variable");
            expect(Tok::RParen, "')'");
            expect(Tok::Eq, "'='");
            const Token& rel = expect(Tok::Ident, "relation name");
            auto id = schema_.find(rel.text);
            if (!id) throw ParseError(rel.offset, "unknown relation '" + rel.text + "'");
            return Predicate::type_is(std::move(var), *id, rel.text);
        }
        Operand lhs = operand();
        CompareOp op = compare_op();
        Operand rhs = operand();
        if (lhs.ref && rhs.ref) return Predicate::compare(*lhs.ref, op, *rhs.ref);
        if (lhs.ref) {
            check_kind(*lhs.ref, rhs.constant, rhs.offset);
            return Predicate::compare(*lhs.ref, op, rhs.constant);
        }
        if (rhs.ref) {
            check_kind(*rhs.ref, lhs.constant, lhs.offset);
            return Predicate::compare(*rhs.ref, mirror(op), lhs.constant);
        }
        throw ParseError(lhs.offset, "comparison needs at least one attribute reference");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Schema& schema_;
};

} // namespace

Formula parse_formula(std::string_view text, const Schema& schema) { return Parser(text, schema).formula(); }

Predicate parse_predicate(std::string_view text, const Schema& schema) {
    return Parser(text, schema).predicate_only();
}

} // namespace cep
