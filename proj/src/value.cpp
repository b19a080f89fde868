// SPDX-License-Identifier: Apache-2.0
#include "cep/value.hpp"

#include <charconv>
#include <cmath>

namespace cep {

std::string_view to_string(ValueKind kind) {
    switch (kind) {
    case ValueKind::Int: return "int";
    case ValueKind::Float: return "float";
    case ValueKind::String: return "string";
    case ValueKind::Bool: return "bool";
    }
    return "?";
}

std::optional<ValueKind> parse_value_kind(std::string_view name) {
    if (name == "int" || name == "integer") return ValueKind::Int;
    if (name == "float" || name == "double") return ValueKind::Float;
    if (name == "string" || name == "str") return ValueKind::String;
    if (name == "bool" || name == "boolean") return ValueKind::Bool;
    return std::nullopt;
}

bool same_class(ValueKind a, ValueKind b) {
    auto numeric = [](ValueKind k) { return k == ValueKind::Int || k == ValueKind::Float; };
    return a == b || (numeric(a) && numeric(b));
}

std::string Value::literal() const {
    switch (kind()) {
    case ValueKind::Int: return std::to_string(as_int());
    case ValueKind::Float: {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, as_float());
        std::string text(buf, end);
        if (std::isfinite(as_float()) && text.find_first_of(".e") == std::string::npos) text += ".0";
        return text;
    }
    case ValueKind::String: {
        std::string out = "\"";
        for (char c : as_string()) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    }
    case ValueKind::Bool: return as_bool() ? "true" : "false";
    }
    return {};
}

std::optional<std::partial_ordering> compare_values(const Value& a, const Value& b) {
    if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int) return a.as_int() <=> b.as_int();
    if (a.is_numeric() && b.is_numeric()) return a.as_number() <=> b.as_number();
    if (a.kind() != b.kind()) return std::nullopt;
    if (a.kind() == ValueKind::String) {
        int c = a.as_string().compare(b.as_string());
        return c < 0 ? std::partial_ordering::less
                     : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
    }
    return a.as_bool() <=> b.as_bool();
}

} // namespace cep
