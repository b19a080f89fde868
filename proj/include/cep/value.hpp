// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace cep {

enum class ValueKind : std::uint8_t { Int, Float, String, Bool };

std::string_view to_string(ValueKind kind);
std::optional<ValueKind> parse_value_kind(std::string_view name);

// Int and Float form one numeric class; comparisons across classes are undefined.
bool same_class(ValueKind a, ValueKind b);

class Value {
public:
    Value() : data_(std::int64_t{0}) {}
    Value(int v) : data_(std::int64_t{v}) {}
    Value(std::int64_t v) : data_(v) {}
    Value(double v) : data_(v) {}
    Value(bool v) : data_(v) {}
    Value(const char* v) : data_(std::string(v)) {}
    Value(std::string v) : data_(std::move(v)) {}

    ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
    bool is_numeric() const { return kind() == ValueKind::Int || kind() == ValueKind::Float; }

    std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
    double as_float() const { return std::get<double>(data_); }
    const std::string& as_string() const { return std::get<std::string>(data_); }
    bool as_bool() const { return std::get<bool>(data_); }
    double as_number() const { return kind() == ValueKind::Int ? static_cast<double>(as_int()) : as_float(); }

    // Literal form accepted by the query parser.
    std::string literal() const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    std::variant<std::int64_t, double, std::string, bool> data_;
};

// Ordering used by predicates: numeric values compare by magnitude; nullopt when
// the kinds are incomparable.
std::optional<std::partial_ordering> compare_values(const Value& a, const Value& b);

} // namespace cep
