// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cep/value.hpp"

namespace cep {

using RelationId = std::uint32_t;

struct Attribute {
    std::string name;
    ValueKind kind;
};

struct Relation {
    std::string name;
    std::vector<Attribute> attributes;

    std::optional<std::size_t> attribute_index(std::string_view attr) const;
};

class Schema {
public:
    explicit Schema(std::vector<Relation> relations);

    std::span<const Relation> relations() const { return relations_; }
    const Relation& relation(RelationId id) const { return relations_.at(id); }
    std::optional<RelationId> find(std::string_view name) const;
    std::size_t size() const { return relations_.size(); }
    // True when at least one relation declares `attr`.
    bool has_attribute(std::string_view attr) const;

    std::string to_string() const;

private:
    std::vector<Relation> relations_;
    std::unordered_map<std::string, RelationId> by_name_;
};

// Parses `Rel(attr:kind, ...)` entries separated by ';' or newlines.
Schema load_schema(std::string_view text);

// One event tuple: its relation and its attribute values in declaration order.
struct Event {
    RelationId type = 0;
    std::vector<Value> values;

    friend bool operator==(const Event&, const Event&) = default;
};

// Attribute lookup by name; null when the event's relation lacks it.
const Value* attribute(const Event& event, const Schema& schema, std::string_view attr);

Event make_event(const Schema& schema, std::string_view type,
                 std::initializer_list<std::pair<std::string_view, Value>> attrs);

std::string describe(const Event& event, const Schema& schema);

class Stream {
public:
    Stream(std::shared_ptr<const Schema> schema, std::vector<Event> events);

    const Schema& schema() const { return *schema_; }
    const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    const Event& operator[](std::size_t i) const { return events_[i]; }
    const Event& at(std::size_t i) const { return events_.at(i); }
    std::span<const Event> events() const { return events_; }

    Stream prefix(std::size_t len) const;

private:
    std::shared_ptr<const Schema> schema_;
    std::vector<Event> events_;
};

// Pull-based reader over a stream; yields (position, event) in order.
class StreamCursor {
public:
    explicit StreamCursor(const Stream& stream) : stream_(&stream) {}

    std::optional<std::pair<std::size_t, const Event*>> next() {
        if (pos_ >= stream_->size()) return std::nullopt;
        auto item = std::pair{pos_, &(*stream_)[pos_]};
        ++pos_;
        return item;
    }

private:
    const Stream* stream_;
    std::size_t pos_ = 0;
};

enum class StreamFormat { Jsonl, Csv };

Stream load_stream(std::istream& in, std::shared_ptr<const Schema> schema, StreamFormat format);
Stream load_stream_file(const std::string& path, std::shared_ptr<const Schema> schema);
void write_jsonl(std::ostream& out, const Stream& stream);

} // namespace cep
