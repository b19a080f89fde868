// SPDX-License-Identifier: Apache-2.0
#include "cep/event.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cep/error.hpp"

namespace cep {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Relation parse_relation(std::string_view entry) {
    auto open = entry.find('(');
    auto close = entry.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
        !trim(entry.substr(close + 1)).empty())
        throw SchemaError("malformed relation entry '" + std::string(entry) + "'");
    Relation rel{std::string(trim(entry.substr(0, open))), {}};
    if (!is_identifier(rel.name)) throw SchemaError("invalid relation name '" + rel.name + "'");
    std::string_view body = trim(entry.substr(open + 1, close - open - 1));
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view item = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : trim(body.substr(comma + 1));
        auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw SchemaError("attribute '" + std::string(item) + "' in " + rel.name + " lacks a kind");
        std::string name(trim(item.substr(0, colon)));
        std::string kind_name(trim(item.substr(colon + 1)));
        auto kind = parse_value_kind(kind_name);
        if (!kind) throw SchemaError("unknown value kind '" + kind_name + "' for " + rel.name + "." + name);
        if (!is_identifier(name)) throw SchemaError("invalid attribute name '" + name + "'");
        rel.attributes.push_back({std::move(name), *kind});
    }
    return rel;
}

Value parse_cell(std::string_view cell, ValueKind kind, std::size_t record, std::string_view attr) {
    auto fail = [&] {
        return StreamError(record, "value '" + std::string(cell) + "' is not a valid " +
                                       std::string(to_string(kind)) + " for '" + std::string(attr) + "'");
    };
    switch (kind) {
    case ValueKind::Int: {
        std::int64_t v{};
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size()) throw fail();
        return Value(v);
    }
    case ValueKind::Float: {
        std::string text(cell);
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size()) throw fail();
        return Value(v);
    }
    case ValueKind::Bool:
        if (cell == "true") return Value(true);
        if (cell == "false") return Value(false);
        throw fail();
    case ValueKind::String:
        if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
        return Value(std::string(cell));
    }
    throw fail();
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) {
            cells.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.emplace_back(trim(cur));
    return cells;
}

Value json_value(const nlohmann::json& j, ValueKind kind, std::size_t record, const std::string& attr) {
    auto fail = [&] {
        return StreamError(record, "attribute '" + attr + "' expects " + std::string(to_string(kind)) + ", got " +
                                       j.dump());
    };
    switch (kind) {
    case ValueKind::Int:
        if (!j.is_number_integer()) throw fail();
        return Value(j.get<std::int64_t>());
    case ValueKind::Float:
        if (!j.is_number()) throw fail();
        return Value(j.get<double>());
    case ValueKind::String:
        if (!j.is_string()) throw fail();
        return Value(j.get<std::string>());
    case ValueKind::Bool:
        if (!j.is_boolean()) throw fail();
        return Value(j.get<bool>());
    }
    throw fail();
}

Stream load_jsonl(std::istream& in, std::shared_ptr<const Schema> schema) {
    std::vector<Event> events;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::size_t record = events.size();
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw StreamError(record, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object() || !obj.contains("type") || !obj["type"].is_string())
            throw StreamError(record, "expected an object with a string 'type'");
        const auto type_name = obj["type"].get<std::string>();
        auto type = schema->find(type_name);
        if (!type) throw StreamError(record, "unknown type '" + type_name + "'");
        const Relation& rel = schema->relation(*type);
        Event ev{*type, {}};
        for (const auto& attr : rel.attributes) {
            auto it = obj.find(attr.name);
            if (it == obj.end()) throw StreamError(record, "missing attribute '" + attr.name + "'");
            ev.values.push_back(json_value(*it, attr.kind, record, attr.name));
        }
        for (const auto& [key, _] : obj.items()) {
            if (key != "type" && !rel.attribute_index(key))
                throw StreamError(record, "unexpected attribute '" + key + "' for " + rel.name);
        }
        events.push_back(std::move(ev));
    }
    return Stream(std::move(schema), std::move(events));
}

Stream load_csv(std::istream& in, std::shared_ptr<const Schema> schema) {
    std::vector<Event> events;
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        header = split_csv(line);
        break;
    }
    if (header.empty()) return Stream(std::move(schema), {});
    if (header[0] != "type") throw StreamError(0, "CSV header must start with 'type'");
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::size_t record = events.size();
        auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw StreamError(record, "expected " + std::to_string(header.size()) + " cells");
        auto type = schema->find(cells[0]);
        if (!type) throw StreamError(record, "unknown type '" + cells[0] + "'");
        const Relation& rel = schema->relation(*type);
        Event ev{*type, std::vector<Value>(rel.attributes.size())};
        std::vector<bool> seen(rel.attributes.size(), false);
        for (std::size_t c = 1; c < header.size(); ++c) {
            auto idx = rel.attribute_index(header[c]);
            if (!idx) {
                if (!cells[c].empty())
                    throw StreamError(record, "unexpected attribute '" + header[c] + "' for " + rel.name);
                continue;
            }
            if (cells[c].empty()) continue;
            ev.values[*idx] = parse_cell(cells[c], rel.attributes[*idx].kind, record, header[c]);
            seen[*idx] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (!seen[i]) throw StreamError(record, "missing attribute '" + rel.attributes[i].name + "'");
        }
        events.push_back(std::move(ev));
    }
    return Stream(std::move(schema), std::move(events));
}

} // namespace

std::optional<std::size_t> Relation::attribute_index(std::string_view attr) const {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (attributes[i].name == attr) return i;
    }
    return std::nullopt;
}

Schema::Schema(std::vector<Relation> relations) : relations_(std::move(relations)) {
    if (relations_.empty()) throw SchemaError("empty schema");
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        const auto& rel = relations_[i];
        if (!by_name_.emplace(rel.name, static_cast<RelationId>(i)).second)
            throw SchemaError("duplicate relation '" + rel.name + "'");
        std::set<std::string_view> names;
        for (const auto& attr : rel.attributes) {
            if (!names.insert(attr.name).second)
                throw SchemaError("duplicate attribute '" + attr.name + "' in " + rel.name);
        }
    }
}

std::optional<RelationId> Schema::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

bool Schema::has_attribute(std::string_view attr) const {
    return std::any_of(relations_.begin(), relations_.end(),
                       [&](const Relation& r) { return r.attribute_index(attr).has_value(); });
}

std::string Schema::to_string() const {
    std::string out;
    for (const auto& rel : relations_) {
        if (!out.empty()) out += "; ";
        out += rel.name + "(";
        for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
            if (i) out += ", ";
            out += rel.attributes[i].name + ":" + std::string(cep::to_string(rel.attributes[i].kind));
        }
        out += ")";
    }
    return out;
}

Schema load_schema(std::string_view text) {
    std::vector<Relation> relations;
    std::string entry;
    int depth = 0;
    auto flush = [&] {
        auto t = trim(entry);
        if (!t.empty()) relations.push_back(parse_relation(t));
        entry.clear();
    };
    bool comment = false;
    for (char c : text) {
        if (comment) {
            if (c == '\n') comment = false;
            else continue;
        }
        if (c == '#') {
            comment = true;
            continue;
        }
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == ';' || c == '\n') && depth == 0) {
            flush();
        } else {
            entry += c;
        }
    }
    flush();
    return Schema(std::move(relations));
}

const Value* attribute(const Event& event, const Schema& schema, std::string_view attr) {
    auto idx = schema.relation(event.type).attribute_index(attr);
    return idx ? &event.values[*idx] : nullptr;
}

Event make_event(const Schema& schema, std::string_view type,
                 std::initializer_list<std::pair<std::string_view, Value>> attrs) {
    auto id = schema.find(type);
    if (!id) throw SchemaError("unknown relation '" + std::string(type) + "'");
    const Relation& rel = schema.relation(*id);
    Event ev{*id, std::vector<Value>(rel.attributes.size())};
    std::vector<bool> seen(rel.attributes.size(), false);
    for (const auto& [name, value] : attrs) {
        auto idx = rel.attribute_index(name);
        if (!idx) throw SchemaError("relation " + rel.name + " has no attribute '" + std::string(name) + "'");
        if (!same_class(value.kind(), rel.attributes[*idx].kind))
            throw SchemaError("kind mismatch for " + rel.name + "." + std::string(name));
        ev.values[*idx] = rel.attributes[*idx].kind == ValueKind::Float && value.kind() == ValueKind::Int
                              ? Value(value.as_number())
                              : value;
        seen[*idx] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw SchemaError("missing attributes for " + rel.name);
    return ev;
}

std::string describe(const Event& event, const Schema& schema) {
    const Relation& rel = schema.relation(event.type);
    std::string out = rel.name + "(";
    for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
        if (i) out += ", ";
        out += rel.attributes[i].name + "=" + event.values[i].literal();
    }
    return out + ")";
}

Stream::Stream(std::shared_ptr<const Schema> schema, std::vector<Event> events)
    : schema_(std::move(schema)), events_(std::move(events)) {
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const Event& ev = events_[i];
        if (ev.type >= schema_->size()) throw StreamError(i, "unknown relation id");
        const Relation& rel = schema_->relation(ev.type);
        if (ev.values.size() != rel.attributes.size()) throw StreamError(i, "attribute count mismatch");
        for (std::size_t a = 0; a < ev.values.size(); ++a) {
            if (ev.values[a].kind() != rel.attributes[a].kind)
                throw StreamError(i, "value kind mismatch for '" + rel.attributes[a].name + "'");
        }
    }
}

Stream Stream::prefix(std::size_t len) const {
    len = std::min(len, events_.size());
    return Stream(schema_, std::vector<Event>(events_.begin(), events_.begin() + static_cast<std::ptrdiff_t>(len)));
}

Stream load_stream(std::istream& in, std::shared_ptr<const Schema> schema, StreamFormat format) {
    return format == StreamFormat::Jsonl ? load_jsonl(in, std::move(schema)) : load_csv(in, std::move(schema));
}

Stream load_stream_file(const std::string& path, std::shared_ptr<const Schema> schema) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stream file '" + path + "'");
    auto format = path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? StreamFormat::Csv : StreamFormat::Jsonl;
    return load_stream(in, std::move(schema), format);
}

void write_jsonl(std::ostream& out, const Stream& stream) {
    const Schema& schema = stream.schema();
    for (const Event& ev : stream.events()) {
        const Relation& rel = schema.relation(ev.type);
        nlohmann::ordered_json obj;
        obj["type"] = rel.name;
        for (std::size_t i = 0; i < ev.values.size(); ++i) {
            const Value& v = ev.values[i];
            auto& slot = obj[rel.attributes[i].name];
            switch (v.kind()) {
            case ValueKind::Int: slot = v.as_int(); break;
            case ValueKind::Float: slot = v.as_float(); break;
            case ValueKind::String: slot = v.as_string(); break;
            case ValueKind::Bool: slot = v.as_bool(); break;
            }
        }
        out << obj.dump() << '\n';
    }
}

} // namespace cep
