// SPDX-License-Identifier: Apache-2.0
// Running example: sensor stream and queries over it.
#pragma once

#include <memory>
#include <sstream>
#include <string>

#include "cep/event.hpp"
#include "cep/formula.hpp"
#include "cep/parser.hpp"

namespace cep::fixture {

inline std::shared_ptr<const Schema> sensor_schema() {
    return std::make_shared<const Schema>(load_schema("H(id:int, hum:int); T(id:int, tmp:int)"));
}

inline Stream sensor_stream() {
    std::istringstream in(R"({"type":"H","id":2,"hum":25}
{"type":"T","id":0,"tmp":45}
{"type":"H","id":0,"hum":20}
{"type":"H","id":1,"hum":25}
{"type":"T","id":1,"tmp":40}
{"type":"T","id":0,"tmp":42}
{"type":"T","id":1,"tmp":25}
{"type":"H","id":1,"hum":70}
{"type":"H","id":0,"hum":18}
)");
    return load_stream(in, sensor_schema(), StreamFormat::Jsonl);
}

inline constexpr const char* kPhi1 = "(T AS x ; H AS y) FILTER (x.tmp > 40 AND y.hum <= 25 AND x.id = 0 AND y.id = 0)";
inline constexpr const char* kPhi1Lp =
    "(T AS x FILTER (x.tmp > 40 AND x.id = 0)) ; (H AS y FILTER (y.hum <= 25 AND y.id = 0))";
inline constexpr const char* kPhi2 =
    "((T AS x ; H AS y) OR (H AS y ; T AS x)) FILTER (x.tmp > 40 AND y.hum <= 25 AND x.id = 0 AND y.id = 0)";
inline constexpr const char* kPhi3 =
    "(H AS x ; (T AS y FILTER y.id = 1)+ ; H AS z) FILTER (x.hum < 30 AND z.hum > 60 AND x.id = 1 AND z.id = 1)";
inline constexpr const char* kPhi4 =
    "(H AS x ; (T AS y FILTER y.id = x.id)+ ; H AS z) FILTER (x.hum < 30 AND z.hum > 60 AND x.id = z.id)";
inline constexpr const char* kPhi5 = "(H AS x) FILTER (y.tmp <= 30)";
inline constexpr const char* kPhi6 = "T AS x ; ((T AS y FILTER x.tmp >= 40) OR (H AS y FILTER x.tmp < 40))";

inline Formula sensor_query(const char* text) { return parse_formula(text, *sensor_schema()); }

} // namespace cep::fixture
