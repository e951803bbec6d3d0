#pragma once

// JSON documents, root lists, CSV and SVG output used by the qctl tool.
//
//   quaternion   [w, x, y, z]
//   matrix       [[q, ...], ...]                       (row major)
//   polynomial   {"coeffs": [q, ...]}                  (ascending in d)
//   fraction     {"kind": "left"|"right", "den": poly, "num": poly}
//   system       {"F": matrix, "G": matrix, "H": matrix, "J": q}

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qctl/design.hpp"
#include "qctl/sim.hpp"

namespace qctl::io {

using nlohmann::json;

json to_json(const Quaternion& q);
json to_json(const QuatMatrix& m);
json to_json(const QPoly& p);
json to_json(const StateSpace& ss);
json to_json(const LeftFraction& f);
json to_json(const RightFraction& f);
json to_json(const DesignResult& r);

// Parsers throw Error(Parse) naming the JSON pointer of the offending field;
// `where` prefixes that message (usually a file path).
Quaternion quaternion_from_json(const json& j, const std::string& where = "");
QuatMatrix matrix_from_json(const json& j, const std::string& where = "", std::size_t empty_cols = 0);
QPoly poly_from_json(const json& j, const std::string& where = "");
StateSpace system_from_json(const json& j, const std::string& where = "");
LeftFraction left_fraction_from_json(const json& j, const std::string& where = "");
RightFraction right_fraction_from_json(const json& j, const std::string& where = "");

bool is_system_document(const json& j);

/// Reads and parses a JSON file; I/O and syntax problems raise Error(Parse).
json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Comma separated roots: a bare real, or a parenthesised "w,x,y,z" quadruple.
std::vector<Quaternion> parse_roots(const std::string& text);

/// Header `k,yw,yx,yy,yz,ynorm`, one row per sample, 17 significant digits.
std::string signal_csv(const SignalSeq& y);

/// Static 800x480 line chart: one polyline per component of y and one for |y|.
std::string signal_svg(const SignalSeq& y, const std::string& title);

}  // namespace qctl::io
