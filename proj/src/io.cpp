#include "qctl/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qctl/error.hpp"

namespace qctl::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& pointer, const std::string& what) {
  std::string msg = where.empty() ? "" : where + ": ";
  msg += (pointer.empty() ? "/" : pointer) + ": " + what;
  throw Error(ErrorKind::Parse, msg);
}

Quaternion quat_at(const json& j, const std::string& where, const std::string& ptr) {
  if (!j.is_array() || j.size() != 4) fail(where, ptr, "expected a quaternion [w, x, y, z]");
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number()) fail(where, ptr + "/" + std::to_string(i), "expected a number");
    v[i] = j[i].get<double>();
  }
  return Quaternion::from_array(v);
}

QuatMatrix matrix_at(const json& j, const std::string& where, const std::string& ptr, std::size_t empty_cols) {
  if (!j.is_array()) fail(where, ptr, "expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  if (rows == 0) return QuatMatrix(0, empty_cols);
  if (!j[0].is_array()) fail(where, ptr + "/0", "expected a row array");
  const std::size_t cols = j[0].size();
  QuatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = ptr + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) fail(where, rp, "expected a row of " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = quat_at(j[r][c], where, rp + "/" + std::to_string(c));
  }
  return m;
}

QPoly poly_at(const json& j, const std::string& where, const std::string& ptr) {
  if (!j.is_object() || !j.contains("coeffs")) fail(where, ptr, "expected {\"coeffs\": [...]}");
  const json& c = j["coeffs"];
  if (!c.is_array()) fail(where, ptr + "/coeffs", "expected an array of quaternions");
  std::vector<Quaternion> v;
  for (std::size_t i = 0; i < c.size(); ++i) v.push_back(quat_at(c[i], where, ptr + "/coeffs/" + std::to_string(i)));
  return QPoly(std::move(v));
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) fail(where, std::string("/") + name, "missing field");
  return j[name];
}

void check_kind(const json& j, const char* kind, const std::string& where) {
  if (j.contains("kind") && j["kind"] != kind) {
    fail(where, "/kind", std::string("expected \"") + kind + "\"");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

json to_json(const QuatMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const QPoly& p) {
  json c = json::array();
  for (const auto& q : p.coeffs()) c.push_back(to_json(q));
  return {{"coeffs", std::move(c)}};
}

json to_json(const StateSpace& ss) {
  return {{"F", to_json(ss.F)}, {"G", to_json(ss.G)}, {"H", to_json(ss.H)}, {"J", to_json(ss.J)}};
}

json to_json(const LeftFraction& f) { return {{"kind", "left"}, {"den", to_json(f.den)}, {"num", to_json(f.num)}}; }

json to_json(const RightFraction& f) {
  return {{"kind", "right"}, {"den", to_json(f.den)}, {"num", to_json(f.num)}};
}

json to_json(const DesignResult& r) {
  return {{"c", to_json(r.c)},
          {"controller", to_json(r.controller)},
          {"T_w", to_json(r.T_w)},
          {"T_v", to_json(r.T_v)},
          {"closed_loop", to_json(r.closed_loop)},
          {"stable", r.stable},
          {"warnings", r.warnings}};
}

Quaternion quaternion_from_json(const json& j, const std::string& where) { return quat_at(j, where, ""); }

QuatMatrix matrix_from_json(const json& j, const std::string& where, std::size_t empty_cols) {
  return matrix_at(j, where, "", empty_cols);
}

QPoly poly_from_json(const json& j, const std::string& where) { return poly_at(j, where, ""); }

bool is_system_document(const json& j) { return j.is_object() && j.contains("F"); }

StateSpace system_from_json(const json& j, const std::string& where) {
  StateSpace ss;
  ss.F = matrix_at(field(j, "F", where), where, "/F", 0);
  ss.G = matrix_at(field(j, "G", where), where, "/G", 1);
  ss.H = matrix_at(field(j, "H", where), where, "/H", 0);
  // A 0-state system writes H as [[]], which reads back as 1 x 0 already.
  ss.J = quat_at(field(j, "J", where), where, "/J");
  try {
    ss.validate();
  } catch (const Error& e) {
    fail(where, "", e.what());
  }
  return ss;
}

LeftFraction left_fraction_from_json(const json& j, const std::string& where) {
  check_kind(j, "left", where);
  return {poly_at(field(j, "den", where), where, "/den"), poly_at(field(j, "num", where), where, "/num")};
}

RightFraction right_fraction_from_json(const json& j, const std::string& where) {
  check_kind(j, "right", where);
  return {poly_at(field(j, "num", where), where, "/num"), poly_at(field(j, "den", where), where, "/den")};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Parse, path.string() + ": write failed");
}

std::vector<Quaternion> parse_roots(const std::string& text) {
  std::vector<Quaternion> roots;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&](std::size_t& p) {
    const char* begin = text.c_str() + p;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw Error(ErrorKind::Parse, "--roots: expected a number at offset " + std::to_string(p));
    p += static_cast<std::size_t>(end - begin);
    return v;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] == '(') {
      ++pos;
      std::array<double, 4> v{};
      for (std::size_t i = 0; i < 4; ++i) {
        skip_ws();
        v[i] = number(pos);
        skip_ws();
        const char want = i == 3 ? ')' : ',';
        if (pos >= text.size() || text[pos] != want) {
          throw Error(ErrorKind::Parse, std::string("--roots: expected '") + want + "' at offset " +
                                            std::to_string(pos));
        }
        ++pos;
      }
      roots.push_back(Quaternion::from_array(v));
    } else {
      roots.emplace_back(number(pos));
    }
    skip_ws();
    if (pos < text.size()) {
      if (text[pos] != ',') throw Error(ErrorKind::Parse, "--roots: expected ',' at offset " + std::to_string(pos));
      ++pos;
      skip_ws();
      if (pos == text.size()) throw Error(ErrorKind::Parse, "--roots: trailing comma");
    }
  }
  if (roots.empty()) throw Error(ErrorKind::Parse, "--roots: empty list");
  return roots;
}

std::string signal_csv(const SignalSeq& y) {
  std::string out = "k,yw,yx,yy,yz,ynorm\n";
  for (std::size_t k = 0; k < y.size(); ++k) {
    out += std::to_string(k);
    for (double v : {y[k].w, y[k].x, y[k].y, y[k].z, y[k].norm()}) out += "," + fmt17(v);
    out += "\n";
  }
  return out;
}

std::string signal_svg(const SignalSeq& y, const std::string& title) {
  constexpr double kWidth = 800, kHeight = 480, kMargin = 48;
  double lo = 0.0, hi = 0.0;
  for (const auto& q : y) {
    for (double v : {q.w, q.x, q.y, q.z, q.norm()}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double span_k = y.size() > 1 ? static_cast<double>(y.size() - 1) : 1.0;
  auto px = [&](std::size_t k) { return kMargin + (kWidth - 2 * kMargin) * static_cast<double>(k) / span_k; };
  auto py = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo); };

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" viewBox=\"0 0 800 480\">\n";
  svg << "<rect width=\"800\" height=\"480\" fill=\"white\"/>\n";
  svg << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << title
      << "</text>\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"#888\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" x2=\"" << kWidth - kMargin << "\" y1=\"" << py(0.0) << "\" y2=\"" << py(0.0)
      << "\" stroke=\"#ccc\"/>\n";

  struct Series {
    const char* name;
    const char* color;
    double (*get)(const Quaternion&);
  };
  const Series series[] = {
      {"w", "#1f77b4", [](const Quaternion& q) { return q.w; }},
      {"x", "#ff7f0e", [](const Quaternion& q) { return q.x; }},
      {"y", "#2ca02c", [](const Quaternion& q) { return q.y; }},
      {"z", "#d62728", [](const Quaternion& q) { return q.z; }},
      {"|y|", "#000000", [](const Quaternion& q) { return q.norm(); }},
  };
  int legend = 0;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < y.size(); ++k) svg << (k ? " " : "") << px(k) << "," << py(s.get(y[k]));
    svg << "\"/>\n";
    svg << "<text x=\"" << kWidth - kMargin - 40 << "\" y=\"" << kMargin + 16 + 16 * legend++
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << s.color << "\">" << s.name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qctl::io
