#pragma once

// JSON and CSV formats shared by the library and the mono3 tool.
//
//   Complex        [re, im]
//   A3             {"a": [re, im], "b": [re, im], "c": [re, im]}
//   basis file     {"k": 3, "e": [A3, ...]}
//   direction set  {"h": [[k reals], ...]}
//   check report   {"verdict": "pass", "phi_star": A3, "residuals": [...], "history": [...]}
//   points CSV     header x1,...,xk then one point per row
//   output CSV     x1,...,xk,re0,im0,re1,im1,re2,im2

#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mono3/algebra.hpp"
#include "mono3/error.hpp"
#include "mono3/subspace.hpp"
#include "mono3/verify.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) { j = json::array({z.real(), z.imag()}); }
  static void from_json(const json& j, std::complex<double>& z) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      throw mono3::Error(mono3::Errc::invalid_argument, "complex value must be [re, im]");
    z = {j[0].get<double>(), j[1].get<double>()};
  }
};

}  // namespace nlohmann

namespace mono3 {

using json = nlohmann::json;

inline void to_json(json& j, const A3& u) { j = json{{"a", u.a}, {"b", u.b}, {"c", u.c}}; }

inline void from_json(const json& j, A3& u) {
  if (!j.is_object()) throw Error(Errc::invalid_argument, "algebra element must be an object");
  auto part = [&](const char* key) {
    return j.contains(key) ? j.at(key).get<Complex>() : Complex{};
  };
  u = {part("a"), part("b"), part("c")};
}

inline json basis_to_json(const Subspace& s) {
  json e = json::array();
  for (const A3& v : s.basis()) e.push_back(v);
  return json{{"k", s.dim()}, {"e", e}};
}

/// Parses a basis document and validates it through make_subspace().
inline Subspace basis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("e") || !j.at("e").is_array())
    throw Error(Errc::invalid_argument, "basis file needs an array \"e\"");
  std::vector<A3> e;
  for (const json& v : j.at("e")) e.push_back(v.get<A3>());
  if (j.contains("k") && j.at("k").get<std::size_t>() != e.size())
    throw Error(Errc::dimension_mismatch, "\"k\" does not match the number of basis vectors");
  return make_subspace(std::move(e));
}

inline DirectionSet directions_from_json(const json& j) {
  if (!j.is_object() || !j.contains("h") || !j.at("h").is_array())
    throw Error(Errc::invalid_argument, "direction file needs an array \"h\"");
  DirectionSet d;
  for (const json& row : j.at("h")) d.h.push_back(row.get<Coords>());
  return d;
}

inline json directions_to_json(const DirectionSet& d) { return json{{"h", d.h}}; }

inline json report_to_json(const CheckReport& r) {
  return json{{"verdict", r.pass ? "pass" : "fail"},
              {"phi_star", r.phi_star},
              {"residuals", r.residuals},
              {"leading_residuals", r.leading_residuals},
              {"threshold", r.threshold},
              {"history", r.history}};
}

// ---------------------------------------------------------------------------
// Text formats

/// Shortest round-trip decimal; negative zero prints as 0.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_real(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw Error(Errc::invalid_argument, "malformed number '" + std::string(text) + "' in " + std::string(what));
  return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto at = text.find(sep);
    out.push_back(text.substr(0, at));
    if (at == std::string_view::npos) return out;
    text.remove_prefix(at + 1);
  }
}

/// "re,im" or a bare real "re".
inline Complex parse_complex_pair(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_real(parts[0], "complex literal"), 0.0};
  if (parts.size() != 2) throw Error(Errc::invalid_argument, "complex literal must be \"re,im\"");
  return {parse_real(parts[0], "complex literal"), parse_real(parts[1], "complex literal")};
}

inline Coords parse_coords(std::string_view text) {
  Coords out;
  for (auto part : split(text, ',')) out.push_back(parse_real(part, "coordinate list"));
  return out;
}

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
};

/// Per-axis "min:max:count", comma separated.
inline std::vector<GridAxis> parse_grid(std::string_view spec) {
  std::vector<GridAxis> axes;
  for (auto axis : split(spec, ',')) {
    const auto f = split(axis, ':');
    if (f.size() != 3) throw Error(Errc::invalid_argument, "grid axis must be min:max:count");
    GridAxis g{parse_real(f[0], "grid"), parse_real(f[1], "grid"), 0};
    const double count = parse_real(f[2], "grid");
    if (count < 1 || count != std::floor(count) || count > 1e7)
      throw Error(Errc::invalid_argument, "grid count must be a positive integer");
    g.count = static_cast<std::size_t>(count);
    axes.push_back(g);
  }
  return axes;
}

/// Tensor grid, last axis varying fastest. A single-count axis sits at min.
inline std::vector<Coords> grid_points(const std::vector<GridAxis>& axes) {
  std::vector<Coords> pts{Coords{}};
  for (const GridAxis& g : axes) {
    std::vector<Coords> next;
    next.reserve(pts.size() * g.count);
    for (const Coords& p : pts)
      for (std::size_t i = 0; i < g.count; ++i) {
        Coords q = p;
        q.push_back(g.count == 1 ? g.min
                                 : g.min + (g.max - g.min) * static_cast<double>(i) /
                                               static_cast<double>(g.count - 1));
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

/// Box from "lo:hi" per axis, comma separated.
inline Box parse_box(std::string_view spec) {
  Box box;
  for (auto axis : split(spec, ',')) {
    const auto f = split(axis, ':');
    if (f.size() != 2) throw Error(Errc::invalid_argument, "box axis must be lo:hi");
    box.lo.push_back(parse_real(f[0], "box"));
    box.hi.push_back(parse_real(f[1], "box"));
  }
  return box;
}

inline std::vector<Coords> read_points_csv(std::istream& in, std::size_t k) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::invalid_argument, "points CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  if (header.size() != k)
    throw Error(Errc::dimension_mismatch,
                "points CSV has " + std::to_string(header.size()) + " columns, expected " + std::to_string(k));
  for (std::size_t j = 0; j < k; ++j)
    if (header[j] != "x" + std::to_string(j + 1))
      throw Error(Errc::invalid_argument, "points CSV header must be x1..x" + std::to_string(k));
  std::vector<Coords> pts;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Coords p = parse_coords(line);
    if (p.size() != k) throw Error(Errc::dimension_mismatch, "points CSV row has the wrong number of values");
    pts.push_back(std::move(p));
  }
  return pts;
}

inline void write_extension_header(std::ostream& out, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) out << 'x' << j + 1 << ',';
  out << "re0,im0,re1,im1,re2,im2\n";
}

inline void write_extension_row(std::ostream& out, std::span<const double> x, const A3& v) {
  for (double c : x) out << format_number(c) << ',';
  out << format_number(v.a.real()) << ',' << format_number(v.a.imag()) << ',' << format_number(v.b.real())
      << ',' << format_number(v.b.imag()) << ',' << format_number(v.c.real()) << ','
      << format_number(v.c.imag()) << '\n';
}

}  // namespace mono3
