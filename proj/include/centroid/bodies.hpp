#ifndef CENTROID_BODIES_HPP
#define CENTROID_BODIES_HPP

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "centroid/errors.hpp"
#include "centroid/polytope.hpp"

namespace centroid {

// volume-1 cube [-1/2, 1/2]^n
inline Polytope make_unit_cube(int n) { return make_cube(n, 0.5); }

// volume-1 cross-polytope: |conv(+-a e_i)| = 2^n a^n / n! = 1
inline Polytope make_unit_cross(int n) {
  double log_nf = 0.0;
  for (int i = 2; i <= n; ++i) log_nf += std::log(static_cast<double>(i));
  double a = std::exp((log_nf - n * std::log(2.0)) / n);
  return make_cross(n, a);
}

// volume-1 regular m-gon with a vertex on the positive x-axis (m even)
inline Polytope make_regular_polygon(int m) {
  if (m < 4 || m % 2 != 0)
    throw DomainError("regular polygon needs an even vertex count >= 4");
  double R = std::sqrt(2.0 / (m * std::sin(2.0 * M_PI / m)));
  std::vector<Vec> pts;
  pts.reserve(m);
  for (int k = 0; k < m; ++k) {
    double a = 2.0 * M_PI * k / m;
    pts.push_back({R * std::cos(a), R * std::sin(a)});
  }
  return build_polytope(pts);
}

// Body file format: first content line "n M", then M rows of n coordinates.
// '#' starts a comment; blank lines are skipped.
inline Polytope parse_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open body file: " + path);
  std::string line;
  int lineno = 0;
  int n = -1;
  long m = -1;
  std::vector<Vec> pts;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    if (n < 0) {
      if (!(ss >> n >> m)) {
        std::string tok;
        std::istringstream probe(line);
        if (!(probe >> tok)) {
          n = -1;
          continue;  // blank or comment-only line
        }
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected header 'n M'");
      }
      std::string extra;
      if (ss >> extra)
        throw ParseError("line " + std::to_string(lineno) +
                         ": trailing tokens after 'n M'");
      if (n < 2 || m < 1)
        throw ParseError("line " + std::to_string(lineno) +
                         ": need n >= 2 and M >= 1");
      continue;
    }
    Vec v;
    double x;
    while (ss >> x) v.push_back(x);
    if (v.empty()) continue;
    if (static_cast<int>(v.size()) != n)
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(n) + " coordinates, got " +
                       std::to_string(v.size()));
    if (static_cast<long>(pts.size()) == m)
      throw ParseError("line " + std::to_string(lineno) +
                       ": more vertex rows than the declared M");
    pts.push_back(std::move(v));
  }
  if (n < 0) throw ParseError("empty body file: " + path);
  if (static_cast<long>(pts.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " vertex rows, found " +
                     std::to_string(pts.size()));
  return build_polytope(pts);
}

// A CLI-facing body: a polytope, or the analytic volume-1 ball.
struct Body {
  std::string id;
  int dim = 0;
  bool is_ball = false;
  std::optional<Polytope> poly;
};

// spec grammar: "builtin:cube:N", "builtin:cross:N",
// "builtin:regular-polygon:M", "builtin:ball:N", or a file path.
inline Body parse_body_spec(const std::string& spec, bool normalize) {
  Body body;
  body.id = spec;
  if (spec.rfind("builtin:", 0) == 0) {
    std::string rest = spec.substr(8);
    auto colon = rest.find(':');
    std::string name = rest.substr(0, colon);
    int param = 0;
    if (colon != std::string::npos) {
      try {
        param = std::stoi(rest.substr(colon + 1));
      } catch (...) {
        throw ParseError("bad builtin parameter in '" + spec + "'");
      }
    }
    if (name == "cube") {
      body.poly = make_unit_cube(param);
    } else if (name == "cross") {
      body.poly = make_unit_cross(param);
    } else if (name == "regular-polygon") {
      body.poly = make_regular_polygon(param);
    } else if (name == "ball") {
      if (param < 2) throw ParseError("ball dimension must be >= 2");
      body.is_ball = true;
      body.dim = param;
      return body;
    } else {
      throw ParseError("unknown builtin body '" + name + "'");
    }
    body.dim = body.poly->dim;
    if (normalize) body.poly = normalize_unit_volume(*body.poly);
    return body;
  }
  std::string path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
  body.poly = parse_body_file(path);
  if (normalize) body.poly = normalize_unit_volume(*body.poly);
  body.dim = body.poly->dim;
  return body;
}

}  // namespace centroid

#endif
