#pragma once

// `vertex,value` CSV signals. A first line that does not start with a
// number is taken as a header; '#' lines are comments.

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "gsp/config.hpp"
#include "gsp/error.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"
#include "gsp/table.hpp"

namespace gsp {

/// Vertex id -> value, in id order. Duplicate ids are a ParseError.
inline std::map<int, double> read_vertex_values(std::istream& in) {
  std::map<int, double> out;
  std::string line;
  int lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split(body, ',');
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (first) {
      first = false;
      const char ch = fields[0].empty() ? ' ' : fields[0].front();
      if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+')) continue;
    }
    if (fields.size() != 2) throw Error(ErrorCode::ParseError, "expected 'vertex,value'" + where);
    long long id = 0;
    double v = 0.0;
    try {
      id = detail::parse_integer("vertex", fields[0]);
      v = detail::parse_double("value", fields[1]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, e.what() + where);
    }
    if (id < 0) throw Error(ErrorCode::ParseError, "negative vertex id" + where);
    if (!out.emplace(static_cast<int>(id), v).second)
      throw Error(ErrorCode::ParseError, "duplicate vertex " + std::to_string(id) + where);
  }
  return out;
}

inline std::map<int, double> load_vertex_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_vertex_values(in);
}

/// Dense signal of length n; every vertex must be listed.
inline Vector to_signal(const std::map<int, double>& values, int n) {
  if (static_cast<int>(values.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "signal lists " + std::to_string(values.size()) + " of " + std::to_string(n) + " vertices");
  Vector x(n);
  for (const auto& [id, v] : values) {
    if (id >= n) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(id) + " outside graph");
    x(id) = v;
  }
  return x;
}

/// Samples on the listed vertices, zero elsewhere.
inline SampledSignal to_samples(const std::map<int, double>& values, int n) {
  Vector x = Vector::Zero(n);
  std::vector<int> ids;
  for (const auto& [id, v] : values) {
    if (id >= n) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(id) + " outside graph");
    x(id) = v;
    ids.push_back(id);
  }
  return SampledSignal(x, VertexSet(std::move(ids)));
}

inline void write_signal(std::ostream& out, const Vector& x) {
  out << "vertex,value\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) out << i << ',' << format_number(x(i)) << '\n';
}

}  // namespace gsp
