#pragma once

// JSON input/output conventions for the CLI: rationals as "p/q" strings,
// Q(e) elements as expression strings (or [[exp, "p/q"], ...] coefficient
// arrays), matrices as row-major arrays, root functions as
// {root-vector, value} pair lists.

#include <string>
#include <vector>

#include "json.hpp"
#include "rvl/extrat.hpp"
#include "rvl/gmo_sets.hpp"
#include "rvl/hodge_newton.hpp"
#include "rvl/ratfunc.hpp"
#include "rvl/root_system.hpp"

namespace rvl::io {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat parse_rat(const std::string& s) {
  try {
    mpq_class q(s);
    q.canonicalize();
    return Rat(q);
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational: \"" + s + "\"");
  }
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline std::string extrat_str(const ExtRat& e) {
  return e.is_finite() ? rat_str(e.value()) : std::string("inf");
}

inline RatFunc parse_field_elt(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_ratfunc(j.get<std::string>());
    if (j.is_number_integer()) return RatFunc(Rat(j.get<long>()));
    if (j.is_array()) {  // [[exp, "p/q"], ...]
      RatFunc f;
      for (const Json& term : j) {
        if (!term.is_array() || term.size() != 2)
          throw InputError(where + ": coefficient terms must be [exp, \"p/q\"]");
        f += RatFunc::monomial(parse_rat(term[1].get<std::string>()),
                               term[0].get<int>());
      }
      return f;
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a Q(e) string, integer, or term array");
}

inline FMatrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw InputError(where + ": expected an array of rows");
  size_t rows = j.size(), cols = j[0].size();
  FMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw InputError(where + ": ragged rows");
    for (size_t k = 0; k < cols; ++k)
      m(i, k) = parse_field_elt(j[i][k], where);
  }
  return m;
}

inline Json matrix_json(const FMatrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

inline RootSystem parse_root_system(const Json& j) {
  if (!j.contains("type") || !j.contains("rank"))
    throw InputError("missing field: type / rank");
  std::string t = j["type"].get<std::string>();
  if (t.size() != 1) throw InputError("type must be a single letter");
  try {
    return RootSystem::build(t[0], j["rank"].get<int>());
  } catch (const std::exception& e) {
    throw InputError(std::string("root system: ") + e.what());
  }
}

/// Root functions: [{"root": [..], "value": n}, ...].
inline RootFunction parse_root_function(const RootSystem& rs, const Json& j,
                                        const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a pair list");
  RootFunction r(rs);
  std::vector<bool> seen(rs.num_roots(), false);
  for (const Json& p : j) {
    if (!p.contains("root") || !p.contains("value"))
      throw InputError(where + ": each entry needs root and value");
    std::vector<long> v = p["root"].get<std::vector<long>>();
    int idx = rs.index_of(v);
    if (idx < 0) throw InputError(where + ": not a root of the system");
    r.at(idx) = p["value"].get<long>();
    seen[idx] = true;
  }
  for (bool s : seen)
    if (!s) throw InputError(where + ": missing a root (all roots need values)");
  return r;
}

inline Json root_function_json(const RootSystem& rs, const RootFunction& r) {
  Json out = Json::array();
  for (int a = 0; a < rs.num_roots(); ++a)
    out.push_back(Json{{"root", rs.root(a)}, {"value", r(a)}});
  return out;
}

/// Symmetric root subsets: array of root vectors.
inline RootSet parse_root_set(const RootSystem& rs, const Json& j,
                              const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of roots");
  RootSet s = 0;
  for (const Json& p : j) {
    int idx = rs.index_of(p.get<std::vector<long>>());
    if (idx < 0) throw InputError(where + ": not a root of the system");
    s = set_insert(s, idx);
  }
  return s;
}

inline std::vector<Rat> parse_rat_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rat> v;
  for (const Json& e : j)
    v.push_back(e.is_number_integer() ? Rat(e.get<long>())
                                      : parse_rat(e.get<std::string>()));
  return v;
}

inline Json qtuple_json(const QTuple& t) {
  Json out = Json::array();
  for (size_t i = 0; i < t.size(); ++i) out.push_back(extrat_str(t[i]));
  return out;
}

}  // namespace rvl::io
