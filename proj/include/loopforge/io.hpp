#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "loopforge/cayley.hpp"
#include "loopforge/conditions.hpp"
#include "loopforge/factorization.hpp"
#include "loopforge/hopf.hpp"
#include "loopforge/inverse.hpp"
#include "loopforge/rational.hpp"

namespace loopforge {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedCayley {
  CayleyTable table;
  std::optional<int> identity;
  std::optional<Permutation> j;
};

namespace detail {

inline std::vector<long long> parse_int_line(const std::string& body, int line_no,
                                             const std::string& what) {
  std::istringstream in(body);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": expected integer in " + what +
                       ", got \"" + tok + "\"");
    }
  }
  return out;
}

}  // namespace detail

/* Text format: first non-comment line "n"; then n rows of n space-separated
 * indices in [0,n); then optional "identity: k" and "J: i0 ... i(n-1)" lines
 * in any order. '#' starts a comment anywhere on a line. */
inline ParsedCayley parse_cayley_stream(std::istream& in) {
  int line_no = 0;
  int n = -1;
  std::vector<int> flat;
  int rows_read = 0;
  std::optional<int> identity;
  std::optional<std::vector<int>> j_image;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = body.find_last_not_of(" \t\r");
    body = body.substr(first, last - first + 1);

    if (body.rfind("identity:", 0) == 0) {
      if (n < 0 || rows_read < n)
        throw ParseError("line " + std::to_string(line_no) + ": identity before table complete");
      auto vals = detail::parse_int_line(body.substr(9), line_no, "identity");
      if (vals.size() != 1 || vals[0] < 0 || vals[0] >= n)
        throw ParseError("line " + std::to_string(line_no) + ": identity index out of range");
      identity = static_cast<int>(vals[0]);
      continue;
    }
    if (body.rfind("J:", 0) == 0) {
      if (n < 0 || rows_read < n)
        throw ParseError("line " + std::to_string(line_no) + ": J line before table complete");
      auto vals = detail::parse_int_line(body.substr(2), line_no, "J");
      if (static_cast<int>(vals.size()) != n)
        throw ParseError("line " + std::to_string(line_no) + ": J needs exactly " +
                         std::to_string(n) + " entries");
      std::vector<int> img;
      for (long long v : vals) {
        if (v < 0 || v >= n)
          throw ParseError("line " + std::to_string(line_no) + ": J entry out of range");
        img.push_back(static_cast<int>(v));
      }
      j_image = std::move(img);
      continue;
    }

    auto vals = detail::parse_int_line(body, line_no, n < 0 ? "order" : "table row");
    if (n < 0) {
      if (vals.size() != 1 || vals[0] < 1 || vals[0] > 1024)
        throw ParseError("line " + std::to_string(line_no) +
                         ": first line must be the order, a single integer in [1,1024]");
      n = static_cast<int>(vals[0]);
      flat.assign(static_cast<std::size_t>(n) * n, -1);
      continue;
    }
    if (rows_read >= n)
      throw ParseError("line " + std::to_string(line_no) + ": extra row after " +
                       std::to_string(n) + " table rows");
    if (static_cast<int>(vals.size()) != n)
      throw ParseError("line " + std::to_string(line_no) + ": row " + std::to_string(rows_read) +
                       " has " + std::to_string(vals.size()) + " entries, expected " +
                       std::to_string(n));
    for (int c = 0; c < n; ++c) {
      if (vals[c] < 0 || vals[c] >= n)
        throw ParseError("line " + std::to_string(line_no) + ": row " + std::to_string(rows_read) +
                         " column " + std::to_string(c) + ": index " + std::to_string(vals[c]) +
                         " out of range [0," + std::to_string(n) + ")");
      flat[static_cast<std::size_t>(rows_read) * n + c] = static_cast<int>(vals[c]);
    }
    ++rows_read;
  }
  if (n < 0) throw ParseError("empty input: no order line");
  if (rows_read < n)
    throw ParseError("table incomplete: " + std::to_string(rows_read) + " of " +
                     std::to_string(n) + " rows");

  // Name the first offending cell before the Latin constructor rejects.
  for (int r = 0; r < n; ++r) {
    std::vector<int> seen_row(n, -1), seen_col(n, -1);
    for (int c = 0; c < n; ++c) {
      const int v = flat[static_cast<std::size_t>(r) * n + c];
      if (seen_row[v] >= 0)
        throw ParseError("not a Latin square: row " + std::to_string(r) + " repeats value " +
                         std::to_string(v) + " at columns " + std::to_string(seen_row[v]) +
                         " and " + std::to_string(c));
      seen_row[v] = c;
      const int w = flat[static_cast<std::size_t>(c) * n + r];
      if (seen_col[w] >= 0)
        throw ParseError("not a Latin square: column " + std::to_string(r) + " repeats value " +
                         std::to_string(w) + " at rows " + std::to_string(seen_col[w]) + " and " +
                         std::to_string(c));
      seen_col[w] = c;
    }
  }

  ParsedCayley out{CayleyTable(n, std::move(flat)), identity, std::nullopt};
  if (identity) {
    auto e = out.table.identity();
    if (!e || *e != *identity)
      throw ParseError("declared identity " + std::to_string(*identity) +
                       " is not a two-sided identity of the table");
  }
  if (j_image) out.j = Permutation(*j_image);
  return out;
}

inline ParsedCayley parse_cayley_text(const std::string& text) {
  std::istringstream in(text);
  return parse_cayley_stream(in);
}

struct ParsedMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> flat;  // row-major
  int at(int r, int c) const { return flat[static_cast<std::size_t>(r) * cols + c]; }
};

/* Value-table format for action and cocycle maps: first non-comment line is
 * "rows cols" (or a single "n" for square); then rows lines of cols entries.
 * Entry ranges are the consumer's contract, not enforced here beyond >= 0. */
inline ParsedMatrix parse_matrix_stream(std::istream& in) {
  int line_no = 0;
  ParsedMatrix m;
  bool have_shape = false;
  int rows_read = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = body.find_last_not_of(" \t\r");
    body = body.substr(first, last - first + 1);
    auto vals = detail::parse_int_line(body, line_no, have_shape ? "matrix row" : "shape");
    if (!have_shape) {
      if (vals.size() == 1) vals.push_back(vals[0]);
      if (vals.size() != 2 || vals[0] < 1 || vals[1] < 1 || vals[0] > 4096 || vals[1] > 4096)
        throw ParseError("line " + std::to_string(line_no) +
                         ": shape line must be \"rows cols\" or a single order");
      m.rows = static_cast<int>(vals[0]);
      m.cols = static_cast<int>(vals[1]);
      have_shape = true;
      continue;
    }
    if (rows_read >= m.rows)
      throw ParseError("line " + std::to_string(line_no) + ": extra row after " +
                       std::to_string(m.rows) + " rows");
    if (static_cast<int>(vals.size()) != m.cols)
      throw ParseError("line " + std::to_string(line_no) + ": row " + std::to_string(rows_read) +
                       " has " + std::to_string(vals.size()) + " entries, expected " +
                       std::to_string(m.cols));
    for (long long v : vals) {
      if (v < 0)
        throw ParseError("line " + std::to_string(line_no) + ": negative entry " +
                         std::to_string(v));
      m.flat.push_back(static_cast<int>(v));
    }
    ++rows_read;
  }
  if (!have_shape) throw ParseError("empty input: no shape line");
  if (rows_read < m.rows)
    throw ParseError("matrix incomplete: " + std::to_string(rows_read) + " of " +
                     std::to_string(m.rows) + " rows");
  return m;
}

inline ParsedMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_stream(in);
}

inline std::string emit_cayley(const CayleyTable& q, std::optional<int> identity = std::nullopt,
                               const std::optional<Permutation>& j = std::nullopt) {
  std::ostringstream out;
  const int n = q.order();
  out << n << "\n";
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out << (c ? " " : "") << q.at(r, c);
    out << "\n";
  }
  if (identity) out << "identity: " << *identity << "\n";
  if (j) {
    out << "J:";
    for (int i = 0; i < j->degree(); ++i) out << " " << (*j)(i);
    out << "\n";
  }
  return out.str();
}

// ---- JSON report shapes ----

inline Json witness_json(const std::vector<int>& w) {
  Json arr = Json::array();
  for (int v : w) arr.push_back(v);
  return arr;
}

inline Json reports_json(const std::vector<ConditionReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) {
    Json item{{"name", r.name}, {"ok", r.ok}, {"witness", witness_json(r.witness)}};
    if (!r.note.empty()) item["note"] = r.note;
    arr.push_back(std::move(item));
  }
  return arr;
}

inline Json classify_json(const ClassifyReport& rep) {
  Json valid = Json::array();
  for (long long m : rep.valid_m) valid.push_back(m);
  return Json{{"order", rep.order}, {"h", rep.h}, {"valid_m", valid},
              {"wip", rep.wip},     {"ci", rep.ci}};
}

// {phi_table, psi_table} as row-major matrices indexed [s][r]
inline Json action_pair_json(const ActionPair& a) {
  Json phi = Json::array(), psi = Json::array();
  for (int s = 0; s < a.s_order; ++s) {
    Json prow = Json::array(), qrow = Json::array();
    for (int r = 0; r < a.r_order; ++r) {
      prow.push_back(a.phi_at(s, r));
      qrow.push_back(a.psi_at(s, r));
    }
    phi.push_back(std::move(prow));
    psi.push_back(std::move(qrow));
  }
  return Json{{"phi_table", phi}, {"psi_table", psi}};
}

inline Json factorization_json(const FactorizationWitness& w) {
  Json laws = Json::object();
  for (const auto& r : w.laws)
    laws[r.name] = Json{{"ok", r.ok}, {"witness", witness_json(r.witness)}};
  Json tables = action_pair_json(w.actions);
  return Json{{"bijective", w.bijective},
              {"laws", laws},
              {"phi_table", tables["phi_table"]},
              {"psi_table", tables["psi_table"]}};
}

// ---- Hopf structure constants ----

namespace detail {

inline Json rational_json(const Rational& x) {
  auto num = to_int64(rational_num(x));
  auto den = to_int64(rational_den(x));
  if (!num || !den)
    throw ParseError("rational coefficient exceeds the 64-bit serialization range");
  return Json::array({*num, *den});
}

inline Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError("rational must be a [num, den] integer pair");
  const std::int64_t num = j[0].get<std::int64_t>();
  const std::int64_t den = j[1].get<std::int64_t>();
  if (den == 0) throw ParseError("rational denominator is zero");
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace detail

inline Json hopf_json(const HopfQuasigroupData& h) {
  const int d = h.dim;
  Json mu = Json::array(), delta = Json::array();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Rational& mv = h.mu_at(i, j, k);
        if (mv != 0) {
          Json t = Json::array({i, j, k});
          for (const auto& part : detail::rational_json(mv)) t.push_back(part);
          mu.push_back(std::move(t));
        }
        const Rational& dv = h.delta_at(i, j, k);
        if (dv != 0) {
          Json t = Json::array({i, j, k});
          for (const auto& part : detail::rational_json(dv)) t.push_back(part);
          delta.push_back(std::move(t));
        }
      }
  Json eps = Json::array(), eta = Json::array();
  for (int i = 0; i < d; ++i) {
    eps.push_back(detail::rational_json(h.eps[i]));
    eta.push_back(detail::rational_json(h.eta[i]));
  }
  Json smat = Json::array();
  for (int i = 0; i < d; ++i) {
    Json row = Json::array();
    for (int j = 0; j < d; ++j) row.push_back(detail::rational_json(h.s_at(i, j)));
    smat.push_back(std::move(row));
  }
  return Json{{"dim", d}, {"mu", mu}, {"delta", delta}, {"eps", eps}, {"S", smat}, {"eta", eta}};
}

inline HopfQuasigroupData hopf_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("hopf object needs an integer dim");
  const int d = j["dim"].get<int>();
  if (d < 1 || d > 1024) throw ParseError("hopf dim out of range [1,1024]");
  HopfQuasigroupData h;
  h.dim = d;
  h.mu.assign(static_cast<std::size_t>(d) * d * d, Rational(0));
  h.delta.assign(static_cast<std::size_t>(d) * d * d, Rational(0));
  h.eps.assign(d, Rational(0));
  h.eta.assign(d, Rational(0));
  h.smat.assign(static_cast<std::size_t>(d) * d, Rational(0));
  auto read_sparse = [&](const char* key, std::vector<Rational>& dst) {
    if (!j.contains(key) || !j[key].is_array())
      throw ParseError(std::string("hopf object needs array ") + key);
    for (const auto& t : j[key]) {
      if (!t.is_array() || t.size() != 5) throw ParseError("sparse entry must be [i,j,k,num,den]");
      const int a = t[0].get<int>(), b = t[1].get<int>(), c = t[2].get<int>();
      if (a < 0 || a >= d || b < 0 || b >= d || c < 0 || c >= d)
        throw ParseError("sparse entry index out of range");
      dst[(static_cast<std::size_t>(a) * d + b) * d + c] =
          detail::rational_from_json(Json::array({t[3], t[4]}));
    }
  };
  read_sparse("mu", h.mu);
  read_sparse("delta", h.delta);
  auto read_vec = [&](const char* key, std::vector<Rational>& dst) {
    if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != d)
      throw ParseError(std::string("hopf object needs a dim-length array ") + key);
    for (int i = 0; i < d; ++i) dst[i] = detail::rational_from_json(j[key][i]);
  };
  read_vec("eps", h.eps);
  read_vec("eta", h.eta);
  if (!j.contains("S") || !j["S"].is_array() || static_cast<int>(j["S"].size()) != d)
    throw ParseError("hopf object needs a dim x dim S matrix");
  for (int r = 0; r < d; ++r) {
    const auto& row = j["S"][r];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw ParseError("hopf S row has wrong length");
    for (int c = 0; c < d; ++c)
      h.smat[static_cast<std::size_t>(r) * d + c] = detail::rational_from_json(row[c]);
  }
  return h;
}

}  // namespace loopforge
