// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mertens/curvezeta.hpp"
#include "mertens/error.hpp"
#include "mertens/families.hpp"
#include "mertens/weilexplicit.hpp"

namespace mertens::cli {

using json = nlohmann::json;

/// Input documents.
///
/// curve:  {"name": s, "type": "hyperelliptic"|"plane", "p": int, "k": int = 1, "genus": int, "coeffs": ...}
///         hyperelliptic coeffs: [c0, c1, ...], plane coeffs: [[ex, ey, ez, c], ...];
///         a coefficient c is an int (in F_p) or a list of F_p coordinates.
/// weil:   {"type": "weil", "name": s, "d": int, "r": int, "betti": [...], "counts": [int|string, ...]}
///         or, instead of betti/counts, "M": int and "eigen": [{"i": int, "trace": int, "single": bool}
///         | {"i": int, "angle": [num, den]}, ...]
/// family: {"kind": "nf", "name": s, "discriminants": [...] | "imaginary": [a, b] | "real": [a, b], "x": int|[...]}
///         {"kind": "curve", "name": s, "members": [path | curve | weil, ...], "M": int = 24, "N": int|[...]}
struct Doc {
  std::string source; ///< file path or "<inline>"
  json value;
};

class DocError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

inline Doc parse_document(const std::string &text, const std::string &source) {
  try {
    return {source, json::parse(text)};
  } catch (const json::parse_error &e) {
    // Report the position as line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw DocError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                   e.what() + ")");
  }
}

inline Doc load_document(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw DocError(path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.string());
}

namespace detail {

[[noreturn]] inline void doc_fail(const std::string &source, const std::string &field, const std::string &what) {
  throw DocError(source + ": field '" + field + "': " + what);
}

inline const json &member(const json &j, const std::string &source, const std::string &prefix, const char *key) {
  if (!j.is_object())
    doc_fail(source, prefix.empty() ? "<root>" : prefix, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    doc_fail(source, prefix + key, "missing");
  return *it;
}

inline std::int64_t as_int(const json &v, const std::string &source, const std::string &field) {
  if (!v.is_number_integer())
    doc_fail(source, field, "expected an integer, got " + v.dump());
  return v.get<std::int64_t>();
}

inline std::uint64_t as_positive(const json &v, const std::string &source, const std::string &field) {
  const auto x = as_int(v, source, field);
  if (x < 1)
    doc_fail(source, field, "expected a positive integer, got " + v.dump());
  return static_cast<std::uint64_t>(x);
}

inline BigInt as_bigint(const json &v, const std::string &source, const std::string &field) {
  if (v.is_number_integer())
    return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const bool ok = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                    s != "-";
    if (!ok)
      doc_fail(source, field, "expected a decimal integer string, got " + v.dump());
    return BigInt(s);
  }
  doc_fail(source, field, "expected an integer or decimal string, got " + v.dump());
}

inline FqCoord as_coeff(const json &v, unsigned k, const std::string &source, const std::string &field) {
  FqCoord c;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      c.push_back(as_int(v[i], source, field + "[" + std::to_string(i) + "]"));
    if (c.size() > k)
      doc_fail(source, field, "has " + std::to_string(c.size()) + " coordinates, field degree is " + std::to_string(k));
  } else {
    c.push_back(as_int(v, source, field));
  }
  c.resize(k, 0);
  return c;
}

inline std::string str_or(const json &j, const char *key, std::string fallback) {
  auto it = j.find(key);
  return (it != j.end() && it->is_string()) ? it->get<std::string>() : fallback;
}

} // namespace detail

inline bool is_weil_document(const json &j) { return j.is_object() && j.value("type", std::string()) == "weil"; }

inline CurveModel curve_from_json(const json &j, const std::string &source) {
  using namespace detail;
  const auto type = member(j, source, "", "type");
  if (!type.is_string() || (type != "plane" && type != "hyperelliptic"))
    doc_fail(source, "type", "expected \"plane\" or \"hyperelliptic\", got " + type.dump());
  CurveModel c;
  c.kind = type == "plane" ? ModelKind::Plane : ModelKind::Hyperelliptic;
  c.p = as_positive(member(j, source, "", "p"), source, "p");
  c.k = j.contains("k") ? static_cast<unsigned>(as_positive(j["k"], source, "k")) : 1;
  const auto g = as_int(member(j, source, "", "genus"), source, "genus");
  if (g < 0)
    doc_fail(source, "genus", "must be >= 0");
  c.genus = static_cast<int>(g);
  const auto &coeffs = member(j, source, "", "coeffs");
  if (!coeffs.is_array() || coeffs.empty())
    doc_fail(source, "coeffs", "expected a non-empty array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string f = "coeffs[" + std::to_string(i) + "]";
    if (c.kind == ModelKind::Hyperelliptic) {
      c.f.push_back(as_coeff(coeffs[i], c.k, source, f));
      continue;
    }
    const auto &t = coeffs[i];
    if (!t.is_array() || t.size() != 4)
      doc_fail(source, f, "expected [ex, ey, ez, c]");
    auto e = [&](int a) {
      const auto v = as_int(t[a], source, f + "[" + std::to_string(a) + "]");
      if (v < 0)
        doc_fail(source, f, "negative exponent");
      return static_cast<unsigned>(v);
    };
    c.plane.push_back({e(0), e(1), e(2), as_coeff(t[3], c.k, source, f + "[3]")});
  }
  c.name = str_or(j, "name", std::string(type.get<std::string>()) + "/F" + std::to_string(c.r()));
  try {
    validate_curve(c);
  } catch (const ValidationError &e) {
    throw DocError(source + ": " + e.what());
  }
  return c;
}

/// Hash input for the count cache: the model without its display name, with
/// coefficients reduced to canonical F_p coordinates.
inline json canonical_curve_json(const CurveModel &c) {
  auto coord = [&](const FqCoord &v) {
    json a = json::array();
    for (std::size_t i = 0; i < c.k; ++i) {
      const std::int64_t x = i < v.size() ? v[i] : 0;
      const auto p = static_cast<std::int64_t>(c.p);
      a.push_back(((x % p) + p) % p);
    }
    return a;
  };
  json coeffs = json::array();
  if (c.kind == ModelKind::Hyperelliptic) {
    for (const auto &v : c.f)
      coeffs.push_back(coord(v));
  } else {
    for (const auto &t : c.plane)
      coeffs.push_back(json::array({t.ex, t.ey, t.ez, coord(t.c)}));
  }
  json j;
  j["type"] = c.kind == ModelKind::Plane ? "plane" : "hyperelliptic";
  j["p"] = c.p;
  j["k"] = c.k;
  j["genus"] = c.genus;
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline WeilData weil_from_json(const json &j, const std::string &source) {
  using namespace detail;
  const auto d = as_positive(member(j, source, "", "d"), source, "d");
  const auto r = as_positive(member(j, source, "", "r"), source, "r");
  const std::string name = str_or(j, "name", "weil/F" + std::to_string(r));
  WeilData w;
  try {
    if (j.contains("eigen")) {
      const auto M = as_positive(member(j, source, "", "M"), source, "M");
      const auto &eig = j["eigen"];
      if (!eig.is_array())
        doc_fail(source, "eigen", "expected an array");
      std::vector<EigenComponent> comps;
      for (std::size_t i = 0; i < eig.size(); ++i) {
        const std::string f = "eigen[" + std::to_string(i) + "]";
        const auto deg = static_cast<unsigned>(as_positive(member(eig[i], source, f + ".", "i"), source, f + ".i"));
        if (eig[i].contains("angle")) {
          const auto &a = eig[i]["angle"];
          if (!a.is_array() || a.size() != 2)
            doc_fail(source, f + ".angle", "expected [num, den]");
          comps.push_back(eigen_from_angle(r, deg, as_int(a[0], source, f + ".angle[0]"),
                                           as_int(a[1], source, f + ".angle[1]")));
        } else {
          EigenComponent c{deg, as_int(member(eig[i], source, f + ".", "trace"), source, f + ".trace"), false};
          if (eig[i].contains("single")) {
            if (!eig[i]["single"].is_boolean())
              doc_fail(source, f + ".single", "expected a boolean");
            c.single = eig[i]["single"].get<bool>();
          }
          comps.push_back(c);
        }
      }
      w = weil_from_eigen(static_cast<unsigned>(d), r, comps, M, name);
    } else {
      w.name = name;
      w.d = static_cast<unsigned>(d);
      w.r = r;
      const auto &betti = member(j, source, "", "betti");
      if (!betti.is_array())
        doc_fail(source, "betti", "expected an array");
      for (std::size_t i = 0; i < betti.size(); ++i) {
        const auto b = as_int(betti[i], source, "betti[" + std::to_string(i) + "]");
        if (b < 0)
          doc_fail(source, "betti[" + std::to_string(i) + "]", "must be >= 0");
        w.betti.push_back(static_cast<std::uint64_t>(b));
      }
      const auto &counts = member(j, source, "", "counts");
      if (!counts.is_array() || counts.empty())
        doc_fail(source, "counts", "expected a non-empty array");
      for (std::size_t i = 0; i < counts.size(); ++i)
        w.N.push_back(as_bigint(counts[i], source, "counts[" + std::to_string(i) + "]"));
    }
    validate_weil(w);
  } catch (const DocError &) {
    throw;
  } catch (const ValidationError &e) {
    throw DocError(source + ": " + e.what());
  }
  return w;
}

/// Family documents (the curve kind yields member documents; the caller turns them into WeilData).
struct NfFamilyDoc {
  NfFamilySpec spec;
};

struct CurveFamilyDoc {
  std::string name;
  std::vector<Doc> members;
  std::size_t M = 24;
  std::vector<std::size_t> N;
};

inline std::string family_kind(const Doc &doc) {
  const auto &k = detail::member(doc.value, doc.source, "", "kind");
  if (!k.is_string() || (k != "nf" && k != "curve"))
    detail::doc_fail(doc.source, "kind", "expected \"nf\" or \"curve\", got " + k.dump());
  return k.get<std::string>();
}

inline std::pair<std::int64_t, std::int64_t> range_pair(const json &v, const std::string &source,
                                                        const std::string &field) {
  if (!v.is_array() || v.size() != 2)
    detail::doc_fail(source, field, "expected [a, b]");
  return {detail::as_int(v[0], source, field + "[0]"), detail::as_int(v[1], source, field + "[1]")};
}

inline NfFamilyDoc nf_family_from_json(const Doc &doc) {
  using namespace detail;
  const auto &j = doc.value;
  NfFamilyDoc out;
  out.spec.name = str_or(j, "name", "nf-family");
  try {
    if (j.contains("discriminants")) {
      const auto &a = j["discriminants"];
      if (!a.is_array())
        doc_fail(doc.source, "discriminants", "expected an array");
      for (std::size_t i = 0; i < a.size(); ++i)
        out.spec.discs.push_back(as_int(a[i], doc.source, "discriminants[" + std::to_string(i) + "]"));
    } else if (j.contains("imaginary")) {
      const auto [a, b] = range_pair(j["imaginary"], doc.source, "imaginary");
      out.spec.discs = imaginary_quadratic_discriminants(a, b);
    } else if (j.contains("real")) {
      const auto [a, b] = range_pair(j["real"], doc.source, "real");
      out.spec.discs = real_quadratic_discriminants(a, b);
    } else {
      doc_fail(doc.source, "discriminants", "missing (or give \"imaginary\"/\"real\": [a, b])");
    }
  } catch (const DocError &) {
    throw;
  } catch (const ValidationError &e) {
    throw DocError(doc.source + ": " + e.what());
  }
  if (j.contains("x")) {
    const auto &x = j["x"];
    if (x.is_array()) {
      for (std::size_t i = 0; i < x.size(); ++i)
        out.spec.x.push_back(as_positive(x[i], doc.source, "x[" + std::to_string(i) + "]"));
    } else {
      out.spec.x.push_back(as_positive(x, doc.source, "x"));
    }
  }
  return out;
}

inline CurveFamilyDoc curve_family_from_json(const Doc &doc) {
  using namespace detail;
  const auto &j = doc.value;
  CurveFamilyDoc out;
  out.name = str_or(j, "name", "curve-family");
  if (j.contains("M"))
    out.M = as_positive(j["M"], doc.source, "M");
  if (j.contains("N")) {
    const auto &n = j["N"];
    if (n.is_array()) {
      for (std::size_t i = 0; i < n.size(); ++i)
        out.N.push_back(as_positive(n[i], doc.source, "N[" + std::to_string(i) + "]"));
    } else {
      out.N.push_back(as_positive(n, doc.source, "N"));
    }
  }
  const auto &members = member(j, doc.source, "", "members");
  if (!members.is_array() || members.empty())
    doc_fail(doc.source, "members", "expected a non-empty array");
  const auto base = std::filesystem::path(doc.source).parent_path();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto &m = members[i];
    if (m.is_string())
      out.members.push_back(load_document(base / m.get<std::string>()));
    else if (m.is_object())
      out.members.push_back({doc.source + ":members[" + std::to_string(i) + "]", m});
    else
      doc_fail(doc.source, "members[" + std::to_string(i) + "]", "expected a path or an inline document");
  }
  return out;
}

} // namespace mertens::cli
