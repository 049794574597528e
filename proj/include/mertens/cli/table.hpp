// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mertens/error.hpp"

namespace mertens::cli {

/// A report cell: text (including exact integers rendered as decimal strings) or a float.
using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw ValidationError("table: row width " + std::to_string(row.size()) + " != " +
                            std::to_string(columns.size()));
    rows.push_back(std::move(row));
  }
};

/// Fixed float formatting: 15 significant digits, "nan"/"inf"/"-inf" spelled out.
inline std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline double parse_double(const std::string &s) {
  if (s == "nan")
    return std::nan("");
  if (s == "inf")
    return HUGE_VAL;
  if (s == "-inf")
    return -HUGE_VAL;
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception &) {
    throw ValidationError("csv: '" + s + "' is not a number");
  }
  if (pos != s.size())
    throw ValidationError("csv: '" + s + "' is not a number");
  return v;
}

inline std::string render(const Cell &c) {
  return std::holds_alternative<double>(c) ? format_double(std::get<double>(c)) : std::get<std::string>(c);
}

inline std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv(std::ostream &os, const Table &t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << csv_escape(t.columns[i]);
  os << '\n';
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_escape(render(row[i]));
    os << '\n';
  }
}

/// Parsed CSV: header plus rows of raw strings (RFC 4180 quoting).
struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string &name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name)
        return i;
    throw ValidationError("csv: no column '" + name + "'");
  }
};

inline CsvData read_csv(std::istream &is) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  std::size_t line = 1;
  char ch;
  while (is.get(ch)) {
    if (quoted) {
      if (ch == '"') {
        if (is.peek() == '"') {
          is.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n')
          ++line;
        field += ch;
      }
      continue;
    }
    if (ch == '"' && field.empty()) {
      quoted = any = true;
    } else if (ch == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\n') {
      rec.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(rec));
      rec.clear();
      any = false;
      ++line;
    } else if (ch != '\r') {
      field += ch;
      any = true;
    }
  }
  if (quoted)
    throw ValidationError("csv: unterminated quote near line " + std::to_string(line));
  if (any || !field.empty()) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  if (records.empty())
    throw ValidationError("csv: empty input");
  CsvData d{std::move(records.front()), {}};
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != d.columns.size())
      throw ValidationError("csv: line " + std::to_string(i + 1) + " has " + std::to_string(records[i].size()) +
                            " fields, header has " + std::to_string(d.columns.size()));
    d.rows.push_back(std::move(records[i]));
  }
  return d;
}

/// Array of row objects; floats go through the same 15-digit rendering as CSV.
inline nlohmann::ordered_json to_json(const Table &t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto &row : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const auto *d = std::get_if<double>(&row[i]); d && std::isfinite(*d))
        o[t.columns[i]] = parse_double(format_double(*d));
      else
        o[t.columns[i]] = render(row[i]);
    }
    arr.push_back(std::move(o));
  }
  return arr;
}

} // namespace mertens::cli
