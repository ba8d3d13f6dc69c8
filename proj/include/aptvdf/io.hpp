/*
 * Copyright 2026 The aptvdf Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef APTVDF_IO_HPP
#define APTVDF_IO_HPP

// Text file formats: coefficient lists, response/sample CSVs, oscilloscope
// trace CSVs.

#include <aptvdf/error.hpp>
#include <aptvdf/filter_core.hpp>
#include <aptvdf/power_trace.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace aptvdf {

namespace io_detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Decimal to nearest double; the whole token must be consumed.
inline bool parse_double(std::string_view s, double &out) {
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cells.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return cells;
}

inline std::ifstream open_in(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  return out;
}

inline std::string fmt_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

} // namespace io_detail

// One decimal coefficient per line; '#' lines and blank lines are ignored;
// LF or CRLF endings.
inline PrototypeFilter read_coefficients(std::istream &in) {
  std::vector<double> h;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = io_detail::trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    double v = 0.0;
    if (!io_detail::parse_double(t, v) || !std::isfinite(v))
      throw ParseError("not a finite decimal number: '" + std::string(t) + "'",
                       lineno);
    h.push_back(v);
  }
  if (h.empty())
    throw ParseError("coefficient file contains no values", 0);
  if (h.size() < 2)
    throw ParseError("coefficient file needs at least two values", 0);
  return PrototypeFilter(std::move(h));
}

inline PrototypeFilter load_coefficients(const std::string &path) {
  auto in = io_detail::open_in(path);
  return read_coefficients(in);
}

// 17 significant digits so a reload is bit-identical.
inline void write_coefficients(std::ostream &out, const PrototypeFilter &p,
                               std::string_view comment = {}) {
  if (!comment.empty())
    out << "# " << comment << "\n";
  for (double c : p.coefficients())
    out << io_detail::fmt_g(c, 17) << "\n";
}

inline void save_coefficients(const std::string &path,
                              const PrototypeFilter &p,
                              std::string_view comment = {}) {
  auto out = io_detail::open_out(path);
  write_coefficients(out, p, comment);
  if (!out)
    throw IoError("write to '" + path + "' failed");
}

// freq_norm,mag_db,phase_rad with 9 significant digits.
inline void write_response_csv(std::ostream &out, const FrequencyResponse &r) {
  out << "freq_norm,mag_db,phase_rad\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double mag = std::max(std::abs(r.values[i]), 1e-300);
    out << io_detail::fmt_g(r.grid[i], 9) << ','
        << io_detail::fmt_g(20.0 * std::log10(mag), 9) << ','
        << io_detail::fmt_g(std::arg(r.values[i]), 9) << '\n';
  }
}

// n,value
inline void write_samples_csv(std::ostream &out,
                              std::span<const double> values) {
  out << "n,value\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out << i << ',' << io_detail::fmt_g(values[i], 17) << '\n';
}

inline std::vector<double> read_samples_csv(std::istream &in) {
  std::vector<double> v;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = io_detail::trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    const auto cells = io_detail::split_csv(t);
    if (!header_seen && cells.size() >= 2 && cells[0] == "n") {
      header_seen = true;
      continue;
    }
    header_seen = true;
    double x = 0.0;
    const auto cell = cells.size() >= 2 ? cells[1] : cells[0];
    if (!io_detail::parse_double(cell, x))
      throw ParseError("bad sample value '" + std::string(cell) + "'", lineno);
    v.push_back(x);
  }
  return v;
}

struct TraceCsvDialect {
  std::size_t skip_lines = 0; // metadata lines before the header
  bool has_header = true;
  std::size_t time_column = 0;
  std::size_t volts_column = 1;
};

inline Trace read_trace_csv(std::istream &in, const TraceCsvDialect &d = {},
                            std::string label = {}) {
  Trace t;
  t.label = std::move(label);
  std::string line;
  std::size_t lineno = 0;
  bool header_pending = d.has_header;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno <= d.skip_lines)
      continue;
    const auto s = io_detail::trim(line);
    if (s.empty())
      continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = io_detail::split_csv(s);
    const std::size_t need = std::max(d.time_column, d.volts_column) + 1;
    if (cells.size() < need)
      throw ParseError("expected at least " + std::to_string(need) +
                           " columns",
                       lineno);
    double ts = 0.0, v = 0.0;
    if (!io_detail::parse_double(cells[d.time_column], ts) ||
        !io_detail::parse_double(cells[d.volts_column], v))
      throw ParseError("non-numeric trace sample", lineno);
    t.time_s.push_back(ts);
    t.volts.push_back(v);
  }
  t.validate();
  return t;
}

inline Trace load_trace_csv(const std::string &path,
                            const TraceCsvDialect &d = {}) {
  auto in = io_detail::open_in(path);
  return read_trace_csv(in, d, path);
}

inline void write_trace_csv(std::ostream &out, const Trace &t) {
  out << "time_s,volts\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out << io_detail::fmt_g(t.time_s[i], 17) << ','
        << io_detail::fmt_g(t.volts[i], 17) << '\n';
}

} // namespace aptvdf

#endif // APTVDF_IO_HPP
