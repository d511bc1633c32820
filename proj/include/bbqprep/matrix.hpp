// Copyright 2026 The bbqprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "bbqprep/bits.hpp"
#include "bbqprep/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace bbqprep {

using Complex = std::complex<double>;

enum class MatrixFormat { json, csv };

/// Dense complex matrix, zero-padded so that both dimensions are powers of two.
///
/// Entries are stored row-major, so entry (i, j) lives at flat index
/// z = i * cols() + j. The constructor pads, validates, and rejects matrices
/// that are all zero or that collapse to a single cell.
class ComplexMatrix {
public:
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : original_rows_(rows), original_cols_(cols) {
    if (rows == 0 || cols == 0)
      throw EmptyMatrix("matrix has no entries");
    if (entries.size() != rows * cols)
      throw InvalidDimensions("expected " + std::to_string(rows * cols) +
                              " entries, got " + std::to_string(entries.size()));
    for (const auto &a : entries)
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw ParseError("non-finite matrix entry");
    if (std::all_of(entries.begin(), entries.end(),
                    [](const Complex &a) { return a == Complex{}; }))
      throw AllZeroMatrix("every entry is zero");

    rows_ = std::bit_ceil(rows);
    cols_ = std::bit_ceil(cols);
    if (rows_ * cols_ < 2)
      throw InvalidDimensions("a 1x1 matrix leaves no amplitude to split");

    if (rows_ == rows && cols_ == cols) {
      entries_ = std::move(entries);
    } else {
      entries_.assign(rows_ * cols_, Complex{});
      for (std::size_t i = 0; i < rows; ++i)
        std::copy_n(entries.begin() + static_cast<std::ptrdiff_t>(i * cols), cols,
                    entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t original_rows() const noexcept { return original_rows_; }
  std::size_t original_cols() const noexcept { return original_cols_; }

  /// K = rows * cols.
  std::size_t size() const noexcept { return entries_.size(); }
  /// k = log2 K.
  int address_bits() const noexcept { return exact_log2(entries_.size()); }

  const Complex &operator[](std::size_t z) const { return entries_[z]; }
  const Complex &operator()(std::size_t i, std::size_t j) const;
  std::span<const Complex> entries() const noexcept { return entries_; }

  bool is_real() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Complex &a) { return a.imag() == 0.0; });
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t original_rows_ = 0;
  std::size_t original_cols_ = 0;
  std::vector<Complex> entries_;
};

/// Row-major flat index z = i*N + j.
inline std::size_t flat_index(std::size_t i, std::size_t j, std::size_t cols) {
  if (j >= cols)
    throw IndexOutOfRange("column " + std::to_string(j) + " >= " + std::to_string(cols));
  return i * cols + j;
}

inline const Complex &ComplexMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i >= rows_)
    throw IndexOutOfRange("row " + std::to_string(i) + " >= " + std::to_string(rows_));
  return entries_[flat_index(i, j, cols_)];
}

/// |a_z|^2 = Re(a_z)^2 + Im(a_z)^2 for every flat index.
inline std::vector<double> squared_moduli(const ComplexMatrix &m) {
  std::vector<double> out;
  out.reserve(m.size());
  for (const auto &a : m.entries())
    out.push_back(a.real() * a.real() + a.imag() * a.imag());
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline double parse_real(std::string_view s, std::string_view literal) {
  // strtod accepts a leading '+', from_chars does not.
  std::string buf(s);
  char *end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    throw ParseError("bad complex literal '" + std::string(literal) + "'");
  return v;
}

} // namespace detail

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i", "a+i"; spaces are ignored.
inline Complex parse_complex_literal(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      compact.push_back(c);
  if (compact.empty())
    throw ParseError("empty complex literal");

  std::string_view s = compact;
  if (s.back() != 'i' && s.back() != 'j')
    return {detail::parse_real(s, text), 0.0};

  s.remove_suffix(1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? "" : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);

  double im = 0.0;
  if (im_part.empty() || im_part == "+")
    im = 1.0;
  else if (im_part == "-")
    im = -1.0;
  else
    im = detail::parse_real(im_part, text);
  const double re = re_part.empty() ? 0.0 : detail::parse_real(re_part, text);
  return {re, im};
}

inline ComplexMatrix parse_matrix_json(const nlohmann::json &doc) {
  try {
    const auto rows = doc.at("rows").get<std::size_t>();
    const auto cols = doc.at("cols").get<std::size_t>();
    const auto &raw = doc.at("entries");
    if (!raw.is_array())
      throw ParseError("'entries' must be an array");
    std::vector<Complex> entries;
    entries.reserve(raw.size());
    for (const auto &e : raw) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("each entry must be a [re, im] number pair");
      entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(e.what());
  }
}

inline ComplexMatrix parse_matrix_csv(std::istream &in) {
  std::vector<Complex> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty())
      continue;
    std::size_t count = 0;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      entries.push_back(parse_complex_literal(field));
      ++count;
    }
    if (!line.empty() && line.back() == ',')
      throw ParseError("trailing comma in row " + std::to_string(rows));
    if (rows == 0)
      cols = count;
    else if (count != cols)
      throw ParseError("row " + std::to_string(rows) + " has " + std::to_string(count) +
                       " columns, expected " + std::to_string(cols));
    ++rows;
  }
  if (rows == 0)
    throw EmptyMatrix("CSV input has no rows");
  return ComplexMatrix(rows, cols, std::move(entries));
}

inline ComplexMatrix load_matrix(std::istream &in, MatrixFormat format) {
  if (format == MatrixFormat::csv)
    return parse_matrix_csv(in);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(e.what());
  }
  return parse_matrix_json(doc);
}

/// Picks the format from the extension (.json / .csv), falling back to
/// sniffing the first non-blank character.
inline MatrixFormat detect_matrix_format(const std::filesystem::path &path, std::string_view head) {
  const auto ext = path.extension().string();
  if (ext == ".json")
    return MatrixFormat::json;
  if (ext == ".csv")
    return MatrixFormat::csv;
  const auto t = detail::trim(head);
  return (!t.empty() && t.front() == '{') ? MatrixFormat::json : MatrixFormat::csv;
}

inline ComplexMatrix load_matrix_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path.string() + "'");
  const std::string content{std::istreambuf_iterator<char>(in), {}};
  std::istringstream ss(content);
  return load_matrix(ss, detect_matrix_format(path, content.substr(0, 64)));
}

inline nlohmann::json to_json(const ComplexMatrix &m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto &a : m.entries())
    entries.push_back({a.real(), a.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

} // namespace bbqprep
