// SPDX-License-Identifier: Apache-2.0
#include "nanowire/cli/csv.hpp"

#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "nanowire/error.hpp"

namespace nanowire::cli {

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::initializer_list<std::string_view> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw IoError(fmt::format("cannot write '{}'", path.string()));
  for (auto h : header) *this << h;
  end_row();
}

void CsvWriter::separator() {
  if (filled_ > 0) row_ += ',';
  ++filled_;
}

CsvWriter& CsvWriter::operator<<(double v) {
  separator();
  fmt::format_to(std::back_inserter(row_), "{}", v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long v) {
  separator();
  fmt::format_to(std::back_inserter(row_), "{}", v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view v) {
  separator();
  row_ += v;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_)
    throw IoError(fmt::format("{}: row has {} cells, header has {}", path_.string(), filled_, columns_));
  row_ += '\n';
  out_ << row_;
  row_.clear();
  filled_ = 0;
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw IoError(fmt::format("write to '{}' failed", path_.string()));
  out_.close();
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  CsvTable t;
  t.name_ = path.filename().string();
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw ParseError(fmt::format("{}: empty file, expected a header row", t.name_));
  t.header_ = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header_.size())
      throw ParseError(fmt::format("{}:{}: {} cells, header has {}", t.name_, lineno, cells.size(),
                                   t.header_.size()));
    t.cells_.push_back(std::move(cells));
  }
  return t;
}

bool CsvTable::has(std::string_view column) const {
  for (const auto& h : header_)
    if (h == column) return true;
  return false;
}

std::size_t CsvTable::index(std::string_view column) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == column) return i;
  throw ParseError(fmt::format("{}: missing column '{}'", name_, column));
}

std::vector<double> CsvTable::numbers(std::string_view column) const {
  const std::size_t c = index(column);
  std::vector<double> out;
  out.reserve(cells_.size());
  for (std::size_t r = 0; r < cells_.size(); ++r) {
    const std::string& s = cells_[r][c];
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError(fmt::format("{}:{}: column '{}' holds '{}', not a number", name_, r + 2, column, s));
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> CsvTable::strings(std::string_view column) const {
  const std::size_t c = index(column);
  std::vector<std::string> out;
  for (const auto& row : cells_) out.push_back(row[c]);
  return out;
}

}  // namespace nanowire::cli
