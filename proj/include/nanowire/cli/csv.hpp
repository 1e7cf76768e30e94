// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace nanowire::cli {

/// Comma-separated, header row, LF endings. Doubles use the shortest text
/// that reads back to the same value, so output is stable byte for byte.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(long long v);
  CsvWriter& operator<<(int v) { return *this << static_cast<long long>(v); }
  CsvWriter& operator<<(std::size_t v) { return *this << static_cast<long long>(v); }
  CsvWriter& operator<<(std::string_view v);
  /// Terminates the current row; throws if the column count is off.
  void end_row();
  /// Flushes and reports write failures as IoError.
  void close();

 private:
  void separator();

  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
  std::string row_;
};

/// Whole-file CSV reader for plot regeneration.
class CsvTable {
 public:
  static CsvTable read(const std::filesystem::path& path);

  bool has(std::string_view column) const;
  /// Numeric column; a missing column or unparsable cell is a ParseError
  /// naming the file, column and line.
  std::vector<double> numbers(std::string_view column) const;
  std::vector<std::string> strings(std::string_view column) const;
  std::size_t rows() const { return cells_.size(); }
  const std::vector<std::string>& header() const { return header_; }

 private:
  std::size_t index(std::string_view column) const;

  std::string name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> cells_;
};

}  // namespace nanowire::cli
