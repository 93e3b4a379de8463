#pragma once

// CSV emission. All files: UTF-8, LF line endings, one header line,
// doubles at 17 significant digits, no locale formatting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hexwave/wheel.hpp"

namespace hexwave {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    out_ << header << "\n";
  }

  void raw_row(const std::string& line) { out_ << line << "\n"; }

  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, put(fields)), ...);
    out_ << "\n";
  }

 private:
  void put(double v) { out_ << format_double(v); }
  void put(float v) { out_ << format_double(double(v)); }
  void put(u64 v) { out_ << v; }
  void put(int v) { out_ << v; }
  void put(unsigned v) { out_ << v; }
  void put(const char* s) { out_ << s; }
  void put(const std::string& s) { out_ << s; }
  std::ofstream out_;
};

}  // namespace hexwave
