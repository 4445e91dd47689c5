#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "citegraph/error.hpp"

namespace citegraph {

// Strict line-oriented CSV: no quoting, no embedded commas or newlines in
// fields. Every format this project reads or writes is numeric or plain
// tokens, so the simple dialect is deliberate. Accepts LF or CRLF and an
// optional UTF-8 BOM before the header.
class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path, std::string_view expected_header)
      : path_(path.string()), in_(path) {
    if (!in_) throw IngestError(path_ + ": cannot open file");
    std::string header;
    if (!read_line(header)) throw IngestError(path_ + ": empty file, expected header '" + std::string(expected_header) + "'");
    if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
    if (header != expected_header) {
      throw IngestError(path_ + ":1: malformed header '" + header + "', expected '" + std::string(expected_header) + "'");
    }
  }

  // Fetches the next non-empty row split on commas. Returns false at EOF.
  bool next_row(std::vector<std::string>& fields) {
    while (read_line(line_)) {
      if (line_.empty()) continue;  // tolerate blank lines, e.g. a trailing newline
      fields.clear();
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = line_.find(',', start);
        if (comma == std::string::npos) {
          fields.emplace_back(line_, start);
          break;
        }
        fields.emplace_back(line_, start, comma - start);
        start = comma + 1;
      }
      return true;
    }
    return false;
  }

  std::size_t line_number() const { return line_number_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw IngestError(path_ + ":" + std::to_string(line_number_) + ": " + what);
  }

  void require_fields(const std::vector<std::string>& fields, std::size_t n) const {
    if (fields.size() != n) {
      fail("expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));
    }
  }

  std::uint64_t parse_u64(const std::string& field, const char* what) const {
    std::uint64_t out = 0;
    if (!from_chars_all(field, out)) fail(std::string("unparseable ") + what + " '" + field + "'");
    return out;
  }

  long long parse_i64(const std::string& field, const char* what) const {
    long long out = 0;
    if (!from_chars_all(field, out)) fail(std::string("unparseable ") + what + " '" + field + "'");
    return out;
  }

 private:
  template <typename T>
  static bool from_chars_all(const std::string& s, T& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
  }

  bool read_line(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_number_;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  }

  std::string path_;
  std::ifstream in_;
  std::string line_;
  std::size_t line_number_ = 0;  // incremented per physical line; header is line 1
};

// Writes content to path via a temporary file and rename, so an existing
// output is never left partially overwritten.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IngestError(tmp.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IngestError(tmp.string() + ": write failed");
    }
  }
  std::error_code rename_ec;
  std::filesystem::rename(tmp, path, rename_ec);
  if (rename_ec) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw IngestError(path.string() + ": rename failed: " + rename_ec.message());
  }
}

}  // namespace citegraph
