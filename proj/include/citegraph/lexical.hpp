#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citegraph/csv.hpp"
#include "citegraph/error.hpp"
#include "citegraph/rng.hpp"

namespace citegraph {

struct TokenizeOptions {
  bool lowercase = true;
};

namespace detail {

// Strict UTF-8 well-formedness: rejects truncated sequences, overlong
// encodings, surrogates and values past U+10FFFF.
inline bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t min_value;
    if (c < 0x80) {
      i += 1;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      min_value = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      min_value = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      min_value = 0x10000;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    std::uint32_t value = c & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char cont = static_cast<unsigned char>(s[i + k]);
      if ((cont & 0xC0) != 0x80) return false;
      value = (value << 6) | (cont & 0x3F);
    }
    if (value < min_value) return false;
    if (value >= 0xD800 && value <= 0xDFFF) return false;
    if (value > 0x10FFFF) return false;
    i += len;
  }
  return true;
}

// ASCII letters and digits are token characters; so is any byte >= 0x80,
// which keeps multibyte letters intact without a Unicode table.
inline bool token_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

}  // namespace detail

// Splits text into lowercased tokens: maximal runs of letters, digits and
// internal apostrophes; every other character separates. An apostrophe only
// joins when token characters stand on both sides, so quoting never leaks
// into tokens.
inline std::vector<std::string> tokenize(std::string_view text, const TokenizeOptions& options = {}) {
  if (!detail::valid_utf8(text)) throw IngestError("invalid UTF-8 input");
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (detail::token_byte(c)) {
      current.push_back(options.lowercase && c < 0x80
                            ? static_cast<char>(std::tolower(c))
                            : static_cast<char>(c));
    } else if (c == '\'' && !current.empty() && i + 1 < text.size() &&
               detail::token_byte(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back('\'');
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

// Per-year token multisets, assembled from raw text or from count rows.
class LexCorpus {
 public:
  void add_tokens(int year, std::span<const std::string> tokens) {
    auto& bucket = years_[year];
    for (const std::string& t : tokens) ++bucket[t];
  }

  void add_count(int year, std::string token, std::uint64_t count) {
    if (token.empty()) throw IngestError("empty token in corpus input");
    if (count == 0) throw IngestError("token count must be >= 1");
    years_[year][std::move(token)] += count;
  }

  // Rows `token,year,count`; tokens are lowercased on the way in so counted
  // exports and raw-text ingestion agree on surface forms.
  static LexCorpus from_counts_csv(const std::filesystem::path& path) {
    LexCorpus corpus;
    CsvReader reader(path, "token,year,count");
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
      reader.require_fields(fields, 3);
      if (fields[0].empty()) reader.fail("empty token");
      if (!detail::valid_utf8(fields[0])) reader.fail("invalid UTF-8 token");
      std::string token = fields[0];
      for (char& c : token) {
        c = static_cast<unsigned char>(c) < 0x80 ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c;
      }
      const long long year = reader.parse_i64(fields[1], "year");
      const std::uint64_t count = reader.parse_u64(fields[2], "count");
      if (count == 0) reader.fail("count must be >= 1");
      corpus.add_count(static_cast<int>(year), std::move(token), count);
    }
    return corpus;
  }

  // A directory of YYYY.txt files, one per year. Files are visited in name
  // order; anything that is not a 4-digit .txt name is an error rather than
  // silently skipped.
  static LexCorpus from_text_directory(const std::filesystem::path& dir,
                                       const TokenizeOptions& options = {}) {
    if (!std::filesystem::is_directory(dir)) {
      throw IngestError(dir.string() + ": not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    LexCorpus corpus;
    for (const auto& path : files) {
      const std::string stem = path.stem().string();
      const bool four_digit_year =
          stem.size() == 4 && std::all_of(stem.begin(), stem.end(),
                                          [](unsigned char c) { return std::isdigit(c) != 0; });
      if (path.extension() != ".txt" || !four_digit_year) {
        throw IngestError(path.string() + ": expected files named YYYY.txt");
      }
      std::ifstream in(path, std::ios::binary);
      if (!in) throw IngestError(path.string() + ": cannot open file");
      std::ostringstream buffer;
      buffer << in.rdbuf();
      try {
        const auto tokens = tokenize(buffer.str(), options);
        corpus.add_tokens(std::stoi(stem), tokens);
      } catch (const IngestError& e) {
        throw IngestError(path.string() + ": " + e.what());
      }
    }
    return corpus;
  }

  bool empty() const { return years_.empty(); }

  const std::map<int, std::unordered_map<std::string, std::uint64_t>>& years() const {
    return years_;
  }

 private:
  std::map<int, std::unordered_map<std::string, std::uint64_t>> years_;
};

// One year's (or one checkpoint's) lexical tallies. hapax counts the tokens
// that appear exactly once in the bucket; always hapax <= vocabulary <=
// total_tokens.
struct LexStats {
  std::uint64_t total_tokens = 0;
  std::uint64_t vocabulary = 0;
  std::uint64_t hapax = 0;

  double hapax_fraction() const {
    return total_tokens == 0 ? 0.0 : static_cast<double>(hapax) / static_cast<double>(total_tokens);
  }
  double ttr() const {
    return total_tokens == 0 ? 0.0 : static_cast<double>(vocabulary) / static_cast<double>(total_tokens);
  }

  bool operator==(const LexStats&) const = default;
};

using LexSeries = std::map<int, LexStats>;

// Yearly totals, vocabulary and hapax counts. Years are independent:
// "appeared once" means once within that year's bucket.
inline LexSeries annual_lexical_stats(const LexCorpus& corpus) {
  if (corpus.empty()) throw std::invalid_argument("annual_lexical_stats: corpus is empty");
  LexSeries series;
  for (const auto& [year, bucket] : corpus.years()) {
    LexStats stats;
    for (const auto& [token, count] : bucket) {
      stats.total_tokens += count;
      ++stats.vocabulary;
      if (count == 1) ++stats.hapax;
    }
    series[year] = stats;
  }
  return series;
}

// Word-choice process: the first token is a fresh type; each later step
// coins a fresh type with probability alpha, otherwise repeats a uniformly
// random earlier token. The copy formulation is distribution-equivalent to
// type-weighted sampling and trivially reproducible from the seed.
struct SimonConfig {
  double alpha = 0.1;
  std::uint64_t n_tokens = 100000;
  std::uint64_t seed = 1;
};

namespace detail {

inline void validate(const SimonConfig& config) {
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0,1]");
  }
  if (config.n_tokens < 1) throw std::invalid_argument("n_tokens must be >= 1");
  if (config.n_tokens > (std::uint64_t{1} << 31)) {
    throw std::invalid_argument("n_tokens beyond supported stream length");
  }
}

}  // namespace detail

// Token stream as type ids (0, 1, 2, ... in order of first appearance).
inline std::vector<std::uint32_t> simon_generate(const SimonConfig& config) {
  detail::validate(config);
  Rng rng(config.seed);
  std::vector<std::uint32_t> stream;
  stream.reserve(config.n_tokens);
  std::uint32_t next_type = 0;
  stream.push_back(next_type++);
  for (std::uint64_t step = 1; step < config.n_tokens; ++step) {
    if (rng.next_unit() < config.alpha) {
      stream.push_back(next_type++);
    } else {
      stream.push_back(stream[rng.next_index(step)]);
    }
  }
  return stream;
}

// Type-token ratio and hapax fraction along prefixes of one generated
// stream. Checkpoints must be strictly increasing and within the stream.
inline std::vector<std::pair<std::uint64_t, LexStats>> dilution_curve(
    const SimonConfig& config, std::span<const std::uint64_t> checkpoints) {
  detail::validate(config);
  if (checkpoints.empty()) throw std::invalid_argument("dilution_curve: no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > config.n_tokens) {
      throw std::invalid_argument("checkpoint " + std::to_string(checkpoints[i]) +
                                  " outside [1, n_tokens]");
    }
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
  }
  // Only the longest checkpointed prefix is needed; the stream's prefix is
  // independent of anything generated after it.
  SimonConfig prefix = config;
  prefix.n_tokens = checkpoints.back();
  const auto stream = simon_generate(prefix);

  std::vector<std::pair<std::uint64_t, LexStats>> rows;
  rows.reserve(checkpoints.size());
  std::vector<std::uint64_t> counts;
  LexStats running;
  std::size_t next_checkpoint = 0;
  for (std::uint64_t i = 0; i < stream.size(); ++i) {
    const std::uint32_t type = stream[i];
    if (type >= counts.size()) counts.resize(type + 1, 0);
    const std::uint64_t c = ++counts[type];
    ++running.total_tokens;
    if (c == 1) {
      ++running.vocabulary;
      ++running.hapax;
    } else if (c == 2) {
      --running.hapax;
    }
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == i + 1) {
      rows.emplace_back(checkpoints[next_checkpoint], running);
      ++next_checkpoint;
    }
  }
  return rows;
}

}  // namespace citegraph
