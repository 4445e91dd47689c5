#include "citegraph/lexical.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

using namespace citegraph;

namespace {

TEST(Tokenize, BasicSentence) {
  EXPECT_EQ(tokenize("The cat sat."), (std::vector<std::string>{"the", "cat", "sat"}));
}

TEST(Tokenize, EmptyInput) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  ...  !!").empty());
}

TEST(Tokenize, InternalApostrophes) {
  EXPECT_EQ(tokenize("don't STOP don't"),
            (std::vector<std::string>{"don't", "stop", "don't"}));
  // Quoting apostrophes are separators, internal ones are not.
  EXPECT_EQ(tokenize("'quoted' o'clock rock'"),
            (std::vector<std::string>{"quoted", "o'clock", "rock"}));
}

TEST(Tokenize, DigitsAndMixedRuns) {
  EXPECT_EQ(tokenize("IPv6 42 x86_64"),
            (std::vector<std::string>{"ipv6", "42", "x86", "64"}));
}

TEST(Tokenize, MultibyteLettersSurvive) {
  const auto tokens = tokenize("caf\xC3\xA9 naive");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0], "caf\xC3\xA9");
}

TEST(Tokenize, InvalidUtf8Rejected) {
  EXPECT_THROW(tokenize("abc\xFF"), IngestError);
  EXPECT_THROW(tokenize("trunc\xC3"), IngestError);
  EXPECT_THROW(tokenize("overlong\xC0\xAF"), IngestError);
}

TEST(Tokenize, Idempotent) {
  const std::string text = "It's 2024: the 3rd \"mixed\" case, isn't it?";
  const auto once = tokenize(text);
  std::string joined;
  for (const auto& t : once) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  EXPECT_EQ(tokenize(joined), once);
}

TEST(AnnualStats, HandCountFixture) {
  LexCorpus corpus;
  const std::vector<std::string> tokens{"the", "cat", "sat", "the", "mat"};
  corpus.add_tokens(2000, tokens);
  const auto series = annual_lexical_stats(corpus);
  const auto& stats = series.at(2000);
  EXPECT_EQ(stats.total_tokens, 5u);
  EXPECT_EQ(stats.vocabulary, 4u);
  EXPECT_EQ(stats.hapax, 3u);
  EXPECT_EQ(stats.hapax_fraction(), 0.6);
  EXPECT_EQ(stats.ttr(), 0.8);
}

TEST(AnnualStats, RepeatedSingleToken) {
  LexCorpus corpus;
  corpus.add_count(1999, "echo", 7);
  const auto& stats = annual_lexical_stats(corpus).at(1999);
  EXPECT_EQ(stats.vocabulary, 1u);
  EXPECT_EQ(stats.hapax, 0u);
  EXPECT_EQ(stats.ttr(), 1.0 / 7.0);
}

TEST(AnnualStats, AllDistinctYear) {
  LexCorpus corpus;
  const std::vector<std::string> tokens{"a", "b", "c"};
  corpus.add_tokens(2001, tokens);
  const auto& stats = annual_lexical_stats(corpus).at(2001);
  EXPECT_EQ(stats.hapax_fraction(), 1.0);
  EXPECT_EQ(stats.ttr(), 1.0);
}

TEST(AnnualStats, YearsAreIndependent) {
  LexCorpus corpus;
  corpus.add_count(2000, "word", 1);
  corpus.add_count(2001, "word", 1);
  const auto series = annual_lexical_stats(corpus);
  EXPECT_EQ(series.at(2000).hapax, 1u);  // hapax status does not leak across years
  EXPECT_EQ(series.at(2001).hapax, 1u);
}

TEST(AnnualStats, OrderingInvariant) {
  for (int year = 1990; year < 1995; ++year) {
    LexCorpus corpus;
    std::vector<std::string> tokens;
    for (int i = 0; i < 50; ++i) tokens.push_back("t" + std::to_string(i % (year - 1985)));
    corpus.add_tokens(year, tokens);
    const auto& stats = annual_lexical_stats(corpus).at(year);
    EXPECT_LE(stats.hapax, stats.vocabulary);
    EXPECT_LE(stats.vocabulary, stats.total_tokens);
  }
}

TEST(AnnualStats, EmptyCorpusRejected) {
  EXPECT_THROW(annual_lexical_stats(LexCorpus{}), std::invalid_argument);
}

TEST(CorpusCsv, ReadsCountRows) {
  const auto path = std::filesystem::temp_directory_path() / "lex_counts.csv";
  std::ofstream(path) << "token,year,count\nThe,2000,2\ncat,2000,1\nsat,2000,1\nmat,2000,1\n";
  const auto corpus = LexCorpus::from_counts_csv(path);
  const auto& stats = annual_lexical_stats(corpus).at(2000);
  EXPECT_EQ(stats.total_tokens, 5u);
  EXPECT_EQ(stats.vocabulary, 4u);  // "The" lowercased on ingest
  EXPECT_EQ(stats.hapax, 3u);
}

TEST(CorpusCsv, RejectsZeroCounts) {
  const auto path = std::filesystem::temp_directory_path() / "lex_zero.csv";
  std::ofstream(path) << "token,year,count\nthe,2000,0\n";
  EXPECT_THROW(LexCorpus::from_counts_csv(path), IngestError);
}

TEST(CorpusDir, ReadsYearFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "lex_years";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "2000.txt") << "The cat sat the mat";
  std::ofstream(dir / "2001.txt") << "all new words";
  const auto corpus = LexCorpus::from_text_directory(dir);
  const auto series = annual_lexical_stats(corpus);
  EXPECT_EQ(series.at(2000).total_tokens, 5u);
  EXPECT_EQ(series.at(2001).vocabulary, 3u);
}

TEST(CorpusDir, RejectsStrayFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "lex_bad";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "notes.txt") << "хм";
  EXPECT_THROW(LexCorpus::from_text_directory(dir), IngestError);
}

TEST(Simon, AlphaOneAllDistinct) {
  const auto stream = simon_generate({1.0, 500, 3});
  ASSERT_EQ(stream.size(), 500u);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    EXPECT_EQ(stream[i], static_cast<std::uint32_t>(i));
  }
}

TEST(Simon, AlphaZeroSingleType) {
  const auto stream = simon_generate({0.0, 500, 3});
  for (const auto t : stream) EXPECT_EQ(t, 0u);
}

TEST(Simon, DeterministicGivenSeed) {
  EXPECT_EQ(simon_generate({0.3, 2000, 11}), simon_generate({0.3, 2000, 11}));
  EXPECT_NE(simon_generate({0.3, 2000, 11}), simon_generate({0.3, 2000, 12}));
}

TEST(Simon, VocabularyNearExpectedInnovationCount) {
  // Innovations past the first token are Bernoulli(alpha) per step.
  const double alpha = 0.1;
  const std::uint64_t n = 100000;
  const auto stream = simon_generate({alpha, n, 7});
  const std::uint32_t vocab = *std::max_element(stream.begin(), stream.end()) + 1;
  const double expected = 1.0 + alpha * static_cast<double>(n - 1);
  const double sd = std::sqrt(static_cast<double>(n - 1) * alpha * (1 - alpha));
  EXPECT_NEAR(static_cast<double>(vocab), expected, 3.0 * sd);
}

TEST(Simon, RejectsBadParameters) {
  EXPECT_THROW(simon_generate({-0.1, 10, 1}), std::invalid_argument);
  EXPECT_THROW(simon_generate({1.1, 10, 1}), std::invalid_argument);
  EXPECT_THROW(simon_generate({0.5, 0, 1}), std::invalid_argument);
}

TEST(DilutionCurve, AlphaOneStaysAtOne) {
  const auto rows = dilution_curve({1.0, 1000, 5}, std::vector<std::uint64_t>{10, 100, 1000});
  for (const auto& [n, stats] : rows) {
    EXPECT_EQ(stats.ttr(), 1.0);
    EXPECT_EQ(stats.hapax_fraction(), 1.0);
  }
}

TEST(DilutionCurve, FirstTokenCheckpoint) {
  const auto rows = dilution_curve({0.5, 100, 5}, std::vector<std::uint64_t>{1});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].second.ttr(), 1.0);
  EXPECT_EQ(rows[0].second.hapax_fraction(), 1.0);
}

TEST(DilutionCurve, TtrDeclinesAcrossDecades) {
  const auto rows =
      dilution_curve({0.1, 100000, 7}, std::vector<std::uint64_t>{1000, 10000, 100000});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(rows[0].second.ttr(), rows[1].second.ttr());
  EXPECT_GT(rows[1].second.ttr(), rows[2].second.ttr());
}

TEST(DilutionCurve, MatchesAnnualStatsOnFullPrefix) {
  const SimonConfig config{0.25, 5000, 9};
  const auto stream = simon_generate(config);
  const auto rows = dilution_curve(config, std::vector<std::uint64_t>{5000});
  LexCorpus corpus;
  std::vector<std::string> tokens;
  for (auto t : stream) tokens.push_back("w" + std::to_string(t));
  corpus.add_tokens(0, tokens);
  const auto& stats = annual_lexical_stats(corpus).at(0);
  EXPECT_EQ(rows[0].second, stats);
}

TEST(DilutionCurve, RejectsBadCheckpoints) {
  EXPECT_THROW(dilution_curve({0.5, 100, 1}, std::vector<std::uint64_t>{}), std::invalid_argument);
  EXPECT_THROW(dilution_curve({0.5, 100, 1}, std::vector<std::uint64_t>{10, 10}),
               std::invalid_argument);
  EXPECT_THROW(dilution_curve({0.5, 100, 1}, std::vector<std::uint64_t>{10, 101}),
               std::invalid_argument);
  EXPECT_THROW(dilution_curve({0.5, 100, 1}, std::vector<std::uint64_t>{0, 10}),
               std::invalid_argument);
}

}  // namespace
