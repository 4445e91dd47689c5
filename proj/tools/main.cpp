// citegraph: citation-graph analytics over edge-list CSV files.
//
// Subcommands: ingest, cd, mcd, growth, simulate, lexstats, lexsim. Every
// output is CSV with deterministic content for fixed inputs, seeds and any
// thread count; files are written via temp-and-rename so a failed run never
// leaves a half-written output behind.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "citegraph/disruption.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/growth.hpp"
#include "citegraph/io.hpp"
#include "citegraph/lexical.hpp"
#include "citegraph/simulate.hpp"
#include "citegraph/weighting.hpp"

namespace {

using namespace citegraph;

constexpr long long kAutoYear = std::numeric_limits<long long>::min();

struct GraphArgs {
  std::string nodes;
  std::string edges;
  int min_year = 0;
  int max_year = 9999;
  bool keep_time_violations = false;
};

void add_graph_args(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--nodes", args.nodes, "Nodes CSV with header paper_id,year")->required();
  cmd->add_option("--edges", args.edges, "Edges CSV with header citing_id,cited_id")->required();
  cmd->add_option("--min-year", args.min_year, "Drop papers published before this year")
      ->capture_default_str();
  cmd->add_option("--max-year", args.max_year, "Drop papers published after this year")
      ->capture_default_str();
  cmd->add_flag("--keep-time-violations", args.keep_time_violations,
                "Retain edges whose citing paper predates the cited paper");
}

LoadResult load(const GraphArgs& args) {
  IngestOptions options;
  options.min_year = args.min_year;
  options.max_year = args.max_year;
  options.drop_time_violations = !args.keep_time_violations;
  return load_graph(args.nodes, args.edges, options);
}

void add_threads(CLI::App* cmd, unsigned& threads) {
  cmd->add_option("--threads", threads,
                  "Cap metric parallelism; 0 = hardware. Output is identical for any value")
      ->capture_default_str();
}

void add_config_stub(CLI::App* cmd) {
  // Handled before parsing (see inject_config); registered here so the flag
  // shows up in --help.
  static std::string ignored;
  cmd->add_option("--config", ignored,
                  "Flat key=value file with the same keys as the long flags; "
                  "explicit flags override the file");
}

std::string year_span(int first, int last) {
  return std::to_string(first) + "-" + std::to_string(last);
}

WeightMode parse_weight_mode(const std::string& name) {
  const auto mode = weight_mode_from_string(name);
  if (!mode) throw CLI::ValidationError("--weight-mode", "unknown weight mode '" + name + "'");
  return *mode;
}

CLI::App* setup_ingest(CLI::App& app) {
  auto* cmd = app.add_subcommand("ingest", "Load and validate a citation graph, report drop counts");
  auto args = std::make_shared<GraphArgs>();
  auto report_path = std::make_shared<std::string>();
  auto threads = std::make_shared<unsigned>(0);
  add_graph_args(cmd, *args);
  cmd->add_option("--report", *report_path, "Also write the ingest report as a one-row CSV");
  add_threads(cmd, *threads);
  add_config_stub(cmd);
  cmd->callback([args, report_path] {
    const auto loaded = load(*args);
    std::cerr << render_report_kv(loaded.report) << "\n";
    if (!report_path->empty()) write_file_atomic(*report_path, render_report_csv(loaded.report));
    std::cerr << "ingest: " << loaded.graph.node_count() << " nodes, " << loaded.graph.edge_count()
              << " edges retained";
    if (!loaded.graph.empty()) {
      std::cerr << ", years " << year_span(loaded.graph.min_year(), loaded.graph.max_year());
    }
    std::cerr << "\n";
  });
  return cmd;
}

CLI::App* setup_cd(CLI::App& app) {
  auto* cmd = app.add_subcommand("cd", "Per-paper disruption index and its annual mean");
  auto args = std::make_shared<GraphArgs>();
  auto window = std::make_shared<int>(5);
  auto include_same_year = std::make_shared<bool>(false);
  auto threads = std::make_shared<unsigned>(0);
  auto out = std::make_shared<std::string>();
  auto annual_out = std::make_shared<std::string>();
  add_graph_args(cmd, *args);
  cmd->add_option("--window", *window, "Forward window in years")->capture_default_str();
  cmd->add_flag("--include-same-year", *include_same_year,
                "Count engagement from papers published in the focal year");
  add_threads(cmd, *threads);
  cmd->add_option("--out", *out, "Per-paper scores CSV (paper_id,year,n_t,cd)")->required();
  cmd->add_option("--annual-out", *annual_out, "Annual mean CSV (year,value,count)");
  add_config_stub(cmd);
  cmd->callback([args, window, include_same_year, threads, out, annual_out] {
    const auto loaded = load(*args);
    const auto scores = cd_all(loaded.graph, *window, *threads, *include_same_year);
    write_file_atomic(*out, render_scores_csv(scores));
    if (!annual_out->empty()) {
      write_file_atomic(*annual_out, render_series_csv(annual_mean_cd(scores)));
    }
    std::cerr << "cd: wrote " << scores.size() << " rows";
    if (!loaded.graph.empty()) {
      std::cerr << " (years " << year_span(loaded.graph.min_year(), loaded.graph.max_year()) << ")";
    }
    std::cerr << " to " << *out << "\n";
  });
  return cmd;
}

CLI::App* setup_mcd(CLI::App& app) {
  auto* cmd = app.add_subcommand("mcd", "Citation-weighted annual disruption index");
  auto args = std::make_shared<GraphArgs>();
  auto window = std::make_shared<int>(5);
  auto include_same_year = std::make_shared<bool>(false);
  auto threads = std::make_shared<unsigned>(0);
  auto mode_name = std::make_shared<std::string>("per-year-average");
  auto horizon = std::make_shared<long long>(kAutoYear);
  auto out = std::make_shared<std::string>();
  auto weights_out = std::make_shared<std::string>();
  add_graph_args(cmd, *args);
  cmd->add_option("--window", *window, "Forward window in years")->capture_default_str();
  cmd->add_flag("--include-same-year", *include_same_year,
                "Count engagement from papers published in the focal year");
  cmd->add_option("--weight-mode", *mode_name,
                  "Citation weight: per-year-average, raw-count or window-count")
      ->capture_default_str();
  cmd->add_option("--horizon", *horizon,
                  "Horizon year for per-year-average weights (default: latest publication year)");
  add_threads(cmd, *threads);
  cmd->add_option("--out", *out, "Weighted annual series CSV (year,value,count)")->required();
  cmd->add_option("--weights-out", *weights_out, "Per-paper weights CSV (paper_id,c_it,mode)");
  add_config_stub(cmd);
  cmd->callback([args, window, include_same_year, threads, mode_name, horizon, out, weights_out] {
    const auto loaded = load(*args);
    const WeightMode mode = parse_weight_mode(*mode_name);
    std::optional<int> horizon_year;
    if (*horizon != kAutoYear) {
      if (*horizon < std::numeric_limits<int>::min() || *horizon > std::numeric_limits<int>::max()) {
        throw std::invalid_argument("--horizon out of range");
      }
      horizon_year = static_cast<int>(*horizon);
    }
    const auto scores = cd_all(loaded.graph, *window, *threads, *include_same_year);
    const auto weights =
        citation_weights(loaded.graph, horizon_year, mode, *window, *include_same_year);
    const auto series = weighted_annual_mcd(scores, weights);
    write_file_atomic(*out, render_series_csv(series));
    if (!weights_out->empty()) write_file_atomic(*weights_out, render_weights_csv(weights));
    std::cerr << "mcd: wrote " << series.size() << " rows";
    if (!series.empty()) {
      std::cerr << " (years " << year_span(series.first_year(), series.last_year()) << ")";
    }
    std::cerr << " to " << *out << "\n";
  });
  return cmd;
}

CLI::App* setup_growth(CLI::App& app) {
  auto* cmd = app.add_subcommand("growth", "Annual totals and exponential growth fit");
  auto args = std::make_shared<GraphArgs>();
  auto series_name = std::make_shared<std::string>("publications");
  auto from = std::make_shared<long long>(kAutoYear);
  auto to = std::make_shared<long long>(kAutoYear);
  auto out = std::make_shared<std::string>();
  auto fit_out = std::make_shared<std::string>();
  auto threads = std::make_shared<unsigned>(0);
  add_graph_args(cmd, *args);
  cmd->add_option("--series", *series_name, "Which annual totals to emit")
      ->check(CLI::IsMember({"publications", "citations"}))
      ->capture_default_str();
  cmd->add_option("--from", *from, "First year of the fit range (default: first cohort)");
  cmd->add_option("--to", *to, "Last year of the fit range (default: last cohort)");
  add_threads(cmd, *threads);
  cmd->add_option("--out", *out, "Annual totals CSV (year,value,count)")->required();
  cmd->add_option("--fit-out", *fit_out, "Log-space OLS fit as a one-row CSV");
  add_config_stub(cmd);
  cmd->callback([args, series_name, from, to, out, fit_out] {
    const auto loaded = load(*args);
    auto [n_series, c_series] = annual_totals(loaded.graph);
    const AnnualSeries& series = (*series_name == "publications") ? n_series : c_series;
    write_file_atomic(*out, render_series_csv(series));
    std::cerr << "growth: wrote " << series.size() << " rows";
    if (!series.empty()) {
      std::cerr << " (years " << year_span(series.first_year(), series.last_year()) << ")";
    }
    std::cerr << " to " << *out;
    if (!fit_out->empty()) {
      if (series.empty()) throw std::invalid_argument("no data to fit");
      const int fit_from = (*from == kAutoYear) ? series.first_year() : static_cast<int>(*from);
      const int fit_to = (*to == kAutoYear) ? series.last_year() : static_cast<int>(*to);
      const auto fit = fit_exponential(series, fit_from, fit_to);
      write_file_atomic(*fit_out, render_growth_fit_csv(fit));
      std::cerr << "; rate " << format_value(fit.rate) << "/yr over " << fit.years_used
                << " years (r2 " << format_value(fit.r_squared) << ")";
    }
    std::cerr << "\n";
  });
  return cmd;
}

CLI::App* setup_simulate(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "simulate", "Generate a growing synthetic citation network and its disruption series");
  auto config = std::make_shared<SimConfig>();
  auto window = std::make_shared<int>(5);
  auto threads = std::make_shared<unsigned>(0);
  auto prefix = std::make_shared<std::string>();
  cmd->add_option("--n0", config->initial_papers, "Papers in the first cohort")->capture_default_str();
  cmd->add_option("--growth", config->growth, "Fractional cohort growth per year")->capture_default_str();
  cmd->add_option("--years", config->years, "Number of simulated cohorts")->capture_default_str();
  cmd->add_option("--refs", config->refs_per_paper, "References drawn per new paper")->capture_default_str();
  cmd->add_option("--attach-bias", config->attach_bias,
                  "Preferential-attachment exponent on (in-degree + 1); 0 = uniform")
      ->capture_default_str();
  cmd->add_option("--p-disrupt", config->p_disrupt,
                  "Chance a citer's remaining references are purged of a target's own references")
      ->capture_default_str();
  cmd->add_option("--seed", config->seed, "RNG seed")->capture_default_str();
  cmd->add_option("--window", *window, "Forward window for the emitted series")->capture_default_str();
  add_threads(cmd, *threads);
  cmd->add_option("--out-prefix", *prefix,
                  "Writes <prefix>_nodes.csv, <prefix>_edges.csv, <prefix>_cd.csv, <prefix>_mcd.csv")
      ->required();
  add_config_stub(cmd);
  cmd->callback([config, window, threads, prefix] {
    const auto result = dilution_experiment(*config, *window, *threads);
    write_file_atomic(*prefix + "_nodes.csv", render_nodes_csv(result.sim.graph));
    write_file_atomic(*prefix + "_edges.csv", render_edges_csv(result.sim.graph));
    write_file_atomic(*prefix + "_cd.csv", render_series_csv(result.cd_series));
    write_file_atomic(*prefix + "_mcd.csv", render_series_csv(result.mcd_series));
    std::cerr << "simulate: " << result.sim.graph.node_count() << " papers, "
              << result.sim.graph.edge_count() << " edges (" << result.sim.clamped_papers
              << " clamped), series years "
              << year_span(result.cd_series.first_year(), result.cd_series.last_year())
              << ", wrote 4 files at " << *prefix << "_*.csv\n";
  });
  return cmd;
}

CLI::App* setup_lexstats(CLI::App& app) {
  auto* cmd = app.add_subcommand("lexstats", "Yearly token totals, vocabulary and hapax counts");
  auto input = std::make_shared<std::string>();
  auto input_dir = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto threads = std::make_shared<unsigned>(0);
  auto* input_opt = cmd->add_option("--input", *input, "Count rows CSV (token,year,count)");
  auto* dir_opt = cmd->add_option("--input-dir", *input_dir, "Directory of YYYY.txt files");
  input_opt->excludes(dir_opt);
  dir_opt->excludes(input_opt);
  add_threads(cmd, *threads);
  cmd->add_option("--out", *out, "Output CSV (year,total_tokens,vocabulary,hapax,hapax_fraction,ttr)")
      ->required();
  add_config_stub(cmd);
  cmd->callback([input, input_dir, out] {
    if (input->empty() == input_dir->empty()) {
      throw CLI::ValidationError("lexstats", "exactly one of --input / --input-dir is required");
    }
    const LexCorpus corpus =
        input->empty() ? LexCorpus::from_text_directory(*input_dir) : LexCorpus::from_counts_csv(*input);
    const auto series = annual_lexical_stats(corpus);
    write_file_atomic(*out, render_lex_series_csv(series));
    std::cerr << "lexstats: wrote " << series.size() << " rows (years "
              << year_span(series.begin()->first, series.rbegin()->first) << ") to " << *out << "\n";
  });
  return cmd;
}

CLI::App* setup_lexsim(CLI::App& app) {
  auto* cmd = app.add_subcommand("lexsim", "Simon-model stream and its dilution curve");
  auto config = std::make_shared<SimonConfig>();
  auto checkpoints = std::make_shared<std::vector<std::uint64_t>>();
  auto out = std::make_shared<std::string>();
  auto threads = std::make_shared<unsigned>(0);
  cmd->add_option("--alpha", config->alpha, "Innovation probability")->capture_default_str();
  cmd->add_option("--n", config->n_tokens, "Stream length in tokens")->capture_default_str();
  cmd->add_option("--seed", config->seed, "RNG seed")->capture_default_str();
  cmd->add_option("--checkpoints", *checkpoints,
                  "Comma-separated prefix lengths to evaluate (default: n)")
      ->delimiter(',');
  add_threads(cmd, *threads);
  cmd->add_option("--out", *out, "Output CSV (tokens,vocabulary,hapax,hapax_fraction,ttr)")
      ->required();
  add_config_stub(cmd);
  cmd->callback([config, checkpoints, out] {
    if (checkpoints->empty()) checkpoints->push_back(config->n_tokens);
    const auto rows = dilution_curve(*config, *checkpoints);
    write_file_atomic(*out, render_dilution_csv(rows));
    std::cerr << "lexsim: wrote " << rows.size() << " rows (up to " << rows.back().first
              << " tokens) to " << *out << "\n";
  });
  return cmd;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

// Turns `--config file` into injected `--key=value` tokens ahead of the
// user's own flags. A key already present on the command line is skipped
// entirely, so explicit flags win and no option is ever seen twice.
std::vector<std::string> inject_config(const std::vector<std::string>& args, CLI::App* sub) {
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ValidationError("--config", "missing file argument");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> out{args[0]};
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IngestError(config_path + ": cannot open config file");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::string stripped = trim(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw CLI::ValidationError(
            "--config", config_path + ":" + std::to_string(line_no) + ": expected key=value");
      }
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      const std::string flag = "--" + key;
      if (!sub->get_option_no_throw(flag)) {
        throw CLI::ValidationError(
            "--config", config_path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
      const bool given_explicitly =
          std::any_of(rest.begin(), rest.end(), [&](const std::string& token) {
            return token == flag || token.rfind(flag + "=", 0) == 0;
          });
      if (!given_explicitly) out.push_back(flag + "=" + value);
    }
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Citation-graph analytics: disruption metrics, growth diagnostics,\n"
               "network simulation and lexical statistics over CSV inputs."};
  app.require_subcommand(1);
  const std::vector<CLI::App*> subcommands{
      setup_ingest(app), setup_cd(app),       setup_mcd(app),    setup_growth(app),
      setup_simulate(app), setup_lexstats(app), setup_lexsim(app),
  };

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
      const auto it = std::find_if(subcommands.begin(), subcommands.end(),
                                   [&](CLI::App* sub) { return sub->get_name() == args[0]; });
      if (it == subcommands.end()) {
        std::cerr << "citegraph: unknown subcommand '" << args[0] << "'\n";
        std::cerr << "Run with --help for usage.\n";
        return 1;
      }
      args = inject_config(args, *it);
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "citegraph: " << e.what() << "\n";
    std::cerr << "Run with --help for usage.\n";
    return 1;
  } catch (const citegraph::IngestError& e) {
    std::cerr << "citegraph: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "citegraph: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "citegraph: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "citegraph: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "citegraph: unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
