#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gcb {

// Method names accepted by the harness. The five detection methods all use
// the community-size-then-degree ordering; slashburn produces its own
// ordering; random and identity are baselines.
inline const std::vector<std::string> kAllMethods = {
    "labelprop",    "multilevel", "fastgreedy", "leadingeigen",
    "infomap",      "slashburn",  "random",     "identity"};

struct DatasetRef {
  std::string name;
  std::string path;
};

struct ExperimentConfig {
  std::vector<DatasetRef> datasets;
  std::vector<std::string> methods;
  std::vector<std::uint32_t> block_widths;
  std::uint64_t seed = 1;
  // < 1 means a fraction of n (at least 1 node), >= 1 an absolute count.
  double slashburn_k = 0.005;
  std::string output;        // CSV path; empty writes to stdout
  std::string json_output;   // optional JSON mirror
  std::uint32_t jobs = 1;
  // Off by default so identical configs produce byte-identical output;
  // wall-clock values always go to the log.
  bool report_timings = false;
};

// Reads a JSON config file. Recognized keys: datasets (array of
// {name, path}), manifest (path to a JSON object of name -> path), methods,
// block_widths, seed, slashburn_k, output, json_output, jobs,
// report_timings. Throws std::runtime_error on unreadable or invalid input.
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& config);

struct ReportRow {
  std::string dataset;
  std::string method;
  std::uint64_t seed = 0;
  std::uint32_t b = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::optional<std::uint64_t> num_communities;  // blank for orderings
  std::optional<double> objective;               // blank for orderings
  std::uint64_t cost1 = 0;
  double nonempty_fraction = 0.0;
  double cost2_total_bits = 0.0;
  double bits_per_link = 0.0;
  double detect_ms = 0.0;
  double order_ms = 0.0;
  double cost_ms = 0.0;
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  // Datasets that failed to load plus cells that failed to run; nonzero
  // means a partial (or total) failure.
  std::uint32_t failures = 0;
};

// Runs the full pipeline for every dataset x method x block width. Each
// dataset loads once; a dataset that fails to load is skipped with a logged
// error and counted in failures. Deterministic for a fixed config.
ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "dataset,method,seed,b,n,m,num_communities,objective,cost1,"
    "nonempty_fraction,cost2_total_bits,bits_per_link,detect_ms,order_ms,"
    "cost_ms";

// CSV with the exact header above; reals carry 6 significant digits.
// Throws std::invalid_argument on empty rows and std::runtime_error on an
// unwritable path. Both emitters recheck the derived-column identities
// before writing.
void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out);
void emit_csv_file(const std::vector<ReportRow>& rows, const std::string& path);
void emit_json(const std::vector<ReportRow>& rows, std::ostream& out);
void emit_json_file(const std::vector<ReportRow>& rows, const std::string& path);
std::vector<ReportRow> rows_from_json(std::istream& in);

}  // namespace gcb
