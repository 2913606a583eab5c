#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fbmc/compander.hpp"
#include "fbmc/modem.hpp"

namespace fbmc {

enum class ExperimentKind { Ccdf, Ber, Psd, CompanderTable };

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

/// Invalid or malformed configuration; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything one run depends on. Results are a pure function of this
/// struct apart from `workers` and `out_dir`, which never change the bytes
/// written.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Ccdf;
  std::vector<CompanderKind> schemes = {CompanderKind::Identity, CompanderKind::MuLaw,
                                        CompanderKind::UniformPdf, CompanderKind::LinearPdf};
  int subcarriers = 512;
  int samples_per_period = 0;  // 0: K for ccdf/ber, 2K for psd
  int overlap_factor = 4;
  long symbols = 10'000;
  int blocks_per_frame = 100;
  Constellation constellation = Constellation::Qpsk;
  double mu = 16.0;
  double c = 1.0;
  double cutoff = 1.2;
  std::optional<double> sigma;
  double expansion_cap = 8.0;
  std::uint64_t seed = 1;
  std::vector<double> gamma_grid_db = {};  // empty: 0:14:0.05
  std::vector<double> snr_grid_db = {};    // empty: 0:40:2
  std::uint64_t min_errors = 100;
  std::uint64_t max_bits = 1'000'000;
  bool expander = false;
  int psd_blocks = 200;
  std::size_t psd_segment = 1024;
  double psd_guard = 8.0;
  bool dump_iq = false;
  bool dump_taps = false;
  int workers = 1;
  std::filesystem::path out_dir = ".";

  std::vector<double> gamma_grid() const;
  std::vector<double> snr_grid() const;
  CompanderSpec spec_for(CompanderKind kind) const;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Assigns one `key = value` pair. Keys use underscores; dashes are accepted.
void set_key(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` lines, `#` starts a comment.
void load_config(ExperimentConfig& config, std::istream& in, std::string_view origin = "config");
void load_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// Canonical text of every result-affecting field, one `key = value` per line.
/// Feeding it back through load_config reproduces the config.
std::string canonical_text(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

/// Config file first, then command-line flags in order.
ExperimentConfig parse_args(int argc, const char* const* argv);

/// Runs the experiment and returns the files written.
std::vector<std::filesystem::path> run(const ExperimentConfig& config);

/// Full command-line entry point: 0 success, 2 config error, 3 runtime error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fbmc
