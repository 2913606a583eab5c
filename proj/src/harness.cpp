#include "fbmc/harness.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "fbmc/experiments.hpp"
#include "fbmc/metrics.hpp"
#include "fbmc/prototype_filter.hpp"
#include "fbmc/rng.hpp"

namespace fbmc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  for (auto& ch : out)
    if (ch == '-') ch = '_';
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", key, text));
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "on" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "off" || text == "no") return false;
  throw ConfigError(fmt::format("{}: expected on/off, got '{}'", key, text));
}

// Comma separated values, where an item `a:b:step` expands to a grid.
std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::string_view rest = trim(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) throw ConfigError(fmt::format("{}: empty list item", key));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      out.push_back(parse_number<double>(key, item));
      continue;
    }
    const auto second = item.find(':', colon + 1);
    if (second == std::string_view::npos)
      throw ConfigError(fmt::format("{}: range '{}' needs first:last:step", key, item));
    const double first = parse_number<double>(key, item.substr(0, colon));
    const double last = parse_number<double>(key, item.substr(colon + 1, second - colon - 1));
    const double step = parse_number<double>(key, item.substr(second + 1));
    if (!(step > 0.0) || last < first)
      throw ConfigError(fmt::format("{}: range '{}' must ascend with a positive step", key, item));
    const auto grid = linear_grid(first, last, step);
    out.insert(out.end(), grid.begin(), grid.end());
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out += fmt::format("{}{}", i ? "," : "", values[i]);
  return out;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string_view scheme_label(CompanderKind kind) {
  return kind == CompanderKind::Identity ? "conventional" : to_string(kind);
}

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const ExperimentConfig& config,
          std::string_view header)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    out_ << fmt::format("# fbmc-sim {} config={:016x}\n", FBMC_VERSION, config_hash(config));
    out_ << header << '\n';
  }

  template <typename... Args>
  void row(fmt::format_string<Args...> f, Args&&... args) {
    out_ << fmt::format(f, std::forward<Args>(args)...) << '\n';
  }

  std::filesystem::path close() {
    out_.close();
    if (!out_) throw std::runtime_error(fmt::format("error writing {}", path_.string()));
    return path_;
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

PaprRun papr_run(const ExperimentConfig& config, CompanderKind kind, int subcarriers) {
  PaprRun run;
  run.scheme = config.spec_for(kind);
  run.subcarriers = subcarriers;
  run.samples_per_period = config.samples_per_period > 0 && subcarriers == config.subcarriers
                               ? config.samples_per_period
                               : 0;
  run.overlap_factor = config.overlap_factor;
  run.symbols_total = config.symbols;
  run.blocks_per_frame = config.blocks_per_frame;
  run.constellation = config.constellation;
  run.seed = config.seed;
  run.workers = config.workers;
  return run;
}

PsdRun psd_run(const ExperimentConfig& config, CompanderKind kind) {
  PsdRun run;
  run.scheme = config.spec_for(kind);
  run.subcarriers = config.subcarriers;
  run.samples_per_period = config.samples_per_period;
  run.overlap_factor = config.overlap_factor;
  run.blocks = config.psd_blocks;
  run.constellation = config.constellation;
  run.seed = config.seed;
  run.segment = config.psd_segment;
  run.guard_subcarriers = config.psd_guard;
  return run;
}

BerConfig ber_config(const ExperimentConfig& config, CompanderKind kind) {
  BerConfig ber;
  ber.scheme = config.spec_for(kind);
  ber.min_errors = config.min_errors;
  ber.max_bits = config.max_bits;
  ber.seed = derive_seed(config.seed, 40, static_cast<std::uint64_t>(kind));
  ber.subcarriers = config.subcarriers;
  ber.blocks_per_frame = config.blocks_per_frame;
  ber.samples_per_period = config.samples_per_period;
  ber.overlap_factor = config.overlap_factor;
  ber.constellation = config.constellation;
  ber.expand_at_receiver = config.expander;
  return ber;
}

std::filesystem::path write_ccdf(const ExperimentConfig& config) {
  const auto grid = config.gamma_grid();
  CsvFile csv(config.out_dir / "ccdf.csv", config,
              "scheme,K,gamma_db,ccdf_empirical,ccdf_theoretical");
  for (auto kind : config.schemes) {
    const auto pair = ccdf_experiment(papr_run(config, kind, config.subcarriers), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double theory = pair.theoretical ? pair.theoretical->prob_exceed[i]
                                             : std::numeric_limits<double>::quiet_NaN();
      csv.row("{},{},{},{},{}", scheme_label(kind), config.subcarriers, grid[i],
              pair.empirical.prob_exceed[i], theory);
    }
  }
  return csv.close();
}

std::filesystem::path write_ber(const ExperimentConfig& config) {
  const auto grid = config.snr_grid();
  CsvFile csv(config.out_dir / "ber.csv", config, "scheme,snr_db,bits,errors,ber");
  for (auto kind : config.schemes) {
    for (const auto& p : ber_sweep(ber_config(config, kind), grid, config.workers))
      csv.row("{},{},{},{},{}", scheme_label(kind), p.snr_db, p.bits, p.errors, p.ber);
  }
  return csv.close();
}

std::filesystem::path write_psd(const ExperimentConfig& config) {
  CsvFile csv(config.out_dir / "psd.csv", config, "scheme,freq_norm,psd_db");
  for (auto kind : config.schemes) {
    const auto result = psd_experiment(psd_run(config, kind));
    for (std::size_t i = 0; i < result.psd.freq_norm.size(); ++i)
      csv.row("{},{},{}", scheme_label(kind), result.psd.freq_norm[i], result.psd.psd_db[i]);
  }
  return csv.close();
}

std::filesystem::path write_table(const ExperimentConfig& config) {
  const int k = config.subcarriers;
  CsvFile csv(config.out_dir / "table.csv", config,
              fmt::format("scheme,papr_db_K{},papr_db_K{},snr_db_ber_1e-2,snr_db_ber_1e-3,"
                          "psd_oob_db",
                          k, 2 * k));
  const auto snr = config.snr_grid();
  for (auto kind : config.schemes) {
    const double papr_k = papr_quantile_db(collect_paprs(papr_run(config, kind, k)), 1e-2);
    const double papr_2k = papr_quantile_db(collect_paprs(papr_run(config, kind, 2 * k)), 1e-2);
    const auto ber = ber_sweep(ber_config(config, kind), snr, config.workers);
    const double psd = psd_experiment(psd_run(config, kind)).oob_floor_db;
    csv.row("{},{},{},{},{},{}", scheme_label(kind), papr_k, papr_2k, snr_at_ber(ber, 1e-2),
            snr_at_ber(ber, 1e-3), psd);
  }
  return csv.close();
}

std::vector<std::filesystem::path> write_dumps(const ExperimentConfig& config) {
  std::vector<std::filesystem::path> files;
  const int n = config.samples_per_period > 0 ? config.samples_per_period : config.subcarriers;
  const auto filter = PrototypeFilter::phydyas(config.overlap_factor, n);
  if (config.dump_taps) {
    const auto path = config.out_dir / "taps.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    write_taps_csv(filter, out);
    files.push_back(path);
  }
  if (config.dump_iq) {
    // first frame of the ccdf run, as every scheme sees it
    const auto block = generate_symbols(config.subcarriers,
                                        static_cast<int>(std::min<long>(config.blocks_per_frame,
                                                                        config.symbols)),
                                        config.constellation, derive_seed(config.seed, 10, 0));
    const auto frame = synthesize(oqam_stagger(block), filter);
    for (auto kind : config.schemes) {
      const auto path = config.out_dir / fmt::format("frame_{}.iq", scheme_label(kind));
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
      write_iq(apply_to_frame(frame, config.spec_for(kind)).samples, out);
      files.push_back(path);
    }
  }
  return files;
}

using Setter = void (*)(ExperimentConfig&, std::string_view, std::string_view);

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"experiment", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         try {
           c.experiment = parse_experiment_kind(trim(v));
         } catch (const std::invalid_argument& e) {
           throw ConfigError(fmt::format("{}: {}", k, e.what()));
         }
       }},
      {"scheme", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         std::vector<CompanderKind> kinds;
         std::string_view rest = trim(v);
         if (rest == "all") {
           c.schemes = ExperimentConfig{}.schemes;
           return;
         }
         while (!rest.empty()) {
           const auto comma = rest.find(',');
           const auto item = trim(rest.substr(0, comma));
           rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
           try {
             kinds.push_back(parse_compander_kind(item));
           } catch (const std::invalid_argument& e) {
             throw ConfigError(fmt::format("{}: {}", k, e.what()));
           }
         }
         if (kinds.empty()) throw ConfigError(fmt::format("{}: no scheme given", k));
         c.schemes = kinds;
       }},
      {"subcarriers", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.subcarriers = parse_number<int>(k, v);
       }},
      {"samples_per_period", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.samples_per_period = parse_number<int>(k, v);
       }},
      {"overlap_factor", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.overlap_factor = parse_number<int>(k, v);
       }},
      {"symbols", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.symbols = parse_number<long>(k, v);
       }},
      {"blocks_per_frame", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.blocks_per_frame = parse_number<int>(k, v);
       }},
      {"constellation", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         try {
           c.constellation = parse_constellation(trim(v));
         } catch (const std::invalid_argument& e) {
           throw ConfigError(fmt::format("{}: {}", k, e.what()));
         }
       }},
      {"mu", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.mu = parse_number<double>(k, v);
       }},
      {"c", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.c = parse_number<double>(k, v);
       }},
      {"cutoff", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.cutoff = parse_number<double>(k, v);
       }},
      {"sigma", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         if (trim(v) == "auto")
           c.sigma.reset();
         else
           c.sigma = parse_number<double>(k, v);
       }},
      {"expansion_cap", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.expansion_cap = parse_number<double>(k, v);
       }},
      {"seed", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.seed = parse_number<std::uint64_t>(k, v);
       }},
      {"gamma_db", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.gamma_grid_db = parse_list(k, v);
       }},
      {"snr_db", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.snr_grid_db = parse_list(k, v);
       }},
      {"min_errors", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.min_errors = parse_number<std::uint64_t>(k, v);
       }},
      {"max_bits", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.max_bits = parse_number<std::uint64_t>(k, v);
       }},
      {"expander", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.expander = parse_bool(k, v);
       }},
      {"psd_blocks", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.psd_blocks = parse_number<int>(k, v);
       }},
      {"psd_segment", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.psd_segment = parse_number<std::size_t>(k, v);
       }},
      {"psd_guard", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.psd_guard = parse_number<double>(k, v);
       }},
      {"dump_iq", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.dump_iq = parse_bool(k, v);
       }},
      {"dump_taps", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.dump_taps = parse_bool(k, v);
       }},
      {"workers", [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.workers = parse_number<int>(k, v);
       }},
      {"out", [](ExperimentConfig& c, std::string_view, std::string_view v) {
         c.out_dir = std::string(trim(v));
       }},
  };
  return table;
}

bool ascending(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "ccdf") return ExperimentKind::Ccdf;
  if (name == "ber") return ExperimentKind::Ber;
  if (name == "psd") return ExperimentKind::Psd;
  if (name == "table" || name == "compander-table") return ExperimentKind::CompanderTable;
  throw std::invalid_argument(fmt::format("unknown experiment '{}'", name));
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Ccdf: return "ccdf";
    case ExperimentKind::Ber: return "ber";
    case ExperimentKind::Psd: return "psd";
    case ExperimentKind::CompanderTable: return "table";
  }
  return "?";
}

std::vector<double> ExperimentConfig::gamma_grid() const {
  return gamma_grid_db.empty() ? linear_grid(0.0, 14.0, 0.05) : gamma_grid_db;
}

std::vector<double> ExperimentConfig::snr_grid() const {
  return snr_grid_db.empty() ? linear_grid(0.0, 40.0, 2.0) : snr_grid_db;
}

CompanderSpec ExperimentConfig::spec_for(CompanderKind kind) const {
  CompanderSpec spec;
  switch (kind) {
    case CompanderKind::Identity: spec = CompanderSpec::identity(); break;
    case CompanderKind::MuLaw: spec = CompanderSpec::mu_law(mu); break;
    case CompanderKind::UniformPdf: spec = CompanderSpec::uniform_pdf(c, sigma); break;
    case CompanderKind::LinearPdf: spec = CompanderSpec::linear_pdf(c, cutoff, sigma); break;
  }
  spec.expansion_cap = expansion_cap;
  return spec;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, std::string_view field, std::string_view what) {
    if (!ok) throw ConfigError(fmt::format("{}: {}", field, what));
  };
  require(!schemes.empty(), "scheme", "at least one scheme is required");
  require(subcarriers >= 1, "subcarriers", "must be positive");
  require(samples_per_period == 0 || samples_per_period >= subcarriers, "samples_per_period",
          "must be 0 or at least the subcarrier count");
  require(samples_per_period % 2 == 0 && subcarriers % 2 == 0, "subcarriers",
          "samples per period must be even");
  require(overlap_factor >= 2 && overlap_factor <= 4, "overlap_factor", "must be 2, 3 or 4");
  require(symbols >= 1, "symbols", "must be positive");
  require(blocks_per_frame >= 1, "blocks_per_frame", "must be positive");
  require(min_errors >= 1, "min_errors", "must be positive");
  require(max_bits >= 1, "max_bits", "must be positive");
  require(psd_blocks >= 1, "psd_blocks", "must be positive");
  require(psd_segment >= 16, "psd_segment", "must be at least 16");
  require(psd_guard >= 0.0, "psd_guard", "must be nonnegative");
  require(workers >= 1, "workers", "must be positive");
  require(ascending(gamma_grid()), "gamma_db", "grid must be strictly ascending");
  require(ascending(snr_grid()), "snr_db", "grid must be strictly ascending");
  for (auto kind : schemes) {
    try {
      spec_for(kind).validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("scheme {}: {}", to_string(kind), e.what()));
    }
  }
}

void set_key(ExperimentConfig& config, std::string_view key, std::string_view value) {
  const auto name = normalize_key(key);
  const auto it = setters().find(name);
  if (it == setters().end()) throw ConfigError(fmt::format("unknown key '{}'", name));
  it->second(config, name, value);
}

void load_config(ExperimentConfig& config, std::istream& in, std::string_view origin) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos)
      text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("{}:{}: expected key = value", origin, number));
    try {
      set_key(config, text.substr(0, eq), text.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", origin, number, e.what()));
    }
  }
}

void load_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config: cannot open {}", path.string()));
  load_config(config, in, path.string());
}

std::string canonical_text(const ExperimentConfig& config) {
  std::string schemes;
  for (std::size_t i = 0; i < config.schemes.size(); ++i)
    schemes += fmt::format("{}{}", i ? "," : "", to_string(config.schemes[i]));
  std::string out;
  auto add = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  add("experiment", to_string(config.experiment));
  add("scheme", schemes);
  add("subcarriers", config.subcarriers);
  add("samples_per_period", config.samples_per_period);
  add("overlap_factor", config.overlap_factor);
  add("symbols", config.symbols);
  add("blocks_per_frame", config.blocks_per_frame);
  add("constellation", to_string(config.constellation));
  add("mu", config.mu);
  add("c", config.c);
  add("cutoff", config.cutoff);
  add("sigma", config.sigma ? fmt::format("{}", *config.sigma) : std::string("auto"));
  add("expansion_cap", config.expansion_cap);
  add("seed", config.seed);
  add("gamma_db", join(config.gamma_grid()));
  add("snr_db", join(config.snr_grid()));
  add("min_errors", config.min_errors);
  add("max_bits", config.max_bits);
  add("expander", config.expander ? "on" : "off");
  add("psd_blocks", config.psd_blocks);
  add("psd_segment", config.psd_segment);
  add("psd_guard", config.psd_guard);
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  return fnv1a(canonical_text(config));
}

ExperimentConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"FBMC-OQAM PAPR companding simulator", "fbmc-sim"};
  app.set_version_flag("--version", std::string(FBMC_VERSION));

  std::string experiment;
  std::string config_path;
  app.add_option("experiment,--experiment", experiment, "ccdf, ber, psd or table");
  app.add_option("--config", config_path, "flat key = value file; flags override it");

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  static constexpr Flag flags[] = {
      {"--scheme", "scheme", "identity|mulaw|uniform|linear, comma separated, or all"},
      {"--subcarriers", "subcarriers", "number of subcarriers K"},
      {"--samples-per-period", "samples_per_period", "samples per symbol period N (0: auto)"},
      {"--overlap", "overlap_factor", "prototype overlap factor"},
      {"--symbols", "symbols", "total FBMC symbols for the PAPR runs"},
      {"--blocks-per-frame", "blocks_per_frame", "symbols per simulated frame"},
      {"--constellation", "constellation", "qpsk or qam16"},
      {"--mu", "mu", "mu-law parameter"},
      {"--c", "c", "inflection point in units of sigma"},
      {"--cutoff", "cutoff", "linear-pdf cutoff A_c in units of sigma"},
      {"--sigma", "sigma", "fixed compander sigma, or auto"},
      {"--gamma-db", "gamma_db", "PAPR threshold grid, list or first:last:step"},
      {"--snr-db", "snr_db", "SNR grid in dB, list or first:last:step"},
      {"--min-errors", "min_errors", "bit errors to collect per SNR point"},
      {"--max-bits", "max_bits", "bit budget per SNR point"},
      {"--expander", "expander", "invert the compander at the receiver (on/off)"},
      {"--psd-blocks", "psd_blocks", "symbols in the PSD frame"},
      {"--seed", "seed", "master seed"},
      {"--workers", "workers", "worker threads"},
      {"--dump-iq", "dump_iq", "also write the first frame as raw IQ (on/off)"},
      {"--dump-taps", "dump_taps", "also write the prototype taps (on/off)"},
      {"--out", "out", "output directory"},
  };
  std::vector<std::string> values(std::size(flags));
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < std::size(flags); ++i)
    options.push_back(app.add_option(flags[i].name, values[i], flags[i].help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::CallForVersion&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  ExperimentConfig config;
  if (!config_path.empty()) load_config_file(config, config_path);
  if (!experiment.empty()) set_key(config, "experiment", experiment);
  for (std::size_t i = 0; i < std::size(flags); ++i)
    if (options[i]->count() > 0) set_key(config, flags[i].key, values[i]);
  config.validate();
  return config;
}

std::vector<std::filesystem::path> run(const ExperimentConfig& config) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec)
    throw std::runtime_error(
        fmt::format("cannot create {}: {}", config.out_dir.string(), ec.message()));

  std::vector<std::filesystem::path> files;
  switch (config.experiment) {
    case ExperimentKind::Ccdf: files.push_back(write_ccdf(config)); break;
    case ExperimentKind::Ber: files.push_back(write_ber(config)); break;
    case ExperimentKind::Psd: files.push_back(write_psd(config)); break;
    case ExperimentKind::CompanderTable: files.push_back(write_table(config)); break;
  }
  for (auto& f : write_dumps(config)) files.push_back(std::move(f));
  return files;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << "usage: fbmc-sim <ccdf|ber|psd|table> [--config PATH] [--scheme S] "
           "[--subcarriers K] [--symbols N] [--c C] [--cutoff A] [--mu MU] "
           "[--snr-db LIST] [--seed S] [--workers W] [--out DIR]\n";
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "fbmc-sim " << FBMC_VERSION << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "fbmc-sim: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "fbmc-sim: " << e.what() << '\n';
    return 2;
  }

  try {
    for (const auto& path : run(config)) out << path.string() << '\n';
  } catch (const ConfigError& e) {
    err << "fbmc-sim: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "fbmc-sim: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace fbmc
