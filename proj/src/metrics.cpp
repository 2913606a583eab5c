#include "fbmc/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "dft.hpp"
#include "fbmc/channel.hpp"
#include "fbmc/rng.hpp"

namespace fbmc {
namespace {

double mean_power(std::span<const cdouble> samples) {
  double acc = 0.0;
  for (const auto& s : samples) acc += std::norm(s);
  return acc / static_cast<double>(samples.size());
}

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("gamma grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("gamma grid must be ascending");
}

}  // namespace

std::string_view to_string(CcdfKind kind) {
  switch (kind) {
    case CcdfKind::Empirical: return "empirical";
    case CcdfKind::TheoreticalConventional: return "theoretical_conventional";
    case CcdfKind::TheoreticalUniform: return "theoretical_uniform";
    case CcdfKind::TheoreticalLinear: return "theoretical_linear";
  }
  return "?";
}

std::vector<double> papr_per_interval(std::span<const cdouble> samples,
                                      std::size_t interval, double reference_power) {
  if (interval == 0) throw std::invalid_argument("interval length must be positive");
  if (samples.size() < interval)
    throw std::invalid_argument(fmt::format(
        "frame of {} samples is shorter than one interval of {}", samples.size(), interval));
  if (!(reference_power > 0.0)) throw std::invalid_argument("reference power must be positive");
  std::vector<double> out;
  out.reserve((samples.size() + interval - 1) / interval);
  for (std::size_t start = 0; start < samples.size(); start += interval) {
    const std::size_t end = std::min(samples.size(), start + interval);
    double peak = 0.0;
    for (std::size_t n = start; n < end; ++n) peak = std::max(peak, std::norm(samples[n]));
    out.push_back(to_db(peak / reference_power));
  }
  return out;
}

std::vector<double> papr_per_interval(const FbmcFrame& frame) {
  const auto steady = frame.steady_state();
  if (steady.empty()) throw std::invalid_argument("frame is empty");
  return papr_per_interval(frame.samples,
                           static_cast<std::size_t>(frame.geometry.samples_per_period),
                           mean_power(steady));
}

std::vector<double> papr_ofdm(std::span<const cdouble> samples, std::size_t n) {
  if (n == 0 || samples.empty() || samples.size() % n != 0)
    throw std::invalid_argument("OFDM stream length must be a positive multiple of n");
  const double p = mean_power(samples);
  if (!(p > 0.0)) throw std::invalid_argument("OFDM stream has zero average power");
  return papr_per_interval(samples, n, p);
}

CcdfCurve ccdf_empirical(std::span<const double> paprs_db, std::span<const double> grid_db) {
  if (paprs_db.empty()) throw std::invalid_argument("no PAPR samples");
  check_grid(grid_db);
  std::vector<double> sorted(paprs_db.begin(), paprs_db.end());
  std::sort(sorted.begin(), sorted.end());
  CcdfCurve curve;
  curve.kind = CcdfKind::Empirical;
  curve.gamma_db.assign(grid_db.begin(), grid_db.end());
  const auto n = static_cast<double>(sorted.size());
  for (double g : grid_db) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), g);
    curve.prob_exceed.push_back(static_cast<double>(above) / n);
  }
  return curve;
}

CcdfCurve ccdf_theoretical(CcdfKind kind, const TheoreticalCcdfParams& params,
                           std::span<const double> grid_db) {
  check_grid(grid_db);
  if (!(params.alpha_t > 0.0)) throw std::invalid_argument("alpha_t must be positive");
  if (params.samples_per_interval < 1)
    throw std::invalid_argument("samples_per_interval must be positive");

  std::optional<CompanderSpec> shape;
  double mean_y = 1.0;
  switch (kind) {
    case CcdfKind::TheoreticalConventional:
      break;
    case CcdfKind::TheoreticalUniform:
      shape = CompanderSpec::uniform_pdf(params.c, 1.0);
      break;
    case CcdfKind::TheoreticalLinear:
      shape = CompanderSpec::linear_pdf(params.c, params.cutoff, 1.0);
      break;
    case CcdfKind::Empirical:
      throw std::invalid_argument("empirical curves come from ccdf_empirical");
  }
  if (shape) mean_y = target_mean_power(*shape);

  CcdfCurve curve;
  curve.kind = kind;
  curve.gamma_db.assign(grid_db.begin(), grid_db.end());
  const double n = params.samples_per_interval;
  for (double g_db : grid_db) {
    const double gamma = std::pow(10.0, g_db / 10.0);
    // per-sample P(Z > γ)
    const double above =
        shape ? 1.0 - target_cdf(*shape, std::sqrt(gamma * mean_y / params.alpha_t))
              : std::exp(-params.alpha_t * gamma);
    // 1 - (1 - above)^n, accurate for small `above`
    const double p = above >= 1.0 ? 1.0 : -std::expm1(n * std::log1p(-above));
    curve.prob_exceed.push_back(std::clamp(p, 0.0, 1.0));
  }
  return curve;
}

double steady_state_alpha_t(const PrototypeFilter& filter, int subcarriers,
                            double symbol_variance, double reference_power) {
  if (subcarriers < 1 || !(symbol_variance > 0.0) || !(reference_power > 0.0))
    throw std::invalid_argument("alpha_t needs positive K, variance and reference power");
  // Σ_m h(t - mT/2)² averaged over one half period equals Σ h² / (N/2).
  const double overlapped = filter.energy() / (filter.samples_per_period() / 2.0);
  return reference_power / (subcarriers * symbol_variance * overlapped);
}

double papr_quantile_db(std::span<const double> paprs_db, double prob) {
  if (paprs_db.empty()) throw std::invalid_argument("no PAPR samples");
  if (!(prob >= 0.0 && prob < 1.0)) throw std::invalid_argument("prob must be in [0, 1)");
  std::vector<double> sorted(paprs_db.begin(), paprs_db.end());
  std::sort(sorted.begin(), sorted.end());
  const auto allowed = static_cast<std::size_t>(std::floor(prob * static_cast<double>(sorted.size())));
  return sorted[sorted.size() - 1 - std::min(allowed, sorted.size() - 1)];
}

double ccdf_crossing_db(const CcdfCurve& curve, double prob) {
  const auto& g = curve.gamma_db;
  const auto& p = curve.prob_exceed;
  if (g.empty() || g.size() != p.size()) throw std::invalid_argument("malformed CCDF curve");
  if (p.front() <= prob) return g.front();
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] > prob) continue;
    const double p0 = p[i - 1];
    const double p1 = p[i];
    double t;
    if (p1 > 0.0) {
      t = (std::log(p0) - std::log(prob)) / (std::log(p0) - std::log(p1));
    } else {
      t = (p0 - prob) / (p0 - p1);
    }
    return g[i - 1] + t * (g[i] - g[i - 1]);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> linear_grid(double first, double last, double step) {
  if (!(step > 0.0) || last < first) throw std::invalid_argument("invalid grid bounds");
  const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = first + step * static_cast<double>(i);
  return grid;
}

BerPoint ber_run(const BerConfig& cfg) {
  cfg.scheme.validate();
  if (cfg.subcarriers < 1 || cfg.blocks_per_frame < 1)
    throw std::invalid_argument("BER geometry must be positive");
  if (cfg.max_bits == 0) throw std::invalid_argument("max_bits must be positive");

  const int n = cfg.samples_per_period > 0 ? cfg.samples_per_period : cfg.subcarriers;
  const auto filter = PrototypeFilter::phydyas(cfg.overlap_factor, n);
  const auto bits_per_frame = static_cast<std::size_t>(cfg.subcarriers) *
                              static_cast<std::size_t>(cfg.blocks_per_frame) *
                              static_cast<std::size_t>(bits_per_symbol(cfg.constellation));

  BerPoint point;
  point.snr_db = cfg.snr_db;
  for (std::uint64_t f = 0; point.errors < cfg.min_errors && point.bits < cfg.max_bits; ++f) {
    const auto bits = random_bits(bits_per_frame, derive_seed(cfg.seed, 1, f));
    const auto block = map_bits(bits, cfg.subcarriers, cfg.blocks_per_frame, cfg.constellation);
    const auto tx = synthesize(oqam_stagger(block), filter);

    const auto spec = resolve_for_frame(cfg.scheme, tx);
    const auto companded = apply_to_frame(tx, spec);
    auto rx = transmit(companded, {cfg.snr_db, derive_seed(cfg.seed, 2, f)});

    if (cfg.scheme.kind != CompanderKind::Identity) {
      if (cfg.expand_at_receiver) {
        rx = expand_frame(rx, spec);
      } else {
        const double beta = 1.0 / bussgang_report(tx, companded).alpha;
        for (auto& s : rx.samples) s *= beta;
      }
    }

    const auto decided = demap_block(oqam_destagger(analyze(rx, filter)), cfg.constellation);
    for (std::size_t i = 0; i < bits.size(); ++i) point.errors += (bits[i] != decided[i]);
    point.bits += bits.size();
  }
  point.ber = static_cast<double>(point.errors) / static_cast<double>(point.bits);
  point.target_met = point.errors >= cfg.min_errors;
  return point;
}

PsdEstimate psd_welch(std::span<const cdouble> samples, std::size_t segment,
                      double overlap_fraction) {
  if (segment < 2 || (segment & (segment - 1)) != 0)
    throw std::invalid_argument("segment must be a power of two");
  if (segment > samples.size())
    throw std::invalid_argument(fmt::format(
        "segment {} is longer than the {} available samples", segment, samples.size()));
  if (!(overlap_fraction >= 0.0 && overlap_fraction <= 0.9))
    throw std::invalid_argument("overlap_fraction must be in [0, 0.9]");

  std::vector<double> window(segment);
  for (std::size_t i = 0; i < segment; ++i)
    window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(segment)));
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(static_cast<double>(segment) * (1.0 - overlap_fraction))));

  detail::Dft dft(segment, detail::DftDirection::Forward);
  std::vector<double> acc(segment, 0.0);
  for (std::size_t start = 0; start + segment <= samples.size(); start += hop) {
    auto in = dft.input();
    for (std::size_t i = 0; i < segment; ++i) in[i] = samples[start + i] * window[i];
    dft.execute();
    const auto out = dft.output();
    for (std::size_t i = 0; i < segment; ++i) acc[i] += std::norm(out[i]);
  }

  PsdEstimate psd;
  psd.freq_norm.resize(segment);
  psd.psd_db.resize(segment);
  const double peak = *std::max_element(acc.begin(), acc.end());
  const std::size_t half = segment / 2;
  for (std::size_t i = 0; i < segment; ++i) {
    const std::size_t bin = (i + half) % segment;  // fftshift
    psd.freq_norm[i] = (static_cast<double>(i) - static_cast<double>(half)) /
                       static_cast<double>(segment);
    const double rel = peak > 0.0 ? acc[bin] / peak : 0.0;
    psd.psd_db[i] = to_db(std::max(rel, 1e-30));
  }
  return psd;
}

double out_of_band_floor_db(const PsdEstimate& psd, double band_lo, double band_hi,
                            double guard) {
  const double width = band_hi - band_lo;
  if (!(width > 0.0 && width < 1.0)) throw std::invalid_argument("band must be narrower than the sample rate");
  auto wrap = [](double f) { return f - std::floor(f); };
  double in_sum = 0.0, out_sum = 0.0;
  std::size_t in_n = 0, out_n = 0;
  for (std::size_t i = 0; i < psd.freq_norm.size(); ++i) {
    const double pos = wrap(psd.freq_norm[i] - band_lo);  // offset from the lower edge
    const double lin = std::pow(10.0, psd.psd_db[i] / 10.0);
    if (pos < width) {
      in_sum += lin;
      ++in_n;
    } else if (pos - width >= guard && 1.0 - pos >= guard) {
      out_sum += lin;
      ++out_n;
    }
  }
  if (in_n == 0 || out_n == 0) throw std::invalid_argument("band or guard leaves no bins");
  return to_db((out_sum / static_cast<double>(out_n)) / (in_sum / static_cast<double>(in_n)));
}

}  // namespace fbmc
