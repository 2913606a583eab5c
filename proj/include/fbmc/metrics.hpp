#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fbmc/compander.hpp"
#include "fbmc/modem.hpp"

namespace fbmc {

enum class CcdfKind { Empirical, TheoreticalConventional, TheoreticalUniform, TheoreticalLinear };

std::string_view to_string(CcdfKind kind);

/// P(PAPR > γ) sampled on an ascending grid of γ in dB.
struct CcdfCurve {
  std::vector<double> gamma_db;
  std::vector<double> prob_exceed;
  CcdfKind kind = CcdfKind::Empirical;
};

/// Per-interval PAPR in dB: max |S|² over [iN, (i+1)N) divided by the mean
/// power of the frame's steady-state region. A trailing partial interval is
/// kept, giving M + α intervals for an FBMC frame.
std::vector<double> papr_per_interval(const FbmcFrame& frame);
std::vector<double> papr_per_interval(std::span<const cdouble> samples,
                                      std::size_t interval, double reference_power);

/// Per-symbol PAPR of an OFDM stream of n-sample symbols, against the mean
/// power of the whole stream.
std::vector<double> papr_ofdm(std::span<const cdouble> samples, std::size_t n);

CcdfCurve ccdf_empirical(std::span<const double> paprs_db,
                         std::span<const double> grid_db);

struct TheoreticalCcdfParams {
  /// Exponential rate of the normalized per-sample power; 1 when γ is
  /// measured against the mean power in the steady state.
  double alpha_t = 1.0;
  /// Number of independent samples per PAPR interval (the product length).
  int samples_per_interval = 0;
  /// Compander shape for the companded variants (σ = 1 units).
  double c = 1.0;
  double cutoff = 1.2;
};

/// P(PAPR > γ) = 1 - Π_n P(Z_n <= γ), with Z exponential for the
/// conventional signal and the per-sample law of the companded power
/// F_target(√(γ E|y|²)) for the pdf-shaping schemes.
CcdfCurve ccdf_theoretical(CcdfKind kind, const TheoreticalCcdfParams& params,
                           std::span<const double> grid_db);

/// α_t = P_ref / (K σ_x² Σ_m h(t - mT/2)²) with the overlapped filter energy
/// averaged over the half-period (it is flat for a Nyquist-complementary
/// filter). P_ref = 2σ_x² reproduces the classical 2/(K Σ h²) form.
double steady_state_alpha_t(const PrototypeFilter& filter, int subcarriers,
                            double symbol_variance, double reference_power);

/// Smallest γ with empirical P(PAPR > γ) <= prob.
double papr_quantile_db(std::span<const double> paprs_db, double prob);
/// γ where the curve crosses prob, interpolated in log-probability.
double ccdf_crossing_db(const CcdfCurve& curve, double prob);

std::vector<double> linear_grid(double first, double last, double step);

struct BerPoint {
  double snr_db = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  double ber = 0.0;
  bool target_met = false;  // reached min_errors before max_bits
};

struct BerConfig {
  CompanderSpec scheme;
  double snr_db = 10.0;
  std::uint64_t min_errors = 100;
  std::uint64_t max_bits = 1'000'000;
  std::uint64_t seed = 1;
  int subcarriers = 64;
  int blocks_per_frame = 32;
  int samples_per_period = 0;  // 0: critically sampled (= subcarriers)
  int overlap_factor = 4;
  Constellation constellation = Constellation::Qpsk;
  /// Invert the compander before demodulation. When false the receiver
  /// applies the Bussgang gain β = 1/α instead.
  bool expand_at_receiver = false;
};

/// bits -> QAM -> OQAM -> synthesize -> compand -> AWGN -> (expand) ->
/// analyze -> destagger -> demap, frame by frame until min_errors or max_bits.
BerPoint ber_run(const BerConfig& config);

struct PsdEstimate {
  std::vector<double> freq_norm;  // ascending in [-0.5, 0.5)
  std::vector<double> psd_db;     // relative to the peak bin
};

/// Welch estimate with a periodic Hann window, normalized to a 0 dB peak.
PsdEstimate psd_welch(std::span<const cdouble> samples, std::size_t segment,
                      double overlap_fraction);

/// Mean out-of-band level relative to the mean in-band level, in dB. The
/// occupied band is [band_lo, band_hi) in normalized frequency (wrapping);
/// bins within `guard` of either edge are ignored.
double out_of_band_floor_db(const PsdEstimate& psd, double band_lo, double band_hi,
                            double guard);

}  // namespace fbmc
