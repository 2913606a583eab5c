#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "fbmc/modem.hpp"

namespace fbmc {

enum class CompanderKind { Identity, MuLaw, UniformPdf, LinearPdf };

CompanderKind parse_compander_kind(std::string_view name);
std::string_view to_string(CompanderKind kind);

/// Parameters of one amplitude transform.
///
/// `sigma` is the Rayleigh scale of the input amplitude pdf
/// f(x) = 2x/σ² exp(-x²/σ²), i.e. σ² = E|s|². It is estimated from each frame
/// when left empty. `c` places the inflection point at cσ and `cutoff` is
/// the linear-pdf cutoff A_c in units of σ. The uniform-pdf cutoff is implied:
/// A = (c + 1/(2c))σ. For μ-law, an empty `peak` means the frame maximum.
struct CompanderSpec {
  CompanderKind kind = CompanderKind::Identity;
  double mu = 16.0;
  double c = 1.0;
  double cutoff = 1.2;
  std::optional<double> peak;
  std::optional<double> sigma;
  /// Largest amplitude (in σ) the pdf expanders return; the inverse of the
  /// Rayleigh tail is unbounded at the cutoff.
  double expansion_cap = 8.0;

  static CompanderSpec identity();
  static CompanderSpec mu_law(double mu, std::optional<double> peak = {});
  static CompanderSpec uniform_pdf(double c, std::optional<double> sigma = {});
  static CompanderSpec linear_pdf(double c, double cutoff,
                                  std::optional<double> sigma = {});

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;

  /// Output amplitude bound in absolute units (requires sigma or peak).
  double max_output() const;
};

/// A = c + 1/(2c), in units of σ.
double uniform_cutoff(double c);

/// Slope k₁ of the linear-pdf target density on [c, A_c] (σ = 1 units),
/// fixed by total probability one.
double linear_pdf_slope(double c, double cutoff);

/// Target amplitude density and distribution of the companded signal, in
/// absolute amplitude units. Identity returns the Rayleigh law.
double target_pdf(const CompanderSpec& spec, double amplitude);
double target_cdf(const CompanderSpec& spec, double amplitude);
/// E|y|² under the target pdf.
double target_mean_power(const CompanderSpec& spec);

enum class ExpandMode { Strict, Clamp };

double compand_uniform(double x, const CompanderSpec& spec);
double expand_uniform(double y, const CompanderSpec& spec,
                      ExpandMode mode = ExpandMode::Strict);
double compand_linear(double x, const CompanderSpec& spec);
double expand_linear(double y, const CompanderSpec& spec,
                     ExpandMode mode = ExpandMode::Strict);
double compand_mulaw(double x, double peak, double mu);
double expand_mulaw(double y, double peak, double mu);

/// Dispatch on spec.kind. Odd in x.
double compand(double x, const CompanderSpec& spec);
double expand(double y, const CompanderSpec& spec,
              ExpandMode mode = ExpandMode::Strict);

/// Per-component standard deviation √(mean|s|² / 2).
double estimate_sigma(std::span<const cdouble> samples);
/// Same, over the frame's steady-state region.
double estimate_sigma(const FbmcFrame& frame);

/// Fills in sigma (√2 · per-component σ of the frame) and the μ-law peak
/// (max |s|) when the spec leaves them open, then validates.
CompanderSpec resolve_for_frame(const CompanderSpec& spec, const FbmcFrame& frame);

/// s -> (h(|s|)/|s|) s. Phase is untouched and zero stays zero.
FbmcFrame apply_to_frame(const FbmcFrame& frame, const CompanderSpec& spec);
/// Receiver-side inverse; `spec` must be resolved. Out-of-range amplitudes
/// are clamped to the cutoff before inversion.
FbmcFrame expand_frame(const FbmcFrame& frame, const CompanderSpec& spec);

/// Scales the frame so its steady-state mean power equals `power`.
FbmcFrame normalize_power(const FbmcFrame& frame, double power);

struct BussgangReport {
  double alpha = 0.0;              // E{y x*} / E{x x*}
  double distortion_power = 0.0;   // P_u = mean |y - αx|²
  double signal_power = 0.0;       // P_x
  double transform_gain_db = 0.0;  // 10 log10(PAPR_x / PAPR_y)
};

BussgangReport bussgang_report(std::span<const cdouble> original,
                               std::span<const cdouble> companded);
BussgangReport bussgang_report(const FbmcFrame& original, const FbmcFrame& companded);

}  // namespace fbmc
