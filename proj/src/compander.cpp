#include "fbmc/compander.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbmc {
namespace {

// Shape of the pdf-shaping target on [c, c + d] in σ = 1 units:
// f(x) = f0 + k1 (x - c), with tail mass e^{-c²} above the inflection.
struct TargetShape {
  double c;
  double d;      // cutoff - c
  double f0;     // Rayleigh density at c
  double k1;     // slope, zero for the uniform-pdf target
  double tail;   // e^{-c²}

  // Probability mass of the target on [c, c + t].
  double mass(double t) const { return f0 * t + 0.5 * k1 * t * t; }

  // Inverse of mass(): the root of k1 t²/2 + f0 t - q = 0 in [0, d], in the
  // form that stays accurate for k1 -> 0.
  double offset(double q) const {
    const double disc = std::max(0.0, f0 * f0 + 2.0 * k1 * q);
    return std::clamp(2.0 * q / (f0 + std::sqrt(disc)), 0.0, d);
  }
};

TargetShape shape_of(const CompanderSpec& spec) {
  const double c = spec.c;
  const double tail = std::exp(-c * c);
  const double f0 = 2.0 * c * tail;
  if (spec.kind == CompanderKind::UniformPdf)
    return {c, 1.0 / (2.0 * c), f0, 0.0, tail};
  return {c, spec.cutoff - c, f0, linear_pdf_slope(c, spec.cutoff), tail};
}

double sigma_of(const CompanderSpec& spec) {
  if (!spec.sigma)
    throw std::invalid_argument("compander sigma is not resolved");
  return *spec.sigma;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Rayleigh CDF mapped through the target inverse CDF, for r > c (σ = 1).
double compress_tail(const TargetShape& s, double r) {
  // Mass of the Rayleigh law on [c, r]: e^{-c²} - e^{-r²}.
  const double q = -s.tail * std::expm1(-(r - s.c) * (r + s.c));
  return s.c + s.offset(q);
}

// Target CDF on [c, y] mapped back through the Rayleigh inverse CDF.
double expand_tail(const TargetShape& s, double y, double cap) {
  const double t = std::clamp(y - s.c, 0.0, s.d);
  const double frac = s.mass(t) / s.tail;  // share of the tail mass consumed
  if (frac >= 1.0) return cap;
  const double r = std::sqrt(s.c * s.c - std::log1p(-frac));
  return std::min(r, cap);
}

double pdf_compand(double x, const CompanderSpec& spec) {
  const double sigma = sigma_of(spec);
  const double r = std::abs(x) / sigma;
  if (r <= spec.c) return x;
  return sign_of(x) * sigma * compress_tail(shape_of(spec), r);
}

double pdf_expand(double y, const CompanderSpec& spec, ExpandMode mode) {
  const double sigma = sigma_of(spec);
  const double r = std::abs(y) / sigma;
  if (r <= spec.c) return y;
  const auto s = shape_of(spec);
  const double limit = s.c + s.d;
  if (mode == ExpandMode::Strict && r > limit * (1.0 + 1e-12))
    throw std::domain_error(fmt::format(
        "amplitude {} exceeds the compander cutoff {}", std::abs(y), limit * sigma));
  return sign_of(y) * sigma * expand_tail(s, r, spec.expansion_cap);
}

void require_kind(const CompanderSpec& spec, CompanderKind kind) {
  if (spec.kind != kind)
    throw std::invalid_argument(fmt::format("compander spec is {}, expected {}",
                                            to_string(spec.kind), to_string(kind)));
  spec.validate();
  sigma_of(spec);
}

double mean_power(std::span<const cdouble> samples) {
  double acc = 0.0;
  for (const auto& s : samples) acc += std::norm(s);
  return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

}  // namespace

CompanderKind parse_compander_kind(std::string_view name) {
  if (name == "identity" || name == "conventional") return CompanderKind::Identity;
  if (name == "mulaw" || name == "mu-law") return CompanderKind::MuLaw;
  if (name == "uniform") return CompanderKind::UniformPdf;
  if (name == "linear") return CompanderKind::LinearPdf;
  throw std::invalid_argument(fmt::format("unknown scheme '{}'", name));
}

std::string_view to_string(CompanderKind kind) {
  switch (kind) {
    case CompanderKind::Identity: return "identity";
    case CompanderKind::MuLaw: return "mulaw";
    case CompanderKind::UniformPdf: return "uniform";
    case CompanderKind::LinearPdf: return "linear";
  }
  return "?";
}

CompanderSpec CompanderSpec::identity() { return {}; }

CompanderSpec CompanderSpec::mu_law(double mu, std::optional<double> peak) {
  CompanderSpec s;
  s.kind = CompanderKind::MuLaw;
  s.mu = mu;
  s.peak = peak;
  s.validate();
  return s;
}

CompanderSpec CompanderSpec::uniform_pdf(double c, std::optional<double> sigma) {
  CompanderSpec s;
  s.kind = CompanderKind::UniformPdf;
  s.c = c;
  s.sigma = sigma;
  s.validate();
  return s;
}

CompanderSpec CompanderSpec::linear_pdf(double c, double cutoff,
                                        std::optional<double> sigma) {
  CompanderSpec s;
  s.kind = CompanderKind::LinearPdf;
  s.c = c;
  s.cutoff = cutoff;
  s.sigma = sigma;
  s.validate();
  return s;
}

void CompanderSpec::validate() const {
  if (sigma && !(*sigma > 0.0 && std::isfinite(*sigma)))
    throw std::invalid_argument("sigma must be positive");
  if (!(expansion_cap > 0.0))
    throw std::invalid_argument("expansion_cap must be positive");
  switch (kind) {
    case CompanderKind::Identity:
      return;
    case CompanderKind::MuLaw:
      if (!(mu > 0.0 && std::isfinite(mu)))
        throw std::invalid_argument("mu must be positive");
      if (peak && !(*peak > 0.0 && std::isfinite(*peak)))
        throw std::invalid_argument("peak must be positive");
      return;
    case CompanderKind::UniformPdf:
      if (!(c > 0.0 && std::isfinite(c)))
        throw std::invalid_argument("c must be positive");
      return;
    case CompanderKind::LinearPdf:
      if (!(c > 0.0 && std::isfinite(c)))
        throw std::invalid_argument("c must be positive");
      if (!(cutoff > c))
        throw std::invalid_argument(fmt::format(
            "cutoff {} must exceed the inflection point c = {}", cutoff, c));
      // Target density at the cutoff is 2e^{-c²}/d - f0, nonnegative iff d <= 1/c.
      if (cutoff - c > 1.0 / c * (1.0 + 1e-12))
        throw std::invalid_argument(fmt::format(
            "cutoff {} makes the linear target pdf negative (needs cutoff <= c + 1/c = {})",
            cutoff, c + 1.0 / c));
      return;
  }
}

double CompanderSpec::max_output() const {
  switch (kind) {
    case CompanderKind::Identity:
      return std::numeric_limits<double>::infinity();
    case CompanderKind::MuLaw:
      if (!peak) throw std::invalid_argument("mu-law peak is not resolved");
      return *peak;
    case CompanderKind::UniformPdf:
      return sigma_of(*this) * uniform_cutoff(c);
    case CompanderKind::LinearPdf:
      return sigma_of(*this) * cutoff;
  }
  return 0.0;
}

double uniform_cutoff(double c) { return c + 1.0 / (2.0 * c); }

double linear_pdf_slope(double c, double cutoff) {
  const double d = cutoff - c;
  if (!(d > 0.0)) throw std::invalid_argument("cutoff must exceed c");
  const double tail = std::exp(-c * c);
  return 2.0 * (tail - 2.0 * c * tail * d) / (d * d);
}

double target_pdf(const CompanderSpec& spec, double amplitude) {
  spec.validate();
  const double sigma = sigma_of(spec);
  const double r = amplitude / sigma;
  if (r < 0.0) return 0.0;
  auto rayleigh = [&] { return 2.0 * r * std::exp(-r * r) / sigma; };
  switch (spec.kind) {
    case CompanderKind::Identity:
      return rayleigh();
    case CompanderKind::UniformPdf:
    case CompanderKind::LinearPdf: {
      if (r <= spec.c) return rayleigh();
      const auto s = shape_of(spec);
      if (r > s.c + s.d) return 0.0;
      return (s.f0 + s.k1 * (r - s.c)) / sigma;
    }
    case CompanderKind::MuLaw:
      break;
  }
  throw std::invalid_argument("mu-law has no closed-form target pdf");
}

double target_cdf(const CompanderSpec& spec, double amplitude) {
  spec.validate();
  const double r = amplitude / sigma_of(spec);
  if (r <= 0.0) return 0.0;
  switch (spec.kind) {
    case CompanderKind::Identity:
      return -std::expm1(-r * r);
    case CompanderKind::UniformPdf:
    case CompanderKind::LinearPdf: {
      if (r <= spec.c) return -std::expm1(-r * r);
      const auto s = shape_of(spec);
      if (r >= s.c + s.d) return 1.0;
      return 1.0 - s.tail + s.mass(r - s.c);
    }
    case CompanderKind::MuLaw:
      break;
  }
  throw std::invalid_argument("mu-law has no closed-form target cdf");
}

double target_mean_power(const CompanderSpec& spec) {
  spec.validate();
  const double sigma = sigma_of(spec);
  if (spec.kind == CompanderKind::Identity) return sigma * sigma;
  if (spec.kind == CompanderKind::MuLaw)
    throw std::invalid_argument("mu-law has no closed-form target power");
  const auto s = shape_of(spec);
  const double c = s.c;
  const double e = c + s.d;
  // ∫_0^c x² 2x e^{-x²} dx = 1 - (1 + c²) e^{-c²}
  const double body = 1.0 - (1.0 + c * c) * s.tail;
  const double m2 = (e * e * e - c * c * c) / 3.0;
  const double m3 = (e * e * e * e - c * c * c * c) / 4.0;
  const double flat = s.f0 * m2 + s.k1 * (m3 - c * m2);
  return sigma * sigma * (body + flat);
}

double compand_uniform(double x, const CompanderSpec& spec) {
  require_kind(spec, CompanderKind::UniformPdf);
  return pdf_compand(x, spec);
}

double expand_uniform(double y, const CompanderSpec& spec, ExpandMode mode) {
  require_kind(spec, CompanderKind::UniformPdf);
  return pdf_expand(y, spec, mode);
}

double compand_linear(double x, const CompanderSpec& spec) {
  require_kind(spec, CompanderKind::LinearPdf);
  return pdf_compand(x, spec);
}

double expand_linear(double y, const CompanderSpec& spec, ExpandMode mode) {
  require_kind(spec, CompanderKind::LinearPdf);
  return pdf_expand(y, spec, mode);
}

double compand_mulaw(double x, double peak, double mu) {
  if (!(peak > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("mu-law peak and mu must be positive");
  return sign_of(x) * peak * std::log1p(mu * std::abs(x) / peak) / std::log1p(mu);
}

double expand_mulaw(double y, double peak, double mu) {
  if (!(peak > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("mu-law peak and mu must be positive");
  return sign_of(y) * peak / mu * std::expm1(std::abs(y) / peak * std::log1p(mu));
}

double compand(double x, const CompanderSpec& spec) {
  switch (spec.kind) {
    case CompanderKind::Identity:
      return x;
    case CompanderKind::MuLaw:
      if (!spec.peak) throw std::invalid_argument("mu-law peak is not resolved");
      return compand_mulaw(x, *spec.peak, spec.mu);
    case CompanderKind::UniformPdf:
      return compand_uniform(x, spec);
    case CompanderKind::LinearPdf:
      return compand_linear(x, spec);
  }
  return x;
}

double expand(double y, const CompanderSpec& spec, ExpandMode mode) {
  switch (spec.kind) {
    case CompanderKind::Identity:
      return y;
    case CompanderKind::MuLaw: {
      if (!spec.peak) throw std::invalid_argument("mu-law peak is not resolved");
      const double v = (mode == ExpandMode::Clamp)
                           ? std::clamp(y, -*spec.peak, *spec.peak)
                           : y;
      return expand_mulaw(v, *spec.peak, spec.mu);
    }
    case CompanderKind::UniformPdf:
      return expand_uniform(y, spec, mode);
    case CompanderKind::LinearPdf:
      return expand_linear(y, spec, mode);
  }
  return y;
}

double estimate_sigma(std::span<const cdouble> samples) {
  if (samples.empty()) throw std::invalid_argument("cannot estimate sigma of an empty sequence");
  return std::sqrt(mean_power(samples) / 2.0);
}

double estimate_sigma(const FbmcFrame& frame) {
  return estimate_sigma(frame.steady_state());
}

CompanderSpec resolve_for_frame(const CompanderSpec& spec, const FbmcFrame& frame) {
  CompanderSpec out = spec;
  if (!out.sigma && (spec.kind == CompanderKind::UniformPdf ||
                     spec.kind == CompanderKind::LinearPdf)) {
    const double s = std::sqrt(2.0) * estimate_sigma(frame);
    if (!(s > 0.0)) throw std::invalid_argument("sigma must be positive (zero-power frame)");
    out.sigma = s;
  }
  if (spec.kind == CompanderKind::MuLaw && !out.peak) {
    double peak = 0.0;
    for (const auto& s : frame.samples) peak = std::max(peak, std::abs(s));
    if (!(peak > 0.0)) throw std::invalid_argument("peak must be positive (zero-power frame)");
    out.peak = peak;
  }
  out.validate();
  return out;
}

namespace {

template <typename Fn>
FbmcFrame map_magnitude(const FbmcFrame& frame, Fn&& fn) {
  FbmcFrame out{std::vector<cdouble>(frame.samples.size()), frame.geometry};
  for (std::size_t i = 0; i < frame.samples.size(); ++i) {
    const cdouble s = frame.samples[i];
    const double r = std::abs(s);
    out.samples[i] = r > 0.0 ? s * (fn(r) / r) : cdouble{};
  }
  return out;
}

}  // namespace

FbmcFrame apply_to_frame(const FbmcFrame& frame, const CompanderSpec& spec) {
  if (spec.kind == CompanderKind::Identity) return frame;
  const auto resolved = resolve_for_frame(spec, frame);
  return map_magnitude(frame, [&](double r) { return compand(r, resolved); });
}

FbmcFrame expand_frame(const FbmcFrame& frame, const CompanderSpec& spec) {
  if (spec.kind == CompanderKind::Identity) return frame;
  spec.validate();
  return map_magnitude(frame,
                       [&](double r) { return expand(r, spec, ExpandMode::Clamp); });
}

FbmcFrame normalize_power(const FbmcFrame& frame, double power) {
  const double p = mean_power(frame.steady_state());
  if (!(p > 0.0)) throw std::invalid_argument("cannot normalize a zero-power frame");
  const double g = std::sqrt(power / p);
  FbmcFrame out = frame;
  for (auto& s : out.samples) s *= g;
  return out;
}

BussgangReport bussgang_report(std::span<const cdouble> original,
                               std::span<const cdouble> companded) {
  if (original.size() != companded.size() || original.empty())
    throw std::invalid_argument("bussgang_report needs equal-length, nonempty frames");
  double cross = 0.0;
  double px = 0.0;
  double py = 0.0;
  double peak_x = 0.0;
  double peak_y = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    cross += (companded[i] * std::conj(original[i])).real();
    const double ex = std::norm(original[i]);
    const double ey = std::norm(companded[i]);
    px += ex;
    py += ey;
    peak_x = std::max(peak_x, ex);
    peak_y = std::max(peak_y, ey);
  }
  if (!(px > 0.0)) throw std::invalid_argument("original frame has zero power");
  if (!(py > 0.0)) throw std::invalid_argument("companded frame has zero power");

  BussgangReport rep;
  const auto n = static_cast<double>(original.size());
  rep.alpha = cross / px;
  rep.signal_power = px / n;
  double pu = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i)
    pu += std::norm(companded[i] - rep.alpha * original[i]);
  rep.distortion_power = pu / n;
  const double papr_x = peak_x / (px / n);
  const double papr_y = peak_y / (py / n);
  rep.transform_gain_db = 10.0 * std::log10(papr_x / papr_y);
  return rep;
}

BussgangReport bussgang_report(const FbmcFrame& original, const FbmcFrame& companded) {
  if (!(original.geometry == companded.geometry))
    throw std::invalid_argument("frames have different geometry");
  return bussgang_report(std::span<const cdouble>(original.samples),
                         std::span<const cdouble>(companded.samples));
}

}  // namespace fbmc
