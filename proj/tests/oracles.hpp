#pragma once

// Brute-force reference computations used to check the fast paths.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "fbmc/modem.hpp"
#include "fbmc/prototype_filter.hpp"

namespace oracle {

using cdouble = std::complex<double>;
constexpr double pi = std::numbers::pi;

// S[n] = sum_k sum_m X_k(m) h[n - mN/2] exp(j(2 pi k (n - D)/N + phi)), evaluated term by term.
inline std::vector<cdouble> synthesize(const fbmc::OqamSequence& x,
                                       const fbmc::PrototypeFilter& h) {
  const int n_per = h.samples_per_period();
  const int k_count = x.subcarriers();
  const int m_count = x.half_symbols();
  const fbmc::FrameGeometry g{k_count, m_count / 2, h.overlap_factor(), n_per};
  const double d = 0.5 * (static_cast<double>(h.size()) - 1.0);
  std::vector<cdouble> s(g.length());
  for (std::size_t n = 0; n < s.size(); ++n) {
    cdouble acc{};
    for (int m = 0; m < m_count; ++m) {
      const double tap = h.at(static_cast<std::ptrdiff_t>(n) - m * n_per / 2);
      if (tap == 0.0) continue;
      for (int k = 0; k < k_count; ++k) {
        const double phi = pi / 2 * (m + k) - pi * m * k;
        const double arg = 2 * pi * k * (static_cast<double>(n) - d) / n_per + phi;
        acc += x(k, m) * tap * std::polar(1.0, arg);
      }
    }
    s[n] = acc;
  }
  return s;
}

// X[k] = sum_n x[n] exp(sign j 2 pi n k / N)
inline std::vector<cdouble> dft(std::span<const cdouble> x, int sign) {
  const auto n = x.size();
  std::vector<cdouble> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cdouble acc{};
    for (std::size_t i = 0; i < n; ++i)
      acc += x[i] * std::polar(1.0, sign * 2 * pi * static_cast<double>((i * k) % n) /
                                        static_cast<double>(n));
    out[k] = acc;
  }
  return out;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double target, double tol = 1e-13) {
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels = 20000) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline double rayleigh_cdf(double r) { return 1.0 - std::exp(-r * r); }
inline double rayleigh_pdf(double r) { return r <= 0 ? 0.0 : 2 * r * std::exp(-r * r); }

// Piecewise target density (sigma = 1): Rayleigh below c, then f0 + k1 (x - c) up to
// `end`. k1 is found numerically so the density integrates to one.
struct TargetPdf {
  double c;
  double end;
  double f0;
  double k1;

  static TargetPdf uniform(double c) {
    const double f0 = rayleigh_pdf(c);
    // flat tail holds the Rayleigh mass above c
    return {c, c + std::exp(-c * c) / f0, f0, 0.0};
  }

  static TargetPdf linear(double c, double end) {
    const double f0 = rayleigh_pdf(c);
    const double d = end - c;
    const double tail = std::exp(-c * c);
    auto mass = [&](double k1) { return simpson([&](double t) { return f0 + k1 * t; }, 0, d, 64); };
    const double k1 = bisect(mass, -100.0, 100.0, tail, 1e-15);
    return {c, end, f0, k1};
  }

  double pdf(double x) const {
    if (x <= c) return rayleigh_pdf(x);
    if (x > end) return 0.0;
    return f0 + k1 * (x - c);
  }

  double cdf(double x) const {
    if (x <= c) return rayleigh_cdf(x);
    const double t = std::min(x, end) - c;
    return rayleigh_cdf(c) + simpson([&](double u) { return f0 + k1 * u; }, 0, t, 64);
  }

  // Compressor by definition: y = F_target^{-1}(F_Rayleigh(x)).
  double compand(double x) const {
    if (x <= c) return x;
    return bisect([&](double y) { return cdf(y); }, c, end, rayleigh_cdf(x));
  }
};

inline double qfunc(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// Upper quantile of chi-square with `dof` degrees of freedom (Wilson-Hilferty);
// z is the matching standard normal quantile.
inline double chi_square_quantile(double dof, double z) {
  const double a = 2.0 / (9.0 * dof);
  return dof * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

}  // namespace oracle
