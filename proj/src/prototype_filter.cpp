#include "fbmc/prototype_filter.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fbmc {

std::vector<double> phydyas_coefficients(int overlap_factor) {
  switch (overlap_factor) {
    case 2:
      return {std::numbers::sqrt2 / 2.0};
    case 3:
      return {0.911438, 0.411438};
    case 4:
      return {0.971960, std::numbers::sqrt2 / 2.0, 0.235147};
    default:
      throw std::invalid_argument("unsupported overlap factor " +
                                  std::to_string(overlap_factor));
  }
}

PrototypeFilter::PrototypeFilter(int overlap_factor, int samples_per_period,
                                 std::vector<double> taps)
    : overlap_factor_(overlap_factor),
      samples_per_period_(samples_per_period),
      taps_(std::move(taps)) {
  if (overlap_factor < 1 || samples_per_period < 1)
    throw std::invalid_argument("filter geometry must be positive");
  const auto expected = static_cast<std::size_t>(overlap_factor) *
                        static_cast<std::size_t>(samples_per_period);
  if (taps_.size() != expected)
    throw std::invalid_argument(
        fmt::format("filter has {} taps, expected overlap_factor x "
                    "samples_per_period = {}",
                    taps_.size(), expected));

  const double e = energy();
  if (!(e > 0.0) || !std::isfinite(e))
    throw std::invalid_argument("prototype filter has zero energy");

  const double peak = std::abs(*std::max_element(
      taps_.begin(), taps_.end(),
      [](double a, double b) { return std::abs(a) < std::abs(b); }));
  for (std::size_t n = 0, m = taps_.size() - 1; n < m; ++n, --m) {
    if (std::abs(taps_[n] - taps_[m]) > 1e-12 * peak)
      throw std::invalid_argument("prototype filter is not even-symmetric");
  }

  const double scale = std::sqrt(samples_per_period / e);
  for (double& t : taps_) t *= scale;
}

PrototypeFilter PrototypeFilter::phydyas(int overlap_factor,
                                         int samples_per_period) {
  const auto coeffs = phydyas_coefficients(overlap_factor);
  if (samples_per_period < 2 || samples_per_period % 2 != 0)
    throw std::invalid_argument(
        "samples_per_period must be even and at least 2");

  const int length = overlap_factor * samples_per_period;
  std::vector<double> taps(static_cast<std::size_t>(length));
  // Half-sample grid keeps the response exactly symmetric about (L-1)/2.
  for (int n = 0; n < length; ++n) {
    const double t = (n + 0.5) / length;
    double v = 1.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      const double sign = (i % 2 == 0) ? -1.0 : 1.0;
      v += 2.0 * sign * coeffs[i] * std::cos(2.0 * std::numbers::pi * k * t);
    }
    taps[static_cast<std::size_t>(n)] = v;
  }
  // cos() on mirrored arguments can differ in the last ulp; mirror exactly.
  for (int n = 0, m = length - 1; n < m; ++n, --m)
    taps[static_cast<std::size_t>(m)] = taps[static_cast<std::size_t>(n)];
  return PrototypeFilter(overlap_factor, samples_per_period, std::move(taps));
}

double PrototypeFilter::energy() const {
  return std::inner_product(taps_.begin(), taps_.end(), taps_.begin(), 0.0);
}

double nyquist_defect(const PrototypeFilter& filter) {
  const auto taps = filter.taps();
  const std::size_t half = std::max<std::size_t>(
      1, static_cast<std::size_t>(filter.samples_per_period()) / 2);
  std::vector<double> sums(half, 0.0);
  for (std::size_t n = 0; n < taps.size(); ++n) sums[n % half] += taps[n] * taps[n];
  const double mean =
      std::accumulate(sums.begin(), sums.end(), 0.0) / static_cast<double>(half);
  double worst = 0.0;
  for (double s : sums) worst = std::max(worst, std::abs(s - mean));
  return worst / mean;
}

void write_taps_csv(const PrototypeFilter& filter, std::ostream& out) {
  out << "index,tap_value\n";
  const auto taps = filter.taps();
  for (std::size_t n = 0; n < taps.size(); ++n)
    out << fmt::format("{},{:.17g}\n", n, taps[n]);
}

}  // namespace fbmc
