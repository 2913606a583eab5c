#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace fbmc {

/// Sampled prototype pulse h[n] shared by every subcarrier of the filter bank.
///
/// The pulse spans `overlap_factor` symbol periods of `samples_per_period`
/// samples each. Taps are always even-symmetric about (L-1)/2 and scaled so
/// that the sum of squared taps equals samples_per_period.
class PrototypeFilter {
 public:
  /// Takes arbitrary symmetric taps and rescales them to the energy
  /// convention. Throws std::invalid_argument on a size mismatch, a
  /// zero-energy or an asymmetric response.
  PrototypeFilter(int overlap_factor, int samples_per_period,
                  std::vector<double> taps);

  /// Frequency-sampling PHYDYAS design for overlap factors 2, 3 and 4.
  static PrototypeFilter phydyas(int overlap_factor, int samples_per_period);

  int overlap_factor() const { return overlap_factor_; }
  int samples_per_period() const { return samples_per_period_; }
  std::size_t size() const { return taps_.size(); }
  std::span<const double> taps() const { return taps_; }

  /// h[n], zero outside [0, size()).
  double at(std::ptrdiff_t n) const {
    return (n < 0 || n >= static_cast<std::ptrdiff_t>(taps_.size()))
               ? 0.0
               : taps_[static_cast<std::size_t>(n)];
  }

  /// Centre of symmetry in samples, (L - 1) / 2.
  double centre() const { return 0.5 * static_cast<double>(taps_.size() - 1); }

  double energy() const;

 private:
  int overlap_factor_;
  int samples_per_period_;
  std::vector<double> taps_;
};

/// Frequency-domain coefficients H_1..H_{α-1} of the PHYDYAS design.
std::vector<double> phydyas_coefficients(int overlap_factor);

/// Half-period power complementarity defect: with s(n) = Σ_m h[n + mN/2]²,
/// returns max_n |s(n) - mean(s)| / mean(s). Zero means the overlapped pulse
/// energy is flat in time.
double nyquist_defect(const PrototypeFilter& filter);

/// `index,tap_value` rows at full precision.
void write_taps_csv(const PrototypeFilter& filter, std::ostream& out);

}  // namespace fbmc
