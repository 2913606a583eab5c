#pragma once

#include <cstdint>
#include <limits>

#include "fbmc/modem.hpp"

namespace fbmc {

struct AwgnSpec {
  /// E_g/N₀ in dB: transmit power per sample over N₀. +inf disables noise.
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;

  static constexpr double noiseless() { return std::numeric_limits<double>::infinity(); }
};

/// r[n] = s[n] + w[n], w circular complex Gaussian with N₀ = P_s / 10^(snr/10)
/// where P_s is the mean power of the steady-state region.
FbmcFrame transmit(const FbmcFrame& frame, const AwgnSpec& spec);

/// Per-sample E_g/N₀ giving the requested Eb/N₀ for a frame geometry:
/// each period of N samples carries K complex symbols of `bits_per_symbol`.
double ebn0_to_snr_db(double ebn0_db, Constellation c, int subcarriers,
                      int samples_per_period);

}  // namespace fbmc
