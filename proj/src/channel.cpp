#include "fbmc/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fbmc/rng.hpp"

namespace fbmc {

FbmcFrame transmit(const FbmcFrame& frame, const AwgnSpec& spec) {
  if (frame.samples.empty()) throw std::invalid_argument("cannot transmit an empty frame");
  if (std::isnan(spec.snr_db)) throw std::invalid_argument("snr_db must not be NaN");
  if (std::isinf(spec.snr_db) && spec.snr_db > 0) return frame;

  const auto steady = frame.steady_state();
  double power = 0.0;
  for (const auto& s : steady) power += std::norm(s);
  power /= static_cast<double>(steady.size());
  if (!(power > 0.0)) throw std::invalid_argument("SNR is undefined for a zero-power frame");

  const double n0 = power / std::pow(10.0, spec.snr_db / 10.0);
  Rng rng(spec.seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(n0 / 2.0));
  FbmcFrame out = frame;
  for (auto& s : out.samples) {
    const double re = noise(rng);
    const double im = noise(rng);
    s += cdouble(re, im);
  }
  return out;
}

double ebn0_to_snr_db(double ebn0_db, Constellation c, int subcarriers,
                      int samples_per_period) {
  // Eb = N P / (K b) and N₀ = P / snr, so Eb/N₀ = snr N / (K b).
  const double ratio = static_cast<double>(subcarriers) * bits_per_symbol(c) /
                       static_cast<double>(samples_per_period);
  return ebn0_db + 10.0 * std::log10(ratio);
}

}  // namespace fbmc
