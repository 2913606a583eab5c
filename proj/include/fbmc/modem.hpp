#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "fbmc/prototype_filter.hpp"

namespace fbmc {

using cdouble = std::complex<double>;

enum class Constellation { Qpsk, Qam16 };

int bits_per_symbol(Constellation c);
Constellation parse_constellation(std::string_view name);
std::string_view to_string(Constellation c);

/// Gray-mapped, unit average energy. Bit order: real-part bits first.
cdouble map_symbol(Constellation c, std::span<const std::uint8_t> bits);
/// Hard-decision nearest-neighbour demapping, inverse of map_symbol.
void demap_symbol(Constellation c, cdouble symbol, std::span<std::uint8_t> bits);

/// K x M complex data symbols x_k(m).
class QamSymbolBlock {
 public:
  QamSymbolBlock(int subcarriers, int blocks);

  int subcarriers() const { return subcarriers_; }
  int blocks() const { return blocks_; }

  cdouble& operator()(int k, int m) { return values_[index(k, m)]; }
  cdouble operator()(int k, int m) const { return values_[index(k, m)]; }

  /// Block-major storage: column m occupies [m*K, (m+1)*K).
  std::span<const cdouble> values() const { return values_; }
  std::span<cdouble> values() { return values_; }

  bool operator==(const QamSymbolBlock&) const = default;

 private:
  std::size_t index(int k, int m) const {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(subcarriers_) +
           static_cast<std::size_t>(k);
  }
  int subcarriers_;
  int blocks_;
  std::vector<cdouble> values_;
};

/// K x 2M real OQAM symbols X_k(m): Re(x_k) at even m, Im(x_k) at odd m.
class OqamSequence {
 public:
  OqamSequence(int subcarriers, int half_symbols);

  int subcarriers() const { return subcarriers_; }
  int half_symbols() const { return half_symbols_; }

  double& operator()(int k, int m) { return values_[index(k, m)]; }
  double operator()(int k, int m) const { return values_[index(k, m)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

 private:
  std::size_t index(int k, int m) const {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(subcarriers_) +
           static_cast<std::size_t>(k);
  }
  int subcarriers_;
  int half_symbols_;
  std::vector<double> values_;
};

struct FrameGeometry {
  int subcarriers = 0;
  int blocks = 0;
  int overlap_factor = 0;
  int samples_per_period = 0;

  /// (M + α - 1/2) N samples: the full support including filter ramps.
  std::size_t length() const;
  /// Full-overlap region [(2α-1)N/2, M N), where every sample sees all 2α
  /// overlapping half-symbol pulses. Whole frame when M < α.
  std::size_t steady_begin() const;
  std::size_t steady_end() const;

  bool operator==(const FrameGeometry&) const = default;
};

struct FbmcFrame {
  std::vector<cdouble> samples;
  FrameGeometry geometry;

  std::span<const cdouble> steady_state() const {
    return std::span<const cdouble>(samples).subspan(
        geometry.steady_begin(), geometry.steady_end() - geometry.steady_begin());
  }
};

/// φ_m^k = π/2 (m + k) - π m k.
double oqam_phase(int k, int m);

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed);
QamSymbolBlock map_bits(std::span<const std::uint8_t> bits, int subcarriers,
                        int blocks, Constellation c);
std::vector<std::uint8_t> demap_block(const QamSymbolBlock& block, Constellation c);

/// i.i.d. uniform constellation points; deterministic for a fixed seed.
QamSymbolBlock generate_symbols(int subcarriers, int blocks, Constellation c,
                                std::uint64_t seed);

OqamSequence oqam_stagger(const QamSymbolBlock& block);
QamSymbolBlock oqam_destagger(const OqamSequence& seq);

/// S[n] = Σ_k Σ_m X_k(m) h[n - mN/2] e^{j(2πk(n - D)/N + φ_m^k)}, D = (αN-1)/2,
/// computed with one N-point inverse DFT per half-symbol.
FbmcFrame synthesize(const OqamSequence& seq, const PrototypeFilter& filter);

/// Matched-filter OQAM receiver: per-(k, m) derotation and real-part
/// extraction, scaled so a noiseless round trip returns X_k(m).
OqamSequence analyze(const FbmcFrame& frame, const PrototypeFilter& filter);

/// Reference OFDM: each column is one N = K point symbol,
/// x[n] = (1/N) Σ_k X(k) e^{j2πnk/N}, symbols concatenated without CP.
std::vector<cdouble> ofdm_modulate(const QamSymbolBlock& block);

/// Raw IQ dump: little-endian float64 (re, im) pairs, no header.
void write_iq(std::span<const cdouble> samples, std::ostream& out);

}  // namespace fbmc
