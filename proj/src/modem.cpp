#include "fbmc/modem.hpp"

#include <fmt/format.h>

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "dft.hpp"
#include "fbmc/rng.hpp"

namespace fbmc {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const double kInvSqrt10 = 1.0 / std::sqrt(10.0);

// Gray-coded PAM levels for one dimension.
double pam_level(Constellation c, const std::uint8_t* bits) {
  if (c == Constellation::Qpsk) return bits[0] ? -kInvSqrt2 : kInvSqrt2;
  const double magnitude = bits[1] ? 1.0 : 3.0;
  return (bits[0] ? -magnitude : magnitude) * kInvSqrt10;
}

void pam_decide(Constellation c, double v, std::uint8_t* bits) {
  bits[0] = v < 0.0 ? 1 : 0;
  if (c == Constellation::Qam16)
    bits[1] = std::abs(v) < 2.0 * kInvSqrt10 ? 1 : 0;
}

// e^{jπq/2} for integer q.
cdouble quarter_turn(long q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// e^{-j2πkD/N} with D = (L-1)/2, evaluated from the exact integer residue
// of k(L-1) mod 2N.
std::vector<cdouble> centre_rotation(int subcarriers, const PrototypeFilter& f) {
  const long two_n = 2L * f.samples_per_period();
  const long span = static_cast<long>(f.size()) - 1;
  std::vector<cdouble> rot(static_cast<std::size_t>(subcarriers));
  for (int k = 0; k < subcarriers; ++k) {
    const long r = (static_cast<long>(k) * span) % two_n;
    rot[static_cast<std::size_t>(k)] =
        std::polar(1.0, -std::numbers::pi * static_cast<double>(r) /
                            static_cast<double>(f.samples_per_period()));
  }
  return rot;
}

void check_geometry(int subcarriers, const PrototypeFilter& f) {
  if (f.samples_per_period() < subcarriers)
    throw std::invalid_argument(
        fmt::format("samples_per_period {} is smaller than subcarrier count {}",
                    f.samples_per_period(), subcarriers));
  if (f.samples_per_period() % 2 != 0)
    throw std::invalid_argument("samples_per_period must be even");
}

}  // namespace

int bits_per_symbol(Constellation c) { return c == Constellation::Qpsk ? 2 : 4; }

Constellation parse_constellation(std::string_view name) {
  if (name == "qpsk") return Constellation::Qpsk;
  if (name == "qam16" || name == "16qam") return Constellation::Qam16;
  throw std::invalid_argument(fmt::format("unknown constellation '{}'", name));
}

std::string_view to_string(Constellation c) {
  return c == Constellation::Qpsk ? "qpsk" : "qam16";
}

cdouble map_symbol(Constellation c, std::span<const std::uint8_t> bits) {
  const auto half = static_cast<std::size_t>(bits_per_symbol(c) / 2);
  if (bits.size() < 2 * half) throw std::invalid_argument("not enough bits for symbol");
  return {pam_level(c, bits.data()), pam_level(c, bits.data() + half)};
}

void demap_symbol(Constellation c, cdouble symbol, std::span<std::uint8_t> bits) {
  const auto half = static_cast<std::size_t>(bits_per_symbol(c) / 2);
  if (bits.size() < 2 * half) throw std::invalid_argument("bit buffer too small");
  pam_decide(c, symbol.real(), bits.data());
  pam_decide(c, symbol.imag(), bits.data() + half);
}

QamSymbolBlock::QamSymbolBlock(int subcarriers, int blocks)
    : subcarriers_(subcarriers), blocks_(blocks) {
  if (subcarriers < 1 || blocks < 1)
    throw std::invalid_argument("symbol block dimensions must be positive");
  values_.assign(static_cast<std::size_t>(subcarriers) * static_cast<std::size_t>(blocks),
                 cdouble{});
}

OqamSequence::OqamSequence(int subcarriers, int half_symbols)
    : subcarriers_(subcarriers), half_symbols_(half_symbols) {
  if (subcarriers < 1 || half_symbols < 1)
    throw std::invalid_argument("OQAM sequence dimensions must be positive");
  values_.assign(static_cast<std::size_t>(subcarriers) *
                     static_cast<std::size_t>(half_symbols),
                 0.0);
}

std::size_t FrameGeometry::length() const {
  return static_cast<std::size_t>(2 * blocks + 2 * overlap_factor - 1) *
         static_cast<std::size_t>(samples_per_period / 2);
}

std::size_t FrameGeometry::steady_begin() const {
  if (blocks < overlap_factor) return 0;
  return static_cast<std::size_t>(2 * overlap_factor - 1) *
         static_cast<std::size_t>(samples_per_period / 2);
}

std::size_t FrameGeometry::steady_end() const {
  if (blocks < overlap_factor) return length();
  return static_cast<std::size_t>(blocks) * static_cast<std::size_t>(samples_per_period);
}

double oqam_phase(int k, int m) {
  return std::numbers::pi / 2.0 * (m + k) - std::numbers::pi * m * k;
}

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
  }
  return bits;
}

QamSymbolBlock map_bits(std::span<const std::uint8_t> bits, int subcarriers,
                        int blocks, Constellation c) {
  QamSymbolBlock block(subcarriers, blocks);
  const auto bps = static_cast<std::size_t>(bits_per_symbol(c));
  auto values = block.values();
  if (bits.size() != values.size() * bps)
    throw std::invalid_argument(fmt::format(
        "expected {} bits for a {}x{} block, got {}", values.size() * bps,
        subcarriers, blocks, bits.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = map_symbol(c, bits.subspan(i * bps, bps));
  return block;
}

std::vector<std::uint8_t> demap_block(const QamSymbolBlock& block, Constellation c) {
  const auto bps = static_cast<std::size_t>(bits_per_symbol(c));
  const auto values = block.values();
  std::vector<std::uint8_t> bits(values.size() * bps);
  for (std::size_t i = 0; i < values.size(); ++i)
    demap_symbol(c, values[i], std::span(bits).subspan(i * bps, bps));
  return bits;
}

QamSymbolBlock generate_symbols(int subcarriers, int blocks, Constellation c,
                                std::uint64_t seed) {
  if (subcarriers < 1 || blocks < 1)
    throw std::invalid_argument("symbol block dimensions must be positive");
  const auto count = static_cast<std::size_t>(subcarriers) *
                     static_cast<std::size_t>(blocks) *
                     static_cast<std::size_t>(bits_per_symbol(c));
  return map_bits(random_bits(count, seed), subcarriers, blocks, c);
}

OqamSequence oqam_stagger(const QamSymbolBlock& block) {
  OqamSequence seq(block.subcarriers(), 2 * block.blocks());
  for (int m = 0; m < block.blocks(); ++m)
    for (int k = 0; k < block.subcarriers(); ++k) {
      seq(k, 2 * m) = block(k, m).real();
      seq(k, 2 * m + 1) = block(k, m).imag();
    }
  return seq;
}

QamSymbolBlock oqam_destagger(const OqamSequence& seq) {
  if (seq.half_symbols() % 2 != 0)
    throw std::invalid_argument("OQAM sequence must hold an even number of half-symbols");
  QamSymbolBlock block(seq.subcarriers(), seq.half_symbols() / 2);
  for (int m = 0; m < block.blocks(); ++m)
    for (int k = 0; k < block.subcarriers(); ++k)
      block(k, m) = {seq(k, 2 * m), seq(k, 2 * m + 1)};
  return block;
}

FbmcFrame synthesize(const OqamSequence& seq, const PrototypeFilter& filter) {
  const int K = seq.subcarriers();
  check_geometry(K, filter);
  if (seq.half_symbols() % 2 != 0)
    throw std::invalid_argument("OQAM sequence must hold an even number of half-symbols");

  const int N = filter.samples_per_period();
  FbmcFrame frame;
  frame.geometry = {K, seq.half_symbols() / 2, filter.overlap_factor(), N};
  frame.samples.assign(frame.geometry.length(), cdouble{});

  const auto rot = centre_rotation(K, filter);
  const auto taps = filter.taps();
  detail::Dft idft(static_cast<std::size_t>(N), detail::DftDirection::Inverse);
  auto in = idft.input();

  for (int m = 0; m < seq.half_symbols(); ++m) {
    // e^{jφ_m^k} e^{jπkm} reduces to the quarter turn (m + k) since the
    // -πmk and +πkm terms cancel.
    for (int k = 0; k < K; ++k)
      in[static_cast<std::size_t>(k)] =
          seq(k, m) * quarter_turn(m + k) * rot[static_cast<std::size_t>(k)];
    for (int k = K; k < N; ++k) in[static_cast<std::size_t>(k)] = 0.0;
    idft.execute();
    const auto v = idft.output();
    const std::size_t start = static_cast<std::size_t>(m) * static_cast<std::size_t>(N / 2);
    for (std::size_t l = 0; l < taps.size(); ++l)
      frame.samples[start + l] += taps[l] * v[l % static_cast<std::size_t>(N)];
  }
  return frame;
}

OqamSequence analyze(const FbmcFrame& frame, const PrototypeFilter& filter) {
  const auto& g = frame.geometry;
  check_geometry(g.subcarriers, filter);
  if (g.overlap_factor != filter.overlap_factor() ||
      g.samples_per_period != filter.samples_per_period() ||
      frame.samples.size() != g.length())
    throw std::invalid_argument("frame geometry does not match the prototype filter");

  const int K = g.subcarriers;
  const int N = g.samples_per_period;
  const auto rot = centre_rotation(K, filter);
  const auto taps = filter.taps();
  const double scale = 1.0 / filter.energy();
  const auto n = static_cast<std::size_t>(N);

  OqamSequence seq(K, 2 * g.blocks);
  detail::Dft dft(n, detail::DftDirection::Forward);
  auto in = dft.input();

  for (int m = 0; m < seq.half_symbols(); ++m) {
    const std::size_t start = static_cast<std::size_t>(m) * (n / 2);
    for (std::size_t l = 0; l < n; ++l) in[l] = 0.0;
    for (std::size_t l = 0; l < taps.size(); ++l)
      in[l % n] += frame.samples[start + l] * taps[l];
    dft.execute();
    const auto c = dft.output();
    for (int k = 0; k < K; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      seq(k, m) = (c[kk] * std::conj(quarter_turn(m + k) * rot[kk])).real() * scale;
    }
  }
  return seq;
}

std::vector<cdouble> ofdm_modulate(const QamSymbolBlock& block) {
  const int N = block.subcarriers();
  const auto n = static_cast<std::size_t>(N);
  std::vector<cdouble> out(n * static_cast<std::size_t>(block.blocks()));
  detail::Dft idft(n, detail::DftDirection::Inverse);
  auto in = idft.input();
  for (int m = 0; m < block.blocks(); ++m) {
    for (int k = 0; k < N; ++k) in[static_cast<std::size_t>(k)] = block(k, m);
    idft.execute();
    const auto v = idft.output();
    for (std::size_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(m) * n + i] = v[i] / static_cast<double>(N);
  }
  return out;
}

void write_iq(std::span<const cdouble> samples, std::ostream& out) {
  static_assert(sizeof(double) == 8);
  for (const auto& s : samples) {
    for (double v : {s.real(), s.imag()}) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      std::array<char, 8> bytes{};
      for (auto& b : bytes) {
        b = static_cast<char>(bits & 0xffU);
        bits >>= 8;
      }
      out.write(bytes.data(), bytes.size());
    }
  }
}

}  // namespace fbmc
