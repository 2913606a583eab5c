#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "fbmc/modem.hpp"
#include "fbmc/prototype_filter.hpp"
#include "oracles.hpp"

using namespace fbmc;

TEST_CASE("QPSK Gray mapping") {
  const std::uint8_t b00[] = {0, 0};
  const std::uint8_t b11[] = {1, 1};
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(map_symbol(Constellation::Qpsk, b00) - cdouble(s, s)) < 1e-15);
  CHECK(std::abs(map_symbol(Constellation::Qpsk, b11) - cdouble(-s, -s)) < 1e-15);
}

TEST_CASE("map and demap are inverse for both constellations") {
  for (auto c : {Constellation::Qpsk, Constellation::Qam16}) {
    const auto bits = random_bits(4 * 8 * 16, 3);
    const auto block = map_bits(bits, 8, 16 * 4 / bits_per_symbol(c), c);
    CHECK(demap_block(block, c) == bits);
  }
}

TEST_CASE("16QAM is unit energy and Gray coded per dimension") {
  double e = 0;
  for (int v = 0; v < 16; ++v) {
    const std::uint8_t bits[] = {std::uint8_t(v & 1), std::uint8_t(v >> 1 & 1),
                                 std::uint8_t(v >> 2 & 1), std::uint8_t(v >> 3 & 1)};
    e += std::norm(map_symbol(Constellation::Qam16, bits));
  }
  CHECK(e / 16 == doctest::Approx(1.0));
}

TEST_CASE("generated symbols: unit mean energy and deterministic") {
  const auto a = generate_symbols(100, 1000, Constellation::Qam16, 11);
  double e = 0;
  for (auto v : a.values()) e += std::norm(v);
  CHECK(e / 1e5 == doctest::Approx(1.0).epsilon(0.01));
  CHECK(a == generate_symbols(100, 1000, Constellation::Qam16, 11));
  CHECK_FALSE(a == generate_symbols(100, 1000, Constellation::Qam16, 12));
}

TEST_CASE("oqam stagger splits real and imaginary parts") {
  QamSymbolBlock b(1, 1);
  b(0, 0) = {0.6, 0.8};
  const auto x = oqam_stagger(b);
  CHECK(x(0, 0) == 0.6);
  CHECK(x(0, 1) == 0.8);

  QamSymbolBlock real(3, 4);
  for (int m = 0; m < 4; ++m)
    for (int k = 0; k < 3; ++k) real(k, m) = k + m;
  const auto xr = oqam_stagger(real);
  for (int m = 1; m < 8; m += 2)
    for (int k = 0; k < 3; ++k) CHECK(xr(k, m) == 0.0);

  const auto r = generate_symbols(5, 7, Constellation::Qam16, 2);
  CHECK(oqam_destagger(oqam_stagger(r)) == r);
}

TEST_CASE("frame geometry") {
  const FrameGeometry g{4, 10, 4, 8};
  CHECK(g.length() == (2 * 10 + 2 * 4 - 1) * 4);
  CHECK(g.steady_begin() == 7 * 4);
  CHECK(g.steady_end() == 80);
  const FrameGeometry short_frame{4, 2, 4, 8};
  CHECK(short_frame.steady_begin() == 0);
  CHECK(short_frame.steady_end() == short_frame.length());
}

TEST_CASE("synthesis of zeros and of a single symbol") {
  const auto h = PrototypeFilter::phydyas(4, 8);
  const auto zero = synthesize(OqamSequence(4, 4), h);
  for (auto v : zero.samples) CHECK(v == cdouble{});

  OqamSequence one(1, 2);
  one(0, 0) = 1.0;
  const auto f1 = synthesize(one, PrototypeFilter::phydyas(4, 2));
  const auto h2 = PrototypeFilter::phydyas(4, 2);
  for (std::size_t n = 0; n < f1.samples.size(); ++n)
    CHECK(std::abs(f1.samples[n] - h2.at(static_cast<std::ptrdiff_t>(n))) < 1e-12);
}

TEST_CASE("fast synthesis matches the direct triple sum") {
  const auto h = PrototypeFilter::phydyas(4, 8);
  const auto x = oqam_stagger(generate_symbols(4, 2, Constellation::Qpsk, 7));
  const auto fast = synthesize(x, h);
  const auto direct = oracle::synthesize(x, h);
  REQUIRE(fast.samples.size() == direct.size());
  for (std::size_t n = 0; n < direct.size(); ++n) CHECK(std::abs(fast.samples[n] - direct[n]) < 1e-9);

  // oversampled and 16QAM
  const auto h16 = PrototypeFilter::phydyas(3, 16);
  const auto x2 = oqam_stagger(generate_symbols(6, 3, Constellation::Qam16, 8));
  const auto direct2 = oracle::synthesize(x2, h16);
  const auto fast2 = synthesize(x2, h16);
  for (std::size_t n = 0; n < direct2.size(); ++n) CHECK(std::abs(fast2.samples[n] - direct2[n]) < 1e-9);
}

TEST_CASE("analysis round trip, zero frame and linearity") {
  const auto h = PrototypeFilter::phydyas(4, 64);
  const auto x = oqam_stagger(generate_symbols(64, 10, Constellation::Qpsk, 5));
  const auto frame = synthesize(x, h);
  const auto y = analyze(frame, h);
  double err = 0;
  for (int m = 0; m < x.half_symbols(); ++m)
    for (int k = 0; k < 64; ++k) err += std::pow(y(k, m) - x(k, m), 2);
  CHECK(std::sqrt(err / (64.0 * x.half_symbols())) < 1e-3);

  FbmcFrame zero{std::vector<cdouble>(frame.samples.size()), frame.geometry};
  for (double v : analyze(zero, h).values()) CHECK(v == 0.0);

  FbmcFrame twice = frame;
  for (auto& s : twice.samples) s *= 2.0;
  const auto y2 = analyze(twice, h);
  for (std::size_t i = 0; i < y.values().size(); ++i)
    CHECK(y2.values()[i] == doctest::Approx(2 * y.values()[i]).epsilon(1e-12));
}

TEST_CASE("analysis rejects mismatched geometry") {
  const auto h = PrototypeFilter::phydyas(4, 8);
  auto frame = synthesize(OqamSequence(4, 4), h);
  CHECK_THROWS_AS(analyze(frame, PrototypeFilter::phydyas(4, 16)), std::invalid_argument);
  frame.samples.pop_back();
  CHECK_THROWS_AS(analyze(frame, h), std::invalid_argument);
}

TEST_CASE("ofdm: impulse, constant and Parseval") {
  QamSymbolBlock delta(8, 1);
  delta(0, 0) = 1.0;
  for (auto v : ofdm_modulate(delta)) CHECK(std::abs(v - 1.0 / 8) < 1e-15);

  QamSymbolBlock ones(8, 1);
  for (int k = 0; k < 8; ++k) ones(k, 0) = 1.0;
  const auto imp = ofdm_modulate(ones);
  CHECK(std::abs(imp[0] - 1.0) < 1e-15);
  for (int n = 1; n < 8; ++n) CHECK(std::abs(imp[n]) < 1e-15);

  const auto b = generate_symbols(16, 3, Constellation::Qam16, 4);
  const auto x = ofdm_modulate(b);
  for (int m = 0; m < 3; ++m) {
    double t = 0, f = 0;
    for (int n = 0; n < 16; ++n) t += std::norm(x[m * 16 + n]);
    for (int k = 0; k < 16; ++k) f += std::norm(b(k, m));
    CHECK(t == doctest::Approx(f / 16));
    // and against a direct inverse DFT
    const auto ref = oracle::dft(b.values().subspan(m * 16, 16), +1);
    for (int n = 0; n < 16; ++n) CHECK(std::abs(x[m * 16 + n] - ref[n] / 16.0) < 1e-12);
  }
}

TEST_CASE("oqam phase") {
  CHECK(oqam_phase(0, 0) == 0.0);
  CHECK(oqam_phase(1, 0) == doctest::Approx(std::numbers::pi / 2));
  CHECK(oqam_phase(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("iq dump is little-endian float64 pairs") {
  const std::vector<cdouble> s = {{1.5, -2.0}, {0.25, 8.0}};
  std::ostringstream out;
  write_iq(s, out);
  const auto bytes = out.str();
  REQUIRE(bytes.size() == 32);
  double v[4];
  std::memcpy(v, bytes.data(), 32);
  CHECK(v[0] == 1.5);
  CHECK(v[1] == -2.0);
  CHECK(v[2] == 0.25);
  CHECK(v[3] == 8.0);
}

TEST_CASE("synthesis rejects more subcarriers than samples per period") {
  CHECK_THROWS_AS(synthesize(OqamSequence(16, 4), PrototypeFilter::phydyas(4, 8)), std::invalid_argument);
}
