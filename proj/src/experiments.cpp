#include "fbmc/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbmc/rng.hpp"

namespace fbmc {
namespace {

constexpr std::uint64_t kFrameStream = 10;
constexpr std::uint64_t kPsdStream = 20;

}  // namespace

std::vector<double> collect_paprs(const PaprRun& run) {
  run.scheme.validate();
  if (run.symbols_total < 1 || run.blocks_per_frame < 1)
    throw std::invalid_argument("symbols_total and blocks_per_frame must be positive");
  const int n = run.samples_per_period > 0 ? run.samples_per_period : run.subcarriers;
  const auto filter = PrototypeFilter::phydyas(run.overlap_factor, n);

  const auto frames = static_cast<std::size_t>(
      (run.symbols_total + run.blocks_per_frame - 1) / run.blocks_per_frame);
  auto per_frame = parallel_indexed(frames, run.workers, [&](std::size_t f) {
    const long done = static_cast<long>(f) * run.blocks_per_frame;
    const int blocks = static_cast<int>(std::min<long>(run.blocks_per_frame, run.symbols_total - done));
    const auto block = generate_symbols(run.subcarriers, blocks, run.constellation,
                                        derive_seed(run.seed, kFrameStream, f));
    const auto frame = synthesize(oqam_stagger(block), filter);
    return papr_per_interval(apply_to_frame(frame, run.scheme));
  });

  std::vector<double> all;
  for (auto& v : per_frame) all.insert(all.end(), v.begin(), v.end());
  return all;
}

CcdfPair ccdf_experiment(const PaprRun& run, std::span<const double> grid_db) {
  CcdfPair out;
  const auto paprs = collect_paprs(run);
  out.empirical = ccdf_empirical(paprs, grid_db);

  TheoreticalCcdfParams params;
  params.samples_per_interval = run.samples_per_period > 0 ? run.samples_per_period : run.subcarriers;
  params.c = run.scheme.c;
  params.cutoff = run.scheme.cutoff;
  switch (run.scheme.kind) {
    case CompanderKind::Identity:
      out.theoretical = ccdf_theoretical(CcdfKind::TheoreticalConventional, params, grid_db);
      break;
    case CompanderKind::UniformPdf:
      out.theoretical = ccdf_theoretical(CcdfKind::TheoreticalUniform, params, grid_db);
      break;
    case CompanderKind::LinearPdf:
      out.theoretical = ccdf_theoretical(CcdfKind::TheoreticalLinear, params, grid_db);
      break;
    case CompanderKind::MuLaw:
      break;
  }
  return out;
}

PsdResult psd_experiment(const PsdRun& run) {
  run.scheme.validate();
  const int n = run.samples_per_period > 0 ? run.samples_per_period : 2 * run.subcarriers;
  const auto filter = PrototypeFilter::phydyas(run.overlap_factor, n);
  const auto block = generate_symbols(run.subcarriers, run.blocks, run.constellation,
                                      derive_seed(run.seed, kPsdStream, 0));
  const auto frame = apply_to_frame(synthesize(oqam_stagger(block), filter), run.scheme);

  PsdResult out;
  out.psd = psd_welch(frame.samples, run.segment, run.overlap_fraction);
  const double band_hi = static_cast<double>(run.subcarriers) / n;
  out.oob_floor_db = out_of_band_floor_db(out.psd, 0.0, band_hi, run.guard_subcarriers / n);
  return out;
}

std::vector<BerPoint> ber_sweep(const BerConfig& base, std::span<const double> snr_grid_db,
                                int workers) {
  return parallel_indexed(snr_grid_db.size(), workers, [&](std::size_t i) {
    BerConfig cfg = base;
    cfg.snr_db = snr_grid_db[i];
    cfg.seed = derive_seed(base.seed, 30, i);
    return ber_run(cfg);
  });
}

double snr_at_ber(std::span<const BerPoint> points, double target) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].ber > target) continue;
    if (i == 0) return points[i].snr_db;
    const auto& a = points[i - 1];
    const auto& b = points[i];
    if (b.ber <= 0.0) {
      const double t = (a.ber - target) / a.ber;
      return a.snr_db + t * (b.snr_db - a.snr_db);
    }
    const double t = (std::log(a.ber) - std::log(target)) / (std::log(a.ber) - std::log(b.ber));
    return a.snr_db + t * (b.snr_db - a.snr_db);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace fbmc
