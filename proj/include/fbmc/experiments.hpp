#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "fbmc/compander.hpp"
#include "fbmc/metrics.hpp"

namespace fbmc {

/// Runs fn(0..count-1) on up to `workers` threads and returns the results in
/// index order, so the outcome never depends on the worker count.
template <typename Fn>
auto parallel_indexed(std::size_t count, int workers, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<T> results(count);
  const auto threads = static_cast<std::size_t>(
      std::clamp<long>(workers, 1, static_cast<long>(std::max<std::size_t>(count, 1))));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// Monte Carlo PAPR collection: symbols_total FBMC symbols split into frames
/// of blocks_per_frame. Every scheme sees the same data frames for a seed.
struct PaprRun {
  CompanderSpec scheme;
  int subcarriers = 512;
  int samples_per_period = 0;  // 0: critically sampled
  int overlap_factor = 4;
  long symbols_total = 10'000;
  int blocks_per_frame = 100;
  Constellation constellation = Constellation::Qpsk;
  std::uint64_t seed = 1;
  int workers = 1;
};

std::vector<double> collect_paprs(const PaprRun& run);

/// Empirical and matching theoretical curve for a scheme (the theoretical
/// curve is empty for μ-law, which has no closed form).
struct CcdfPair {
  CcdfCurve empirical;
  std::optional<CcdfCurve> theoretical;
};

CcdfPair ccdf_experiment(const PaprRun& run, std::span<const double> grid_db);

struct PsdRun {
  CompanderSpec scheme;
  int subcarriers = 512;
  int samples_per_period = 0;  // 0: 2 x subcarriers
  int overlap_factor = 4;
  int blocks = 200;
  Constellation constellation = Constellation::Qpsk;
  std::uint64_t seed = 1;
  std::size_t segment = 1024;
  double overlap_fraction = 0.5;
  double guard_subcarriers = 8.0;
};

struct PsdResult {
  PsdEstimate psd;
  double oob_floor_db = 0.0;
};

PsdResult psd_experiment(const PsdRun& run);

std::vector<BerPoint> ber_sweep(const BerConfig& base, std::span<const double> snr_grid_db,
                                int workers);

/// SNR where the BER curve first falls to `target`, interpolated in log BER.
/// NaN when the sweep never gets there.
double snr_at_ber(std::span<const BerPoint> points, double target);

}  // namespace fbmc
