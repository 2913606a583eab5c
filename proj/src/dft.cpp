#include "dft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>
#include <stdexcept>
#include <utility>

namespace fbmc::detail {
namespace {

// FFTW planner calls are not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Dft::Dft(std::size_t size, DftDirection direction) : size_(size) {
  if (size == 0) throw std::invalid_argument("dft size must be positive");
  std::lock_guard lock(planner_mutex());
  in_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(size));
  out_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(size));
  if (!in_ || !out_) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::bad_alloc();
  }
  plan_ = fftw_plan_dft_1d(static_cast<int>(size),
                           reinterpret_cast<fftw_complex*>(in_),
                           reinterpret_cast<fftw_complex*>(out_),
                           direction == DftDirection::Forward ? FFTW_FORWARD
                                                              : FFTW_BACKWARD,
                           FFTW_ESTIMATE);
  for (std::size_t i = 0; i < size; ++i) in_[i] = 0.0;
}

Dft::~Dft() { release(); }

Dft::Dft(Dft&& other) noexcept
    : size_(std::exchange(other.size_, 0)),
      in_(std::exchange(other.in_, nullptr)),
      out_(std::exchange(other.out_, nullptr)),
      plan_(std::exchange(other.plan_, nullptr)) {}

Dft& Dft::operator=(Dft&& other) noexcept {
  if (this != &other) {
    release();
    size_ = std::exchange(other.size_, 0);
    in_ = std::exchange(other.in_, nullptr);
    out_ = std::exchange(other.out_, nullptr);
    plan_ = std::exchange(other.plan_, nullptr);
  }
  return *this;
}

void Dft::release() {
  if (!plan_ && !in_ && !out_) return;
  std::lock_guard lock(planner_mutex());
  if (plan_) fftw_destroy_plan(plan_);
  fftw_free(in_);
  fftw_free(out_);
  plan_ = nullptr;
  in_ = out_ = nullptr;
}

void Dft::execute() { fftw_execute(plan_); }

}  // namespace fbmc::detail
