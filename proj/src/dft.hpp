#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Thin RAII wrapper over an FFTW plan with its own aligned buffers. Using
// the plan's buffers for every call keeps results bit-identical between
// runs regardless of the caller's memory alignment.

typedef struct fftw_plan_s* fftw_plan;

namespace fbmc::detail {

enum class DftDirection { Forward, Inverse };

class Dft {
 public:
  Dft(std::size_t size, DftDirection direction);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;
  Dft(Dft&& other) noexcept;
  Dft& operator=(Dft&& other) noexcept;

  std::size_t size() const { return size_; }

  // Unnormalized transform: forward uses e^{-j2πkn/N}, inverse e^{+j2πkn/N}.
  std::span<std::complex<double>> input() { return {in_, size_}; }
  std::span<const std::complex<double>> output() const { return {out_, size_}; }
  void execute();

 private:
  void release();

  std::size_t size_ = 0;
  std::complex<double>* in_ = nullptr;
  std::complex<double>* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace fbmc::detail
