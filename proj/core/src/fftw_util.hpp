#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace ddqe::detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// In-place c2c transforms on an owned buffer. Plan creation is serialized
/// (the FFTW planner is not thread-safe); execution is private per instance.
class Fft1d {
 public:
  explicit Fft1d(int n) : n_(n), buf_(n) {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_.data()),
                            reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_FORWARD,
                            FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_.data()),
                            reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  ~Fft1d() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  Fft1d(const Fft1d&) = delete;
  Fft1d& operator=(const Fft1d&) = delete;

  int size() const { return n_; }
  std::complex<double>* data() { return buf_.data(); }

  /// sum_j x_j e^{-2 pi i jk/n}; unnormalized.
  void forward() { fftw_execute(fwd_); }
  /// sum_k x_k e^{+2 pi i jk/n}; unnormalized.
  void backward() { fftw_execute(bwd_); }

 private:
  int n_;
  std::vector<std::complex<double>> buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

}  // namespace ddqe::detail
