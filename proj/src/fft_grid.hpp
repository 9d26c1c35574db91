#pragma once

#include <array>
#include <complex>
#include <mutex>
#include <vector>

namespace bsfield {

/// Forward/inverse complex DFT on a 4-axis torus (FFTW backed, ESTIMATE plans
/// so results are machine-deterministic across runs). Forward convention:
/// F[k] = sum_x f[x] e^{-2 pi i k.x / N}; inverse includes the 1/N factor.
class FftGrid {
 public:
  explicit FftGrid(std::array<long, 4> dims);
  ~FftGrid();
  FftGrid(const FftGrid&) = delete;
  FftGrid& operator=(const FftGrid&) = delete;

  long size() const { return total_; }

  void forward(const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out) const;
  void inverse(const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out) const;

  /// index of -k mod N for symbol reversal
  long negate_index(long k) const;

 private:
  std::array<long, 4> dims_;
  long total_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  void* buf_in_ = nullptr;
  void* buf_out_ = nullptr;
  mutable std::mutex exec_mutex_;  // plans share the two work buffers
};

}  // namespace bsfield
