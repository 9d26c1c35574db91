#include "fft_grid.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace bsfield {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftGrid::FftGrid(std::array<long, 4> dims) : dims_(dims) {
  total_ = 1;
  for (long d : dims_) total_ *= d;
  std::lock_guard<std::mutex> lock(planner_mutex());
  buf_in_ = fftw_malloc(sizeof(fftw_complex) * total_);
  buf_out_ = fftw_malloc(sizeof(fftw_complex) * total_);
  int n[4] = {static_cast<int>(dims_[0]), static_cast<int>(dims_[1]),
              static_cast<int>(dims_[2]), static_cast<int>(dims_[3])};
  plan_fwd_ = fftw_plan_dft(4, n, static_cast<fftw_complex*>(buf_in_),
                            static_cast<fftw_complex*>(buf_out_), FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft(4, n, static_cast<fftw_complex*>(buf_in_),
                            static_cast<fftw_complex*>(buf_out_), FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftGrid::~FftGrid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void FftGrid::forward(const std::vector<std::complex<double>>& in,
                      std::vector<std::complex<double>>& out) const {
  std::lock_guard<std::mutex> lock(exec_mutex_);
  std::memcpy(buf_in_, in.data(), sizeof(fftw_complex) * total_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  out.resize(total_);
  std::memcpy(out.data(), buf_out_, sizeof(fftw_complex) * total_);
}

void FftGrid::inverse(const std::vector<std::complex<double>>& in,
                      std::vector<std::complex<double>>& out) const {
  std::lock_guard<std::mutex> lock(exec_mutex_);
  std::memcpy(buf_in_, in.data(), sizeof(fftw_complex) * total_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  out.resize(total_);
  std::memcpy(out.data(), buf_out_, sizeof(fftw_complex) * total_);
  const double inv = 1.0 / static_cast<double>(total_);
  for (auto& z : out) z *= inv;
}

long FftGrid::negate_index(long k) const {
  std::array<long, 4> c;
  long idx = k;
  for (int ax = 3; ax >= 0; --ax) {
    c[ax] = idx % dims_[ax];
    idx /= dims_[ax];
  }
  long r = 0;
  for (int ax = 0; ax < 4; ++ax) {
    long v = (dims_[ax] - c[ax]) % dims_[ax];
    r = r * dims_[ax] + v;
  }
  return r;
}

}  // namespace bsfield
