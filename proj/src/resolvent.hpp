#pragma once

#include <Eigen/Dense>

#include "fft_grid.hpp"
#include "model.hpp"

namespace bsfield {

/// S_n(mu) = (D_n + Q_n^* fQ_n Q_n - mu)^{-1} on the fine lattice.
///
/// Two realizations behind one interface:
///  - dense LU for small lattices,
///  - Fourier-Woodbury for translation-invariant D_n: with B = D - mu,
///    S = B+ - B+ Qn^T (fqn^{-1} + Qn B+ Qn^T)^{-1} Qn B+ on the mean-zero
///    sector (B+ = Fourier pseudo-inverse of B with the k=0 mode removed),
///    and the exact factor (a_n - mu)^{-1} on constants. The inner matrix is
///    unit-lattice sized, so applications cost two FFT round trips.
class Resolvent : public LinearOp {
 public:
  Resolvent(const ModelOperators& ops, double mu);

  Field apply(const Field& f) const override;            // S(mu) f
  Field apply_transpose(const Field& f) const override;  // S(mu)^T f
  Field apply_starred(const Field& f, bool starred) const {
    return starred ? apply_transpose(f) : apply(f);
  }

  double mu() const { return mu_; }
  /// smallest |symbol - mu| over nonconstant modes together with |a_n - mu|
  double margin() const { return margin_; }
  /// max sup-residual of S^{-1} S f - f over deterministic probes
  double residual_probe() const;

  static long dense_limit() { return 2048; }

 private:
  void build_dense(const ModelOperators& ops);
  void build_fourier(const ModelOperators& ops);
  Field bplus(const Field& f, bool transposed) const;

  std::shared_ptr<KernelOperator> Qn_, fqn_, Dn_;
  double mu_ = 0.0;
  double a_n_ = 1.0;
  double margin_ = 0.0;

  bool dense_ = false;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_, lu_tr_;

  std::shared_ptr<FftGrid> grid_;
  std::vector<cplx> symbol_;               // of D_n
  Eigen::PartialPivLU<Eigen::MatrixXcd> inner_lu_, inner_lu_tr_;  // deflated Kin
};

}  // namespace bsfield
