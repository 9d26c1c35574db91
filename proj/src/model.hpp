#pragma once

#include <map>
#include <memory>
#include <optional>

#include "kernel.hpp"

namespace bsfield {

class Resolvent;

/// a_n = a (1 + sum_{j=1}^{n-1} L^-2j)^-1; a_1 = a.
double a_scale(double a, int L, int n);

struct ModelConfig {
  double a = 1.0;
  int profile_order = 1;  // averaging profile: 1 = plain block average
  double h0 = 0.0;        // temporal weight exponent in D_n (default 0)
  // optional plug-in kernel for the accumulated quadratic form (see fqn)
  std::shared_ptr<KernelOperator> fqn_plugin;
};

/// Single-level block averaging q: X_j^(m) -> X_{j-1}^(m+1), blocks of
/// L^2 x L x L x L fine points centered at the coarse points. profile_order
/// p > 1 uses the p-fold self-convolution of the normalized block profile.
/// q 1 = 1 holds exactly for every p.
KernelOperator averaging_q(LatticePtr fine, LatticePtr coarse, int profile_order);

/// Composed averaging Q_n = q_1 ... q_n : X_n -> X_0^(n).
KernelOperator compose_Qn(const LatticeParams& params, int n, int profile_order);

/// Discrete kinetic operator D_n = e^{-h0-conjugated weight} (-d_0) - Lap on
/// the fine lattice, divided differences, periodic. h0 = 0 gives -d_0 - Lap;
/// D_n annihilates constants exactly.
KernelOperator make_Dn(LatticePtr fine, double h0 = 0.0);

/// Operator bundle for one scale n of the chain (or a toy model). This is the
/// injection point for background/variation/critical: everything downstream
/// works through it.
class ModelOperators {
 public:
  LatticePtr fine;   // X_n
  LatticePtr unit;   // X_0^(n)
  std::shared_ptr<KernelOperator> Qn;    // fine -> unit
  std::shared_ptr<KernelOperator> fqn;   // unit -> unit, fqn 1 = a_n 1
  std::shared_ptr<KernelOperator> Dn;    // fine -> fine
  double a = 1.0;
  double a_n = 1.0;
  int n = 1;
  int L = 3;
  bool dn_translation_invariant = true;
  int profile_order = 1;

  Field apply_G(const Field& f) const;        // Qn^T fqn Qn
  Field apply_QnT_fq(const Field& f) const;   // Qn^T fqn : unit -> fine
  Field apply_fq_Qn(const Field& f) const;    // fqn Qn : fine -> unit
  /// (D^(T) + G - mu) f, i.e. S_n(mu)^{(*)-1} f applied explicitly.
  Field apply_Sinv(const Field& f, double mu, bool starred) const;

  std::shared_ptr<const Resolvent> resolvent(double mu) const;

  /// Validates fqn 1 = a_n 1 (1e-12), Qn 1 = 1, Qn^T 1 = 1_fin, D 1 = 0.
  void validate() const;

 private:
  mutable std::map<double, std::shared_ptr<const Resolvent>> resolvent_cache_;
  mutable std::mutex cache_mutex_;
};

/// Standard chain model at scale n (requires n <= params.n_steps).
ModelOperators make_rg_model(const LatticeParams& params, int n, const ModelConfig& cfg);

}  // namespace bsfield
