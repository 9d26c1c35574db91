#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "field.hpp"

namespace bsfield {

/// Linear map between field spaces. apply_transpose is the adjoint for the
/// bilinear (unconjugated) inner products of domain and codomain.
class LinearOp {
 public:
  LinearOp(LatticePtr domain, LatticePtr codomain)
      : domain_(std::move(domain)), codomain_(std::move(codomain)) {}
  virtual ~LinearOp() = default;

  const LatticePtr& domain() const { return domain_; }
  const LatticePtr& codomain() const { return codomain_; }

  virtual Field apply(const Field& f) const = 0;
  virtual Field apply_transpose(const Field& f) const = 0;

  void check_domain(const Field& f) const;

 protected:
  LatticePtr domain_, codomain_;
};

using OpPtr = std::shared_ptr<const LinearOp>;

/// Sparse kernel A(y,x) with the application convention
/// (Af)(y) = vol_domain * sum_x A(y,x) f(x).
class KernelOperator : public LinearOp {
 public:
  struct Entry {
    long row;  // codomain index
    long col;  // domain index
    cplx value;
  };

  KernelOperator(LatticePtr domain, LatticePtr codomain, std::vector<Entry> entries);

  static KernelOperator identity(LatticePtr lat);
  static KernelOperator scaled_identity(LatticePtr lat, cplx c);

  Field apply(const Field& f) const override;
  Field apply_transpose(const Field& f) const override;

  KernelOperator transpose() const;
  /// Kernel of A∘B: (AB)(z,x) = sum_y vol_mid A(z,y) B(y,x).
  static KernelOperator compose(const KernelOperator& A, const KernelOperator& B);

  KernelOperator& operator*=(cplx s);
  static KernelOperator sum(const KernelOperator& A, const KernelOperator& B, cplx cb = 1.0);

  /// Weighted l1-linfty norm with mass m: max of the sup over rows of the
  /// volume-weighted column sums of e^{m d(y,x)} |A(y,x)| and vice versa.
  double norm(double mass) const;

  const std::vector<Entry>& entries() const { return entries_; }
  long nnz() const { return static_cast<long>(entries_.size()); }

  cplx value_at(long row, long col) const;

 private:
  std::vector<Entry> entries_;  // sorted by (row, col), coalesced
  std::vector<long> row_start_;
  void build_index();
};

/// Lazily composed chain of operator applications (no kernel materialized).
class ComposedOp : public LinearOp {
 public:
  /// ops applied right-to-left: apply(f) = ops[0](ops[1](... f)).
  ComposedOp(std::vector<OpPtr> ops, cplx scale = 1.0);
  Field apply(const Field& f) const override;
  Field apply_transpose(const Field& f) const override;

 private:
  std::vector<OpPtr> ops_;
  cplx scale_;
};

/// Wraps closures as a LinearOp.
class FunctionOp : public LinearOp {
 public:
  using Fn = std::function<Field(const Field&)>;
  FunctionOp(LatticePtr domain, LatticePtr codomain, Fn fwd, Fn tr)
      : LinearOp(std::move(domain), std::move(codomain)), fwd_(std::move(fwd)), tr_(std::move(tr)) {}
  Field apply(const Field& f) const override { return fwd_(f); }
  Field apply_transpose(const Field& f) const override { return tr_(f); }

 private:
  Fn fwd_, tr_;
};

/// Materialize any LinearOp as an explicit kernel by applying to deltas.
/// Intended for small lattices (norm reports, tiny-regime checks).
KernelOperator materialize(const LinearOp& op, double drop_tol = 0.0);

}  // namespace bsfield
