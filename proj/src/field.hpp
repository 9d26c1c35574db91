#pragma once

#include <complex>
#include <vector>

#include "lattice.hpp"
#include "rng.hpp"

namespace bsfield {

using cplx = std::complex<double>;

/// Complex-valued function on a Lattice. Value storage is row-major in the
/// lattice's axis order; fields are treated as immutable values.
class Field {
 public:
  Field() = default;
  explicit Field(LatticePtr lat, cplx fill = cplx(0, 0))
      : lat_(std::move(lat)), v_(lat_->count(), fill) {}
  Field(LatticePtr lat, std::vector<cplx> values);

  static Field constant(LatticePtr lat, cplx c) { return Field(std::move(lat), c); }
  static Field delta(LatticePtr lat, long at, cplx value = cplx(1, 0));
  /// Deterministic random field from the counter generator (stream = which
  /// independent field from the same seed).
  static Field random(LatticePtr lat, const CounterRng& rng, std::uint64_t stream = 0);

  const LatticePtr& lattice() const { return lat_; }
  long size() const { return static_cast<long>(v_.size()); }
  cplx operator[](long i) const { return v_[i]; }
  cplx& operator[](long i) { return v_[i]; }
  const std::vector<cplx>& values() const { return v_; }
  std::vector<cplx>& values() { return v_; }

  double sup_norm() const;
  bool finite() const;
  Field conj() const;
  cplx mean() const;  // plain average over points

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx s);

 private:
  LatticePtr lat_;
  std::vector<cplx> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);
Field pointwise(const Field& a, const Field& b);
Field pointwise(const Field& a, const Field& b, const Field& c);

/// Bilinear inner product <f,g>_j = vol * sum f(u) g(u); no conjugation.
cplx inner_product(const Field& f, const Field& g);

/// Periodic shift by one lattice spacing: (T_nu f)(x) = f(x - e_nu),
/// (T_nu^{-1} f)(x) = f(x + e_nu). The orientation is locked by the discrete
/// product rule d(fg) = (df)(T^-1 g) + f dg, which holds exactly.
Field translate(const Field& f, int axis, int sign);

/// Forward difference (d_nu f)(x) = (f(x+e_nu) - f(x)) / spacing. Set
/// divided=false for the undivided variant.
Field forward_diff(const Field& f, int axis, bool divided = true);

/// Adjoint of forward_diff w.r.t. the bilinear inner product:
/// <df, g> = -<f, forward_diff_adjoint(g)> exactly.
Field forward_diff_adjoint(const Field& f, int axis, bool divided = true);

double sup_gap(const Field& a, const Field& b);

// ---- parabolic scaling -----------------------------------------------------
// S moves a field from X(j,m) to X(j+1,m): (S f)(x0,xv) = L^{3/2} f(L^2 x0, L xv).
// In integer coordinates this is a relabeling times L^{3/2}; compositions are
// exact. L_* is the pullback dilation with S = L^{3/2} L_*^{-1}.

Field scale_finer(const Field& f);           // S
Field scale_coarser(const Field& f);         // S^{-1}
Field pullback_dilation(const Field& f);     // L_*
Field pullback_dilation_inv(const Field& f); // L_*^{-1}

/// The lattice S maps fields on `lat` to (one scale index up, same count).
LatticePtr scaled_lattice(const Lattice& lat, int dj);

}  // namespace bsfield
