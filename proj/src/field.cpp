#include "field.hpp"

#include <cmath>

namespace bsfield {

Field::Field(LatticePtr lat, std::vector<cplx> values) : lat_(std::move(lat)), v_(std::move(values)) {
  if (static_cast<long>(v_.size()) != lat_->count())
    throw ConfigError("field value count does not match lattice point count");
}

Field Field::delta(LatticePtr lat, long at, cplx value) {
  Field f(lat);
  f[at] = value;
  return f;
}

Field Field::random(LatticePtr lat, const CounterRng& rng, std::uint64_t stream) {
  Field f(lat);
  const std::uint64_t base = stream * static_cast<std::uint64_t>(lat->count());
  for (long i = 0; i < f.size(); ++i) f[i] = rng.complex_symmetric(base + i);
  return f;
}

double Field::sup_norm() const {
  double m = 0;
  for (const auto& z : v_) m = std::max(m, std::abs(z));
  return m;
}

bool Field::finite() const {
  for (const auto& z : v_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Field Field::conj() const {
  Field f(lat_);
  for (long i = 0; i < size(); ++i) f[i] = std::conj(v_[i]);
  return f;
}

cplx Field::mean() const {
  cplx s = 0;
  for (const auto& z : v_) s += z;
  return s / static_cast<double>(v_.size());
}

Field& Field::operator+=(const Field& o) {
  for (long i = 0; i < size(); ++i) v_[i] += o.v_[i];
  return *this;
}
Field& Field::operator-=(const Field& o) {
  for (long i = 0; i < size(); ++i) v_[i] -= o.v_[i];
  return *this;
}
Field& Field::operator*=(cplx s) {
  for (auto& z : v_) z *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

Field pointwise(const Field& a, const Field& b) {
  Field r(a.lattice());
  for (long i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

Field pointwise(const Field& a, const Field& b, const Field& c) {
  Field r(a.lattice());
  for (long i = 0; i < a.size(); ++i) r[i] = a[i] * b[i] * c[i];
  return r;
}

cplx inner_product(const Field& f, const Field& g) {
  if (!f.lattice()->same_shape(*g.lattice()) ||
      std::abs(f.lattice()->vol() - g.lattice()->vol()) > 1e-15 * f.lattice()->vol())
    throw ConfigError("inner_product: lattice mismatch");
  cplx s = 0;
  for (long i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return f.lattice()->vol() * s;
}

namespace {

// apply a +1 step along `axis` to each point: out(x) = in(x + e_axis)
Field shifted_up(const Field& f, int axis) {
  const auto& lat = *f.lattice();
  Field r(f.lattice());
  // contiguous stride of `axis`
  long stride = 1;
  for (int ax = Lattice::kAxes - 1; ax > axis; --ax) stride *= lat.count(ax);
  const long n_axis = lat.count(axis);
  const long block = stride * n_axis;
  const long total = lat.count();
  for (long base = 0; base < total; base += block) {
    for (long a = 0; a < n_axis; ++a) {
      const long a_up = (a + 1) % n_axis;
      const long src = base + a_up * stride;
      const long dst = base + a * stride;
      for (long s = 0; s < stride; ++s) r[dst + s] = f[src + s];
    }
  }
  return r;
}

}  // namespace

Field translate(const Field& f, int axis, int sign) {
  if (axis < 0 || axis >= Lattice::kAxes) throw ConfigError("translate: bad axis");
  if (f.lattice()->count(axis) == 1) return f;
  if (sign > 0) {
    // (T f)(x) = f(x - e): shift down
    Field r(f.lattice());
    const auto& lat = *f.lattice();
    long stride = 1;
    for (int ax = Lattice::kAxes - 1; ax > axis; --ax) stride *= lat.count(ax);
    const long n_axis = lat.count(axis);
    const long block = stride * n_axis;
    for (long base = 0; base < lat.count(); base += block) {
      for (long a = 0; a < n_axis; ++a) {
        const long a_dn = (a - 1 + n_axis) % n_axis;
        const long src = base + a_dn * stride;
        const long dst = base + a * stride;
        for (long s = 0; s < stride; ++s) r[dst + s] = f[src + s];
      }
    }
    return r;
  }
  return shifted_up(f, axis);
}

Field forward_diff(const Field& f, int axis, bool divided) {
  const double eps = divided ? f.lattice()->spacing(axis) : 1.0;
  if (f.lattice()->count(axis) == 1) return Field(f.lattice());
  Field up = shifted_up(f, axis);
  Field r(f.lattice());
  for (long i = 0; i < f.size(); ++i) r[i] = (up[i] - f[i]) / eps;
  return r;
}

Field forward_diff_adjoint(const Field& f, int axis, bool divided) {
  // <df, g> = sum (f(x+e)-f(x)) g(x) / eps = sum f(y) (g(y-e)-g(y)) / eps
  // so the operator with <df,g> = -<f, d^+ g> is (d^+ g)(y) = (g(y)-g(y-e))/eps.
  const double eps = divided ? f.lattice()->spacing(axis) : 1.0;
  if (f.lattice()->count(axis) == 1) return Field(f.lattice());
  Field dn = translate(f, axis, +1);  // f(x - e)
  Field r(f.lattice());
  for (long i = 0; i < f.size(); ++i) r[i] = (f[i] - dn[i]) / eps;
  return r;
}

double sup_gap(const Field& a, const Field& b) {
  double m = 0;
  for (long i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

LatticePtr scaled_lattice(const Lattice& lat, int dj) {
  if (!lat.is_chain()) throw ConfigError("scaling requires a chain lattice");
  return Lattice::chain(lat.params(), lat.scale_j() + dj, lat.steps_remaining());
}

Field scale_finer(const Field& f) {
  const auto& lat = *f.lattice();
  auto target = scaled_lattice(lat, +1);
  const double s = std::pow(static_cast<double>(lat.params().L), 1.5);
  Field r(target, f.values());
  r *= s;
  return r;
}

Field scale_coarser(const Field& f) {
  const auto& lat = *f.lattice();
  auto target = scaled_lattice(lat, -1);
  const double s = std::pow(static_cast<double>(lat.params().L), -1.5);
  Field r(target, f.values());
  r *= s;
  return r;
}

Field pullback_dilation(const Field& f) {
  // (L_* f)(x) = f(x0/L^2, xv/L): fields on X(j+1,m) -> X(j,m); in integer
  // coordinates a pure relabeling.
  return Field(scaled_lattice(*f.lattice(), -1), f.values());
}

Field pullback_dilation_inv(const Field& f) {
  return Field(scaled_lattice(*f.lattice(), +1), f.values());
}

}  // namespace bsfield
