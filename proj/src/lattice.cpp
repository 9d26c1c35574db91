#include "lattice.hpp"

#include <cmath>
#include <sstream>

namespace bsfield {

namespace {

// exact integer power
long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// returns k with base^k == v, or -1
int ilog(long base, long v) {
  int k = 0;
  long p = 1;
  while (p < v) {
    p *= base;
    ++k;
    if (k > 40) return -1;
  }
  return p == v ? k : -1;
}

}  // namespace

void LatticeParams::validate() const {
  if (L < 3 || L % 2 == 0) throw ConfigError("L must be odd and >= 3, got " + std::to_string(L));
  if (ilog(static_cast<long>(L) * L, L_tp) < 0)
    throw ConfigError("L_tp must be a power of L^2, got " + std::to_string(L_tp));
  if (!reduced_spatial && ilog(L, L_sp) < 0)
    throw ConfigError("L_sp must be a power of L, got " + std::to_string(L_sp));
  if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
}

std::shared_ptr<const Lattice> Lattice::chain(const LatticeParams& p, int scale_j,
                                              int steps_remaining) {
  p.validate();
  const int m = steps_remaining;
  if (m < 0) throw ConfigError("steps_remaining must be >= 0");
  auto lat = std::shared_ptr<Lattice>(new Lattice());
  lat->chain_ = true;
  lat->params_ = p;
  lat->metric_ = p.metric;
  lat->scale_j_ = scale_j;
  lat->steps_remaining_ = m;

  const long lt = ipow(p.L, 2 * m);
  if (p.L_tp % lt != 0)
    throw ConfigError("temporal extent " + std::to_string(p.L_tp) + " not divisible by L^" +
                      std::to_string(2 * m) + " (axis 0)");
  lat->counts_[0] = p.L_tp / lt;
  lat->spacings_[0] = std::pow(static_cast<double>(p.L), -2 * scale_j);

  if (p.reduced_spatial) {
    for (int ax = 1; ax < kAxes; ++ax) {
      lat->counts_[ax] = 1;
      lat->spacings_[ax] = 1.0;
    }
  } else {
    const long ls = ipow(p.L, m);
    if (p.L_sp % ls != 0)
      throw ConfigError("spatial extent " + std::to_string(p.L_sp) + " not divisible by L^" +
                        std::to_string(m) + " (axes 1-3)");
    for (int ax = 1; ax < kAxes; ++ax) {
      lat->counts_[ax] = p.L_sp / ls;
      lat->spacings_[ax] = std::pow(static_cast<double>(p.L), -scale_j);
    }
  }

  lat->total_ = 1;
  lat->vol_ = 1.0;
  for (int ax = 0; ax < kAxes; ++ax) {
    lat->total_ *= lat->counts_[ax];
    lat->vol_ *= lat->spacings_[ax];
  }
  return lat;
}

std::shared_ptr<const Lattice> Lattice::free_form(std::array<long, 4> counts,
                                                  std::array<double, 4> spacings, Metric metric) {
  auto lat = std::shared_ptr<Lattice>(new Lattice());
  lat->chain_ = false;
  lat->metric_ = metric;
  lat->counts_ = counts;
  lat->spacings_ = spacings;
  lat->total_ = 1;
  lat->vol_ = 1.0;
  for (int ax = 0; ax < kAxes; ++ax) {
    if (counts[ax] < 1) throw ConfigError("lattice axis count must be >= 1");
    lat->total_ *= counts[ax];
    lat->vol_ *= spacings[ax];
  }
  return lat;
}

const LatticeParams& Lattice::params() const {
  if (!chain_) throw ConfigError("free-form lattice has no chain parameters");
  return params_;
}

std::array<long, 4> Lattice::coords(long index) const {
  std::array<long, 4> c;
  for (int ax = kAxes - 1; ax >= 0; --ax) {
    c[ax] = index % counts_[ax];
    index /= counts_[ax];
  }
  return c;
}

long Lattice::index(const std::array<long, 4>& c) const {
  long idx = 0;
  for (int ax = 0; ax < kAxes; ++ax) {
    long v = c[ax] % counts_[ax];
    if (v < 0) v += counts_[ax];
    idx = idx * counts_[ax] + v;
  }
  return idx;
}

std::array<double, 4> Lattice::physical(long index) const {
  auto c = coords(index);
  std::array<double, 4> x;
  for (int ax = 0; ax < kAxes; ++ax) x[ax] = c[ax] * spacings_[ax];
  return x;
}

double Lattice::axis_gap(int axis, long ci, long ck) const {
  long d = ci - ck;
  const long n = counts_[axis];
  d %= n;
  if (d < 0) d += n;
  if (2 * d > n) d = n - d;
  return d * spacings_[axis];
}

double Lattice::distance(long i, long k) const {
  auto ci = coords(i), ck = coords(k);
  if (metric_ == Metric::Taxicab) {
    double s = 0;
    for (int ax = 0; ax < kAxes; ++ax) s += axis_gap(ax, ci[ax], ck[ax]);
    return s;
  }
  double s = 0;
  for (int ax = 0; ax < kAxes; ++ax) {
    double g = axis_gap(ax, ci[ax], ck[ax]);
    s += g * g;
  }
  return std::sqrt(s);
}

bool Lattice::same_shape(const Lattice& o) const {
  for (int ax = 0; ax < kAxes; ++ax)
    if (counts_[ax] != o.counts_[ax]) return false;
  return true;
}

bool Lattice::same_torus(const Lattice& o) const {
  for (int ax = 0; ax < kAxes; ++ax) {
    if (std::abs(extent(ax) - o.extent(ax)) > 1e-12 * (1.0 + std::abs(extent(ax)))) return false;
  }
  return true;
}

std::string Lattice::describe() const {
  std::ostringstream os;
  os << counts_[0] << "x" << counts_[1] << "x" << counts_[2] << "x" << counts_[3];
  if (chain_) os << " (j=" << scale_j_ << ", m=" << steps_remaining_ << ")";
  return os.str();
}

long nearest_unit_point(const Lattice& fine, const Lattice& unit, long u) {
  if (!fine.same_torus(unit))
    throw ConfigError("nearest_unit_point: lattices live on different tori");
  const auto cu = fine.coords(u);
  std::array<long, 4> best{};
  for (int ax = 0; ax < Lattice::kAxes; ++ax) {
    const double x = cu[ax] * fine.spacing(ax);
    const double su = unit.spacing(ax);
    const long nu = unit.count(ax);
    // candidate unit coordinates around x/su, compared with wrapped distance;
    // ties toward the smaller wrapped coordinate
    const long base = static_cast<long>(std::floor(x / su));
    long best_c = 0;
    double best_d = 1e300;
    for (long cand = base - 1; cand <= base + 2; ++cand) {
      long cw = cand % nu;
      if (cw < 0) cw += nu;
      double gap = std::abs(x - cand * su);
      double wrapped = std::min(gap, std::abs(gap - unit.extent(ax)));
      if (wrapped < best_d - 1e-13) {
        best_d = wrapped;
        best_c = cw;
      } else if (wrapped < best_d + 1e-13 && cw < best_c) {
        best_c = cw;
      }
    }
    best[ax] = best_c;
  }
  return unit.index(best);
}

}  // namespace bsfield
