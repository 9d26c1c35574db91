#pragma once

#include <array>
#include <memory>
#include <string>

#include "errors.hpp"

namespace bsfield {

enum class Metric { Euclidean, Taxicab };

/// Global parameters of the scaling chain. L_tp and L_sp are the temporal and
/// spatial extents of the original unit-spacing torus; they must be powers of
/// L^2 and L respectively so that every sublattice used up to n_steps exists.
struct LatticeParams {
  int L = 3;
  long L_tp = 81;
  long L_sp = 9;
  int n_steps = 2;
  // Temporal-only chain (each spatial axis collapsed to one point). The
  // block-spin algebra is unchanged; blocks become L^2 x 1 x 1 x 1.
  bool reduced_spatial = false;
  Metric metric = Metric::Euclidean;

  void validate() const;
};

/// An anisotropic discrete torus. For the scaling chain, scale index j gives
/// spacings (L^-2j temporal, L^-j spatial) and upper index m fixes the point
/// count (L_tp/L^2m) * (L_sp/L^m)^3; the step number is n = j + m and all
/// lattices with equal j+m live on the same physical torus.
class Lattice {
 public:
  static constexpr int kAxes = 4;

  static std::shared_ptr<const Lattice> chain(const LatticeParams& p, int scale_j,
                                              int steps_remaining);
  /// Free-form lattice for the tiny/toy regime (no divisibility constraints).
  static std::shared_ptr<const Lattice> free_form(std::array<long, 4> counts,
                                                  std::array<double, 4> spacings,
                                                  Metric metric = Metric::Euclidean);

  long count() const { return total_; }
  long count(int axis) const { return counts_[axis]; }
  double spacing(int axis) const { return spacings_[axis]; }
  double extent(int axis) const { return counts_[axis] * spacings_[axis]; }
  /// Cell volume: product of spacings over active (count > 1 or non-reduced) axes.
  double vol() const { return vol_; }

  int scale_j() const { return scale_j_; }
  int steps_remaining() const { return steps_remaining_; }
  bool is_chain() const { return chain_; }
  const LatticeParams& params() const;

  std::array<long, 4> coords(long index) const;
  long index(const std::array<long, 4>& c) const;  // coordinates wrap
  std::array<double, 4> physical(long index) const;

  double distance(long i, long k) const;
  double axis_gap(int axis, long ci, long ck) const;  // wrapped physical gap
  Metric metric() const { return metric_; }

  bool same_shape(const Lattice& o) const;
  bool same_torus(const Lattice& o) const;

  std::string describe() const;

 private:
  Lattice() = default;
  std::array<long, 4> counts_{1, 1, 1, 1};
  std::array<double, 4> spacings_{1, 1, 1, 1};
  long total_ = 1;
  double vol_ = 1;
  int scale_j_ = 0;
  int steps_remaining_ = 0;
  bool chain_ = false;
  LatticeParams params_{};
  Metric metric_ = Metric::Euclidean;
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// Point of `unit` nearest to point u of `fine` in the torus metric; ties are
/// broken toward the lexicographically smaller coordinate tuple.
long nearest_unit_point(const Lattice& fine, const Lattice& unit, long u);

}  // namespace bsfield
