#include "kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bsfield {

void LinearOp::check_domain(const Field& f) const {
  if (f.lattice()->count() != domain_->count())
    throw ConfigError("operator applied to field on wrong lattice (" +
                      f.lattice()->describe() + " vs domain " + domain_->describe() + ")");
}

KernelOperator::KernelOperator(LatticePtr domain, LatticePtr codomain, std::vector<Entry> entries)
    : LinearOp(std::move(domain), std::move(codomain)), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  // coalesce duplicates
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!out.empty() && out.back().row == e.row && out.back().col == e.col)
      out.back().value += e.value;
    else
      out.push_back(e);
  }
  entries_ = std::move(out);
  build_index();
}

void KernelOperator::build_index() {
  row_start_.assign(codomain_->count() + 1, 0);
  for (const auto& e : entries_) ++row_start_[e.row + 1];
  for (size_t r = 1; r < row_start_.size(); ++r) row_start_[r] += row_start_[r - 1];
}

KernelOperator KernelOperator::identity(LatticePtr lat) {
  return scaled_identity(std::move(lat), 1.0);
}

KernelOperator KernelOperator::scaled_identity(LatticePtr lat, cplx c) {
  std::vector<Entry> es;
  es.reserve(lat->count());
  const cplx v = c / lat->vol();
  for (long i = 0; i < lat->count(); ++i) es.push_back({i, i, v});
  return KernelOperator(lat, lat, std::move(es));
}

Field KernelOperator::apply(const Field& f) const {
  check_domain(f);
  Field r(codomain_);
  const double vol = domain_->vol();
  for (const auto& e : entries_) r[e.row] += e.value * f[e.col];
  r *= vol;
  return r;
}

Field KernelOperator::apply_transpose(const Field& f) const {
  if (f.lattice()->count() != codomain_->count())
    throw ConfigError("transpose apply: field on wrong lattice");
  Field r(domain_);
  const double vol = codomain_->vol();
  for (const auto& e : entries_) r[e.col] += e.value * f[e.row];
  r *= vol;
  return r;
}

KernelOperator KernelOperator::transpose() const {
  std::vector<Entry> es;
  es.reserve(entries_.size());
  for (const auto& e : entries_) es.push_back({e.col, e.row, e.value});
  return KernelOperator(codomain_, domain_, std::move(es));
}

KernelOperator KernelOperator::compose(const KernelOperator& A, const KernelOperator& B) {
  if (A.domain()->count() != B.codomain()->count())
    throw ConfigError("compose: inner lattice mismatch");
  const double vol_mid = A.domain()->vol();
  // row-wise sparse product
  std::vector<Entry> out;
  std::map<long, cplx> acc;
  for (long z = 0; z < A.codomain()->count(); ++z) {
    acc.clear();
    for (long ia = A.row_start_[z]; ia < A.row_start_[z + 1]; ++ia) {
      const auto& ea = A.entries_[ia];
      for (long ib = B.row_start_[ea.col]; ib < B.row_start_[ea.col + 1]; ++ib) {
        const auto& eb = B.entries_[ib];
        acc[eb.col] += ea.value * eb.value;
      }
    }
    for (const auto& [col, v] : acc) out.push_back({z, col, vol_mid * v});
  }
  return KernelOperator(B.domain(), A.codomain(), std::move(out));
}

KernelOperator& KernelOperator::operator*=(cplx s) {
  for (auto& e : entries_) e.value *= s;
  return *this;
}

KernelOperator KernelOperator::sum(const KernelOperator& A, const KernelOperator& B, cplx cb) {
  std::vector<Entry> es = A.entries_;
  es.reserve(es.size() + B.entries_.size());
  for (const auto& e : B.entries_) es.push_back({e.row, e.col, cb * e.value});
  return KernelOperator(A.domain(), A.codomain(), std::move(es));
}

double KernelOperator::norm(double mass) const {
  // rows and columns must be measured against a common metric; use the
  // codomain's when both are on the same torus (enforced at construction of
  // chain operators). Distances are computed from physical coordinates.
  std::vector<double> row_sum(codomain_->count(), 0.0);
  std::vector<double> col_sum(domain_->count(), 0.0);
  const double vol_x = domain_->vol();
  const double vol_y = codomain_->vol();
  for (const auto& e : entries_) {
    // distance between codomain point e.row and domain point e.col
    const auto py = codomain_->physical(e.row);
    const auto px = domain_->physical(e.col);
    double d = 0;
    if (codomain_->metric() == Metric::Taxicab) {
      for (int ax = 0; ax < Lattice::kAxes; ++ax) {
        double g = std::abs(py[ax] - px[ax]);
        const double ext = std::max(codomain_->extent(ax), domain_->extent(ax));
        g = std::min(g, std::abs(g - ext));
        d += g;
      }
    } else {
      for (int ax = 0; ax < Lattice::kAxes; ++ax) {
        double g = std::abs(py[ax] - px[ax]);
        const double ext = std::max(codomain_->extent(ax), domain_->extent(ax));
        g = std::min(g, std::abs(g - ext));
        d += g * g;
      }
      d = std::sqrt(d);
    }
    const double w = std::exp(mass * d) * std::abs(e.value);
    row_sum[e.row] += vol_x * w;
    col_sum[e.col] += vol_y * w;
  }
  double m = 0;
  for (double s : row_sum) m = std::max(m, s);
  for (double s : col_sum) m = std::max(m, s);
  return m;
}

cplx KernelOperator::value_at(long row, long col) const {
  for (long i = row_start_[row]; i < row_start_[row + 1]; ++i)
    if (entries_[i].col == col) return entries_[i].value;
  return 0.0;
}

ComposedOp::ComposedOp(std::vector<OpPtr> ops, cplx scale)
    : LinearOp(ops.back()->domain(), ops.front()->codomain()),
      ops_(std::move(ops)),
      scale_(scale) {}

Field ComposedOp::apply(const Field& f) const {
  Field r = f;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) r = (*it)->apply(r);
  r *= scale_;
  return r;
}

Field ComposedOp::apply_transpose(const Field& f) const {
  Field r = f;
  for (const auto& op : ops_) r = op->apply_transpose(r);
  r *= scale_;
  return r;
}

KernelOperator materialize(const LinearOp& op, double drop_tol) {
  std::vector<KernelOperator::Entry> es;
  const double vol = op.domain()->vol();
  for (long x = 0; x < op.domain()->count(); ++x) {
    Field col = op.apply(Field::delta(op.domain(), x));
    for (long y = 0; y < col.size(); ++y) {
      if (std::abs(col[y]) > drop_tol) es.push_back({y, x, col[y] / vol});
    }
  }
  return KernelOperator(op.domain(), op.codomain(), std::move(es));
}

}  // namespace bsfield
