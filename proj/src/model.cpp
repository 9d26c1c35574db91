#include "model.hpp"

#include <cmath>

#include "resolvent.hpp"

namespace bsfield {

double a_scale(double a, int L, int n) {
  double s = 0.0;
  for (int j = 1; j <= n - 1; ++j) s += std::pow(static_cast<double>(L), -2.0 * j);
  return a / (1.0 + s);
}

namespace {

// normalized averaging profile on fine offsets, as offset->weight over the
// centered block, self-convolved (profile_order - 1) times
std::map<std::array<long, 4>, double> block_profile(const std::array<long, 4>& block,
                                                    int profile_order) {
  std::map<std::array<long, 4>, double> prof;
  // base: characteristic function of the centered block, normalized
  double w = 1.0;
  long sz = 1;
  for (int ax = 0; ax < 4; ++ax) sz *= block[ax];
  w = 1.0 / static_cast<double>(sz);
  std::array<long, 4> off{};
  std::array<long, 4> half{};
  for (int ax = 0; ax < 4; ++ax) half[ax] = (block[ax] - 1) / 2;
  std::function<void(int)> rec = [&](int ax) {
    if (ax == 4) {
      prof[off] = w;
      return;
    }
    for (long d = -half[ax]; d <= half[ax]; ++d) {
      off[ax] = d;
      rec(ax + 1);
    }
  };
  rec(0);
  auto base = prof;
  for (int p = 1; p < profile_order; ++p) {
    std::map<std::array<long, 4>, double> next;
    for (const auto& [o1, w1] : prof)
      for (const auto& [o2, w2] : base) {
        std::array<long, 4> o{};
        for (int ax = 0; ax < 4; ++ax) o[ax] = o1[ax] + o2[ax];
        next[o] += w1 * w2;
      }
    prof = std::move(next);
  }
  return prof;
}

}  // namespace

KernelOperator averaging_q(LatticePtr fine, LatticePtr coarse, int profile_order) {
  if (!fine->same_torus(*coarse)) throw ConfigError("averaging_q: lattices on different tori");
  std::array<long, 4> block{};
  for (int ax = 0; ax < 4; ++ax) {
    if (fine->count(ax) % coarse->count(ax) != 0)
      throw ConfigError("averaging_q: non-tiling geometry on axis " + std::to_string(ax));
    block[ax] = fine->count(ax) / coarse->count(ax);
    if (block[ax] > 1 && block[ax] % 2 == 0)
      throw ConfigError("averaging_q: even block on axis " + std::to_string(ax) +
                        " cannot be centered");
  }
  const auto prof = block_profile(block, profile_order);
  std::vector<KernelOperator::Entry> es;
  es.reserve(coarse->count() * prof.size());
  const double inv_vol = 1.0 / fine->vol();
  for (long y = 0; y < coarse->count(); ++y) {
    const auto cy = coarse->coords(y);
    std::array<long, 4> center{};
    for (int ax = 0; ax < 4; ++ax) center[ax] = cy[ax] * block[ax];
    for (const auto& [off, w] : prof) {
      std::array<long, 4> cx{};
      for (int ax = 0; ax < 4; ++ax) cx[ax] = center[ax] + off[ax];
      es.push_back({y, fine->index(cx), w * inv_vol});
    }
  }
  return KernelOperator(fine, coarse, std::move(es));
}

KernelOperator compose_Qn(const LatticeParams& params, int n, int profile_order) {
  if (n < 1) throw ConfigError("compose_Qn: n must be >= 1");
  // q_j : X_j^(n-j) -> X_{j-1}^(n-j+1); Q_n = q_1 ... q_n
  std::optional<KernelOperator> Q;
  for (int j = n; j >= 1; --j) {
    auto fine = Lattice::chain(params, j, n - j);
    auto coarse = Lattice::chain(params, j - 1, n - j + 1);
    KernelOperator q = averaging_q(fine, coarse, profile_order);
    if (!Q)
      Q = std::move(q);
    else
      Q = KernelOperator::compose(q, *Q);
  }
  return *Q;
}

KernelOperator make_Dn(LatticePtr fine, double h0) {
  // (D f)(x) = -(f(x + e_0) - f(x))/eps_t * e^{-h0}  - sum_i (f(x+e_i) - 2 f(x) + f(x-e_i))/eps_i^2
  // h0 = 0 default; a nonzero h0 multiplies the temporal part by e^{-h0}
  // (constant conjugated weight), which keeps D constant-annihilating.
  std::vector<KernelOperator::Entry> es;
  const double inv_vol = 1.0 / fine->vol();
  const double tw = std::exp(-h0);
  for (long x = 0; x < fine->count(); ++x) {
    const auto cx = fine->coords(x);
    double diag = 0.0;
    // temporal forward difference
    if (fine->count(0) > 1) {
      const double inv_eps = 1.0 / fine->spacing(0);
      auto cu = cx;
      cu[0] = cx[0] + 1;
      es.push_back({x, fine->index(cu), -tw * inv_eps * inv_vol});
      diag += tw * inv_eps;
    }
    // spatial 3/5-point Laplacian
    for (int ax = 1; ax < 4; ++ax) {
      if (fine->count(ax) == 1) continue;
      const double inv_eps2 = 1.0 / (fine->spacing(ax) * fine->spacing(ax));
      auto cu = cx;
      cu[ax] = cx[ax] + 1;
      es.push_back({x, fine->index(cu), -inv_eps2 * inv_vol});
      cu[ax] = cx[ax] - 1;
      es.push_back({x, fine->index(cu), -inv_eps2 * inv_vol});
      diag += 2.0 * inv_eps2;
    }
    if (diag != 0.0) es.push_back({x, x, diag * inv_vol});
  }
  return KernelOperator(fine, fine, std::move(es));
}

Field ModelOperators::apply_G(const Field& f) const {
  return Qn->apply_transpose(fqn->apply(Qn->apply(f)));
}

Field ModelOperators::apply_QnT_fq(const Field& f) const {
  return Qn->apply_transpose(fqn->apply(f));
}

Field ModelOperators::apply_fq_Qn(const Field& f) const { return fqn->apply(Qn->apply(f)); }

Field ModelOperators::apply_Sinv(const Field& f, double mu, bool starred) const {
  Field d = starred ? Dn->apply_transpose(f) : Dn->apply(f);
  Field g = apply_G(f);
  Field r = d + g;
  r -= mu * f;
  return r;
}

std::shared_ptr<const Resolvent> ModelOperators::resolvent(double mu) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = resolvent_cache_.find(mu);
  if (it != resolvent_cache_.end()) return it->second;
  auto r = std::make_shared<Resolvent>(*this, mu);
  resolvent_cache_[mu] = r;
  return r;
}

void ModelOperators::validate() const {
  const Field one_fin = Field::constant(fine, 1.0);
  const Field one_u = Field::constant(unit, 1.0);
  if (sup_gap(Qn->apply(one_fin), one_u) > 1e-12)
    throw ConfigError("model: Qn 1_fin = 1 violated");
  if (sup_gap(Qn->apply_transpose(one_u), one_fin) > 1e-12)
    throw ConfigError("model: Qn^* 1 = 1_fin violated");
  Field fq1 = fqn->apply(one_u);
  if (sup_gap(fq1, Field::constant(unit, a_n)) > 1e-12)
    throw ConfigError("model: fqn 1 = a_n 1 violated beyond 1e-12; plug-in rejected");
  if (Dn->apply(one_fin).sup_norm() > 1e-12)
    throw ConfigError("model: D_n does not annihilate constants");
}

ModelOperators make_rg_model(const LatticeParams& params, int n, const ModelConfig& cfg) {
  if (n < 1 || n > params.n_steps)
    throw ConfigError("scale n=" + std::to_string(n) + " outside the step budget n_p=" +
                      std::to_string(params.n_steps));
  ModelOperators m;
  m.fine = Lattice::chain(params, n, 0);
  m.unit = Lattice::chain(params, 0, n);
  m.L = params.L;
  m.n = n;
  m.a = cfg.a;
  m.a_n = a_scale(cfg.a, params.L, n);
  m.profile_order = cfg.profile_order;
  m.Qn = std::make_shared<KernelOperator>(compose_Qn(params, n, cfg.profile_order));
  if (cfg.fqn_plugin) {
    m.fqn = cfg.fqn_plugin;
  } else {
    m.fqn = std::make_shared<KernelOperator>(KernelOperator::scaled_identity(m.unit, m.a_n));
  }
  m.Dn = std::make_shared<KernelOperator>(make_Dn(m.fine, cfg.h0));
  m.dn_translation_invariant = true;  // stencil construction is translation invariant
  m.validate();
  return m;
}

}  // namespace bsfield
