#include "ck/lmnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ck/curved_param.hpp"
#include "ck/knn.hpp"
#include "ck/rng.hpp"

namespace ck {

namespace {

constexpr double kGradTol = 1e-7;
constexpr double kGammaFloor = 1e-15;
constexpr double kDiagFloor = 1e-8;
constexpr double kCostCeiling = 1e12;

// +1 when points inside the hyperbolic domain have positive self-product
// under the stored (unnormalized) matrix, -1 otherwise.
double hyper_domain_sign(const Vec& D) {
  const int m = static_cast<int>(D.size());
  require(m >= 2, Errc::InvariantViolation, "hyperbolic factor too small");
  const double last = D[m - 1];
  require(last != 0.0, Errc::InvariantViolation, "zero entry in fixed factor");
  for (int i = 0; i + 1 < m; ++i) {
    require(D[i] * last < 0.0, Errc::InvariantViolation,
            "fixed factor must have one minority sign");
  }
  return last > 0.0 ? 1.0 : -1.0;
}

// Transformed coordinates shared by cost and gradient evaluation.
struct Ctx {
  GeometryKind kind;
  Mat lifts;       // inputs, homogeneous for curved kinds
  Mat Y;           // lifts * L^T
  Vec weights;     // inner-product signs (curved)
  double scale = 1.0;  // 1 / |kappa| for curved kinds
  double dom_sign = 1.0;

  double inner(int a, int b) const {
    if (kind == GeometryKind::Flat) return Y.row(a).dot(Y.row(b));
    return Y.row(a).cwiseProduct(weights.transpose()).dot(Y.row(b));
  }
};

Ctx make_ctx(const MetricState& m, const Mat& X) {
  Ctx c;
  c.kind = m.kind;
  const int n = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  require(m.dim() == d, Errc::DimensionMismatch,
          "metric and data dimensions differ");
  if (m.kind == GeometryKind::Flat) {
    c.lifts = X;
  } else {
    c.lifts.resize(n, d + 1);
    c.lifts.leftCols(d) = X;
    c.lifts.col(d).setOnes();
    c.scale = 1.0 / std::abs(m.kappa);
    c.weights = Vec::Ones(d + 1);
    if (m.kind == GeometryKind::Hyperbolic) {
      c.weights = m.D;
      c.dom_sign = hyper_domain_sign(m.D);
    }
  }
  c.Y.noalias() = c.lifts * m.L.transpose();
  return c;
}

double pair_loss(const Ctx& c, int a, int b) {
  if (c.kind == GeometryKind::Flat)
    return (c.Y.row(a) - c.Y.row(b)).squaredNorm();
  const double saa = c.inner(a, a);
  const double sbb = c.inner(b, b);
  const double sab = c.inner(a, b);
  if (c.kind == GeometryKind::Elliptic) {
    double r = sab / std::sqrt(saa * sbb);
    r = std::clamp(r, -1.0, 1.0);
    return c.scale * std::acos(r);
  }
  require(c.dom_sign * saa > 0.0 && c.dom_sign * sbb > 0.0,
          Errc::DomainViolation, "point outside the hyperbolic domain");
  double r = std::abs(sab) / std::sqrt(saa * sbb);
  if (r < 1.0) {
    require(r > 1.0 - 1e-9, Errc::NumericalFailure,
            "hyperbolic ratio below admissible range");
    r = 1.0;
  }
  return c.scale * std::acosh(r);
}

bool all_in_domain(const MetricState& m, const Mat& X) {
  Ctx c = make_ctx(m, X);
  for (int i = 0; i < c.Y.rows(); ++i) {
    if (c.dom_sign * c.inner(i, i) <= 0.0) return false;
  }
  return true;
}

void check_triplets(const LabeledDataset& data, const TripletSet& t) {
  const int n = data.n();
  auto ok = [&](int i) { return i >= 0 && i < n; };
  for (const auto& [i, j] : t.targets) {
    require(ok(i) && ok(j), Errc::BadArgument, "target index out of range");
  }
  for (const auto& [i, j, l] : t.impostors) {
    require(ok(i) && ok(j) && ok(l), Errc::BadArgument,
            "impostor index out of range");
  }
}

Mat tril(const Mat& G) {
  return G.triangularView<Eigen::Lower>();
}

Mat regularized_precision(const LabeledDataset& data) {
  const int n = data.n();
  const int d = data.dim();
  Vec mean = data.X.colwise().mean();
  Mat centered = data.X.rowwise() - mean.transpose();
  Mat cov = centered.transpose() * centered / double(n - 1);
  Eigen::LLT<Mat> llt(cov);
  if (llt.info() != Eigen::Success) {
    cov += (1e-6 * cov.trace() / d) * Mat::Identity(d, d);
    llt.compute(cov);
    require(llt.info() == Eigen::Success, Errc::SingularCovariance,
            "covariance not invertible after regularization");
  }
  Mat prec = llt.solve(Mat::Identity(d, d));
  return ((prec + prec.transpose()) / 2.0).eval();
}

}  // namespace

void LmnnConfig::validate() const {
  require(k_targets >= 1, Errc::BadArgument, "k_targets must be at least 1");
  require(tradeoff >= 0.0 && tradeoff <= 1.0, Errc::BadArgument,
          "tradeoff must lie in [0, 1]");
  require(std::isfinite(gamma0) && gamma0 > 0.0, Errc::BadArgument,
          "gamma0 must be positive");
  require(max_iters >= 0, Errc::BadArgument, "max_iters must be nonnegative");
  require(impostor_period >= 1, Errc::BadArgument,
          "impostor_period must be at least 1");
  require(std::isfinite(kappa_init), Errc::BadKappa,
          "kappa_init must be finite");
}

int MetricState::dim() const {
  const int m = static_cast<int>(L.rows());
  return kind == GeometryKind::Flat ? m : m - 1;
}

Mat MetricState::matrix() const {
  if (kind == GeometryKind::Hyperbolic)
    return L.transpose() * D.asDiagonal() * L;
  return L.transpose() * L;
}

BilinearForm MetricState::form() const {
  if (kind == GeometryKind::Flat) return BilinearForm::flat(matrix());
  return BilinearForm::curved(matrix(), kind, kappa);
}

double MetricState::loss_distance(const Vec& x, const Vec& y) const {
  Mat pair(2, x.size());
  pair.row(0) = x.transpose();
  pair.row(1) = y.transpose();
  Ctx c = make_ctx(*this, pair);
  return pair_loss(c, 0, 1);
}

std::vector<std::pair<int, int>> build_targets(const LabeledDataset& data,
                                               int k) {
  require(k >= 1, Errc::BadArgument, "k_targets must be at least 1");
  const std::vector<int> counts = data.class_counts();
  for (size_t lbl = 0; lbl < counts.size(); ++lbl) {
    require(counts[lbl] != 1, Errc::ClassTooSmall,
            "class '" + data.label_names[lbl] + "' has fewer than 2 points");
  }
  const int n = data.n();
  std::vector<std::pair<int, int>> targets;
  std::vector<std::pair<double, int>> near;
  for (int i = 0; i < n; ++i) {
    near.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i || data.labels[j] != data.labels[i]) continue;
      near.emplace_back((data.X.row(i) - data.X.row(j)).squaredNorm(), j);
    }
    std::sort(near.begin(), near.end());
    const int take = std::min<int>(k, static_cast<int>(near.size()));
    for (int t = 0; t < take; ++t) targets.emplace_back(i, near[t].second);
  }
  return targets;
}

std::vector<std::array<int, 3>> find_impostors(
    const MetricState& m, const LabeledDataset& data,
    const std::vector<std::pair<int, int>>& targets) {
  Ctx c = make_ctx(m, data.X);
  const int n = data.n();
  std::vector<std::array<int, 3>> out;
  for (const auto& [i, j] : targets) {
    const double dij = pair_loss(c, i, j);
    for (int l = 0; l < n; ++l) {
      if (data.labels[l] == data.labels[i]) continue;
      if (1.0 + dij - pair_loss(c, i, l) > 0.0) out.push_back({i, j, l});
    }
  }
  return out;
}

double lmnn_cost(const MetricState& m, const LabeledDataset& data,
                 const TripletSet& t, double tradeoff) {
  check_triplets(data, t);
  Ctx c = make_ctx(m, data.X);
  double pull = 0.0;
  for (const auto& [i, j] : t.targets) pull += pair_loss(c, i, j);
  double push = 0.0;
  for (const auto& [i, j, l] : t.impostors) {
    const double hinge = 1.0 + pair_loss(c, i, j) - pair_loss(c, i, l);
    if (hinge > 0.0) push += hinge;
  }
  return (1.0 - tradeoff) * pull + tradeoff * push;
}

namespace {

// Accumulates coeff * d(pair loss)/d(L^T L inner part) into `inner`; the
// caller applies the common left factor afterwards.
void accumulate_pair(const Ctx& c, int a, int b, double coeff, Mat& inner) {
  if (c.kind == GeometryKind::Flat) {
    Vec v = c.lifts.row(a) - c.lifts.row(b);
    inner.noalias() += (2.0 * coeff) * (v * v.transpose());
    return;
  }
  const double saa = c.inner(a, a);
  const double sbb = c.inner(b, b);
  const double sab = c.inner(a, b);
  Vec xa = c.lifts.row(a).transpose();
  Vec xb = c.lifts.row(b).transpose();
  if (c.kind == GeometryKind::Elliptic) {
    const double rt2 = saa * sbb - sab * sab;
    if (rt2 <= 1e-18 * std::abs(saa * sbb)) return;
    const double f = coeff * c.scale / std::sqrt(rt2);
    inner.noalias() += (f * sab / saa) * (xa * xa.transpose());
    inner.noalias() += (f * sab / sbb) * (xb * xb.transpose());
    inner.noalias() -= f * (xa * xb.transpose() + xb * xa.transpose());
    return;
  }
  const double rt2 = sab * sab - saa * sbb;
  if (rt2 <= 1e-18 * std::abs(saa * sbb)) return;
  const double sigma = sab > 0.0 ? 1.0 : -1.0;
  const double f = coeff * sigma * c.scale / std::sqrt(rt2);
  inner.noalias() += f * (xa * xb.transpose() + xb * xa.transpose());
  inner.noalias() -= (f * sab / saa) * (xa * xa.transpose());
  inner.noalias() -= (f * sab / sbb) * (xb * xb.transpose());
}

}  // namespace

Mat lmnn_gradient(const MetricState& m, const LabeledDataset& data,
                  const TripletSet& t, double tradeoff) {
  check_triplets(data, t);
  Ctx c = make_ctx(m, data.X);
  const int md = static_cast<int>(m.L.rows());
  Mat inner = Mat::Zero(md, md);
  for (const auto& [i, j] : t.targets) {
    accumulate_pair(c, i, j, 1.0 - tradeoff, inner);
  }
  for (const auto& [i, j, l] : t.impostors) {
    const double hinge = 1.0 + pair_loss(c, i, j) - pair_loss(c, i, l);
    if (hinge <= 0.0) continue;
    accumulate_pair(c, i, j, tradeoff, inner);
    accumulate_pair(c, i, l, -tradeoff, inner);
  }
  Mat G = m.L * inner;
  if (m.kind == GeometryKind::Hyperbolic) G = m.D.asDiagonal() * G;
  return tril(G);
}

MetricState init_metric(const LabeledDataset& data, GeometryKind kind,
                        const LmnnConfig& cfg) {
  cfg.validate();
  const int d = data.dim();
  MetricState s;
  s.kind = kind;

  auto base_matrix = [&]() -> Mat {
    if (cfg.init == InitStrategy::PrecisionMatrix)
      return regularized_precision(data);
    LmnnConfig flat_cfg = cfg;
    flat_cfg.init = InitStrategy::PrecisionMatrix;
    return train(data, GeometryKind::Flat, flat_cfg).state.matrix();
  };

  if (kind == GeometryKind::Flat) {
    s.kappa = 0.0;
    s.L = cfg.init == InitStrategy::PrecisionMatrix
              ? lower_factor_ltl(regularized_precision(data))
              : Mat::Identity(d, d);
    return s;
  }

  if (kind == GeometryKind::Elliptic) {
    require(cfg.kappa_init != 0.0, Errc::BadKappa,
            "elliptic start needs a nonzero kappa_init");
    const double kap = std::abs(cfg.kappa_init);
    CurvedMahalanobisParam p;
    p.sigma = base_matrix();
    p.mu = data.X.colwise().mean();
    p.kappa = kap;
    s.L = lower_factor_ltl(curved_to_form(p).matrix());
    s.kappa = kap;
    return s;
  }

  require(cfg.kappa_init > 1.0, Errc::BadKappa,
          "hyperbolic start needs kappa_init > 1");
  Mat Lp = lower_factor_ltl(base_matrix());
  double maxsq = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    maxsq = std::max(maxsq, (Lp * data.point(i)).squaredNorm());
  }
  require(maxsq > 0.0, Errc::NumericalFailure,
          "data collapses to a point under the start factor");
  const double big = cfg.kappa_init * maxsq;
  s.L = Mat::Identity(d + 1, d + 1);
  s.L.topLeftCorner(d, d) = Lp;
  s.D = Vec::Constant(d + 1, -1.0);
  s.D[d] = big;
  s.kappa = -1.0 / std::sqrt(big);
  require(all_in_domain(s, data.X), Errc::NumericalFailure,
          "hyperbolic start leaves data outside the domain");
  return s;
}

TrainResult train(const LabeledDataset& data, GeometryKind kind,
                  const LmnnConfig& cfg, const TrainObserver& observer) {
  cfg.validate();
  TrainResult res;
  MetricState state = init_metric(data, kind, cfg);
  TripletSet t;
  t.targets = build_targets(data, cfg.k_targets);
  t.impostors = find_impostors(state, data, t.targets);

  double cost = lmnn_cost(state, data, t, cfg.tradeoff);
  double gamma = cfg.gamma0;
  TrainReport& rep = res.report;
  rep.initial_cost = cost;
  rep.cost_trace.push_back(cost);
  rep.gamma_trace.push_back(gamma);

  MetricState best_state = state;
  double best_cost = cost;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (it % cfg.impostor_period == 0) {
      t.impostors = find_impostors(state, data, t.targets);
      cost = lmnn_cost(state, data, t, cfg.tradeoff);
      if (cost < best_cost) {
        best_cost = cost;
        best_state = state;
      }
    }

    Mat grad = lmnn_gradient(state, data, t, cfg.tradeoff);
    if (grad.cwiseAbs().maxCoeff() < kGradTol) break;

    MetricState trial = state;
    trial.L.noalias() -= gamma * grad;
    for (int r = 0; r < trial.L.rows(); ++r) {
      trial.L(r, r) = std::max(trial.L(r, r), kDiagFloor);
    }

    bool accept;
    double trial_cost = std::numeric_limits<double>::quiet_NaN();
    if (kind == GeometryKind::Hyperbolic) {
      accept = all_in_domain(trial, data.X);
      if (accept) trial_cost = lmnn_cost(trial, data, t, cfg.tradeoff);
    } else {
      trial_cost = lmnn_cost(trial, data, t, cfg.tradeoff);
      accept = trial_cost <= cost;
    }

    if (accept) {
      state = std::move(trial);
      cost = trial_cost;
      gamma *= 1.01;
      if (cost < best_cost) {
        best_cost = cost;
        best_state = state;
      }
      if (observer) observer(it, state, cost);
    } else {
      gamma *= 0.5;
      rep.halvings += 1;
    }

    rep.cost_trace.push_back(cost);
    rep.gamma_trace.push_back(gamma);
    rep.iterations = it;
    require(std::isfinite(cost) && cost <= kCostCeiling, Errc::Diverged,
            "training cost diverged");
    if (gamma < kGammaFloor) {
      rep.gamma_underflow = true;
      break;
    }
  }

  rep.final_cost = best_cost;
  res.state = std::move(best_state);
  return res;
}

MixedTrainResult train_mixed(const LabeledDataset& data, const LmnnConfig& cfg,
                             const std::vector<double>& alphas, int k_eval) {
  cfg.validate();
  require(!alphas.empty(), Errc::BadArgument, "alpha grid is empty");
  for (double a : alphas) {
    require(a >= 0.0 && a <= 1.0, Errc::BadArgument,
            "alpha must lie in [0, 1]");
  }
  require(k_eval >= 1, Errc::BadArgument, "k must be at least 1");

  const size_t n = static_cast<size_t>(data.n());
  const size_t hold_n = std::max<size_t>(1, (n + 4) / 5);
  require(hold_n < n, Errc::ProtocolInfeasible,
          "dataset too small for a holdout split");

  Rng rng(cfg.seed ^ 0x6d69786564ULL);
  std::vector<size_t> perm = rng.sample(n, n);
  MixedTrainResult res;
  res.holdout.assign(perm.begin(), perm.begin() + hold_n);
  res.trainpart.assign(perm.begin() + hold_n, perm.end());
  std::sort(res.holdout.begin(), res.holdout.end());
  std::sort(res.trainpart.begin(), res.trainpart.end());

  LabeledDataset sub = data.subset(res.trainpart);
  TrainResult el = train(sub, GeometryKind::Elliptic, cfg);
  TrainResult hy = train(sub, GeometryKind::Hyperbolic, cfg);
  res.elliptic_report = el.report;
  res.hyperbolic_report = hy.report;
  BilinearForm elform = el.state.form();
  BilinearForm hyform = hy.state.form();

  require(k_eval <= sub.n(), Errc::ProtocolInfeasible,
          "k exceeds the training pool");

  size_t best_idx = 0;
  double best_acc = -1.0;
  for (size_t ai = 0; ai < alphas.size(); ++ai) {
    MixedMetric mm = make_mixed(elform, hyform, alphas[ai]);
    auto dist = [&mm](const Vec& p, const Vec& q) {
      return mixed_distance(mm, p, q);
    };
    size_t correct = 0;
    for (size_t q : res.holdout) {
      try {
        if (knn_classify(sub.X, sub.labels, data.point(int(q)), k_eval,
                         dist) == data.labels[q]) {
          ++correct;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::DomainViolation) throw;
      }
    }
    const double acc = double(correct) / double(res.holdout.size());
    res.alpha_accuracies.push_back(acc);
    if (acc > best_acc) {
      best_acc = acc;
      best_idx = ai;
    }
  }

  res.alpha = alphas[best_idx];
  res.metric = make_mixed(elform, hyform, res.alpha);
  return res;
}

}  // namespace ck
