#include "lpot/perforated.hpp"

#include <cmath>
#include <numbers>

#include "lpot/kernel.hpp"

namespace lpot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

Eigen::MatrixXd analytic_matrix(OpKind kind, Corner corner, double eps,
                                const Grid& go, const Grid& gi) {
  const bool oi = corner == Corner::oi;
  const Grid& tgt = oi ? go : gi;
  const Grid& src = oi ? gi : go;
  Eigen::MatrixXd M(tgt.size(), src.size());
  for (int i = 0; i < tgt.size(); ++i) {
    for (int j = 0; j < src.size(); ++j) {
      // oi: r = x - eps s, x outer target, s inner source.
      // io: r = eps t - y, t inner target, y outer source.
      const Eigen::Vector2d r = oi ? (tgt.point(i) - eps * src.point(j)).eval()
                                   : (eps * tgt.point(i) - src.point(j)).eval();
      double k = 0.0;
      switch (kind) {
        case OpKind::V:
          k = eval_G2(r);
          break;
        case OpKind::K:
          k = oi ? src.normal(j).dot(grad_G2(r)) : -src.normal(j).dot(grad_G2(r));
          break;
        case OpKind::Kprime:
          k = oi ? tgt.normal(i).dot(grad_G2(r)) : -tgt.normal(i).dot(grad_G2(r));
          break;
        case OpKind::W:
          // Chain rule in the inner target variable contributes the eps
          // factor of the io part.
          k = oi ? -tgt.normal(i).dot(hess_G2(r) * src.normal(j))
                 : -eps * tgt.normal(i).dot(hess_G2(r) * src.normal(j));
          break;
        default:
          throw std::invalid_argument("analytic part needs kind V, K, Kprime, or W");
      }
      M(i, j) = k * src.sigma_weight(j);
    }
  }
  return M;
}

struct RankOneAccum {
  Eigen::MatrixXd M;
  RankOneAccum(int rows, int cols) : M(Eigen::MatrixXd::Zero(rows, cols)) {}
  void add(double scale, const Eigen::VectorXd& col, const Eigen::VectorXd& row) {
    M.noalias() += scale * col * row.transpose();
  }
};

}  // namespace

std::string to_string(Corner corner) { return corner == Corner::oi ? "oi" : "io"; }

PerforatedGeometry::PerforatedGeometry(const Curve& outer_curve, const Curve& inner_curve,
                                       int n_outer, int n_inner)
    : outer(outer_curve, n_outer), inner(inner_curve, n_inner) {
  if (!contains_origin(outer_curve) || !contains_origin(inner_curve))
    throw GeometryError("the origin must be interior to both boundaries");
}

PerforatedConfig::PerforatedConfig(const Curve& outer_curve, const Curve& inner_curve,
                                   int n_outer, int n_inner, double eps_)
    : geom(outer_curve, inner_curve, n_outer, n_inner),
      eps(eps_),
      eps_bound(epsilon_max(outer_curve, inner_curve)) {
  if (eps == 0.0) throw GeometryError("hole scale eps must be nonzero");
  if (std::abs(eps) >= eps_bound)
    throw GeometryError("hole scale |eps| = " + std::to_string(std::abs(eps)) +
                        " exceeds the admissible bound " + std::to_string(eps_bound));
}

BoundaryOp cross_analytic(OpKind kind, Corner corner, double eps,
                          const PerforatedGeometry& geom) {
  const Grid& tgt = corner == Corner::oi ? geom.outer : geom.inner;
  const Grid& src = corner == Corner::oi ? geom.inner : geom.outer;
  return BoundaryOp{tgt, src, OpKind::Series,
                    analytic_matrix(kind, corner, eps, geom.outer, geom.inner)};
}

BlockOp assemble_block(OpKind kind, const PerforatedConfig& cfg) {
  const Grid& go = cfg.geom.outer;
  const Grid& gi = cfg.geom.inner;
  const double eps = cfg.eps;
  const double aeps = std::abs(eps);

  BoundaryOp oo = assemble(kind, go);
  BoundaryOp ii_base = assemble(kind, gi);
  Eigen::MatrixXd oi = analytic_matrix(kind, Corner::oi, eps, go, gi);
  Eigen::MatrixXd io = analytic_matrix(kind, Corner::io, eps, go, gi);
  Eigen::MatrixXd ii;

  switch (kind) {
    case OpKind::V: {
      oi *= aeps;
      ii = aeps * ii_base.mat -
           (aeps * std::log(aeps) / kTwoPi) *
               (Eigen::VectorXd::Ones(gi.size()) * gi.sigma_weights().transpose());
      break;
    }
    case OpKind::K:
      oi *= eps;
      ii = -ii_base.mat;
      break;
    case OpKind::Kprime:
      oi *= aeps;
      io *= sgn(eps);
      ii = -ii_base.mat;
      break;
    case OpKind::W:
      oi *= eps;
      io /= aeps;
      ii = ii_base.mat / aeps;
      break;
    default:
      throw std::invalid_argument("block assembly needs kind V, K, Kprime, or W");
  }

  return BlockOp(std::move(oo), BoundaryOp{go, gi, OpKind::Series, std::move(oi)},
                 BoundaryOp{gi, go, OpKind::Series, std::move(io)},
                 BoundaryOp{gi, gi, OpKind::Series, std::move(ii)});
}

BlockOp assemble_direct(OpKind kind, const PerforatedConfig& cfg) {
  const Grid& go = cfg.geom.outer;
  const double eps = cfg.eps;
  const Grid gi_eps(scale_curve(cfg.geom.inner.curve(), eps), cfg.geom.inner.size());

  // Outward normal of the perforated domain on the hole boundary is the
  // negative of the scaled curve's own outward normal.
  BoundaryOp oo = assemble(kind, go);
  BoundaryOp ii = assemble(kind, gi_eps);
  if (kind == OpKind::K || kind == OpKind::Kprime) ii.mat = -ii.mat;
  BoundaryOp oi = assemble_cross(kind, go, gi_eps, 1.0, -1.0);
  BoundaryOp io = assemble_cross(kind, gi_eps, go, -1.0, 1.0);
  return BlockOp(std::move(oo), std::move(oi), std::move(io), std::move(ii));
}

double block_max_abs_diff(const BlockOp& a, const BlockOp& b) {
  double d = 0.0;
  d = std::max(d, (a.oo.mat - b.oo.mat).cwiseAbs().maxCoeff());
  d = std::max(d, (a.oi.mat - b.oi.mat).cwiseAbs().maxCoeff());
  d = std::max(d, (a.io.mat - b.io.mat).cwiseAbs().maxCoeff());
  d = std::max(d, (a.ii.mat - b.ii.mat).cwiseAbs().maxCoeff());
  return d;
}

BoundaryOp series_coeff(OpKind kind, Corner corner, int k, const PerforatedGeometry& geom) {
  if (k < 0 || k > kSeriesOrderMax)
    throw std::invalid_argument("series order k must lie in [0, " +
                                std::to_string(kSeriesOrderMax) + "]");
  const Grid& go = geom.outer;
  const Grid& gi = geom.inner;
  const Grid& tgt = corner == Corner::oi ? go : gi;
  const Grid& src = corner == Corner::oi ? gi : go;
  const int nt = tgt.size(), ns = src.size();
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;

  RankOneAccum acc(nt, ns);
  Eigen::VectorXd col(nt), row(ns);
  for (const MultiIndex& beta : MultiIndex::all_of_order(2, k)) {
    const double scale = sign / static_cast<double>(beta.factorial());
    switch (kind) {
      case OpKind::V: {
        if (corner == Corner::oi) {
          for (int i = 0; i < nt; ++i) col[i] = deriv_G(2, beta).eval(tgt.point(i));
          for (int j = 0; j < ns; ++j)
            row[j] = beta.monomial(src.point(j).data()) * src.sigma_weight(j);
          acc.add(scale, col, row);
        } else {
          for (int i = 0; i < nt; ++i) col[i] = beta.monomial(tgt.point(i).data());
          for (int j = 0; j < ns; ++j)
            row[j] = deriv_G(2, beta).eval(src.point(j)) * src.sigma_weight(j);
          acc.add(scale, col, row);
        }
        break;
      }
      case OpKind::K: {
        if (corner == Corner::oi) {
          for (int a = 0; a < 2; ++a) {
            for (int i = 0; i < nt; ++i)
              col[i] = deriv_G(2, beta.bumped(a)).eval(tgt.point(i));
            for (int j = 0; j < ns; ++j)
              row[j] = src.normal(j)[a] * beta.monomial(src.point(j).data()) *
                       src.sigma_weight(j);
            acc.add(scale, col, row);
          }
        } else {
          for (int i = 0; i < nt; ++i) col[i] = beta.monomial(tgt.point(i).data());
          for (int j = 0; j < ns; ++j)
            row[j] = src.normal(j).dot(kernel_gradient(beta, src.point(j))) *
                     src.sigma_weight(j);
          acc.add(scale, col, row);
        }
        break;
      }
      case OpKind::Kprime: {
        if (corner == Corner::oi) {
          for (int i = 0; i < nt; ++i)
            col[i] = tgt.normal(i).dot(kernel_gradient(beta, tgt.point(i)));
          for (int j = 0; j < ns; ++j)
            row[j] = beta.monomial(src.point(j).data()) * src.sigma_weight(j);
          acc.add(scale, col, row);
        } else {
          for (int a = 0; a < 2; ++a) {
            for (int i = 0; i < nt; ++i)
              col[i] = beta.monomial(tgt.point(i).data()) * tgt.normal(i)[a];
            for (int j = 0; j < ns; ++j)
              row[j] = deriv_G(2, beta.bumped(a)).eval(src.point(j)) * src.sigma_weight(j);
            acc.add(scale, col, row);
          }
        }
        break;
      }
      case OpKind::W: {
        if (corner == Corner::oi) {
          // -(−1)^k nu(x) . grad_x ( grad D^b G (x) . moment ), component by
          // component of the moment vector.
          for (int b = 0; b < 2; ++b) {
            for (int i = 0; i < nt; ++i) {
              const Eigen::Matrix2d h = kernel_hessian(beta, tgt.point(i));
              col[i] = tgt.normal(i).dot(h.col(b));
            }
            for (int j = 0; j < ns; ++j)
              row[j] = src.normal(j)[b] * beta.monomial(src.point(j).data()) *
                       src.sigma_weight(j);
            acc.add(-scale, col, row);
          }
        } else {
          for (int i = 0; i < nt; ++i) col[i] = normal_poly_derivative(tgt, beta, i);
          for (int j = 0; j < ns; ++j)
            row[j] = src.normal(j).dot(kernel_gradient(beta, src.point(j))) *
                     src.sigma_weight(j);
          acc.add(scale, col, row);
        }
        break;
      }
      default:
        throw std::invalid_argument("series coefficients need kind V, K, Kprime, or W");
    }
  }
  return BoundaryOp{tgt, src, OpKind::Series, std::move(acc.M)};
}

BoundaryOp series_truncate(OpKind kind, Corner corner, int K, double eps,
                           const PerforatedGeometry& geom) {
  BoundaryOp sum = series_coeff(kind, corner, 0, geom);
  double ep = 1.0;
  for (int k = 1; k <= K; ++k) {
    ep *= eps;
    if (ep == 0.0) break;
    sum.mat += ep * series_coeff(kind, corner, k, geom).mat;
  }
  return sum;
}

SeriesCoeffs series_family(OpKind kind, Corner corner, int K,
                           const PerforatedGeometry& geom) {
  SeriesCoeffs fam{kind, corner, {}};
  fam.coeffs.reserve(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) fam.coeffs.push_back(series_coeff(kind, corner, k, geom));
  return fam;
}

std::vector<TruncationRow> truncation_study(
    OpKind kind, Corner corner, const std::vector<int>& K_list,
    const std::vector<double>& eps_list, const PerforatedGeometry& geom,
    const std::function<double(double)>& test_density) {
  const Grid& src = corner == Corner::oi ? geom.inner : geom.outer;
  Eigen::VectorXd theta(src.size());
  for (int j = 0; j < src.size(); ++j) theta[j] = test_density(src.param(j));

  const int k_max = *std::max_element(K_list.begin(), K_list.end());
  const SeriesCoeffs fam = series_family(kind, corner, k_max, geom);
  std::vector<Eigen::VectorXd> coeff_applied;
  coeff_applied.reserve(fam.coeffs.size());
  for (const BoundaryOp& c : fam.coeffs) coeff_applied.push_back(c.mat * theta);

  std::vector<Eigen::VectorXd> exact_applied;
  exact_applied.reserve(eps_list.size());
  for (double eps : eps_list)
    exact_applied.push_back(cross_analytic(kind, corner, eps, geom).mat * theta);

  std::vector<TruncationRow> rows;
  for (int K : K_list) {
    std::vector<double> xs, ys;
    std::vector<TruncationRow> batch;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      const double eps = eps_list[e];
      Eigen::VectorXd truncated = Eigen::VectorXd::Zero(exact_applied[e].size());
      double ep = 1.0;
      for (int k = 0; k <= K; ++k) {
        truncated += ep * coeff_applied[static_cast<std::size_t>(k)];
        ep *= eps;
      }
      const double err = (exact_applied[e] - truncated).cwiseAbs().maxCoeff();
      batch.push_back(TruncationRow{kind, corner, K, eps, err, 0.0});
      if (err > 0.0) {
        xs.push_back(std::abs(eps));
        ys.push_back(err);
      }
    }
    const double slope = (xs.size() >= 2) ? fit_log_slope(xs, ys) : 0.0;
    for (auto& r : batch) r.fitted_slope = slope;
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  return rows;
}

}  // namespace lpot
