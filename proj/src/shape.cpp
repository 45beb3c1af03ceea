#include "lpot/shape.hpp"

#include <algorithm>
#include <cmath>

namespace lpot {

namespace {

Eigen::MatrixXd op_matrix_at(OpKind kind, const Diffeo& phi, const TrigTable& dir,
                             double t, int N) {
  const Curve image = apply_diffeo(phi.displaced(dir, t));
  return assemble(kind, Grid(image, N)).mat;
}

double inf_norm(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

PulledBackOp pullback(OpKind kind, const Diffeo& phi, int N) {
  const Grid reference(phi.reference(), N);
  const Grid image(apply_diffeo(phi), N);
  BoundaryOp on_image = assemble(kind, image);
  return PulledBackOp{BoundaryOp{reference, reference, kind, std::move(on_image.mat)}, phi};
}

double CalderonOp::idempotency_residual() const {
  const Eigen::MatrixXd c = block.full();
  return inf_norm(c * c - c);
}

double CalderonOp::complement_residual() const {
  const Eigen::MatrixXd c = block.full();
  const Eigen::MatrixXd p =
      Eigen::MatrixXd::Identity(c.rows(), c.cols()) - c;
  return inf_norm(p * p - p);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> CalderonOp::apply(
    const Eigen::VectorXd& psi, const Eigen::VectorXd& mu) const {
  return {block.oo.mat * psi + block.oi.mat * mu,
          block.io.mat * psi + block.ii.mat * mu};
}

CalderonOp calderon_on(const Grid& grid) {
  const int N = grid.size();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(N, N);
  BoundaryOp k = assemble_K(grid);
  BoundaryOp v = assemble_V(grid);
  BoundaryOp w = assemble_W(grid);
  BoundaryOp kp = assemble_Kprime(grid);
  BoundaryOp a{grid, grid, OpKind::Composite, 0.5 * id - k.mat};
  BoundaryOp d{grid, grid, OpKind::Composite, 0.5 * id + kp.mat};
  return CalderonOp{BlockOp(std::move(a), std::move(v), std::move(w), std::move(d))};
}

CalderonOp calderon(const Diffeo& phi, int N) {
  const Grid image(apply_diffeo(phi), N);
  const Grid reference(phi.reference(), N);
  CalderonOp c = calderon_on(image);
  // Re-label the blocks over the reference grid; node indices are shared.
  auto relabel = [&](BoundaryOp& op) {
    op = BoundaryOp{reference, reference, op.kind, std::move(op.mat)};
  };
  relabel(c.block.oo);
  relabel(c.block.oi);
  relabel(c.block.io);
  relabel(c.block.ii);
  return c;
}

ShapeStudyReport shape_fd_study(OpKind kind, const Diffeo& phi, const TrigTable& direction,
                                const std::vector<double>& t_list, int N,
                                const std::vector<double>& taylor_t_list) {
  ShapeStudyReport report;

  auto try_matrix = [&](double t) -> std::optional<Eigen::MatrixXd> {
    try {
      return op_matrix_at(kind, phi, direction, t, N);
    } catch (const GeometryError&) {
      return std::nullopt;
    }
  };

  std::vector<double> ts;
  for (double t : t_list) {
    if (try_matrix(t) && try_matrix(-t)) {
      ts.push_back(t);
    } else {
      report.skipped_t.push_back(t);
    }
  }
  if (ts.empty()) return report;

  const double t_ref = *std::min_element(ts.begin(), ts.end()) / 2.0;
  auto central = [&](double t) -> Eigen::MatrixXd {
    return ((*try_matrix(t)) - (*try_matrix(-t))) / (2.0 * t);
  };
  // Step-extrapolated reference derivative, accurate to O(t_ref^4).
  const Eigen::MatrixXd d_ref = (4.0 * central(t_ref) - central(2.0 * t_ref)) / 3.0;

  std::vector<double> xs, ys;
  for (double t : ts) {
    const double diff = inf_norm(central(t) - d_ref);
    report.rows.push_back(ShapeStudyRow{t, diff, 0.0});
    report.max_diff_norm = std::max(report.max_diff_norm, diff);
    if (diff > 0.0) {
      xs.push_back(t);
      ys.push_back(diff);
    }
  }
  report.central_difference_order = (xs.size() >= 2) ? fit_log_slope(xs, ys) : 0.0;
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    const auto& a = report.rows[i];
    const auto& b = report.rows[i + 1];
    report.rows[i + 1].slope_estimate =
        (a.diff_norm > 0.0 && b.diff_norm > 0.0)
            ? std::log(a.diff_norm / b.diff_norm) / std::log(a.t / b.t)
            : 0.0;
  }

  // Divided-difference derivatives at a fixed base step.
  const double delta = 2e-3;
  const Eigen::MatrixXd op0 = *try_matrix(0.0);
  const auto p1 = try_matrix(delta), m1 = try_matrix(-delta);
  const auto p2 = try_matrix(2.0 * delta), m2 = try_matrix(-2.0 * delta);
  if (p1 && m1 && p2 && m2) {
    std::vector<Eigen::MatrixXd> deriv(4);
    deriv[0] = op0;
    deriv[1] = (*p1 - *m1) / (2.0 * delta);
    deriv[2] = (*p1 - 2.0 * op0 + *m1) / (delta * delta);
    deriv[3] = (*p2 - 2.0 * *p1 + 2.0 * *m1 - *m2) / (2.0 * delta * delta * delta);
    for (int order = 1; order <= 3; ++order) {
      std::vector<double> txs, tys;
      for (double t : taylor_t_list) {
        const auto op_t = try_matrix(t);
        if (!op_t) continue;
        Eigen::MatrixXd taylor = deriv[0];
        double fact = 1.0, tp = 1.0;
        for (int m = 1; m <= order; ++m) {
          fact *= m;
          tp *= t;
          taylor += (tp / fact) * deriv[static_cast<std::size_t>(m)];
        }
        const double rem = inf_norm(*op_t - taylor);
        report.taylor_rows.push_back(TaylorRemainderRow{order, t, rem});
        if (rem > 0.0) {
          txs.push_back(t);
          tys.push_back(rem);
        }
      }
      report.taylor_orders.push_back((txs.size() >= 2) ? fit_log_slope(txs, tys) : 0.0);
    }
  }
  return report;
}

}  // namespace lpot
