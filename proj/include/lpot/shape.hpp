#pragma once

#include <optional>
#include <vector>

#include "lpot/boundary_op.hpp"
#include "lpot/operators.hpp"

namespace lpot {

/// Boundary operator assembled on the image curve of a diffeomorphism and
/// re-read over the reference nodes. Composition with the map and its
/// inverse is the identity on node indices, so the matrix acts on
/// reference-grid densities directly.
struct PulledBackOp {
  BoundaryOp op;  // grids are the fixed reference grid
  Diffeo phi;
};

PulledBackOp pullback(OpKind kind, const Diffeo& phi, int N);

/// Block operator (I/2 - K, V; W, I/2 + K') on the reference grid.
struct CalderonOp {
  BlockOp block;

  Eigen::MatrixXd full() const { return block.full(); }
  /// || C^2 - C ||_inf of the assembled block matrix.
  double idempotency_residual() const;
  /// || (I-C)^2 - (I-C) ||_inf.
  double complement_residual() const;
  /// Apply to Cauchy data (psi, mu).
  std::pair<Eigen::VectorXd, Eigen::VectorXd> apply(const Eigen::VectorXd& psi,
                                                    const Eigen::VectorXd& mu) const;
};

CalderonOp calderon(const Diffeo& phi, int N);
CalderonOp calderon_on(const Grid& grid);

struct ShapeStudyRow {
  double t = 0.0;
  double diff_norm = 0.0;    // central difference vs extrapolated derivative
  double slope_estimate = 0.0;
};

struct TaylorRemainderRow {
  int order = 0;          // highest derivative kept
  double t = 0.0;
  double remainder = 0.0;
};

struct ShapeStudyReport {
  std::vector<ShapeStudyRow> rows;
  double central_difference_order = 0.0;
  std::vector<TaylorRemainderRow> taylor_rows;
  /// Fitted remainder slope per kept order m = 1..3 (expected m + 1).
  std::vector<double> taylor_orders;
  std::vector<double> skipped_t;  // steps dropped because phi + t h was invalid
  /// Largest difference norm seen; identifies direction-degenerate families
  /// (all derivatives zero) for which the fitted orders are meaningless.
  double max_diff_norm = 0.0;
};

/// Finite-difference smoothness study of t -> Op(phi + t h) in the induced
/// infinity norm. Central differences (Op(phi+th) - Op(phi-th))/(2t) are
/// compared against a step-extrapolated derivative (expected order 2), and
/// Taylor reconstructions from divided-difference derivatives up to order 3
/// are compared against Op(phi + th) (expected order m + 1).
ShapeStudyReport shape_fd_study(OpKind kind, const Diffeo& phi, const TrigTable& direction,
                                const std::vector<double>& t_list, int N,
                                const std::vector<double>& taylor_t_list = {0.2, 0.1, 0.05});

}  // namespace lpot
