#pragma once

#include <functional>
#include <vector>

#include "lpot/boundary_op.hpp"
#include "lpot/operators.hpp"

namespace lpot {

/// Off-diagonal corner of the two-boundary block operators: oi maps inner
/// densities to outer values, io maps outer densities to inner values.
enum class Corner { oi, io };

std::string to_string(Corner corner);

/// Outer/inner reference boundaries with their grids; the origin must be
/// interior to both.
struct PerforatedGeometry {
  Grid outer;
  Grid inner;

  PerforatedGeometry(const Curve& outer_curve, const Curve& inner_curve, int n_outer,
                     int n_inner);
};

/// Geometry plus an admissible hole scale: 0 < |eps| < epsilon_max.
struct PerforatedConfig {
  PerforatedGeometry geom;
  double eps;
  double eps_bound;

  PerforatedConfig(const Curve& outer_curve, const Curve& inner_curve, int n_outer,
                   int n_inner, double eps);
};

/// The eps-evaluated analytic part of the (kind, corner) cross operator:
/// the smooth two-boundary kernel with the inner variable scaled by eps,
/// before multiplication by the elementary factors of the block formulas.
/// Defined for |eps| below the admissibility bound, including eps = 0.
BoundaryOp cross_analytic(OpKind kind, Corner corner, double eps,
                          const PerforatedGeometry& geom);

/// Block operator on the two-boundary system pulled back to the reference
/// boundaries: diagonal blocks are single-curve assemblies (with sign flips
/// for K and K' on the hole, and the |eps| log|eps| rank-one term for V),
/// off-diagonal blocks are scaled analytic parts.
BlockOp assemble_block(OpKind kind, const PerforatedConfig& cfg);

/// Oracle: the same operator assembled directly on the two-component
/// boundary (outer curve plus the scaled hole with its orientation-flipped
/// normal), with inner densities and targets read at the scaled nodes.
/// Agrees with assemble_block entrywise up to rounding.
BlockOp assemble_direct(OpKind kind, const PerforatedConfig& cfg);

double block_max_abs_diff(const BlockOp& a, const BlockOp& b);

/// k-th power-series coefficient of the (kind, corner) analytic part, as a
/// sum over multi-indices of order k of rank-one products of kernel
/// derivative evaluations and boundary moments.
BoundaryOp series_coeff(OpKind kind, Corner corner, int k, const PerforatedGeometry& geom);

/// Partial sum  sum_{k<=K} eps^k series_coeff(k).
BoundaryOp series_truncate(OpKind kind, Corner corner, int K, double eps,
                           const PerforatedGeometry& geom);

/// Coefficients k = 0..K of one (kind, corner) family.
struct SeriesCoeffs {
  OpKind kind;
  Corner corner;
  std::vector<BoundaryOp> coeffs;
};

SeriesCoeffs series_family(OpKind kind, Corner corner, int K,
                           const PerforatedGeometry& geom);

struct TruncationRow {
  OpKind kind;
  Corner corner;
  int K = 0;
  double eps = 0.0;
  double error = 0.0;
  double fitted_slope = 0.0;  // least-squares slope over all eps for this K
};

/// Truncation error study: for each K and eps, the sup norm of
/// (series_truncate - cross_analytic) applied to a fixed test density on
/// the source boundary, with least-squares remainder slopes per K
/// (expected K + 1 on parity-free data).
std::vector<TruncationRow> truncation_study(
    OpKind kind, Corner corner, const std::vector<int>& K_list,
    const std::vector<double>& eps_list, const PerforatedGeometry& geom,
    const std::function<double(double)>& test_density);

}  // namespace lpot
