#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "lpot/grid.hpp"

namespace lpot {

enum class OpKind {
  V,
  K,
  Kprime,
  W,
  CrossV,
  CrossK,
  CrossKprime,
  CrossW,
  Series,
  Composite,
};

std::string to_string(OpKind kind);

/// Dense matrix from densities on a source grid to values on a target grid.
struct BoundaryOp {
  Grid target;
  Grid source;
  OpKind kind = OpKind::Composite;
  Eigen::MatrixXd mat;

  Density apply(const Density& density) const;
  /// Induced infinity norm (max absolute row sum).
  double inf_norm() const;
  /// Row-major CSV with 17 significant digits.
  void write_csv(std::ostream& os) const;
};

/// 2x2 array of boundary operators over an (outer, inner) grid pair.
struct BlockOp {
  BoundaryOp oo, oi, io, ii;

  BlockOp(BoundaryOp oo_, BoundaryOp oi_, BoundaryOp io_, BoundaryOp ii_);

  const Grid& outer() const { return oo.target; }
  const Grid& inner() const { return ii.target; }

  /// Assembled (N_o + N_i) square matrix.
  Eigen::MatrixXd full() const;
  double inf_norm() const;
  std::pair<Density, Density> apply(const Density& outer_density,
                                    const Density& inner_density) const;
};

/// Least-squares slope of log(y) against log(x) over all points.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lpot
