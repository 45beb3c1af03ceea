#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "lpot/curve.hpp"
#include "lpot/multi_index.hpp"

namespace lpot {

struct Frame {
  Eigen::Vector2d point;
  Eigen::Vector2d tangent;  // unit
  Eigen::Vector2d normal;   // unit, outward for counterclockwise curves
  double speed = 0.0;
  double curvature = 0.0;
};

/// N equispaced parameter nodes on a curve with cached frames and
/// trapezoidal weights. Immutable and cheap to copy.
class Grid {
 public:
  /// N must be even and >= 8. An optional parameter offset shifts every
  /// node by the same amount (used by staggered quadratures).
  Grid(const Curve& curve, int N, double param_offset = 0.0);

  int size() const { return d_->N; }
  const Curve& curve() const { return d_->curve; }
  double param(int j) const { return d_->params[static_cast<std::size_t>(j)]; }
  double param_offset() const { return d_->offset; }
  /// Parameter spacing 2pi/N (trapezoidal weight in t).
  double param_weight() const { return d_->h; }

  const Eigen::Vector2d& point(int j) const { return d_->points[static_cast<std::size_t>(j)]; }
  const Eigen::Vector2d& tangent(int j) const { return d_->tangents[static_cast<std::size_t>(j)]; }
  const Eigen::Vector2d& normal(int j) const { return d_->normals[static_cast<std::size_t>(j)]; }
  double speed(int j) const { return d_->speeds[j]; }
  double curvature(int j) const { return d_->curvatures[j]; }
  /// Arclength quadrature weight speed_j * 2pi/N.
  double sigma_weight(int j) const { return d_->sigma_weights[j]; }
  const Eigen::VectorXd& sigma_weights() const { return d_->sigma_weights; }

  bool same_as(const Grid& other) const { return d_ == other.d_; }

 private:
  struct Data {
    Curve curve;
    int N;
    double h;
    double offset;
    std::vector<double> params;
    std::vector<Eigen::Vector2d> points, tangents, normals;
    Eigen::VectorXd speeds, curvatures, sigma_weights;
    explicit Data(Curve c) : curve(std::move(c)), N(0), h(0), offset(0) {}
  };
  std::shared_ptr<const Data> d_;
};

Frame frame(const Grid& grid, int j);

/// Real values of a boundary density at the nodes of a grid.
class Density {
 public:
  Density(Grid grid, Eigen::VectorXd values);
  static Density constant(const Grid& grid, double value);
  static Density from_function(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  Grid grid_;
  Eigen::VectorXd values_;
};

/// Trapezoidal value of the boundary integral of s^beta theta(s) dsigma.
double moment(const Grid& grid, const MultiIndex& beta, const Density& theta);

/// Trapezoidal value of the vector integral of nu(s) s^beta theta(s) dsigma.
Eigen::Vector2d normal_moment(const Grid& grid, const MultiIndex& beta, const Density& theta);

/// nu(t_j) . grad(t^beta) at node j.
double normal_poly_derivative(const Grid& grid, const MultiIndex& beta, int j);

}  // namespace lpot
