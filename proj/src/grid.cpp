#include "lpot/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpot {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Grid::Grid(const Curve& curve, int N, double param_offset) {
  if (N < 8 || N % 2 != 0)
    throw GeometryError("grid size must be even and >= 8, got " + std::to_string(N));
  auto d = std::make_shared<Data>(curve);
  d->N = N;
  d->h = kTwoPi / N;
  d->offset = param_offset;
  d->params.resize(static_cast<std::size_t>(N));
  d->points.resize(static_cast<std::size_t>(N));
  d->tangents.resize(static_cast<std::size_t>(N));
  d->normals.resize(static_cast<std::size_t>(N));
  d->speeds.resize(N);
  d->curvatures.resize(N);
  d->sigma_weights.resize(N);
  for (int j = 0; j < N; ++j) {
    const double t = param_offset + j * d->h;
    const Eigen::Vector2d p = curve.point(t);
    const Eigen::Vector2d v = curve.velocity(t);
    const Eigen::Vector2d a = curve.acceleration(t);
    const double speed = v.norm();
    const std::size_t k = static_cast<std::size_t>(j);
    d->params[k] = t;
    d->points[k] = p;
    d->tangents[k] = v / speed;
    d->normals[k] = Eigen::Vector2d(v.y(), -v.x()) / speed;
    d->speeds[j] = speed;
    d->curvatures[j] = (v.x() * a.y() - v.y() * a.x()) / (speed * speed * speed);
    d->sigma_weights[j] = speed * d->h;
  }
  d_ = std::move(d);
}

Frame frame(const Grid& grid, int j) {
  if (j < 0 || j >= grid.size()) throw std::out_of_range("node index out of range");
  return Frame{grid.point(j), grid.tangent(j), grid.normal(j), grid.speed(j),
               grid.curvature(j)};
}

Density::Density(Grid grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("density length must equal grid size");
}

Density Density::constant(const Grid& grid, double value) {
  return Density(grid, Eigen::VectorXd::Constant(grid.size(), value));
}

Density Density::from_function(const Grid& grid, const std::function<double(double)>& f) {
  Eigen::VectorXd v(grid.size());
  for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.param(j));
  return Density(grid, std::move(v));
}

double moment(const Grid& grid, const MultiIndex& beta, const Density& theta) {
  if (!theta.grid().same_as(grid))
    throw std::invalid_argument("density does not live on the given grid");
  double acc = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    acc += beta.monomial(grid.point(j).data()) * theta.values()[j] * grid.sigma_weight(j);
  return acc;
}

Eigen::Vector2d normal_moment(const Grid& grid, const MultiIndex& beta, const Density& theta) {
  if (!theta.grid().same_as(grid))
    throw std::invalid_argument("density does not live on the given grid");
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (int j = 0; j < grid.size(); ++j)
    acc += grid.normal(j) * beta.monomial(grid.point(j).data()) * theta.values()[j] *
           grid.sigma_weight(j);
  return acc;
}

double normal_poly_derivative(const Grid& grid, const MultiIndex& beta, int j) {
  const Eigen::Vector2d p = grid.point(j);
  return grid.normal(j).x() * beta.monomial_derivative(p.data(), 0) +
         grid.normal(j).y() * beta.monomial_derivative(p.data(), 1);
}

}  // namespace lpot
