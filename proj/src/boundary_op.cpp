#include "lpot/boundary_op.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace lpot {

std::string to_string(OpKind kind) {
  switch (kind) {
    case OpKind::V: return "V";
    case OpKind::K: return "K";
    case OpKind::Kprime: return "Kprime";
    case OpKind::W: return "W";
    case OpKind::CrossV: return "cross-V";
    case OpKind::CrossK: return "cross-K";
    case OpKind::CrossKprime: return "cross-Kprime";
    case OpKind::CrossW: return "cross-W";
    case OpKind::Series: return "series";
    case OpKind::Composite: return "composite";
  }
  return "?";
}

Density BoundaryOp::apply(const Density& density) const {
  if (!density.grid().same_as(source))
    throw std::invalid_argument("density grid does not match operator source grid");
  return Density(target, mat * density.values());
}

double BoundaryOp::inf_norm() const {
  return mat.cwiseAbs().rowwise().sum().maxCoeff();
}

void BoundaryOp::write_csv(std::ostream& os) const {
  char buf[32];
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < mat.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", mat(i, j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

BlockOp::BlockOp(BoundaryOp oo_, BoundaryOp oi_, BoundaryOp io_, BoundaryOp ii_)
    : oo(std::move(oo_)), oi(std::move(oi_)), io(std::move(io_)), ii(std::move(ii_)) {
  if (!oo.target.same_as(oi.target) || !io.target.same_as(ii.target) ||
      !oo.source.same_as(io.source) || !oi.source.same_as(ii.source))
    throw std::invalid_argument("block operator grids are inconsistent");
}

Eigen::MatrixXd BlockOp::full() const {
  const Eigen::Index no = oo.mat.rows(), ni = ii.mat.rows();
  Eigen::MatrixXd m(no + ni, no + ni);
  m.topLeftCorner(no, no) = oo.mat;
  m.topRightCorner(no, ni) = oi.mat;
  m.bottomLeftCorner(ni, no) = io.mat;
  m.bottomRightCorner(ni, ni) = ii.mat;
  return m;
}

double BlockOp::inf_norm() const {
  return full().cwiseAbs().rowwise().sum().maxCoeff();
}

std::pair<Density, Density> BlockOp::apply(const Density& outer_density,
                                           const Density& inner_density) const {
  Eigen::VectorXd top = oo.mat * outer_density.values() + oi.mat * inner_density.values();
  Eigen::VectorXd bottom = io.mat * outer_density.values() + ii.mat * inner_density.values();
  return {Density(oo.target, std::move(top)), Density(ii.target, std::move(bottom))};
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lpot
