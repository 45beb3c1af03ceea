#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "lpot/multi_index.hpp"

namespace lpot {

/// Highest series order exposed by the library. The derivative cache holds
/// two extra orders so gradients and Hessians of order-kSeriesOrderMax
/// derivatives stay in closed form.
inline constexpr int kSeriesOrderMax = 8;

struct Monomial {
  std::array<int, 3> exp{{0, 0, 0}};
  long long coeff = 0;
};

/// Closed form of the partial derivative D^b G_n of the fundamental solution
/// of -Delta: value = prefactor * P(x) / |x|^q with an integer-coefficient
/// polynomial P, or prefactor * log|x| for the n = 2, b = 0 case.
struct KernelDerivative {
  int dim = 2;
  MultiIndex index;
  bool log_form = false;
  int denom_power = 0;
  double prefactor = 1.0;
  std::vector<Monomial> numerator;

  double eval(const double* x) const;
  double eval(const Eigen::Vector2d& x) const { return eval(x.data()); }
};

/// G_n(x): -(1/(2 pi)) log|x| for n = 2, (1/((n-2) s_n)) |x|^{2-n} for n = 3.
/// Throws std::domain_error at x = 0 and std::invalid_argument for other n.
double eval_G(int n, const double* x);
inline double eval_G2(const Eigen::Vector2d& x) { return eval_G(2, x.data()); }

/// D^b G_n in exact rational form, memoized up to order
/// kSeriesOrderMax + 2; higher orders throw std::invalid_argument.
const KernelDerivative& deriv_G(int n, const MultiIndex& beta);

/// Order held by the memoized table.
int kernel_cache_order();

/// Gradient and Hessian of D^b G_n at x, assembled from the stored
/// closed forms (planar case).
Eigen::Vector2d kernel_gradient(const MultiIndex& beta, const Eigen::Vector2d& x);
Eigen::Matrix2d kernel_hessian(const MultiIndex& beta, const Eigen::Vector2d& x);

/// grad G_2 and Hess G_2 themselves.
Eigen::Vector2d grad_G2(const Eigen::Vector2d& x);
Eigen::Matrix2d hess_G2(const Eigen::Vector2d& x);

}  // namespace lpot
