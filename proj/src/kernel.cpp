#include "lpot/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lpot {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kFourPi = 12.566370614359172953850573533118;

using ExpKey = std::array<int, 3>;

void add_term(std::map<ExpKey, long long>& acc, const ExpKey& e, long long c) {
  if (c == 0) return;
  auto [it, inserted] = acc.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

std::vector<Monomial> to_monomials(const std::map<ExpKey, long long>& acc) {
  std::vector<Monomial> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.push_back(Monomial{e, c});
  return out;
}

/// d/dx_j of P / |x|^q = (dP/dx_j * |x|^2 - q * P * x_j) / |x|^{q+2}.
KernelDerivative differentiate(const KernelDerivative& kd, int j) {
  KernelDerivative out;
  out.dim = kd.dim;
  out.index = kd.index.bumped(j);
  out.prefactor = kd.prefactor;
  out.log_form = false;

  if (kd.log_form) {
    // d/dx_j log|x| = x_j / |x|^2
    ExpKey e{{0, 0, 0}};
    e[static_cast<std::size_t>(j)] = 1;
    out.denom_power = 2;
    out.numerator = {Monomial{e, 1}};
    return out;
  }

  out.denom_power = kd.denom_power + 2;
  std::map<ExpKey, long long> acc;
  const long long q = kd.denom_power;
  for (const Monomial& m : kd.numerator) {
    // dP/dx_j * |x|^2
    const int p = m.exp[static_cast<std::size_t>(j)];
    if (p > 0) {
      ExpKey base = m.exp;
      base[static_cast<std::size_t>(j)] -= 1;
      for (int a = 0; a < kd.dim; ++a) {
        ExpKey e = base;
        e[static_cast<std::size_t>(a)] += 2;
        add_term(acc, e, m.coeff * p);
      }
    }
    // -q * P * x_j
    ExpKey e = m.exp;
    e[static_cast<std::size_t>(j)] += 1;
    add_term(acc, e, -q * m.coeff);
  }
  out.numerator = to_monomials(acc);
  return out;
}

KernelDerivative seed(int n) {
  KernelDerivative kd;
  kd.dim = n;
  if (n == 2) {
    kd.index = MultiIndex{0, 0};
    kd.log_form = true;
    kd.prefactor = -1.0 / kTwoPi;
    kd.denom_power = 0;
  } else {
    kd.index = MultiIndex{0, 0, 0};
    kd.log_form = false;
    kd.prefactor = 1.0 / kFourPi;
    kd.denom_power = 1;
    kd.numerator = {Monomial{ExpKey{{0, 0, 0}}, 1}};
  }
  return kd;
}

/// All derivatives of G_n up to a fixed order, built once per dimension.
/// Reads are lock-free after construction.
class DerivativeTable {
 public:
  explicit DerivativeTable(int n, int max_order) : n_(n) {
    by_order_.resize(static_cast<std::size_t>(max_order) + 1);
    by_order_[0].push_back(seed(n));
    for (int k = 1; k <= max_order; ++k) {
      const auto betas = MultiIndex::all_of_order(n, k);
      by_order_[static_cast<std::size_t>(k)].reserve(betas.size());
      for (const MultiIndex& b : betas) {
        int j = 0;
        while (b[j] == 0) ++j;
        std::vector<int> pe;
        for (int a = 0; a < n; ++a) pe.push_back(a == j ? b[a] - 1 : b[a]);
        const KernelDerivative& parent = lookup(MultiIndex(pe));
        by_order_[static_cast<std::size_t>(k)].push_back(differentiate(parent, j));
      }
    }
  }

  const KernelDerivative& lookup(const MultiIndex& b) const {
    const int k = b.order();
    if (k >= static_cast<int>(by_order_.size()))
      throw std::invalid_argument("kernel derivative order " + std::to_string(k) +
                                  " exceeds cache order " +
                                  std::to_string(by_order_.size() - 1));
    for (const KernelDerivative& kd : by_order_[static_cast<std::size_t>(k)])
      if (kd.index == b) return kd;
    throw std::logic_error("multi-index not in table: " + b.str());
  }

 private:
  int n_;
  std::vector<std::vector<KernelDerivative>> by_order_;
};

const DerivativeTable& table(int n) {
  static const DerivativeTable t2(2, kSeriesOrderMax + 2);
  static const DerivativeTable t3(3, kSeriesOrderMax + 2);
  if (n == 2) return t2;
  if (n == 3) return t3;
  throw std::invalid_argument("kernel dimension must be 2 or 3");
}

}  // namespace

double KernelDerivative::eval(const double* x) const {
  double r2 = 0.0;
  for (int j = 0; j < dim; ++j) r2 += x[j] * x[j];
  if (r2 == 0.0) throw std::domain_error("kernel derivative evaluated at x = 0");
  if (log_form) return prefactor * 0.5 * std::log(r2);
  double num = 0.0;
  for (const Monomial& m : numerator) {
    double v = static_cast<double>(m.coeff);
    for (int j = 0; j < dim; ++j)
      for (int p = 0; p < m.exp[static_cast<std::size_t>(j)]; ++p) v *= x[j];
    num += v;
  }
  // q is even for n = 2 and odd for n = 3.
  double den;
  if (denom_power % 2 == 0) {
    den = std::pow(r2, denom_power / 2);
  } else {
    den = std::pow(std::sqrt(r2), denom_power);
  }
  return prefactor * num / den;
}

double eval_G(int n, const double* x) {
  double r2 = 0.0;
  for (int j = 0; j < n; ++j) r2 += x[j] * x[j];
  if (r2 == 0.0) throw std::domain_error("G_n evaluated at x = 0");
  if (n == 2) return -0.5 * std::log(r2) / kTwoPi;
  if (n == 3) return 1.0 / (kFourPi * std::sqrt(r2));
  throw std::invalid_argument("kernel dimension must be 2 or 3");
}

const KernelDerivative& deriv_G(int n, const MultiIndex& beta) {
  if (beta.dim() != n)
    throw std::invalid_argument("multi-index dimension does not match n");
  return table(n).lookup(beta);
}

int kernel_cache_order() { return kSeriesOrderMax + 2; }

Eigen::Vector2d kernel_gradient(const MultiIndex& beta, const Eigen::Vector2d& x) {
  return {deriv_G(2, beta.bumped(0)).eval(x), deriv_G(2, beta.bumped(1)).eval(x)};
}

Eigen::Matrix2d kernel_hessian(const MultiIndex& beta, const Eigen::Vector2d& x) {
  Eigen::Matrix2d h;
  h(0, 0) = deriv_G(2, beta.bumped(0).bumped(0)).eval(x);
  h(0, 1) = deriv_G(2, beta.bumped(0).bumped(1)).eval(x);
  h(1, 0) = h(0, 1);
  h(1, 1) = deriv_G(2, beta.bumped(1).bumped(1)).eval(x);
  return h;
}

Eigen::Vector2d grad_G2(const Eigen::Vector2d& x) {
  static const KernelDerivative& dx = deriv_G(2, MultiIndex{1, 0});
  static const KernelDerivative& dy = deriv_G(2, MultiIndex{0, 1});
  return {dx.eval(x), dy.eval(x)};
}

Eigen::Matrix2d hess_G2(const Eigen::Vector2d& x) {
  static const KernelDerivative& dxx = deriv_G(2, MultiIndex{2, 0});
  static const KernelDerivative& dxy = deriv_G(2, MultiIndex{1, 1});
  static const KernelDerivative& dyy = deriv_G(2, MultiIndex{0, 2});
  Eigen::Matrix2d h;
  h(0, 0) = dxx.eval(x);
  h(0, 1) = dxy.eval(x);
  h(1, 0) = h(0, 1);
  h(1, 1) = dyy.eval(x);
  return h;
}

}  // namespace lpot
