#include "lpot/operators.hpp"

#include <cmath>
#include <numbers>

#include "lpot/kernel.hpp"

namespace lpot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Weights R[d] of the product quadrature for the periodic weight
/// log(4 sin^2((t - s)/2)) at collocation offset d = (i - j) mod N.
Eigen::VectorXd log_weight_table(int N) {
  const int n = N / 2;
  Eigen::VectorXd R(N);
  for (int d = 0; d < N; ++d) {
    double acc = 0.0;
    for (int m = 1; m < n; ++m) acc += std::cos(kTwoPi * m * d / N) / m;
    R[d] = -(2.0 * kTwoPi / N) * acc - (kTwoPi / (N * static_cast<double>(n))) * ((d % 2 == 0) ? 1.0 : -1.0);
  }
  return R;
}

/// Derivative of the cardinal interpolation basis for N even:
/// l0'(x) = (1/N) [ -sum_{m=1}^{N/2-1} 2 m sin(mx) - (N/2) sin(Nx/2) ].
double cardinal_derivative(int N, double x) {
  double acc = 0.0;
  for (int m = 1; m < N / 2; ++m) acc -= 2.0 * m * std::sin(m * x);
  acc -= 0.5 * N * std::sin(0.5 * N * x);
  return acc / N;
}

/// Spectral differentiation from nodes offset by `from` to nodes offset by
/// `to` (both in parameter units). Shift-invariant, built from one column
/// kernel; odd symmetry of the kernel is enforced exactly.
Eigen::MatrixXd staggered_diff_matrix(int N, double from, double to) {
  const double h = kTwoPi / N;
  std::vector<double> kernel(static_cast<std::size_t>(N));
  for (int d = 0; d < N; ++d) {
    double x = d * h + (to - from);
    while (x > kPi) x -= kTwoPi;
    while (x <= -kPi) x += kTwoPi;
    kernel[static_cast<std::size_t>(d)] =
        (x < 0.0) ? -cardinal_derivative(N, -x) : cardinal_derivative(N, x);
  }
  Eigen::MatrixXd D(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) D(i, j) = kernel[static_cast<std::size_t>((i - j + N) % N)];
  return D;
}

Eigen::MatrixXd v_matrix(const Grid& g) {
  const int N = g.size();
  const double h = g.param_weight();
  const Eigen::VectorXd R = log_weight_table(N);
  Eigen::MatrixXd M(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double smooth;
      if (i == j) {
        smooth = -std::log(g.speed(i)) / kTwoPi;
      } else {
        const double chord = (g.point(i) - g.point(j)).norm();
        const double gap = 2.0 * std::abs(std::sin(kPi * (i - j) / N));
        smooth = -std::log(chord / gap) / kTwoPi;
      }
      M(i, j) = (-0.25 / kPi) * R[(i - j + N) % N] * g.speed(j) + h * smooth * g.speed(j);
    }
  }
  return M;
}

Eigen::MatrixXd k_matrix(const Grid& g, bool prime) {
  const int N = g.size();
  const double h = g.param_weight();
  Eigen::MatrixXd M(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double kernel;
      if (i == j) {
        kernel = -g.curvature(i) / (2.0 * kTwoPi);
      } else {
        const Eigen::Vector2d r = g.point(i) - g.point(j);
        const Eigen::Vector2d& nu = prime ? g.normal(i) : g.normal(j);
        const double sign = prime ? -1.0 : 1.0;
        kernel = sign * nu.dot(r) / (kTwoPi * r.squaredNorm());
      }
      M(i, j) = kernel * g.speed(j) * h;
    }
  }
  return M;
}

Eigen::MatrixXd w_matrix(const Grid& g) {
  const int N = g.size();
  const Grid half(g.curve(), N, g.param_offset() + kPi / N);
  const Eigen::MatrixXd Vh = v_matrix(half);
  const Eigen::MatrixXd Dp = staggered_diff_matrix(N, g.param_offset(), half.param_offset());
  const Eigen::MatrixXd Dm = staggered_diff_matrix(N, half.param_offset(), g.param_offset());
  // d/ds on the source density, V on the half grid, d/ds back to the nodes.
  Eigen::VectorXd inv_speed_half(N), inv_speed(N);
  for (int j = 0; j < N; ++j) {
    inv_speed_half[j] = 1.0 / half.speed(j);
    inv_speed[j] = 1.0 / g.speed(j);
  }
  Eigen::MatrixXd W = inv_speed.asDiagonal() * Dm * Vh * inv_speed_half.asDiagonal() * Dp;
  return -W;
}

struct CrossKernel {
  OpKind kind;
  double tgt_sign, src_sign;
  double operator()(const Grid& tg, int i, const Grid& sg, int j) const {
    const Eigen::Vector2d r = tg.point(i) - sg.point(j);
    switch (kind) {
      case OpKind::CrossV:
        return eval_G2(r);
      case OpKind::CrossK:
        // -nu(y) . grad G(x - y)
        return -src_sign * sg.normal(j).dot(grad_G2(r));
      case OpKind::CrossKprime:
        return tgt_sign * tg.normal(i).dot(grad_G2(r));
      case OpKind::CrossW:
        // nu(x) . Hess G(x - y) nu(y)
        return tgt_sign * src_sign * tg.normal(i).dot(hess_G2(r) * sg.normal(j));
      default:
        throw std::invalid_argument("not a cross kernel kind");
    }
  }
};

OpKind cross_kind_of(OpKind kind) {
  switch (kind) {
    case OpKind::V: case OpKind::CrossV: return OpKind::CrossV;
    case OpKind::K: case OpKind::CrossK: return OpKind::CrossK;
    case OpKind::Kprime: case OpKind::CrossKprime: return OpKind::CrossKprime;
    case OpKind::W: case OpKind::CrossW: return OpKind::CrossW;
    default: throw std::invalid_argument("no cross kernel for this kind");
  }
}

double min_node_distance(const Grid& a, const Grid& b) {
  double d = std::numeric_limits<double>::max();
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      d = std::min(d, (a.point(i) - b.point(j)).norm());
  return d;
}

struct RefinedBoundary {
  std::vector<Eigen::Vector2d> points, normals;
  Eigen::VectorXd sigma_weights;
  Eigen::VectorXd values;
};

RefinedBoundary refine(const Grid& grid, const Density& density, int fine_size) {
  RefinedBoundary rb;
  rb.values = upsample_density(grid, density.values(), fine_size);
  rb.points.resize(static_cast<std::size_t>(fine_size));
  rb.normals.resize(static_cast<std::size_t>(fine_size));
  rb.sigma_weights.resize(fine_size);
  const double h = kTwoPi / fine_size;
  for (int j = 0; j < fine_size; ++j) {
    const double t = grid.param_offset() + j * h;
    const Eigen::Vector2d v = grid.curve().velocity(t);
    const double speed = v.norm();
    rb.points[static_cast<std::size_t>(j)] = grid.curve().point(t);
    rb.normals[static_cast<std::size_t>(j)] = Eigen::Vector2d(v.y(), -v.x()) / speed;
    rb.sigma_weights[j] = speed * h;
  }
  return rb;
}

}  // namespace

Eigen::VectorXd upsample_density(const Grid& grid, const Eigen::VectorXd& values,
                                 int fine_size) {
  const int N = grid.size();
  if (fine_size == N) return values;
  // Real trigonometric interpolation coefficients; the top cosine mode is
  // the balanced Nyquist term.
  const int n = N / 2;
  Eigen::VectorXd a(n + 1), b(n + 1);
  a.setZero();
  b.setZero();
  for (int m = 0; m <= n; ++m) {
    double ca = 0.0, cb = 0.0;
    for (int j = 0; j < N; ++j) {
      ca += values[j] * std::cos(m * (kTwoPi * j / N));
      cb += values[j] * std::sin(m * (kTwoPi * j / N));
    }
    const double scale = (m == 0 || m == n) ? 1.0 / N : 2.0 / N;
    a[m] = ca * scale;
    b[m] = cb * scale;
  }
  Eigen::VectorXd out(fine_size);
  for (int j = 0; j < fine_size; ++j) {
    const double t = kTwoPi * j / fine_size;
    double acc = a[0];
    for (int m = 1; m <= n; ++m) acc += a[m] * std::cos(m * t) + b[m] * std::sin(m * t);
    out[j] = acc;
  }
  return out;
}

BoundaryOp assemble_V(const Grid& grid) {
  return BoundaryOp{grid, grid, OpKind::V, v_matrix(grid)};
}

BoundaryOp assemble_K(const Grid& grid) {
  return BoundaryOp{grid, grid, OpKind::K, k_matrix(grid, false)};
}

BoundaryOp assemble_Kprime(const Grid& grid) {
  return BoundaryOp{grid, grid, OpKind::Kprime, k_matrix(grid, true)};
}

BoundaryOp assemble_W(const Grid& grid) {
  return BoundaryOp{grid, grid, OpKind::W, w_matrix(grid)};
}

BoundaryOp assemble(OpKind kind, const Grid& grid) {
  switch (kind) {
    case OpKind::V: return assemble_V(grid);
    case OpKind::K: return assemble_K(grid);
    case OpKind::Kprime: return assemble_Kprime(grid);
    case OpKind::W: return assemble_W(grid);
    default: throw std::invalid_argument("not a single-curve kind");
  }
}

BoundaryOp assemble_cross(OpKind kind, const Grid& target, const Grid& source,
                          double target_normal_sign, double source_normal_sign) {
  double scale = 0.0;
  for (int j = 0; j < target.size(); ++j) scale = std::max(scale, target.point(j).norm());
  for (int j = 0; j < source.size(); ++j) scale = std::max(scale, source.point(j).norm());
  if (min_node_distance(target, source) <= 1e-12 * scale)
    throw GeometryError("cross assembly requires disjoint curves");
  const CrossKernel kernel{cross_kind_of(kind), target_normal_sign, source_normal_sign};
  Eigen::MatrixXd M(target.size(), source.size());
  for (int i = 0; i < target.size(); ++i)
    for (int j = 0; j < source.size(); ++j)
      M(i, j) = kernel(target, i, source, j) * source.sigma_weight(j);
  return BoundaryOp{target, source, kernel.kind, std::move(M)};
}

double eval_potential(PotentialKind kind, const Grid& grid, const Density& density,
                      const Eigen::Vector2d& x) {
  double max_speed = 0.0, dist = std::numeric_limits<double>::max();
  for (int j = 0; j < grid.size(); ++j) {
    max_speed = std::max(max_speed, grid.speed(j));
    dist = std::min(dist, (x - grid.point(j)).norm());
  }
  if (dist < 5.0 * max_speed * grid.param_weight())
    throw AccuracyError("evaluation point closer than five grid spacings");
  double acc = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const Eigen::Vector2d r = x - grid.point(j);
    const double k = (kind == PotentialKind::SingleLayer)
                         ? eval_G2(r)
                         : -grid.normal(j).dot(grad_G2(r));
    acc += k * density.values()[j] * grid.sigma_weight(j);
  }
  return acc;
}

double eval_potential_refined(PotentialKind kind, const Grid& grid,
                              const Density& density, const Eigen::Vector2d& x,
                              int fine_size) {
  const RefinedBoundary rb = refine(grid, density, fine_size);
  double acc = 0.0;
  for (int j = 0; j < fine_size; ++j) {
    const Eigen::Vector2d r = x - rb.points[static_cast<std::size_t>(j)];
    const double k = (kind == PotentialKind::SingleLayer)
                         ? eval_G2(r)
                         : -rb.normals[static_cast<std::size_t>(j)].dot(grad_G2(r));
    acc += k * rb.values[j] * rb.sigma_weights[j];
  }
  return acc;
}

Eigen::Vector2d grad_single_layer_refined(const Grid& grid, const Density& density,
                                          const Eigen::Vector2d& x, int fine_size) {
  const RefinedBoundary rb = refine(grid, density, fine_size);
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (int j = 0; j < fine_size; ++j) {
    const Eigen::Vector2d r = x - rb.points[static_cast<std::size_t>(j)];
    acc += grad_G2(r) * rb.values[j] * rb.sigma_weights[j];
  }
  return acc;
}

Eigen::Vector2d grad_double_layer_refined(const Grid& grid, const Density& density,
                                          const Eigen::Vector2d& x, int fine_size) {
  const RefinedBoundary rb = refine(grid, density, fine_size);
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (int j = 0; j < fine_size; ++j) {
    const Eigen::Vector2d r = x - rb.points[static_cast<std::size_t>(j)];
    acc -= hess_G2(r) * rb.normals[static_cast<std::size_t>(j)] * rb.values[j] *
           rb.sigma_weights[j];
  }
  return acc;
}

std::array<double, 4> jump_residuals(const Grid& grid, const Density& psi,
                                     const Density& mu) {
  const int fine = 16384;
  // Quadratic Richardson extrapolation through h, h/2, h/4.
  const double h0 = 1e-2;
  const std::array<double, 3> hs{h0, 0.5 * h0, 0.25 * h0};
  const std::array<double, 3> coef{1.0 / 3.0, -2.0, 8.0 / 3.0};

  const Eigen::VectorXd k_psi = assemble_K(grid).mat * psi.values();
  const Eigen::VectorXd kp_mu = assemble_Kprime(grid).mat * mu.values();

  // Upsample both densities once; all targets share the fine boundary.
  const RefinedBoundary rb_psi = refine(grid, psi, fine);
  const RefinedBoundary rb_mu = refine(grid, mu, fine);
  auto dbl = [&](const Eigen::Vector2d& x) {
    double acc = 0.0;
    for (int j = 0; j < fine; ++j) {
      const Eigen::Vector2d r = x - rb_psi.points[static_cast<std::size_t>(j)];
      acc -= rb_psi.normals[static_cast<std::size_t>(j)].dot(grad_G2(r)) *
             rb_psi.values[j] * rb_psi.sigma_weights[j];
    }
    return acc;
  };
  auto grad_sl = [&](const Eigen::Vector2d& x) {
    Eigen::Vector2d acc = Eigen::Vector2d::Zero();
    for (int j = 0; j < fine; ++j) {
      const Eigen::Vector2d r = x - rb_mu.points[static_cast<std::size_t>(j)];
      acc += grad_G2(r) * rb_mu.values[j] * rb_mu.sigma_weights[j];
    }
    return acc;
  };

  std::array<double, 4> res{0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < grid.size(); ++i) {
    const Eigen::Vector2d x0 = grid.point(i);
    const Eigen::Vector2d nu = grid.normal(i);
    double d_int = 0.0, d_ext = 0.0, s_int = 0.0, s_ext = 0.0;
    for (int m = 0; m < 3; ++m) {
      const double c = coef[static_cast<std::size_t>(m)];
      const double h = hs[static_cast<std::size_t>(m)];
      d_int += c * dbl(x0 - h * nu);
      d_ext += c * dbl(x0 + h * nu);
      s_int += c * nu.dot(grad_sl(x0 - h * nu));
      s_ext += c * nu.dot(grad_sl(x0 + h * nu));
    }
    res[0] = std::max(res[0], std::abs(d_int - (-0.5 * psi.values()[i] + k_psi[i])));
    res[1] = std::max(res[1], std::abs(d_ext - (0.5 * psi.values()[i] + k_psi[i])));
    res[2] = std::max(res[2], std::abs(s_int - (0.5 * mu.values()[i] + kp_mu[i])));
    res[3] = std::max(res[3], std::abs(s_ext - (-0.5 * mu.values()[i] + kp_mu[i])));
  }
  return res;
}

}  // namespace lpot
