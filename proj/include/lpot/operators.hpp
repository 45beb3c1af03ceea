#pragma once

#include <array>

#include "lpot/boundary_op.hpp"

namespace lpot {

struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Single layer trace V: log-splitting product quadrature (periodic log
/// weight plus smooth remainder, speed-log diagonal limit).
BoundaryOp assemble_V(const Grid& grid);

/// Double layer trace K: continuous kernel, curvature diagonal limit.
BoundaryOp assemble_K(const Grid& grid);

/// Normal-derivative trace K': adjoint kernel, curvature diagonal limit.
BoundaryOp assemble_Kprime(const Grid& grid);

/// Hypersingular operator W through the arclength-derivative conjugation of
/// V. The two derivatives are realized spectrally on a half-node staggered
/// grid, which keeps the top (Nyquist) mode exact; the collocated spectral
/// derivative annihilates it and would leave an O(1) defect in the
/// Calderon identities.
BoundaryOp assemble_W(const Grid& grid);

BoundaryOp assemble(OpKind kind, const Grid& grid);

/// Nystrom matrix of the smooth cross kernel between disjoint curves.
/// The normal signs flip the orientation of the target/source boundary
/// (used for hole boundaries whose outward normal points into the hole).
BoundaryOp assemble_cross(OpKind kind, const Grid& target, const Grid& source,
                          double target_normal_sign = 1.0,
                          double source_normal_sign = 1.0);

enum class PotentialKind { SingleLayer, DoubleLayer };

/// Trapezoidal evaluation of the single/double layer potential at an
/// off-boundary point. Throws AccuracyError closer than five grid spacings.
double eval_potential(PotentialKind kind, const Grid& grid, const Density& density,
                      const Eigen::Vector2d& x);

/// As eval_potential but with the density upsampled by trigonometric
/// interpolation to `fine_size` nodes, for targets near the boundary.
double eval_potential_refined(PotentialKind kind, const Grid& grid,
                              const Density& density, const Eigen::Vector2d& x,
                              int fine_size);

/// Gradients of the layer potentials, upsampled quadrature.
Eigen::Vector2d grad_single_layer_refined(const Grid& grid, const Density& density,
                                          const Eigen::Vector2d& x, int fine_size);
Eigen::Vector2d grad_double_layer_refined(const Grid& grid, const Density& density,
                                          const Eigen::Vector2d& x, int fine_size);

/// Sup norms of the four one-sided trace identities: interior/exterior
/// double layer traces against -psi/2 + K psi and +psi/2 + K psi, and
/// interior/exterior normal derivatives of the single layer against
/// +mu/2 + K' mu and -mu/2 + K' mu. One-sided traces are obtained by
/// off-boundary evaluation at h in {1e-2, 5e-3, 2.5e-3} along the normal
/// with Richardson extrapolation to h = 0.
std::array<double, 4> jump_residuals(const Grid& grid, const Density& psi,
                                     const Density& mu);

/// Trigonometric interpolation of nodal values to `fine_size` equispaced
/// nodes (same parameter offset).
Eigen::VectorXd upsample_density(const Grid& grid, const Eigen::VectorXd& values,
                                 int fine_size);

}  // namespace lpot
