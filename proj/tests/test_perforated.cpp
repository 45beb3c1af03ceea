#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "lpot/kernel.hpp"
#include "lpot/perforated.hpp"
#include "lpot/presets.hpp"

using namespace lpot;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-12) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++rank;
  return rank;
}

PerforatedGeometry concentric_geometry(int n = 64) {
  return PerforatedGeometry(Curve::circle(2.0), Curve::circle(1.0), n, n);
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(PerforatedConfig(Curve::circle(2.0), Curve::circle(1.0), 64, 64, 0.0),
                  GeometryError);
  CHECK_THROWS_AS(PerforatedConfig(Curve::circle(2.0), Curve::circle(1.0), 64, 64, 2.5),
                  GeometryError);
  // Origin must be interior to both curves.
  CHECK_THROWS_AS(
      PerforatedGeometry(Curve::circle(2.0), Curve::circle(0.3, {1.0, 0.0}), 64, 64),
      GeometryError);
  // 1.9 is admissible for the concentric pair (bound 2).
  const PerforatedConfig ok(Curve::circle(2.0), Curve::circle(1.0), 64, 64, 1.9);
  CHECK(ok.eps_bound == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("block values on concentric circles") {
  const PerforatedConfig cfg(Curve::circle(2.0), Curve::circle(1.0), 64, 64, 0.1);

  {  // Hole row of the single layer block on (0, 1): |eps| V_i[1] one is 0,
     // so only the |eps| log|eps| functional survives.
    const BlockOp v = assemble_block(OpKind::V, cfg);
    const auto [top, bottom] = v.apply(Density::constant(v.outer(), 0.0),
                                       Density::constant(v.inner(), 1.0));
    for (int j = 0; j < bottom.size(); ++j)
      CHECK(bottom.values()[j] ==
            doctest::Approx(-0.1 * std::log(0.1)).epsilon(1e-12));
  }
  {  // Hole row of the double layer block: the diagonal block is -K_i.
    const BlockOp k = assemble_block(OpKind::K, cfg);
    const auto [top, bottom] = k.apply(Density::constant(k.outer(), 0.0),
                                       Density::constant(k.inner(), 1.0));
    for (int j = 0; j < bottom.size(); ++j)
      CHECK(bottom.values()[j] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("sign structure of the adjoint block under eps -> -eps") {
  // On a centrally symmetric hole, s -> -s is the half-period shift of the
  // grid. Composed with the sign carried by the (i,o) block (whose kernel
  // holds the hole normal), the shift is an exact equality of blocks; to
  // leading order in eps it is the entrywise sign flip. The sign itself is
  // verified independently by the direct-assembly equivalence at eps < 0.
  const int n = 64;
  const PerforatedConfig plus(Curve::circle(2.0), Curve::circle(1.0), n, n, 0.1);
  const PerforatedConfig minus(Curve::circle(2.0), Curve::circle(1.0), n, n, -0.1);
  const BlockOp bp = assemble_block(OpKind::Kprime, plus);
  const BlockOp bm = assemble_block(OpKind::Kprime, minus);
  double io_diff = 0.0, oi_diff = 0.0, diag_diff = 0.0, io_lead = 0.0;
  for (int i = 0; i < n; ++i) {
    const int shift = (i + n / 2) % n;
    for (int j = 0; j < n; ++j) {
      io_diff = std::max(io_diff, std::abs(bm.io.mat(i, j) - bp.io.mat(shift, j)));
      oi_diff = std::max(oi_diff, std::abs(bm.oi.mat(i, j) - bp.oi.mat(i, (j + n / 2) % n)));
      io_lead = std::max(io_lead, std::abs(bm.io.mat(i, j) + bp.io.mat(i, j)));
    }
  }
  diag_diff = std::max((bm.oo.mat - bp.oo.mat).cwiseAbs().maxCoeff(),
                       (bm.ii.mat - bp.ii.mat).cwiseAbs().maxCoeff());
  CHECK(io_diff <= 1e-13);
  CHECK(oi_diff <= 1e-13);
  CHECK(diag_diff <= 1e-15);
  // Entrywise, -B(+eps) matches B(-eps) up to the O(eps) kernel shift.
  CHECK(io_lead <= 0.1 * bp.io.inf_norm());
}

TEST_CASE("block and direct assemblies agree entrywise") {
  const PerforationPreset generic = perforation_preset("generic");
  for (OpKind kind : {OpKind::V, OpKind::K, OpKind::Kprime, OpKind::W}) {
    for (double eps : {0.1, -0.1, 0.05, -0.05}) {
      const PerforatedConfig cfg(generic.outer, generic.inner, 64, 64, eps);
      const double diff =
          block_max_abs_diff(assemble_block(kind, cfg), assemble_direct(kind, cfg));
      CHECK(diff <= 1e-11);
    }
  }
}

TEST_CASE("direct hole diagonal reproduces the 1/|eps| scaling of W") {
  for (double eps : {0.1, -0.05}) {
    const PerforatedConfig cfg(Curve::circle(2.0), Curve::kite(), 64, 64, eps);
    const BlockOp direct = assemble_direct(OpKind::W, cfg);
    const Eigen::MatrixXd base = assemble_W(cfg.geom.inner).mat;
    CHECK((direct.ii.mat - base / std::abs(eps)).cwiseAbs().maxCoeff() <= 1e-11);
  }
}

TEST_CASE("leading series coefficients against hand values") {
  const PerforatedGeometry geom = concentric_geometry();
  const Eigen::VectorXd ones_i = Eigen::VectorXd::Ones(geom.inner.size());
  const Eigen::VectorXd ones_o = Eigen::VectorXd::Ones(geom.outer.size());

  {  // k = 0 single layer, outer target (2,0): G((2,0)) * perimeter.
    const BoundaryOp c = series_coeff(OpKind::V, Corner::oi, 0, geom);
    const Eigen::VectorXd applied = c.mat * ones_i;
    CHECK(applied[0] == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  }
  {  // k = 0 double layer: the normal moment of a constant vanishes.
    const BoundaryOp c = series_coeff(OpKind::K, Corner::oi, 0, geom);
    CHECK((c.mat * ones_i).cwiseAbs().maxCoeff() <= 1e-14);
  }
  {  // k = 0 hole-side hypersingular coefficient is identically zero.
    const BoundaryOp c = series_coeff(OpKind::W, Corner::io, 0, geom);
    CHECK(c.mat.cwiseAbs().maxCoeff() == 0.0);
  }
  {  // k = 0 adjoint double layer at x = (2,0): nu(x).grad G(x) * perimeter.
    const BoundaryOp c = series_coeff(OpKind::Kprime, Corner::oi, 0, geom);
    const Eigen::VectorXd applied = c.mat * ones_i;
    CHECK(applied[0] == doctest::Approx(-0.5).epsilon(1e-12));
  }
  {  // k = 1 single layer entries in closed form.
    const BoundaryOp c = series_coeff(OpKind::V, Corner::oi, 1, geom);
    const int i = 3, j = 11;
    const Eigen::Vector2d x = geom.outer.point(i);
    const Eigen::Vector2d s = geom.inner.point(j);
    const double expected = -(grad_G2(x).dot(s)) * geom.inner.sigma_weight(j);
    CHECK(c.mat(i, j) == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK_THROWS_AS(series_coeff(OpKind::V, Corner::oi, kSeriesOrderMax + 1, geom),
                  std::invalid_argument);
}

TEST_CASE("series truncation basics") {
  const PerforatedGeometry geom = concentric_geometry();
  const BoundaryOp c0 = series_coeff(OpKind::V, Corner::oi, 0, geom);
  CHECK((series_truncate(OpKind::V, Corner::oi, 0, 0.1, geom).mat - c0.mat)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((series_truncate(OpKind::V, Corner::oi, 3, 0.0, geom).mat - c0.mat)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // On the centered hole the k = 1 moments of a constant vanish, so the
  // K = 0 and K = 1 truncations act identically on it.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(geom.inner.size());
  const Eigen::VectorXd a = series_truncate(OpKind::V, Corner::oi, 0, 0.1, geom).mat * ones;
  const Eigen::VectorXd b = series_truncate(OpKind::V, Corner::oi, 1, 0.1, geom).mat * ones;
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("series coefficients are low rank") {
  const PerforationPreset generic = perforation_preset("generic");
  const PerforatedGeometry geom(generic.outer, generic.inner, 64, 64);
  for (OpKind kind : {OpKind::V, OpKind::K, OpKind::Kprime, OpKind::W}) {
    for (Corner corner : {Corner::oi, Corner::io}) {
      for (int k = 0; k <= 4; ++k) {
        const int rank = numerical_rank(series_coeff(kind, corner, k, geom).mat);
        CHECK(rank <= 2 * (k + 1));
        if (k >= 1) CHECK(rank <= (k + 1) * (k + 1));
      }
    }
  }
}

TEST_CASE("transpose relation between the two single layer corners") {
  // With the same curve and grid on both roles, the k-th coefficients use
  // the same kernel derivative values with source and target swapped:
  // diag(w) Voi_k = (diag(w) Vio_k)^T.
  const Curve ell = Curve::ellipse(2.0, 1.0);
  const PerforatedGeometry geom(ell, ell, 64, 64);
  const Eigen::VectorXd w = geom.outer.sigma_weights();
  for (int k = 0; k <= 4; ++k) {
    const Eigen::MatrixXd voi = series_coeff(OpKind::V, Corner::oi, k, geom).mat;
    const Eigen::MatrixXd vio = series_coeff(OpKind::V, Corner::io, k, geom).mat;
    const Eigen::MatrixXd lhs = w.asDiagonal() * voi;
    const Eigen::MatrixXd rhs = (w.asDiagonal() * vio).transpose();
    const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
}

TEST_CASE("parity of applied coefficients on the symmetric hole") {
  const PerforatedGeometry geom = concentric_geometry();
  const Grid& gi = geom.inner;
  const DensitySpec spec = perforation_preset("concentric").density;
  Eigen::VectorXd even(gi.size());
  for (int j = 0; j < gi.size(); ++j) even[j] = spec(gi.param(j));

  // Scalar-moment families lose the odd orders, the normal-weighted
  // families lose the even orders.
  for (int k : {1, 3}) {
    CHECK((series_coeff(OpKind::V, Corner::oi, k, geom).mat * even).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK((series_coeff(OpKind::Kprime, Corner::oi, k, geom).mat * even)
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  }
  for (int k : {0, 2}) {
    CHECK((series_coeff(OpKind::K, Corner::oi, k, geom).mat * even).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK((series_coeff(OpKind::W, Corner::oi, k, geom).mat * even).cwiseAbs().maxCoeff() <=
          1e-12);
  }
  for (int k : {1, 3}) {  // nonvanishing counterparts
    CHECK((series_coeff(OpKind::K, Corner::oi, k, geom).mat * even).cwiseAbs().maxCoeff() >
          1e-6);
  }
  for (int k : {0, 2}) {
    CHECK((series_coeff(OpKind::V, Corner::oi, k, geom).mat * even).cwiseAbs().maxCoeff() >
          1e-6);
  }
}

TEST_CASE("truncation error orders on the shipped geometries") {
  const std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125};

  {  // Generic geometry: remainder order K + 1.
    const PerforationPreset p = perforation_preset("generic");
    const PerforatedGeometry geom(p.outer, p.inner, 128, 128);
    const auto rows = truncation_study(OpKind::V, Corner::oi, {0, 1}, eps_list, geom,
                                       [&](double t) { return p.density(t); });
    for (const auto& r : rows) {
      if (r.K == 0) CHECK(std::abs(r.fitted_slope - 1.0) <= 0.2);
      if (r.K == 1) CHECK(std::abs(r.fitted_slope - 2.0) <= 0.2);
    }
  }
  {  // Concentric circles with an even density: the odd coefficients drop
     // out and the K = 0 truncation already has a second-order remainder.
    const PerforationPreset p = perforation_preset("concentric");
    const PerforatedGeometry geom(p.outer, p.inner, 128, 128);
    const auto rows = truncation_study(OpKind::V, Corner::oi, {0}, eps_list, geom,
                                       [&](double t) { return p.density(t); });
    for (const auto& r : rows) CHECK(std::abs(r.fitted_slope - 2.0) <= 0.2);
  }
}

TEST_CASE("K = 4 truncation at eps = 0.01 is close to the exact part") {
  const PerforationPreset p = perforation_preset("generic");
  const PerforatedGeometry geom(p.outer, p.inner, 64, 64);
  for (OpKind kind : {OpKind::V, OpKind::W}) {
    for (Corner corner : {Corner::oi, Corner::io}) {
      const BoundaryOp tr = series_truncate(kind, corner, 4, 0.01, geom);
      const BoundaryOp ex = cross_analytic(kind, corner, 0.01, geom);
      const double norm = (tr.mat - ex.mat).cwiseAbs().rowwise().sum().maxCoeff();
      CHECK(norm <= 1e-8);
    }
  }
}

TEST_CASE("block grid consistency is enforced") {
  const Grid a(Curve::circle(2.0), 64), b(Curve::circle(1.0), 64);
  const Grid c(Curve::circle(1.0), 32);
  BoundaryOp oo{a, a, OpKind::V, Eigen::MatrixXd::Zero(64, 64)};
  BoundaryOp oi{a, b, OpKind::V, Eigen::MatrixXd::Zero(64, 64)};
  BoundaryOp io{b, a, OpKind::V, Eigen::MatrixXd::Zero(64, 64)};
  BoundaryOp ii{b, b, OpKind::V, Eigen::MatrixXd::Zero(64, 64)};
  CHECK_NOTHROW(BlockOp(oo, oi, io, ii));
  BoundaryOp bad{c, c, OpKind::V, Eigen::MatrixXd::Zero(32, 32)};
  CHECK_THROWS_AS(BlockOp(oo, oi, io, bad), std::invalid_argument);
}

TEST_CASE("series coefficients match scale derivatives of the analytic part") {
  // Independent oracle: k! series_coeff(k) is the k-th eps-derivative of
  // cross_analytic at eps = 0, estimated by central differences.
  const PerforationPreset p = perforation_preset("generic");
  const PerforatedGeometry geom(p.outer, p.inner, 32, 32);
  const double d = 1e-3;
  for (OpKind kind : {OpKind::V, OpKind::K, OpKind::Kprime, OpKind::W}) {
    for (Corner corner : {Corner::oi, Corner::io}) {
      const Eigen::MatrixXd ap = cross_analytic(kind, corner, d, geom).mat;
      const Eigen::MatrixXd am = cross_analytic(kind, corner, -d, geom).mat;
      const Eigen::MatrixXd a0 = cross_analytic(kind, corner, 0.0, geom).mat;
      const Eigen::MatrixXd fd1 = (ap - am) / (2.0 * d);
      const Eigen::MatrixXd fd2 = (ap - 2.0 * a0 + am) / (d * d);
      const Eigen::MatrixXd c1 = series_coeff(kind, corner, 1, geom).mat;
      const Eigen::MatrixXd c2 = 2.0 * series_coeff(kind, corner, 2, geom).mat;
      CHECK((fd1 - c1).cwiseAbs().maxCoeff() <= 1e-4);
      CHECK((fd2 - c2).cwiseAbs().maxCoeff() <= 1e-3);
    }
  }
}
