#pragma once

#include <Eigen/Dense>
#include <string>

namespace lpot {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coefficients of a trigonometric-polynomial map [0, 2pi) -> R^2:
///   x(t) = sum_m cos_x[m] cos(mt) + sin_x[m] sin(mt),  same for y.
/// Entry m = 0 of the sin tables is unused and kept zero.
struct TrigTable {
  Eigen::VectorXd cos_x, sin_x, cos_y, sin_y;

  static TrigTable zero(int degree);
  int degree() const { return static_cast<int>(cos_x.size()) - 1; }

  Eigen::Vector2d point(double t) const;
  Eigen::Vector2d velocity(double t) const;
  Eigen::Vector2d acceleration(double t) const;

  TrigTable scaled(double factor) const;
  /// this + factor * other (tables padded to the larger degree).
  TrigTable plus(const TrigTable& other, double factor) const;

  std::string to_json() const;
  static TrigTable from_json(const std::string& text);
};

/// Closed planar curve given by a trigonometric-polynomial parametrization.
/// Construction validates injectivity, nonvanishing speed, and
/// counterclockwise orientation (positive signed area).
class Curve {
 public:
  explicit Curve(TrigTable table);

  static Curve circle(double radius, const Eigen::Vector2d& center = {0.0, 0.0});
  static Curve ellipse(double a, double b, const Eigen::Vector2d& center = {0.0, 0.0});
  /// Kite-shaped test curve (cos t + 0.65 cos 2t - 0.65, 1.5 sin t).
  static Curve kite();

  const TrigTable& table() const { return table_; }
  Eigen::Vector2d point(double t) const { return table_.point(t); }
  Eigen::Vector2d velocity(double t) const { return table_.velocity(t); }
  Eigen::Vector2d acceleration(double t) const { return table_.acceleration(t); }
  double signed_area() const { return signed_area_; }

 private:
  TrigTable table_;
  double signed_area_ = 0.0;
};

/// Image of p(t) under x -> eps * x. Throws for eps = 0. In the plane a
/// negative eps is a rotation by pi, so orientation is preserved.
Curve scale_curve(const Curve& curve, double eps);

/// Boundary reparametrization: a diffeomorphism of the reference boundary
/// represented through the image of the reference parametrization.
class Diffeo {
 public:
  Diffeo(Curve reference, TrigTable image);
  static Diffeo identity(const Curve& reference);

  const Curve& reference() const { return reference_; }
  const TrigTable& image_table() const { return image_; }

  /// Image table displaced by t * direction.
  Diffeo displaced(const TrigTable& direction, double t) const;

 private:
  Curve reference_;
  TrigTable image_;
};

/// Image curve of the diffeomorphism; throws GeometryError when the image
/// table fails the curve invariants (self-intersection, vanishing speed,
/// reversed orientation).
Curve apply_diffeo(const Diffeo& phi);

/// Conservative estimate of sup{ theta : eps * closure(inner) inside outer
/// for all |eps| < theta }, by radial sampling with a Lipschitz safety
/// margin. Requires the origin interior to both curves.
double epsilon_max(const Curve& outer, const Curve& inner);

/// Winding number of the curve around the origin equals one.
bool contains_origin(const Curve& curve);

}  // namespace lpot
