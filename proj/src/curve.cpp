#include "lpot/curve.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>

namespace lpot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int validation_samples(int degree) { return std::max(512, 16 * (degree + 1)); }

}  // namespace

TrigTable TrigTable::zero(int degree) {
  TrigTable t;
  t.cos_x = Eigen::VectorXd::Zero(degree + 1);
  t.sin_x = Eigen::VectorXd::Zero(degree + 1);
  t.cos_y = Eigen::VectorXd::Zero(degree + 1);
  t.sin_y = Eigen::VectorXd::Zero(degree + 1);
  return t;
}

Eigen::Vector2d TrigTable::point(double t) const {
  double x = 0.0, y = 0.0;
  for (int m = 0; m <= degree(); ++m) {
    const double c = std::cos(m * t), s = std::sin(m * t);
    x += cos_x[m] * c + sin_x[m] * s;
    y += cos_y[m] * c + sin_y[m] * s;
  }
  return {x, y};
}

Eigen::Vector2d TrigTable::velocity(double t) const {
  double x = 0.0, y = 0.0;
  for (int m = 1; m <= degree(); ++m) {
    const double c = std::cos(m * t), s = std::sin(m * t);
    x += m * (-cos_x[m] * s + sin_x[m] * c);
    y += m * (-cos_y[m] * s + sin_y[m] * c);
  }
  return {x, y};
}

Eigen::Vector2d TrigTable::acceleration(double t) const {
  double x = 0.0, y = 0.0;
  for (int m = 1; m <= degree(); ++m) {
    const double c = std::cos(m * t), s = std::sin(m * t);
    x -= m * m * (cos_x[m] * c + sin_x[m] * s);
    y -= m * m * (cos_y[m] * c + sin_y[m] * s);
  }
  return {x, y};
}

TrigTable TrigTable::scaled(double factor) const {
  TrigTable t = *this;
  t.cos_x *= factor;
  t.sin_x *= factor;
  t.cos_y *= factor;
  t.sin_y *= factor;
  return t;
}

TrigTable TrigTable::plus(const TrigTable& other, double factor) const {
  const int d = std::max(degree(), other.degree());
  TrigTable t = TrigTable::zero(d);
  for (int m = 0; m <= degree(); ++m) {
    t.cos_x[m] += cos_x[m];
    t.sin_x[m] += sin_x[m];
    t.cos_y[m] += cos_y[m];
    t.sin_y[m] += sin_y[m];
  }
  for (int m = 0; m <= other.degree(); ++m) {
    t.cos_x[m] += factor * other.cos_x[m];
    t.sin_x[m] += factor * other.sin_x[m];
    t.cos_y[m] += factor * other.cos_y[m];
    t.sin_y[m] += factor * other.sin_y[m];
  }
  return t;
}

std::string TrigTable::to_json() const {
  nlohmann::json j;
  j["degree"] = degree();
  auto dump = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  j["cos_x"] = dump(cos_x);
  j["sin_x"] = dump(sin_x);
  j["cos_y"] = dump(cos_y);
  j["sin_y"] = dump(sin_y);
  return j.dump();
}

TrigTable TrigTable::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int degree = j.at("degree").get<int>();
  if (degree < 0) throw GeometryError("curve degree must be >= 0");
  TrigTable t = TrigTable::zero(degree);
  auto load = [&](const char* key, Eigen::VectorXd& v) {
    const auto arr = j.at(key).get<std::vector<double>>();
    if (static_cast<int>(arr.size()) != degree + 1)
      throw GeometryError(std::string("coefficient table '") + key +
                          "' must have degree+1 entries");
    for (int m = 0; m <= degree; ++m) v[m] = arr[static_cast<std::size_t>(m)];
  };
  load("cos_x", t.cos_x);
  load("sin_x", t.sin_x);
  load("cos_y", t.cos_y);
  load("sin_y", t.sin_y);
  return t;
}

Curve::Curve(TrigTable table) : table_(std::move(table)) {
  const int M = validation_samples(table_.degree());
  const double h = kTwoPi / M;
  std::vector<Eigen::Vector2d> pts(static_cast<std::size_t>(M));
  double scale = 0.0;
  for (int k = 0; k < M; ++k) {
    pts[static_cast<std::size_t>(k)] = table_.point(k * h);
    scale = std::max(scale, pts[static_cast<std::size_t>(k)].norm());
  }
  if (scale == 0.0) throw GeometryError("degenerate curve (all points at origin)");

  double area = 0.0;
  for (int k = 0; k < M; ++k) {
    const double t = k * h;
    const Eigen::Vector2d p = pts[static_cast<std::size_t>(k)];
    const Eigen::Vector2d v = table_.velocity(t);
    if (v.norm() < 1e-12 * scale)
      throw GeometryError("curve speed vanishes at t = " + std::to_string(t));
    area += 0.5 * (p.x() * v.y() - p.y() * v.x()) * h;
  }
  if (area <= 0.0)
    throw GeometryError("curve must be counterclockwise (signed area > 0)");
  signed_area_ = area;

  // Injectivity proxy: chord over circular parameter distance bounded below.
  for (int i = 0; i < M; ++i) {
    for (int j = i + 1; j < M; ++j) {
      const double dt_raw = (j - i) * h;
      const double dt = std::min(dt_raw, kTwoPi - dt_raw);
      const double chord =
          (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm();
      if (chord / dt < 1e-6 * scale)
        throw GeometryError("curve is not injective (nodes " + std::to_string(i) +
                            ", " + std::to_string(j) + " nearly coincide)");
    }
  }
}

Curve Curve::circle(double radius, const Eigen::Vector2d& center) {
  if (radius <= 0.0) throw GeometryError("circle radius must be positive");
  TrigTable t = TrigTable::zero(1);
  t.cos_x[0] = center.x();
  t.cos_y[0] = center.y();
  t.cos_x[1] = radius;
  t.sin_y[1] = radius;
  return Curve(std::move(t));
}

Curve Curve::ellipse(double a, double b, const Eigen::Vector2d& center) {
  if (a <= 0.0 || b <= 0.0) throw GeometryError("ellipse semi-axes must be positive");
  TrigTable t = TrigTable::zero(1);
  t.cos_x[0] = center.x();
  t.cos_y[0] = center.y();
  t.cos_x[1] = a;
  t.sin_y[1] = b;
  return Curve(std::move(t));
}

Curve Curve::kite() {
  TrigTable t = TrigTable::zero(2);
  t.cos_x[0] = -0.65;
  t.cos_x[1] = 1.0;
  t.cos_x[2] = 0.65;
  t.sin_y[1] = 1.5;
  return Curve(std::move(t));
}

Curve scale_curve(const Curve& curve, double eps) {
  if (eps == 0.0) throw GeometryError("scale factor must be nonzero");
  return Curve(curve.table().scaled(eps));
}

Diffeo::Diffeo(Curve reference, TrigTable image)
    : reference_(std::move(reference)), image_(std::move(image)) {}

Diffeo Diffeo::identity(const Curve& reference) {
  return Diffeo(reference, reference.table());
}

Diffeo Diffeo::displaced(const TrigTable& direction, double t) const {
  return Diffeo(reference_, image_.plus(direction, t));
}

Curve apply_diffeo(const Diffeo& phi) {
  try {
    return Curve(phi.image_table());
  } catch (const GeometryError& e) {
    throw GeometryError(std::string("invalid diffeomorphism: ") + e.what());
  }
}

bool contains_origin(const Curve& curve) {
  const int M = 4096;
  const double h = kTwoPi / M;
  double winding = 0.0;
  Eigen::Vector2d prev = curve.point(0.0);
  if (prev.norm() == 0.0) return false;
  for (int k = 1; k <= M; ++k) {
    const Eigen::Vector2d p = curve.point(k * h);
    if (p.norm() == 0.0) return false;
    winding += std::atan2(prev.x() * p.y() - prev.y() * p.x(), prev.dot(p));
    prev = p;
  }
  return std::lround(winding / kTwoPi) == 1;
}

double epsilon_max(const Curve& outer, const Curve& inner) {
  if (!contains_origin(outer) || !contains_origin(inner))
    throw GeometryError("epsilon_max requires the origin interior to both curves");
  const int M = 4096;
  const double h = kTwoPi / M;
  double r_out_min = std::numeric_limits<double>::max(), lip_out = 0.0;
  double r_in_max = 0.0, lip_in = 0.0;
  for (int k = 0; k < M; ++k) {
    const double t = k * h;
    const Eigen::Vector2d po = outer.point(t), vo = outer.velocity(t);
    const Eigen::Vector2d pi = inner.point(t), vi = inner.velocity(t);
    r_out_min = std::min(r_out_min, po.norm());
    r_in_max = std::max(r_in_max, pi.norm());
    lip_out = std::max(lip_out, std::abs(po.dot(vo)) / po.norm());
    lip_in = std::max(lip_in, std::abs(pi.dot(vi)) / pi.norm());
  }
  const double safe_out = r_out_min - 0.5 * h * lip_out;
  const double safe_in = r_in_max + 0.5 * h * lip_in;
  if (safe_out <= 0.0)
    throw GeometryError("outer curve passes too close to the origin");
  return safe_out / safe_in;
}

}  // namespace lpot
