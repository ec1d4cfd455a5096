#include "iwbc/contact.hpp"

#include <algorithm>
#include <cmath>

namespace iwbc {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() < 1e-12; }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;
  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Vec2> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Vec2> ContactSpec::tangent_polygon() const {
  std::vector<Vec2> pts;
  pts.reserve(vertices.size());
  for (const auto& v : vertices) pts.emplace_back(v.x(), v.y());
  return convex_hull(pts);
}

double ContactSpec::plane_offset() const {
  double z = 0.0;
  for (const auto& v : vertices) z += v.z();
  return vertices.empty() ? 0.0 : z / static_cast<double>(vertices.size());
}

void ContactSpec::validate() const {
  if (vertices.size() < 3) throw ContactError("contact: need at least 3 vertices");
  if (std::abs(normal.norm() - 1.0) > 1e-9) throw ContactError("contact: normal not unit");
  if (!(friction > 0.0)) throw ContactError("contact: friction must be > 0");
  if (cone_facets < 4) throw ContactError("contact: need at least 4 cone facets");
  const double z0 = plane_offset();
  for (const auto& v : vertices)
    if (std::abs(v.z() - z0) > 1e-9) throw ContactError("contact: vertices not coplanar");
  const auto poly = tangent_polygon();
  double area = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    area += 0.5 * (a.x() * b.y() - a.y() * b.x());
  }
  if (area < 1e-12) throw ContactError("contact: degenerate patch (area < 1e-12)");
}

Mat3 tangent_basis(const Vec3& normal) {
  const Vec3 n = normal.normalized();
  // Project a fixed reference onto the tangent plane so that n = +z
  // yields the identity basis.
  const Vec3 ref = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitZ();
  const Vec3 t1 = (ref - ref.dot(n) * n).normalized();
  const Vec3 t2 = n.cross(t1);
  Mat3 R;
  R.col(0) = t1;
  R.col(1) = t2;
  R.col(2) = n;
  return R;
}

Vec2 cop_of_wrench(const Wrench& w, const Vec3& n) {
  const Mat3 R = tangent_basis(n);
  const Vec3 f = R.transpose() * w.force;
  const Vec3 tau = R.transpose() * w.torque;
  if (!(f.z() > 0.0)) throw ContactError("cop: contact inactive (f_n <= 0)");
  return Vec2(-tau.y() / f.z(), tau.x() / f.z());
}

namespace {

// Half-plane rows (e, b) of a CCW polygon: e . p <= b for interior p,
// with e the unit outward edge normal.
void polygon_half_planes(const std::vector<Vec2>& ccw, Vec& ex, Vec& ey, Vec& b) {
  const int n = static_cast<int>(ccw.size());
  ex.resize(n);
  ey.resize(n);
  b.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 a = ccw[i];
    const Vec2 c = ccw[(i + 1) % n];
    Vec2 e(c.y() - a.y(), -(c.x() - a.x()));  // outward for CCW order
    e.normalize();
    ex[i] = e.x();
    ey[i] = e.y();
    b[i] = e.dot(a);
  }
}

}  // namespace

Mat cop_constraint_matrix(const ContactSpec& c) {
  c.validate();
  const auto poly = c.tangent_polygon();
  Vec ex, ey, b;
  polygon_half_planes(poly, ex, ey, b);
  const double z0 = c.plane_offset();
  const int n = static_cast<int>(poly.size());
  // Row on (tau, f) in the contact frame, CoP relations multiplied
  // through by f_n; the plane offset along n shifts the moment arm.
  Mat A = Mat::Zero(n, 6);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = ey[i];
    A(i, 1) = -ex[i];
    A(i, 3) = ex[i] * z0;
    A(i, 4) = ey[i] * z0;
    A(i, 5) = -b[i];
  }
  return A;
}

Mat3 friction_projector(const Vec3& n, double mu) {
  if (std::abs(n.norm() - 1.0) > 1e-9) throw ContactError("friction_projector: normal not unit");
  if (!(mu > 0.0)) throw ContactError("friction_projector: mu must be > 0");
  return Mat3::Identity() - n * n.transpose() - mu * n * n.transpose();
}

SupportPolygon support_polygon(const std::vector<ContactSpec>& contacts,
                               const std::vector<Isometry>& world_poses) {
  if (contacts.size() != world_poses.size())
    throw ContactError("support_polygon: one pose per contact required");
  std::vector<Vec2> pts;
  for (size_t i = 0; i < contacts.size(); ++i) {
    const Vec3 n_world = world_poses[i].rotation() * contacts[i].normal;
    const double angle = std::acos(std::clamp(n_world.dot(Vec3::UnitZ()), -1.0, 1.0));
    if (angle > 1e-6)
      throw ContactError("support_polygon: contact plane not aligned with the ground normal");
    for (const auto& v : contacts[i].vertices) {
      const Vec3 w = world_poses[i] * (tangent_basis(contacts[i].normal) * v);
      pts.emplace_back(w.x(), w.y());
    }
  }
  SupportPolygon sp;
  sp.vertices = convex_hull(pts);
  if (sp.vertices.size() < 3) throw ContactError("support_polygon: degenerate hull");
  polygon_half_planes(sp.vertices, sp.A_x, sp.A_y, sp.B);
  return sp;
}

Vec2 zmp(const std::vector<Wrench>& wrenches) {
  double fn = 0.0, tx = 0.0, ty = 0.0;
  for (const auto& w : wrenches) {
    fn += w.force.z();
    tx += w.torque.x();
    ty += w.torque.y();
  }
  if (!(fn > 0.0)) throw ContactError("zmp: total normal force not positive");
  return Vec2(-ty / fn, tx / fn);
}

Mat zmp_constraint_matrix(const SupportPolygon& sp) {
  const int n = static_cast<int>(sp.B.size());
  Mat A = Mat::Zero(n, 6);
  A.col(0) = sp.A_y;
  A.col(1) = -sp.A_x;
  A.col(5) = -sp.B;
  return A;
}

}  // namespace iwbc
