#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "iwbc/types.hpp"

namespace iwbc {

/// Raised when a wrench has no positive normal force, a polygon is
/// degenerate, or contact planes are not co-planar where required.
struct ContactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Force/torque pair. Stacked 6-vector ordering is always torque before
/// force: (tau_x, tau_y, tau_z, f_x, f_y, f_z).
struct Wrench {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
  std::string frame;

  Vec6 stacked() const {
    Vec6 w;
    w << torque, force;
    return w;
  }
  static Wrench from_stacked(const Vec6& w) {
    Wrench r;
    r.torque = w.head<3>();
    r.force = w.tail<3>();
    return r;
  }
};

/// An established planar unilateral contact. Vertices live in the contact
/// frame whose z-axis is the contact normal; they must share one plane
/// parallel to the tangent plane. Loaded vertex sets are convexified.
struct ContactSpec {
  int ee_id = 0;
  std::vector<Vec3> vertices;
  Vec3 normal = Vec3::UnitZ();
  double friction = 0.7;
  int cone_facets = 4;

  /// Counter-clockwise 2D hull of the vertices in the tangent plane.
  std::vector<Vec2> tangent_polygon() const;
  /// Common plane offset of the vertices along the normal.
  double plane_offset() const;
  /// Throws ContactError on fewer than 3 vertices, non-unit normal,
  /// non-coplanar vertex sets, or a degenerate (near-zero area) patch.
  void validate() const;
};

/// Orthonormal (t1, t2, n) basis with deterministic tangent choice;
/// columns of the returned matrix, world-from-contact rotation.
Mat3 tangent_basis(const Vec3& normal);

/// Center of pressure of a wrench expressed at the contact frame origin:
/// p = (-tau_y / f_n, tau_x / f_n) in the tangent basis of n.
/// Throws ContactError when f_n <= 0.
Vec2 cop_of_wrench(const Wrench& w, const Vec3& n);

/// Rows A_c over the contact-frame 6-wrench such that A_c F <= 0 iff the
/// CoP lies inside the contact polygon (given f_n > 0). One row per edge.
Mat cop_constraint_matrix(const ContactSpec& c);

/// P_mu = I - n n^T - mu n n^T; componentwise P_mu f <= 0 is the paper's
/// linearized no-slip condition (not the exact second-order cone).
Mat3 friction_projector(const Vec3& n, double mu);

/// Convex support region in half-plane form: A_x z_x + A_y z_y <= B.
struct SupportPolygon {
  Vec A_x, A_y, B;
  std::vector<Vec2> vertices;  ///< counter-clockwise

  bool contains(const Vec2& p, double tol = 0.0) const {
    for (int i = 0; i < A_x.size(); ++i)
      if (A_x[i] * p.x() + A_y[i] * p.y() > B[i] + tol) return false;
    return true;
  }
  /// Positive inside, negative outside, zero on the boundary.
  double margin(const Vec2& p) const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < A_x.size(); ++i)
      m = std::min(m, B[i] - A_x[i] * p.x() - A_y[i] * p.y());
    return m;
  }
};

/// Convex hull of all contact vertices projected to the ground plane.
/// Every contact plane must have normal (0,0,1) within 1e-6 rad.
SupportPolygon support_polygon(const std::vector<ContactSpec>& contacts,
                               const std::vector<Isometry>& world_poses);

/// ZMP of a set of wrenches expressed at the inertial origin, ground
/// normal (0,0,1). Throws ContactError when the total normal force is
/// not positive.
Vec2 zmp(const std::vector<Wrench>& wrenches);

/// A_Z = [A_y, -A_x, 0, 0, 0, -B] acting on the summed inertial wrench.
Mat zmp_constraint_matrix(const SupportPolygon& sp);

/// Monotone-chain convex hull, counter-clockwise. Shared by the contact
/// machinery; exposed for reuse.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

}  // namespace iwbc
