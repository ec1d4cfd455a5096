#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwbc/contact.hpp"
#include "oracles.hpp"

using namespace iwbc;

namespace {

ContactSpec unit_square_foot() {
  ContactSpec c;
  c.vertices = {Vec3(0.5, 0.5, 0), Vec3(-0.5, 0.5, 0), Vec3(-0.5, -0.5, 0), Vec3(0.5, -0.5, 0)};
  c.normal = Vec3::UnitZ();
  c.friction = 0.7;
  return c;
}

Wrench wrench_of_point_force(const Vec3& at, const Vec3& f) {
  Wrench w;
  w.force = f;
  w.torque = at.cross(f);
  return w;
}

}  // namespace

TEST_CASE("cop: pure normal force through the origin") {
  Wrench w;
  w.force = Vec3(0, 0, 5);
  CHECK(cop_of_wrench(w, Vec3::UnitZ()).norm() == doctest::Approx(0.0));
}

TEST_CASE("cop: direct formula") {
  Wrench w;
  w.force = Vec3(0, 0, 10);
  w.torque = Vec3(0, -0.5, 0);
  const Vec2 p = cop_of_wrench(w, Vec3::UnitZ());
  CHECK(p.x() == doctest::Approx(0.05));
  CHECK(p.y() == doctest::Approx(0.0));
}

TEST_CASE("cop: recovered from a lever-arm wrench") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int i = 0; i < 200; ++i) {
    const Vec3 r(u(rng), u(rng), 0.0);
    const Vec3 f(u(rng), u(rng), 3.0 + std::abs(u(rng)));
    const Vec2 p = cop_of_wrench(wrench_of_point_force(r, f), Vec3::UnitZ());
    CHECK((p - Vec2(r.x(), r.y())).norm() < 1e-12);
  }
}

TEST_CASE("cop: inactive contact rejected") {
  Wrench w;
  w.force = Vec3(0, 0, -1);
  CHECK_THROWS_AS(cop_of_wrench(w, Vec3::UnitZ()), ContactError);
}

TEST_CASE("cop constraint matrix: interior, boundary, random agreement") {
  const auto c = unit_square_foot();
  const Mat A = cop_constraint_matrix(c);
  REQUIRE(A.rows() == 4);

  const Vec6 center = wrench_of_point_force(Vec3(0, 0, 0), Vec3(0, 0, 10)).stacked();
  CHECK((A * center).maxCoeff() < 0.0);

  const Vec6 edge = wrench_of_point_force(Vec3(0.5, 0.0, 0), Vec3(0, 0, 10)).stacked();
  CHECK(std::abs((A * edge).maxCoeff()) < 1e-12);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<Vec2> square = {{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}};
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Wrench w;
    w.force = Vec3(u(rng), u(rng), 1.0 + std::abs(u(rng)) * 9.0);
    w.torque = Vec3(u(rng), u(rng), u(rng));
    const Vec2 p = cop_of_wrench(w, c.normal);
    const double margin = oracles::polygon_margin(square, p);
    if (std::abs(margin) < 1e-9) continue;  // boundary band
    CHECK(((A * w.stacked()).maxCoeff() <= 0.0) == (margin > 0.0));
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("cop constraint matrix: degenerate polygon rejected") {
  ContactSpec c;
  c.vertices = {Vec3(0, 0, 0), Vec3(1e-8, 0, 0), Vec3(0, 1e-8, 0)};
  CHECK_THROWS_AS(cop_constraint_matrix(c), ContactError);
}

TEST_CASE("friction projector: z-up matrix and tangent/normal actions") {
  const Mat3 P = friction_projector(Vec3::UnitZ(), 0.7);
  CHECK(P.isApprox(Mat3(Vec3(1, 1, -0.7).asDiagonal()), 1e-15));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 n = Vec3(u(rng), u(rng), u(rng)).normalized();
    const double mu = 0.1 + std::abs(u(rng));
    const Mat3 Pm = friction_projector(n, mu);
    CHECK((Pm * n + mu * n).norm() < 1e-12);
    const Vec3 t = n.cross(Vec3(u(rng), u(rng), u(rng))).normalized();
    CHECK((Pm * t - t).norm() < 1e-12);
  }
}

TEST_CASE("friction projector: componentwise rows differ from the true cone") {
  // The linearization flags f_x > 0 even though |f_t| <= mu f_n holds;
  // contrast against the exact second-order cone membership.
  const Vec3 f(0.5, 0, 1);
  const Vec3 n = Vec3::UnitZ();
  const Vec3 pf = friction_projector(n, 0.7) * f;
  CHECK(pf.isApprox(Vec3(0.5, 0, -0.7), 1e-15));
  CHECK(pf.maxCoeff() > 0.0);                   // componentwise test fires
  CHECK(oracles::in_friction_cone(f, n, 0.7));  // the true cone does not
}

TEST_CASE("friction projector: large mu loosens the normal row") {
  const Vec3 f(0.0, 0.0, 1.0);
  for (const double mu : {0.5, 5.0, 500.0}) {
    const Vec3 pf = friction_projector(Vec3::UnitZ(), mu) * f;
    CHECK(pf.z() == doctest::Approx(-mu));
  }
}

TEST_CASE("support polygon: single rectangle and two feet") {
  auto c = unit_square_foot();
  std::vector<Isometry> poses = {Isometry::Identity()};
  const auto sp = support_polygon({c}, poses);
  CHECK(sp.vertices.size() == 4);
  CHECK(sp.contains(Vec2(0, 0)));
  CHECK(!sp.contains(Vec2(0.6, 0)));

  Isometry left = Isometry::Identity(), right = Isometry::Identity();
  left.translate(Vec3(0, 0.8, 0));
  right.translate(Vec3(0, -0.8, 0));
  const auto two = support_polygon({c, c}, {left, right});
  CHECK(two.vertices.size() <= 8);
  for (const auto& v : c.vertices) {
    CHECK(two.contains(Vec2(v.x(), v.y() + 0.8), 1e-12));
    CHECK(two.contains(Vec2(v.x(), v.y() - 0.8), 1e-12));
  }
}

TEST_CASE("support polygon: non-coplanar contacts rejected") {
  auto c = unit_square_foot();
  Isometry tilted = Isometry::Identity();
  tilted.rotate(Eigen::AngleAxisd(0.1, Vec3::UnitX()));
  CHECK_THROWS_AS(support_polygon({c, c}, {Isometry::Identity(), tilted}), ContactError);
}

TEST_CASE("support polygon hull matches brute force") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec2> cloud;
    ContactSpec c;
    c.normal = Vec3::UnitZ();
    const int n = 8 + trial % 10;
    for (int i = 0; i < n; ++i) {
      const Vec2 p(u(rng), u(rng));
      cloud.push_back(p);
      c.vertices.emplace_back(p.x(), p.y(), 0.0);
    }
    const auto sp = support_polygon({c}, {Isometry::Identity()});
    const auto brute = oracles::brute_force_hull(cloud);
    REQUIRE(sp.vertices.size() == brute.size());
    // same cyclic order up to the starting point
    size_t offset = 0;
    while (offset < brute.size() && (brute[offset] - sp.vertices[0]).norm() > 1e-12) ++offset;
    REQUIRE(offset < brute.size());
    for (size_t i = 0; i < brute.size(); ++i)
      CHECK((sp.vertices[i] - brute[(offset + i) % brute.size()]).norm() < 1e-12);
    // every input vertex satisfied; hull vertices tight on two edges
    for (const auto& p : cloud) CHECK(sp.contains(p, 1e-9));
    for (const auto& v : sp.vertices) {
      int tight = 0;
      for (int i = 0; i < sp.B.size(); ++i)
        if (std::abs(sp.A_x[i] * v.x() + sp.A_y[i] * v.y() - sp.B[i]) < 1e-9) ++tight;
      CHECK(tight == 2);
    }
  }
}

TEST_CASE("zmp: force line of action and symmetry") {
  CHECK((zmp({wrench_of_point_force(Vec3(0.2, -0.1, 0), Vec3(0, 0, 10))}) - Vec2(0.2, -0.1))
            .norm() < 1e-12);
  const auto w1 = wrench_of_point_force(Vec3(0.3, 0, 0), Vec3(0, 0, 5));
  const auto w2 = wrench_of_point_force(Vec3(-0.3, 0, 0), Vec3(0, 0, 5));
  CHECK(zmp({w1, w2}).norm() < 1e-12);
}

TEST_CASE("zmp equals cop of the summed wrench in the ground frame") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Wrench> ws;
    Wrench sum;
    for (int i = 0; i < 3; ++i) {
      const auto w = wrench_of_point_force(Vec3(u(rng), u(rng), std::abs(u(rng))),
                                           Vec3(u(rng), u(rng), 1.0 + std::abs(u(rng)) * 5.0));
      ws.push_back(w);
      sum.force += w.force;
      sum.torque += w.torque;
    }
    CHECK((zmp(ws) - cop_of_wrench(sum, Vec3::UnitZ())).norm() < 1e-12);
  }
}

TEST_CASE("zmp: nonpositive total normal force rejected") {
  Wrench w;
  w.force = Vec3(1, 0, 0);
  CHECK_THROWS_AS(zmp({w}), ContactError);
}

TEST_CASE("zmp constraint matrix: interior, boundary, random agreement") {
  const auto c = unit_square_foot();
  const auto sp = support_polygon({c}, {Isometry::Identity()});
  const Mat Az = zmp_constraint_matrix(sp);

  const Vec6 centroid = wrench_of_point_force(Vec3(0, 0, 0), Vec3(0, 0, 20)).stacked();
  CHECK((Az * centroid).maxCoeff() < 0.0);

  const Vec6 edge = wrench_of_point_force(Vec3(0, 0.5, 0), Vec3(0, 0, 20)).stacked();
  CHECK(std::abs((Az * edge).maxCoeff()) < 1e-12);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Wrench w;
    w.force = Vec3(u(rng), u(rng), 2.0 + std::abs(u(rng)) * 18.0);
    w.torque = Vec3(u(rng) * 5, u(rng) * 5, u(rng));
    const Vec2 z = zmp({w});
    const double margin = sp.margin(z);
    if (std::abs(margin) < 1e-9) continue;
    CHECK(((Az * w.stacked()).maxCoeff() <= 0.0) == (margin > 0.0));
    ++checked;
  }
  CHECK(checked > 900);
}
