#include "iwbc/sample_models.hpp"

#include <cmath>
#include <limits>

namespace iwbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat3 rod_inertia_x(double mass, double length) {
  const double i = mass * length * length / 12.0;
  return Vec3(1e-4, i, i).asDiagonal();
}

Mat3 rod_inertia_z(double mass, double length) {
  const double i = mass * length * length / 12.0;
  return Vec3(i, i, 1e-4).asDiagonal();
}

void default_bounds(RobotModel& m, double qd_lim, double dtau_lim) {
  const int nv = m.nv();
  m.qd_min = Vec::Constant(nv, -qd_lim);
  m.qd_max = Vec::Constant(nv, qd_lim);
  m.dtau_min = Vec::Constant(nv, -dtau_lim);
  m.dtau_max = Vec::Constant(nv, dtau_lim);
  if (m.floating_base()) {
    m.qd_min.head<6>().setConstant(-kInf);
    m.qd_max.head<6>().setConstant(kInf);
    m.dtau_min.head<6>().setConstant(-kInf);
    m.dtau_max.head<6>().setConstant(kInf);
  }
}

int add_link(RobotModel& m, const std::string& name, double mass, const Vec3& com,
             const Mat3& inertia, JointType type, const Vec3& axis, int parent,
             const Vec3& origin_xyz) {
  Link l;
  l.name = name;
  l.mass = mass;
  l.com = com;
  l.inertia = inertia;
  m.links.push_back(l);
  Joint j;
  j.name = name + "_joint";
  j.type = type;
  j.axis = axis;
  j.parent_link = parent;
  j.origin = Isometry::Identity();
  j.origin.translate(origin_xyz);
  m.joints.push_back(j);
  return static_cast<int>(m.links.size()) - 1;
}

}  // namespace

RobotModel make_pendulum(double mass, double length) {
  RobotModel m;
  add_link(m, "rod", mass, Vec3(length, 0, 0), Mat3::Identity() * 1e-10, JointType::revolute,
           Vec3::UnitZ(), -1, Vec3::Zero());
  m.end_effectors.push_back({"tip", 0, Vec3(length, 0, 0)});
  default_bounds(m, 10.0, 100.0);
  return m;
}

RobotModel make_two_link_arm(double l1, double l2) {
  RobotModel m;
  const int a = add_link(m, "upper", 1.0, Vec3(l1, 0, 0), Mat3::Identity() * 1e-10,
                         JointType::revolute, Vec3::UnitY(), -1, Vec3::Zero());
  add_link(m, "lower", 1.0, Vec3(l2, 0, 0), Mat3::Identity() * 1e-10, JointType::revolute,
           Vec3::UnitY(), a, Vec3(l1, 0, 0));
  m.end_effectors.push_back({"tip", 1, Vec3(l2, 0, 0)});
  default_bounds(m, 10.0, 100.0);
  return m;
}

RobotModel make_arm7() {
  RobotModel m;
  const double l = 0.25;
  int parent = -1;
  for (int i = 0; i < 7; ++i) {
    const double mass = 2.0 - 0.2 * i;
    const Vec3 axis = (i % 2 == 0) ? Vec3::UnitY() : Vec3::UnitZ();
    parent = add_link(m, "link" + std::to_string(i), mass, Vec3(l / 2, 0, 0),
                      rod_inertia_x(mass, l), JointType::revolute, axis, parent,
                      parent < 0 ? Vec3(0, 0, 0.3) : Vec3(l, 0, 0));
  }
  m.end_effectors.push_back({"hand", 6, Vec3(l, 0, 0)});
  default_bounds(m, 3.0, 40.0);
  return m;
}

RobotModel make_free_body(double mass, const Vec3& com) {
  RobotModel m;
  add_link(m, "body", mass, com, Vec3(0.1, 0.2, 0.3).asDiagonal(), JointType::floating,
           Vec3::UnitZ(), -1, Vec3::Zero());
  m.end_effectors.push_back({"point", 0, Vec3(0.1, 0, 0)});
  default_bounds(m, 10.0, 100.0);
  return m;
}

RobotModel make_particle(double mass) {
  RobotModel m;
  const Mat3 eps = Mat3::Identity() * 1e-8;
  const int x = add_link(m, "px", 1e-6, Vec3::Zero(), eps, JointType::prismatic, Vec3::UnitX(),
                         -1, Vec3::Zero());
  const int y = add_link(m, "py", 1e-6, Vec3::Zero(), eps, JointType::prismatic, Vec3::UnitY(), x,
                         Vec3::Zero());
  add_link(m, "point", mass, Vec3::Zero(), eps, JointType::prismatic, Vec3::UnitZ(), y,
           Vec3::Zero());
  m.end_effectors.push_back({"point", 2, Vec3::Zero()});
  default_bounds(m, 100.0, 1000.0);
  return m;
}

RobotModel make_biped() {
  RobotModel m;
  const int torso = add_link(m, "torso", 18.0, Vec3(0, 0, 0.05),
                             Vec3(0.35, 0.30, 0.15).asDiagonal(), JointType::floating,
                             Vec3::UnitZ(), -1, Vec3::Zero());
  for (const auto& [side, y0] : {std::pair{"l", 0.1}, std::pair{"r", -0.1}}) {
    const std::string s(side);
    const int thigh =
        add_link(m, s + "_thigh", 3.0, Vec3(0, 0, -0.15), rod_inertia_z(3.0, 0.3),
                 JointType::revolute, Vec3::UnitY(), torso, Vec3(0, y0, -0.1));
    const int shank =
        add_link(m, s + "_shank", 2.0, Vec3(0, 0, -0.15), rod_inertia_z(2.0, 0.3),
                 JointType::revolute, Vec3::UnitY(), thigh, Vec3(0, 0, -0.3));
    const int foot = add_link(m, s + "_foot", 0.8, Vec3(0.02, 0, -0.03),
                              Vec3(0.001, 0.003, 0.003).asDiagonal(), JointType::revolute,
                              Vec3::UnitY(), shank, Vec3(0, 0, -0.3));
    m.end_effectors.push_back({s + "_foot", foot, Vec3(0.02, 0, -0.05)});
  }
  const int upper_arm =
      add_link(m, "upper_arm", 1.5, Vec3(0.125, 0, 0), rod_inertia_x(1.5, 0.25),
               JointType::revolute, Vec3::UnitY(), torso, Vec3(0, 0, 0.25));
  const int forearm =
      add_link(m, "forearm", 1.0, Vec3(0.15, 0, 0), rod_inertia_x(1.0, 0.3),
               JointType::revolute, Vec3::UnitY(), upper_arm, Vec3(0.25, 0, 0));
  m.end_effectors.push_back({"hand", forearm, Vec3(0.3, 0, 0)});

  default_bounds(m, 4.0, 80.0);
  // Striking-arm hardware limits: tighter than the legs so the impact
  // constraints, not the leg geometry, decide the feasible speed.
  const int sh = m.dof_index(m.link_index("upper_arm"));
  const int el = m.dof_index(m.link_index("forearm"));
  m.qd_min[sh] = -3.0;
  m.qd_max[sh] = 3.0;
  m.qd_min[el] = -3.0;
  m.qd_max[el] = 3.0;
  m.dtau_min[sh] = -46.0;
  m.dtau_max[sh] = 46.0;
  m.dtau_min[el] = -42.85;
  m.dtau_max[el] = 42.85;
  return m;
}

RobotState biped_standing_state(const RobotModel& biped) {
  RobotState s = RobotState::zero(biped);
  const double hip = -0.2, knee = 0.4, ankle = -0.2;
  // sole height below torso origin: 0.1 + 0.3cos(0.2) + 0.3cos(0.2) + 0.05
  const double h = 0.1 + 0.6 * std::cos(0.2) + 0.05;
  s.q[2] = h;
  auto set_joint = [&](const std::string& link, double v) {
    const int dof = biped.dof_index(biped.link_index(link));
    s.q[7 + (dof - 6)] = v;
  };
  for (const std::string side : {"l", "r"}) {
    set_joint(side + "_thigh", hip);
    set_joint(side + "_shank", knee);
    set_joint(side + "_foot", ankle);
  }
  // Bent striking arm: keeps the hand's forward (x) motion away from the
  // stretched-arm singularity.
  set_joint("upper_arm", -0.6);
  set_joint("forearm", 1.2);
  return s;
}

}  // namespace iwbc
