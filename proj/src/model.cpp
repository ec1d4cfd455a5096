#include "iwbc/model.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace iwbc {

int RobotModel::dof_index(int joint) const {
  int idx = 0;
  for (int i = 0; i < joint; ++i) idx += joints[i].type == JointType::floating ? 6 : 1;
  return idx;
}

int RobotModel::ee_index(const std::string& name) const {
  for (int i = 0; i < num_end_effectors(); ++i)
    if (end_effectors[i].name == name) return i;
  throw std::invalid_argument("unknown end effector: " + name);
}

int RobotModel::link_index(const std::string& name) const {
  for (int i = 0; i < num_links(); ++i)
    if (links[i].name == name) return i;
  throw std::invalid_argument("unknown link: " + name);
}

void RobotModel::validate() const {
  if (links.size() != joints.size())
    throw std::invalid_argument("model: need exactly one joint per link");
  for (size_t i = 0; i < joints.size(); ++i) {
    const auto& j = joints[i];
    if (j.type == JointType::floating && i != 0)
      throw std::invalid_argument("model: floating joint must be the root");
    if (j.parent_link >= static_cast<int>(i))
      throw std::invalid_argument("model: joint parent must precede child (tree order)");
    if (j.type != JointType::floating && std::abs(j.axis.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("model: joint axis must be unit norm: " + j.name);
  }
  for (const auto& l : links) {
    if (!(l.mass > 0.0)) throw std::invalid_argument("model: link mass must be > 0: " + l.name);
    if ((l.inertia - l.inertia.transpose()).norm() > 1e-9)
      throw std::invalid_argument("model: inertia must be symmetric: " + l.name);
    Eigen::SelfAdjointEigenSolver<Mat3> es(l.inertia);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument("model: inertia must be positive definite: " + l.name);
  }
  for (const auto& e : end_effectors)
    if (e.link < 0 || e.link >= num_links())
      throw std::invalid_argument("model: end effector on unknown link: " + e.name);
  const int n = nv();
  auto check_bounds = [&](const Vec& lo, const Vec& hi, const char* what) {
    if (lo.size() != n || hi.size() != n)
      throw std::invalid_argument(std::string("model: ") + what + " bounds must have nv entries");
    for (int i = 0; i < n; ++i)
      if (!(lo[i] < 0.0 && 0.0 < hi[i]))
        throw std::invalid_argument(std::string("model: ") + what +
                                    " bounds must straddle zero componentwise");
  };
  check_bounds(qd_min, qd_max, "velocity");
  check_bounds(dtau_min, dtau_max, "impulsive torque");
}

}  // namespace iwbc
