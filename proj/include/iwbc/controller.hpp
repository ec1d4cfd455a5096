#pragma once

#include <map>
#include <optional>
#include <vector>

#include "iwbc/constraints.hpp"
#include "iwbc/contact.hpp"
#include "iwbc/impact.hpp"
#include "iwbc/qp.hpp"
#include "iwbc/tasks.hpp"

namespace iwbc {

struct ImpactConstraintToggles {
  bool joint_velocity = true;
  bool impulsive_torque = true;
  bool cop = true;
  bool friction = true;
  bool zmp = true;

  bool any() const { return joint_velocity || impulsive_torque || cop || friction || zmp; }
};

enum class ZmpSet { feet, feet_plus_hand };

struct ControllerConfig {
  double dt = 0.005;
  double impact_duration = 0.005;
  ImpactConstraintToggles impact_constraints;
  ZmpSet zmp_set = ZmpSet::feet;
  double qdd_bound = 200.0;
  bool row_normalize = false;
  double force_regularization_weight = 1e-6;
};

/// Result of one control step: the commanded acceleration, the contact
/// forces the QP settled on, the impact prediction behind the rows, and
/// diagnostics for logging.
struct ControlStep {
  QpSolution solution;
  Vec qdd;
  std::vector<std::vector<Vec3>> vertex_forces;  ///< per contact, per vertex
  std::vector<Wrench> contact_wrenches;          ///< contact frame, at the ee point
  std::optional<ImpulsePrediction> prediction;
  bool reused_stale_prediction = false;
  std::map<ConstraintLabel, double> min_margin;  ///< per label at the optimum
  double neglected_term_ratio = 0.0;
  std::optional<Vec2> zmp_actual;
  std::optional<Vec2> zmp_under_impact;
};

/// Whole-body QP controller: baseline contact/ZMP rows plus the
/// impact-aware rows when an anticipated impact is configured.
class Controller {
 public:
  Controller(const RobotModel& model, std::vector<ContactSpec> contacts,
             ControllerConfig config);

  /// One control step. `tasks` carries the realized task set for this
  /// step; `impact` the anticipated impact, if any; `external_ee_force`
  /// a measured non-contact force at an end-effector (test-spring wall)
  /// that enters the dynamics rows.
  ControlStep step(const RobotState& state, const std::vector<TaskSpec>& tasks,
                   const std::optional<ImpactSpec>& impact,
                   const std::optional<std::pair<int, Vec3>>& external_ee_force = std::nullopt);

  const std::vector<ContactSpec>& contacts() const { return contacts_; }
  const ControllerConfig& config() const { return config_; }
  int decision_dim() const { return dim_; }
  /// Measured contact wrenches currently assumed by the impact rows
  /// (the previous step's QP forces).
  const std::vector<Wrench>& measured_wrenches() const { return measured_; }
  const SupportPolygon& support() const { return support_; }

 private:
  ControlStep assemble_and_solve(const RobotState& state, const DynamicsData& dyn,
                                 const std::vector<TaskSpec>& tasks,
                                 const std::optional<ImpactSpec>& impact,
                                 const std::optional<std::pair<int, Vec3>>& external_ee_force);

  RobotModel model_;
  std::vector<ContactSpec> contacts_;
  ControllerConfig config_;
  int dim_ = 0;
  std::vector<int> force_offset_;  ///< decision-vector offset per contact
  std::vector<Isometry> contact_pose_;
  SupportPolygon support_;
  std::vector<Wrench> measured_;  ///< contact frame, from the last step
  bool have_measured_ = false;
  std::optional<QpSolution> warm_;
  std::optional<ImpulsePrediction> last_prediction_;
  int consecutive_singular_ = 0;
};

}  // namespace iwbc
