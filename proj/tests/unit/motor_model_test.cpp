#include "prosim/motor_model.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "prosim/error.hpp"

namespace prosim {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent route: solve tau = a + b * w through the two anchor points with
// Cramer's rule and read the stall torque off the intercept.
double two_point_stall_torque(double no_load_rpm, double rated_rpm, double rated_torque) {
  const double w1 = no_load_rpm * 2.0 * kPi / 60.0;
  const double w2 = rated_rpm * 2.0 * kPi / 60.0;
  const double det = 1.0 * w2 - 1.0 * w1;
  const double a = (0.0 * w2 - w1 * rated_torque) / det;
  return a;
}

MotorSpec gripper() { return *builtin_motor_spec("gripper-1271"); }
MotorSpec elbow() { return *builtin_motor_spec("elbow-80838.5"); }

TEST(MotorModelTest, GripperFitMatchesTwoPointLine) {
  const MotorParams p = fit_motor(gripper());
  EXPECT_NEAR(p.no_load_speed, 22.51474735072685, 1e-12);
  EXPECT_NEAR(p.stall_torque, two_point_stall_torque(215, 120, 0.2), 1e-12);
  EXPECT_NEAR(p.stall_torque, 0.45263157894736833, 1e-12);
  EXPECT_NEAR(p.torque_per_ampere, 2.3529411764705883, 1e-12);
}

TEST(MotorModelTest, ElbowFitMatchesTwoPointLine) {
  const MotorParams p = fit_motor(elbow());
  EXPECT_DOUBLE_EQ(p.stall_torque, 0.027);
  EXPECT_NEAR(p.stall_torque, two_point_stall_torque(135, 80, 0.011), 1e-15);
  EXPECT_NEAR(p.torque_per_ampere, 0.095652173913043478, 1e-12);
  EXPECT_NEAR(p.stall_current(), 0.28227272727272729, 1e-12);
}

TEST(MotorModelTest, ZeroRatedSpeedIsTheStallPoint) {
  MotorSpec s = gripper();
  s.rated_speed = 0.0;
  EXPECT_DOUBLE_EQ(fit_motor(s).stall_torque, s.rated_torque);
}

TEST(MotorModelTest, RejectsDegenerateLine) {
  MotorSpec s = gripper();
  s.rated_speed = s.no_load_speed;
  EXPECT_THROW(fit_motor(s), ValidationError);
  s.rated_speed = s.no_load_speed + 1.0;
  EXPECT_THROW(fit_motor(s), ValidationError);
}

TEST(MotorModelTest, RejectsNonPositiveRatings) {
  for (double MotorSpec::*field : {&MotorSpec::nominal_voltage, &MotorSpec::rated_torque,
                                   &MotorSpec::rated_current, &MotorSpec::no_load_speed}) {
    MotorSpec s = gripper();
    s.*field = 0.0;
    EXPECT_THROW(fit_motor(s), ValidationError);
  }
  MotorSpec s = gripper();
  s.rated_speed = -1.0;
  EXPECT_THROW(fit_motor(s), ValidationError);
}

TEST(MotorModelTest, SteadyStateSpeedAnchors) {
  const MotorParams p = fit_motor(gripper());
  EXPECT_NEAR(steady_state_speed(p, 0.0), rpm_to_rad_per_sec(215.0), 1e-12);
  EXPECT_NEAR(steady_state_speed(p, 0.2), rpm_to_rad_per_sec(120.0), 1e-12);
  EXPECT_NEAR(steady_state_speed(p, 0.1), 17.54055898254301, 1e-9);
  EXPECT_EQ(steady_state_speed(p, p.stall_torque), 0.0);
  EXPECT_EQ(steady_state_speed(p, 0.46), 0.0);
  EXPECT_EQ(steady_state_speed(p, 1e9), 0.0);
}

TEST(MotorModelTest, CurrentDraw) {
  const MotorParams p = fit_motor(gripper());
  EXPECT_EQ(current_draw(p, 0.0, true), 0.0);
  EXPECT_NEAR(current_draw(p, 0.2, true), 0.085, 1e-12);
  EXPECT_NEAR(current_draw(p, p.stall_torque, true), 0.19236842105263152, 1e-12);
  EXPECT_NEAR(current_draw(p, 10.0, true), 0.19236842105263152, 1e-12);
  EXPECT_EQ(current_draw(p, 0.2, false), 0.0);

  const MotorParams e = fit_motor(elbow());
  EXPECT_NEAR(current_draw(e, 1.0, true), 0.2822727272727273, 1e-12);
}

TEST(MotorModelTest, AnchorRoundTripOnRandomSpecs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    MotorSpec s;
    s.nominal_voltage = 1.0 + 47.0 * u(rng);
    s.no_load_speed = 10.0 + 5000.0 * u(rng);
    s.rated_speed = s.no_load_speed * (0.05 + 0.9 * u(rng));
    s.rated_torque = 1e-3 + 5.0 * u(rng);
    s.rated_current = 1e-3 + 10.0 * u(rng);
    const MotorParams p = fit_motor(s);
    const AnchorResiduals r = anchor_residuals(s, p);
    EXPECT_LE(r.speed_relative, 1e-9);
    EXPECT_LE(r.current_relative, 1e-9);
    EXPECT_GT(p.stall_torque, s.rated_torque);
  }
}

TEST(MotorModelTest, MonotoneInLoad) {
  const MotorParams p = fit_motor(gripper());
  double prev_w = steady_state_speed(p, 0.0);
  double prev_i = current_draw(p, 0.0, true);
  for (int k = 1; k <= 1000; ++k) {
    const double load = 0.6 * k / 1000.0;
    const double w = steady_state_speed(p, load);
    const double i = current_draw(p, load, true);
    EXPECT_LE(w, prev_w);
    EXPECT_GE(i, prev_i);
    prev_w = w;
    prev_i = i;
  }
}

TEST(MotorModelTest, DoublingTorqueAndCurrentKeepsRelativeSpeed) {
  MotorSpec s = gripper();
  MotorSpec d = s;
  d.rated_torque *= 2.0;
  d.rated_current *= 2.0;
  const MotorParams ps = fit_motor(s);
  const MotorParams pd = fit_motor(d);
  for (double m : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 2.26, 3.0}) {
    EXPECT_NEAR(steady_state_speed(ps, m * s.rated_torque),
                steady_state_speed(pd, m * d.rated_torque), 1e-12);
  }
}

}  // namespace
}  // namespace prosim
