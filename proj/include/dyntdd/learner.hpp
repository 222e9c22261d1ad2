#pragma once

// Coupled reinforcement learning of per-action costs and a mixed strategy,
// plus the fixed and random baseline policies.
//
// Each base station keeps a cost estimate per switching point and a mixed
// strategy over them. After frame n (with step sizes alpha = n^-a, zeta =
// n^-z):
//
//   Jhat[played] += alpha * (observed - Jhat[played])
//   pi           += zeta  * (gibbs(Jhat, beta) - pi)
//
// where gibbs(J)[k] ∝ exp(-beta J[k]), computed with a min-shift so large
// beta cannot overflow. Lower estimated cost always gets higher probability;
// beta trades exploration (small) against exploitation (large).

#include <span>
#include <vector>

#include "dyntdd/rng.hpp"

namespace dyntdd {

struct RateSchedule {
  double alpha_exponent = 0.5;  // cost-estimate step n^-alpha_exponent
  double zeta_exponent = 0.65;  // strategy step n^-zeta_exponent
};

struct LearningRates {
  double alpha = 1.0;
  double zeta = 1.0;
};

// n is the 1-based iteration count
LearningRates learning_rates(long n, const RateSchedule& schedule = {});

// exp(-beta (J[k] - min J)) normalized; sums to 1. Entries can underflow to
// exactly 0 when beta * (J[k] - min J) exceeds ~745.
std::vector<double> gibbs_distribution(std::span<const double> costs, double beta);

struct LearnerState {
  std::vector<double> cost_estimates;  // zero-initialized
  std::vector<double> strategy;        // uniform-initialized
  long iteration = 0;                  // completed updates
  double beta = 200.0;
  bool frozen = false;

  int num_actions() const { return static_cast<int>(strategy.size()); }
};

LearnerState make_learner(int num_actions, double beta);

// Moves only the played action's estimate toward the observation.
void update_cost_estimate(LearnerState& state, int action, double observed_cost,
                          double alpha);

// Convex step from the current strategy toward gibbs(cost_estimates, beta);
// renormalized so the simplex survives rounding drift.
void update_strategy(LearnerState& state, double zeta);

// Categorical sample; returns a 0-based index into the strategy.
int select_action(std::span<const double> strategy, RandomStream& rng);

// Switching point closest to half the frame, ties upward.
int baseline_fixed_switching_point(int wf);

// Uniform over 1..wf, fresh draw per call.
int baseline_random_switching_point(int wf, RandomStream& rng);

// Empirical check of the step-size conditions: both step sums must diverge,
// both squared-step sums must converge, and zeta/alpha must vanish. Judged
// from partial-sum trends: the ratio of successive decade increments of
// sum t^-p tends to 10^(1-p), so a ratio below ~1 signals convergence.
struct ScheduleValidation {
  bool cost_steps_diverge = false;
  bool cost_steps_square_summable = false;
  bool strategy_steps_diverge = false;
  bool strategy_steps_square_summable = false;
  bool ratio_vanishes = false;

  bool compliant() const {
    return cost_steps_diverge && cost_steps_square_summable &&
           strategy_steps_diverge && strategy_steps_square_summable &&
           ratio_vanishes;
  }
};

ScheduleValidation validate_schedule(const RateSchedule& schedule,
                                     long terms = 1000000);

struct SeriesTrend {
  double partial_sum = 0.0;
  double decade_ratio = 0.0;  // (S(n) - S(n/10)) / (S(n/10) - S(n/100))
};
SeriesTrend probe_power_series(double exponent, long terms);

}  // namespace dyntdd
