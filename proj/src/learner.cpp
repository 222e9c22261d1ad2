#include "dyntdd/learner.hpp"

#include <algorithm>
#include <cmath>

#include "dyntdd/errors.hpp"

namespace dyntdd {

LearningRates learning_rates(long n, const RateSchedule& schedule) {
  if (n < 1) throw ContractViolation("learning rates: iteration must be >= 1");
  return {std::pow(static_cast<double>(n), -schedule.alpha_exponent),
          std::pow(static_cast<double>(n), -schedule.zeta_exponent)};
}

std::vector<double> gibbs_distribution(std::span<const double> costs, double beta) {
  if (!(beta > 0.0)) throw ContractViolation("gibbs: beta must be > 0");
  if (costs.empty()) throw ContractViolation("gibbs: empty cost vector");
  double min_cost = costs[0];
  for (double c : costs) {
    if (!std::isfinite(c)) throw ContractViolation("gibbs: costs must be finite");
    min_cost = std::min(min_cost, c);
  }
  // shifting by the minimum is exact algebra and keeps the exponents <= 0
  std::vector<double> out(costs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    out[i] = std::exp(-beta * (costs[i] - min_cost));
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

LearnerState make_learner(int num_actions, double beta) {
  if (num_actions < 1) throw ContractViolation("learner: need at least one action");
  if (!(beta > 0.0)) throw ContractViolation("learner: beta must be > 0");
  LearnerState state;
  state.cost_estimates.assign(num_actions, 0.0);
  state.strategy.assign(num_actions, 1.0 / num_actions);
  state.beta = beta;
  return state;
}

void update_cost_estimate(LearnerState& state, int action, double observed_cost,
                          double alpha) {
  if (action < 0 || action >= state.num_actions())
    throw ContractViolation("estimate update: action out of range");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ContractViolation("estimate update: alpha must be in (0, 1]");
  if (!std::isfinite(observed_cost))
    throw ContractViolation("estimate update: observed cost must be finite");
  double& estimate = state.cost_estimates[action];
  estimate += alpha * (observed_cost - estimate);
}

void update_strategy(LearnerState& state, double zeta) {
  if (!(zeta > 0.0) || zeta > 1.0)
    throw ContractViolation("strategy update: zeta must be in (0, 1]");
  const std::vector<double> target = gibbs_distribution(state.cost_estimates, state.beta);
  double sum = 0.0;
  for (int a = 0; a < state.num_actions(); ++a) {
    state.strategy[a] += zeta * (target[a] - state.strategy[a]);
    sum += state.strategy[a];
  }
  for (double& p : state.strategy) p /= sum;  // absorb rounding drift
}

int select_action(std::span<const double> strategy, RandomStream& rng) {
  if (strategy.empty()) throw ContractViolation("select_action: empty strategy");
  double sum = 0.0;
  for (double p : strategy) {
    if (p < 0.0) throw ContractViolation("select_action: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw ContractViolation("select_action: strategy must sum to 1");
  return static_cast<int>(rng.categorical(strategy));
}

int baseline_fixed_switching_point(int wf) {
  if (wf < 1) throw ContractViolation("fixed baseline: wf must be >= 1");
  // nearest to wf/2, ties upward
  return (wf + 1) / 2;
}

int baseline_random_switching_point(int wf, RandomStream& rng) {
  if (wf < 1) throw ContractViolation("random baseline: wf must be >= 1");
  return rng.uniform_int(1, wf);
}

SeriesTrend probe_power_series(double exponent, long terms) {
  if (terms < 100) throw ContractViolation("series probe: need at least 100 terms");
  const long n1 = terms / 100;
  const long n2 = terms / 10;
  double sum = 0.0;
  double s1 = 0.0, s2 = 0.0;
  for (long t = 1; t <= terms; ++t) {
    sum += std::pow(static_cast<double>(t), -exponent);
    if (t == n1) s1 = sum;
    if (t == n2) s2 = sum;
  }
  return {sum, (sum - s2) / (s2 - s1)};
}

ScheduleValidation validate_schedule(const RateSchedule& schedule, long terms) {
  if (!(schedule.alpha_exponent > 0.0) || !(schedule.zeta_exponent > 0.0))
    throw ContractViolation("schedule: exponents must be > 0");

  // decade-increment ratio of sum t^-p tends to 10^(1-p): ~1 or above means
  // the series diverges, clearly below 1 means it converges
  constexpr double kDivergent = 0.995;
  ScheduleValidation v;
  v.cost_steps_diverge =
      probe_power_series(schedule.alpha_exponent, terms).decade_ratio >= kDivergent;
  v.cost_steps_square_summable =
      probe_power_series(2.0 * schedule.alpha_exponent, terms).decade_ratio < kDivergent;
  v.strategy_steps_diverge =
      probe_power_series(schedule.zeta_exponent, terms).decade_ratio >= kDivergent;
  v.strategy_steps_square_summable =
      probe_power_series(2.0 * schedule.zeta_exponent, terms).decade_ratio < kDivergent;

  // zeta/alpha = t^(alpha_exp - zeta_exp) must vanish
  const double gap = schedule.alpha_exponent - schedule.zeta_exponent;
  const double early = std::pow(static_cast<double>(std::max(terms / 1000, 1L)), gap);
  const double late = std::pow(static_cast<double>(terms), gap);
  v.ratio_vanishes = late <= 0.9 * early;
  return v;
}

}  // namespace dyntdd
