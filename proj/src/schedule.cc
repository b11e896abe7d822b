//
// Copyright 2026 The fedmab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fedmab/schedule.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fedmab {

int ScheduleParams::participants() const {
  // The guard keeps ceil(0.2 * 50) at 10 despite representation error.
  const double n = std::ceil(participation * num_agents - 1e-9);
  return std::max(1, static_cast<int>(n));
}

void ScheduleParams::Validate() const {
  if (num_agents < 1) throw std::invalid_argument("schedule: need M >= 1");
  if (num_arms < 2) throw std::invalid_argument("schedule: need K >= 2");
  if (horizon < 1) throw std::invalid_argument("schedule: need T >= 1");
  if (!(participation > 0.0 && participation <= 1.0)) {
    throw std::invalid_argument("schedule: participation must be in (0, 1]");
  }
  privacy.Validate();
  if (variant == ScheduleVariant::kFixedRounds) {
    if (rounds < 1) throw std::invalid_argument("schedule: need R >= 1");
    if (!(min_gap > 0.0 && min_gap < 1.0)) {
      throw std::invalid_argument("schedule: fixed rounds need 0 < gap < 1");
    }
  }
}

double TargetGap(const ScheduleParams& params, int round) {
  if (round < 1) throw std::invalid_argument("schedule: round must be >= 1");
  if (params.variant == ScheduleVariant::kDoubling) {
    return std::ldexp(1.0, -round);
  }
  return std::pow(params.min_gap,
                  static_cast<double>(round) / params.rounds);
}

namespace {

double ArmLogTerm(const ScheduleParams& p, int round, int arms) {
  const double r = round;
  return std::log(8.0 * arms * r * r * static_cast<double>(p.horizon));
}

}  // namespace

SampleTargetTerms SampleTarget(const ScheduleParams& params, int round,
                               int active_arms) {
  if (active_arms < 1) {
    throw std::invalid_argument("schedule: active set must be nonempty");
  }
  const double a = params.effective_agents();
  const double gap = TargetGap(params, round);
  SampleTargetTerms terms;
  terms.first = 8.0 * ArmLogTerm(params, round, active_arms) / (a * gap * gap);
  terms.second = 8.0 * round *
                 std::sqrt(2.0 * ArmLogTerm(params, round, params.num_arms)) *
                 params.privacy.inverse_epsilon() / (std::pow(a, 1.5) * gap);
  return terms;
}

int64_t CumulativeSamples(const ScheduleParams& params, int round,
                          int active_arms) {
  const SampleTargetTerms terms = SampleTarget(params, round, active_arms);
  const double target = std::max(terms.first, terms.second);
  // Saturate instead of overflowing once the target dwarfs any horizon.
  if (target >= 4.0e18) return static_cast<int64_t>(4.0e18);
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(target)));
}

double ConfidenceRadius(const ScheduleParams& params, int round,
                        int64_t cumulative_samples, int active_arms) {
  if (cumulative_samples < 1) {
    throw std::invalid_argument("schedule: need S(r) >= 1");
  }
  const double a = params.effective_agents();
  const double s = static_cast<double>(cumulative_samples);
  const double sampling =
      std::sqrt(ArmLogTerm(params, round, active_arms) / (2.0 * a * s));
  const double noise = round *
                       std::sqrt(8.0 * ArmLogTerm(params, round, params.num_arms)) *
                       params.privacy.inverse_epsilon() / (std::pow(a, 1.5) * s);
  return sampling + noise;
}

EpochScheduler::EpochScheduler(ScheduleParams params)
    : params_(std::move(params)) {
  params_.Validate();
}

EpochPlan EpochScheduler::Next(int active_arms) {
  EpochPlan plan;
  plan.round = ++round_;
  plan.target_gap = TargetGap(params_, plan.round);
  plan.cumulative_samples = std::max(
      CumulativeSamples(params_, plan.round, active_arms), previous_ + 1);
  plan.confidence = ConfidenceRadius(params_, plan.round,
                                     plan.cumulative_samples, active_arms);
  plan.new_samples = plan.cumulative_samples - previous_;
  previous_ = plan.cumulative_samples;
  return plan;
}

}  // namespace fedmab
