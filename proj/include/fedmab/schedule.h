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

#ifndef FEDMAB_SCHEDULE_H_
#define FEDMAB_SCHEDULE_H_

#include <cstdint>

#include "fedmab/privacy.h"

namespace fedmab {

enum class ScheduleVariant {
  // Target gap halves every epoch.
  kDoubling,
  // Target gap min_gap^(r/R); reaches min_gap at the last allowed round.
  kFixedRounds,
};

struct ScheduleParams {
  int num_agents = 1;
  int num_arms = 2;
  int64_t horizon = 1;
  PrivacyParams privacy;
  double participation = 1.0;
  ScheduleVariant variant = ScheduleVariant::kDoubling;
  int rounds = 0;         // kFixedRounds only
  double min_gap = 0.0;   // kFixedRounds only; oracle knowledge of Delta

  // N = ceil(p * M), never below 1.
  int participants() const;

  // Sample-size scale A in the thresholds: M, or N under partial
  // participation.
  int effective_agents() const { return participants(); }

  void Validate() const;
};

// Both branches of the max in the cumulative sample target, before
// rounding. `second` is the noise-driven branch; it is 0 without noise.
struct SampleTargetTerms {
  double first = 0.0;
  double second = 0.0;
};

double TargetGap(const ScheduleParams& params, int round);

SampleTargetTerms SampleTarget(const ScheduleParams& params, int round,
                               int active_arms);

// ceil(max(first, second)); the raw value before monotonicity is enforced.
int64_t CumulativeSamples(const ScheduleParams& params, int round,
                          int active_arms);

// Elimination half-width C(r) for an epoch ending at cumulative_samples.
double ConfidenceRadius(const ScheduleParams& params, int round,
                        int64_t cumulative_samples, int active_arms);

struct EpochPlan {
  int round = 0;
  double target_gap = 0.0;
  int64_t cumulative_samples = 0;
  double confidence = 0.0;
  int64_t new_samples = 0;
};

// Produces successive epoch plans, forcing S(r) >= S(r-1) + 1.
class EpochScheduler {
 public:
  explicit EpochScheduler(ScheduleParams params);

  EpochPlan Next(int active_arms);

  const ScheduleParams& params() const { return params_; }
  int rounds_planned() const { return round_; }
  int64_t previous_samples() const { return previous_; }

 private:
  ScheduleParams params_;
  int round_ = 0;
  int64_t previous_ = 0;
};

}  // namespace fedmab

#endif  // FEDMAB_SCHEDULE_H_
