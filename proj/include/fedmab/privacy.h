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

#ifndef FEDMAB_PRIVACY_H_
#define FEDMAB_PRIVACY_H_

#include <cstdint>

#include "fedmab/rng.h"

namespace fedmab {

// Per-agent Laplace privacy level. The aggregate guarantee reported for a
// run with M agents is M * epsilon.
struct PrivacyParams {
  bool enabled = true;
  double epsilon = 1.0;

  static PrivacyParams Disabled() { return {false, 0.0}; }
  static PrivacyParams WithEpsilon(double eps) { return {true, eps}; }

  // 1/epsilon, or 0 in the noise-free limit.
  double inverse_epsilon() const { return enabled ? 1.0 / epsilon : 0.0; }
  void Validate() const;
};

// One draw from Laplace(0, scale) by inverse CDF from a single open
// uniform. Throws std::invalid_argument for scale <= 0.
double LaplaceSample(double scale, RandomStream& rng);

// Scale 1 / (participants * epsilon * new_samples) of the per-epoch noise.
double EpochNoiseScale(int participants, double epsilon, int64_t new_samples);

// x_hat plus Laplace noise at EpochNoiseScale. `participants` is M, or
// N = ceil(pM) under partial participation. Returns x_hat untouched and
// draws nothing when privacy is disabled.
double PrivatizeEpochMean(double x_hat, int participants,
                          const PrivacyParams& privacy, int64_t new_samples,
                          RandomStream& rng);

// Running private mean over all epochs seen so far. `value` may leave
// [0, 1] because the noise is never clipped.
struct HistoricalPrivateMean {
  double value = 0.0;
  int64_t cumulative_samples = 0;
};

// value' = (S/S_new) value + ((S_new - S)/S_new) y_new. Throws
// std::invalid_argument unless S_new > prev.cumulative_samples.
HistoricalPrivateMean UpdateHistoricalMean(const HistoricalPrivateMean& prev,
                                           int64_t new_cumulative,
                                           double epoch_private_mean);

}  // namespace fedmab

#endif  // FEDMAB_PRIVACY_H_
