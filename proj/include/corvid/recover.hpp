/*
 * Copyright 2026 The Corvid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CORVID_RECOVER_HPP
#define CORVID_RECOVER_HPP

#include <string>
#include <vector>

#include "corvid/frame.hpp"
#include "corvid/mask.hpp"

namespace corvid {

/// The recovery task interface: corrupted frames plus their masks. A
/// learned model can implement the same frames+masks -> frames contract;
/// the baselines here are deterministic references that exercise the
/// benchmark loop. All of them leave unmasked pixels untouched.
struct RecoveryInput {
  std::vector<FramePlane> frames;  // corrupted
  std::vector<ErrorMask> masks;
  std::string clip_id;

  void validate() const;
};

/// Returns the frames unchanged (the no-op lower bound).
std::vector<FramePlane> recover_identity(const RecoveryInput& input);

/// Each masked pixel copies the co-located pixel from the nearest frame
/// (ties to the past) where it is unmasked, within +-search_radius frames.
/// Pixels masked across the whole window fall through to spatial fill.
std::vector<FramePlane> recover_temporal(const RecoveryInput& input,
                                         int search_radius = 8);

/// Diffusion fill: masked pixels iterate to the mean of their available
/// 4-neighbours until the largest change drops below half a gray level or
/// the iteration cap is reached.
std::vector<FramePlane> recover_spatial(const RecoveryInput& input,
                                        int iterations = 200);

}  // namespace corvid

#endif  // CORVID_RECOVER_HPP
