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

#ifndef CORVID_CORRUPT_HPP
#define CORVID_CORRUPT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "corvid/annexb.hpp"

namespace corvid {

/// The three-parameter corruption model (P, L, S).
///
/// P = p_num/p_den: of every p_den consecutive frames in a GOP, p_num are
/// picked uniformly without replacement and each loses one byte fragment.
/// L: fractional start position of the removed fragment within the picked
/// frame's slice payload. S: requested fragment size in bytes.
struct CorruptionParams {
  std::uint32_t p_num = 1;   // m
  std::uint32_t p_den = 16;  // l
  double location = 0.4;     // L in [0,1]
  std::uint32_t frag_size = 4096;  // S, bytes
  std::uint64_t seed = 0;
  bool idr_eligible = true;
  bool bernoulli = false;  // per-frame Bernoulli(m/l) instead of exact m per l

  void validate() const;
  std::string p_string() const;  // "m/l"
  /// "(m/l, L, S)" - the conventional branch label.
  std::string branch_id() const;
};

/// One byte-range removal, in coordinates of the original stream.
struct CorruptionRecord {
  std::size_t frame_index = 0;  // global frame number
  std::size_t gop_index = 0;
  std::size_t nalu_index = 0;
  std::size_t removed_offset = 0;
  std::size_t removed_len = 0;    // <= requested_len
  std::size_t requested_len = 0;  // = S
};

/// A selected frame that could not be cut (zero-length payload).
struct SkippedFrame {
  std::size_t frame_index = 0;
  std::size_t gop_index = 0;
  std::size_t nalu_index = 0;
  std::string reason;
};

struct CorruptionLog {
  CorruptionParams params;
  std::vector<CorruptionRecord> records;
  std::vector<SkippedFrame> skipped;
  std::size_t original_len = 0;
  std::size_t corrupted_len = 0;
};

std::string log_to_json(const CorruptionLog& log);
CorruptionLog log_from_json(const std::string& text);

/// Picks the frames to corrupt. Deterministic in (params.seed, GOP index):
/// each GOP draws from its own counter-derived stream, so GOPs can be
/// planned independently and in any order. Returns sorted global frame
/// indices. GOPs longer than p_den are split into consecutive p_den-frame
/// windows; windows (and GOPs) shorter than p_den draw
/// min(p_num, eligible) frames.
std::vector<std::size_t> select_frames(const GopIndex& gop_index,
                                       const std::vector<NaluSpan>& nalus,
                                       const CorruptionParams& params);

struct FragmentPlan {
  std::size_t removed_offset = 0;
  std::size_t removed_len = 0;
};

/// Places the fragment inside the NALU payload:
/// offset = payload_offset + floor(L * payload_len), clamped to leave at
/// least one byte addressable; len = min(S, payload_end - offset). The
/// header byte and neighbouring units are never touched.
/// Throws Errc::zero_payload when payload_len == 0.
FragmentPlan plan_fragment(const NaluSpan& nalu, double location,
                           std::size_t frag_size);

struct CorruptionResult {
  Bitstream stream;
  CorruptionLog log;
};

/// Full model application: parse, select, plan, splice. Throws
/// Errc::no_eligible_frames when the whole stream yields zero selections
/// and allow_passthrough is false; with allow_passthrough the input is
/// returned unchanged with an empty record list.
CorruptionResult apply_corruption(const Bitstream& stream,
                                  const CorruptionParams& params,
                                  bool allow_passthrough = false);

/// Removes the logged ranges from `source` (ranges must be sorted and
/// non-overlapping). Exposed so verification can replay a log.
std::vector<std::uint8_t> splice_out(const std::vector<std::uint8_t>& source,
                                     const std::vector<CorruptionRecord>& records);

}  // namespace corvid

#endif  // CORVID_CORRUPT_HPP
