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

#include "corvid/corrupt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "corvid/rng.hpp"

namespace corvid {

void CorruptionParams::validate() const {
  if (p_num == 0 || p_den == 0 || p_num > p_den) {
    raise(Errc::bad_config, "corruption probability requires 0 < m <= l, got " +
                                p_string());
  }
  if (location < 0.0 || location > 1.0) {
    raise(Errc::out_of_range,
          "location must be in [0,1], got " + std::to_string(location));
  }
  if (frag_size == 0) {
    raise(Errc::bad_config, "fragment size must be >= 1");
  }
}

std::string CorruptionParams::p_string() const {
  return std::to_string(p_num) + "/" + std::to_string(p_den);
}

std::string CorruptionParams::branch_id() const {
  char loc[32];
  std::snprintf(loc, sizeof(loc), "%g", location);
  return "(" + p_string() + ", " + loc + ", " + std::to_string(frag_size) + ")";
}

std::vector<std::size_t> select_frames(const GopIndex& gop_index,
                                       const std::vector<NaluSpan>& nalus,
                                       const CorruptionParams& params) {
  params.validate();
  std::vector<std::size_t> selected;

  std::size_t frame_base = 0;
  for (std::size_t g = 0; g < gop_index.gops.size(); ++g) {
    const auto& gop = gop_index.gops[g];
    Rng rng = derive_stream(params.seed, g);

    // Eligible frame offsets within this GOP.
    std::vector<std::size_t> eligible;
    eligible.reserve(gop.frame_nalus.size());
    for (std::size_t i = 0; i < gop.frame_nalus.size(); ++i) {
      const NaluSpan& span = nalus[gop.frame_nalus[i]];
      if (!params.idr_eligible && span.kind == NaluKind::SliceIdr) continue;
      eligible.push_back(i);
    }

    if (params.bernoulli) {
      double p = static_cast<double>(params.p_num) / params.p_den;
      for (std::size_t offset : eligible) {
        if (rng.next_double() < p) selected.push_back(frame_base + offset);
      }
    } else {
      // Split the GOP into consecutive l-frame windows and draw exactly m
      // eligible frames per window (clamped to what the window holds).
      std::size_t n = gop.frame_nalus.size();
      for (std::size_t window_start = 0; window_start < n;
           window_start += params.p_den) {
        std::size_t window_end = std::min<std::size_t>(window_start + params.p_den, n);
        std::vector<std::size_t> pool;
        for (std::size_t offset : eligible) {
          if (offset >= window_start && offset < window_end) pool.push_back(offset);
        }
        std::size_t draws = std::min<std::size_t>(params.p_num, pool.size());
        if (draws == 0) continue;
        for (std::size_t k : sample_without_replacement(rng, pool.size(), draws)) {
          selected.push_back(frame_base + pool[k]);
        }
      }
    }
    frame_base += gop.frame_nalus.size();
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

FragmentPlan plan_fragment(const NaluSpan& nalu, double location,
                           std::size_t frag_size) {
  if (nalu.payload_len == 0) {
    raise(Errc::zero_payload, "NALU at byte " +
                                  std::to_string(nalu.start_code_offset) +
                                  " has an empty payload");
  }
  auto shift = static_cast<std::size_t>(
      std::floor(location * static_cast<double>(nalu.payload_len)));
  if (shift >= nalu.payload_len) shift = nalu.payload_len - 1;
  FragmentPlan plan;
  plan.removed_offset = nalu.payload_offset + shift;
  plan.removed_len = std::min<std::size_t>(frag_size, nalu.payload_end() -
                                                          plan.removed_offset);
  return plan;
}

std::vector<std::uint8_t> splice_out(const std::vector<std::uint8_t>& source,
                                     const std::vector<CorruptionRecord>& records) {
  std::vector<std::uint8_t> out;
  std::size_t removed_total = 0;
  for (const auto& record : records) removed_total += record.removed_len;
  out.reserve(source.size() - std::min(removed_total, source.size()));

  std::size_t cursor = 0;
  for (const auto& record : records) {
    if (record.removed_offset < cursor ||
        record.removed_offset + record.removed_len > source.size()) {
      raise(Errc::out_of_range, "corruption record out of order or out of bounds");
    }
    out.insert(out.end(), source.begin() + cursor,
               source.begin() + record.removed_offset);
    cursor = record.removed_offset + record.removed_len;
  }
  out.insert(out.end(), source.begin() + cursor, source.end());
  return out;
}

CorruptionResult apply_corruption(const Bitstream& stream,
                                  const CorruptionParams& params,
                                  bool allow_passthrough) {
  params.validate();
  std::vector<NaluSpan> nalus = scan_nalus(stream);
  GopIndex gops = build_gop_index(nalus);

  std::vector<std::size_t> frames = select_frames(gops, nalus, params);

  // Map each global frame index to its GOP.
  std::vector<std::size_t> gop_of_frame(gops.frame_count());
  std::size_t base = 0;
  for (std::size_t g = 0; g < gops.gops.size(); ++g) {
    for (std::size_t i = 0; i < gops.gops[g].frame_nalus.size(); ++i) {
      gop_of_frame[base + i] = g;
    }
    base += gops.gops[g].frame_nalus.size();
  }

  CorruptionLog log;
  log.params = params;
  log.original_len = stream.bytes.size();

  for (std::size_t frame : frames) {
    std::size_t nalu_index = gops.frames[frame];
    const NaluSpan& span = nalus[nalu_index];
    if (span.payload_len == 0) {
      log.skipped.push_back(
          {frame, gop_of_frame[frame], nalu_index, "zero-length payload"});
      continue;
    }
    FragmentPlan plan = plan_fragment(span, params.location, params.frag_size);
    log.records.push_back({frame, gop_of_frame[frame], nalu_index,
                           plan.removed_offset, plan.removed_len,
                           params.frag_size});
  }

  if (frames.empty() && !allow_passthrough) {
    raise(Errc::no_eligible_frames,
          "corruption selected no frames (params " + params.branch_id() + ")");
  }

  CorruptionResult result;
  result.stream.bytes = splice_out(stream.bytes, log.records);
  result.stream.source_path = stream.source_path;
  log.corrupted_len = result.stream.bytes.size();
  result.log = std::move(log);
  return result;
}

std::string log_to_json(const CorruptionLog& log) {
  nlohmann::json doc;
  doc["params"] = {{"p", log.params.p_string()},
                   {"loc", log.params.location},
                   {"size", log.params.frag_size},
                   {"seed", log.params.seed},
                   {"exclude_idr", !log.params.idr_eligible},
                   {"bernoulli", log.params.bernoulli}};
  doc["original_len"] = log.original_len;
  doc["corrupted_len"] = log.corrupted_len;
  doc["records"] = nlohmann::json::array();
  for (const auto& record : log.records) {
    doc["records"].push_back({{"frame", record.frame_index},
                              {"gop", record.gop_index},
                              {"nalu", record.nalu_index},
                              {"offset", record.removed_offset},
                              {"len", record.removed_len},
                              {"requested", record.requested_len}});
  }
  if (!log.skipped.empty()) {
    doc["skipped"] = nlohmann::json::array();
    for (const auto& skip : log.skipped) {
      doc["skipped"].push_back({{"frame", skip.frame_index},
                                {"gop", skip.gop_index},
                                {"nalu", skip.nalu_index},
                                {"reason", skip.reason}});
    }
  }
  return doc.dump(2);
}

CorruptionLog log_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  CorruptionLog log;
  const auto& params = doc.at("params");
  std::string p = params.at("p").get<std::string>();
  auto slash = p.find('/');
  if (slash == std::string::npos) raise(Errc::bad_config, "bad p field: " + p);
  log.params.p_num = static_cast<std::uint32_t>(std::stoul(p.substr(0, slash)));
  log.params.p_den = static_cast<std::uint32_t>(std::stoul(p.substr(slash + 1)));
  log.params.location = params.at("loc").get<double>();
  log.params.frag_size = params.at("size").get<std::uint32_t>();
  log.params.seed = params.at("seed").get<std::uint64_t>();
  log.params.idr_eligible = !params.value("exclude_idr", false);
  log.params.bernoulli = params.value("bernoulli", false);
  log.original_len = doc.at("original_len").get<std::size_t>();
  log.corrupted_len = doc.at("corrupted_len").get<std::size_t>();
  for (const auto& entry : doc.at("records")) {
    log.records.push_back({entry.at("frame").get<std::size_t>(),
                           entry.at("gop").get<std::size_t>(),
                           entry.at("nalu").get<std::size_t>(),
                           entry.at("offset").get<std::size_t>(),
                           entry.at("len").get<std::size_t>(),
                           entry.at("requested").get<std::size_t>()});
  }
  if (doc.contains("skipped")) {
    for (const auto& entry : doc.at("skipped")) {
      log.skipped.push_back({entry.at("frame").get<std::size_t>(),
                             entry.at("gop").get<std::size_t>(),
                             entry.at("nalu").get<std::size_t>(),
                             entry.at("reason").get<std::string>()});
    }
  }
  return log;
}

}  // namespace corvid
