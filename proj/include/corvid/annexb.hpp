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

#ifndef CORVID_ANNEXB_HPP
#define CORVID_ANNEXB_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "corvid/errors.hpp"

namespace corvid {

/// An H.264 Annex-B elementary stream held in memory.
struct Bitstream {
  std::vector<std::uint8_t> bytes;
  std::string source_path;  // optional label for diagnostics
};

Bitstream load_bitstream(const std::string& path);
void save_bitstream(const Bitstream& stream, const std::string& path);

enum class NaluKind { Sps, Pps, SliceIdr, SliceNonIdr, Sei, Aud, Other };

const char* nalu_kind_name(NaluKind kind);

/// Pure classification of nal_unit_type (5 bits) into the kinds the
/// corruption model cares about. Total over 0..31.
constexpr NaluKind classify_nalu(int nal_unit_type) {
  switch (nal_unit_type) {
    case 7: return NaluKind::Sps;
    case 8: return NaluKind::Pps;
    case 5: return NaluKind::SliceIdr;
    case 1: return NaluKind::SliceNonIdr;
    case 6: return NaluKind::Sei;
    case 9: return NaluKind::Aud;
    default: return NaluKind::Other;
  }
}

/// One NAL unit located inside a bitstream. Spans are half-open byte
/// ranges into the original buffer; successive spans tile the stream with
/// no gaps (start code + 1 header byte + payload).
struct NaluSpan {
  std::size_t start_code_offset = 0;
  int start_code_len = 4;  // 3 or 4
  std::size_t header_offset = 0;
  std::size_t payload_offset = 0;
  std::size_t payload_len = 0;
  int forbidden_bit = 0;
  int nal_ref_idc = 0;
  int nal_unit_type = 0;
  NaluKind kind = NaluKind::Other;

  std::size_t payload_end() const { return payload_offset + payload_len; }
  bool is_vcl() const {
    return kind == NaluKind::SliceIdr || kind == NaluKind::SliceNonIdr;
  }
  std::uint8_t header_byte() const {
    return static_cast<std::uint8_t>((forbidden_bit << 7) | (nal_ref_idc << 5) |
                                     nal_unit_type);
  }
};

/// Splits a stream into NAL units. The stream must begin with a 3- or
/// 4-byte start code. Emulation-prevention bytes keep encoded payloads free
/// of start-code patterns, so no unescaping is needed here; any literal
/// start-code pattern found is a unit boundary.
///
/// Throws Errc::no_start_code if the stream is empty or does not begin with
/// a start code, Errc::truncated_nalu if a start code is the final bytes of
/// the stream (no header byte follows).
std::vector<NaluSpan> scan_nalus(const Bitstream& stream);

/// Reassembles the exact original bytes from spans (start codes and header
/// bytes are regenerated from fields, payloads copied from `source`).
std::vector<std::uint8_t> serialize_nalus(const std::vector<NaluSpan>& nalus,
                                          const Bitstream& source);

/// Frame and GOP structure derived from the VCL units. One VCL NALU is one
/// frame; the encoder profile used by the branch builder emits one slice
/// per frame, and multi-slice streams are flagged by
/// count_slice_continuations rather than modeled here.
struct GopIndex {
  struct Gop {
    std::size_t idr_frame_index = 0;          // index into `frames`
    std::vector<std::size_t> frame_nalus;     // indices into the nalu list
  };
  std::vector<Gop> gops;
  std::vector<std::size_t> frames;  // nalu index of every VCL unit, in order

  std::size_t frame_count() const { return frames.size(); }
};

/// Throws Errc::no_idr_found when the stream has no IDR slice, and
/// Errc::stray_vcl_before_idr when non-IDR slices precede the first IDR
/// (the index cannot satisfy its GOP invariants for such streams).
GopIndex build_gop_index(const std::vector<NaluSpan>& nalus);

/// (bytes of VCL payloads) / (total stream bytes), in [0,1].
double payload_fraction(const std::vector<NaluSpan>& nalus);

/// Number of VCL units whose slice header has first_mb_in_slice != 0,
/// i.e. units that continue the previous frame. Nonzero means the
/// one-VCL-per-frame assumption is off for this stream.
std::size_t count_slice_continuations(const Bitstream& stream,
                                      const std::vector<NaluSpan>& nalus);

/// JSON text for the NALU index: an array of
/// {offset, start_code_len, type, kind, payload_len}.
std::string nalu_index_json(const std::vector<NaluSpan>& nalus);

}  // namespace corvid

#endif  // CORVID_ANNEXB_HPP
