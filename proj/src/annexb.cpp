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

#include "corvid/annexb.hpp"

#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace corvid {

namespace {

// Offset of the next 00 00 01 pattern at or after `from`, or npos.
std::size_t find_start_code_prefix(const std::vector<std::uint8_t>& bytes,
                                   std::size_t from) {
  if (bytes.size() < 3) return std::string::npos;
  const std::uint8_t* data = bytes.data();
  std::size_t end = bytes.size() - 2;
  for (std::size_t i = from; i < end; ++i) {
    if (data[i] == 0) {
      if (data[i + 1] == 0 && data[i + 2] == 1) return i;
    }
  }
  return std::string::npos;
}

}  // namespace

Bitstream load_bitstream(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_error, "cannot open " + path);
  Bitstream stream;
  stream.source_path = path;
  in.seekg(0, std::ios::end);
  auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  stream.bytes.resize(static_cast<std::size_t>(size));
  if (size > 0 &&
      !in.read(reinterpret_cast<char*>(stream.bytes.data()), size)) {
    raise(Errc::io_error, "short read on " + path);
  }
  return stream;
}

void save_bitstream(const Bitstream& stream, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(stream.bytes.data()),
            static_cast<std::streamsize>(stream.bytes.size()));
  if (!out) raise(Errc::io_error, "short write on " + path);
}

const char* nalu_kind_name(NaluKind kind) {
  switch (kind) {
    case NaluKind::Sps: return "SPS";
    case NaluKind::Pps: return "PPS";
    case NaluKind::SliceIdr: return "SliceIDR";
    case NaluKind::SliceNonIdr: return "SliceNonIDR";
    case NaluKind::Sei: return "SEI";
    case NaluKind::Aud: return "AUD";
    case NaluKind::Other: return "Other";
  }
  return "Other";
}

std::vector<NaluSpan> scan_nalus(const Bitstream& stream) {
  const auto& bytes = stream.bytes;
  if (bytes.empty()) raise(Errc::no_start_code, "empty stream");

  std::size_t first = find_start_code_prefix(bytes, 0);
  if (first == std::string::npos) {
    raise(Errc::no_start_code, "no start code in stream");
  }
  // The stream must begin with the start code: either 00 00 01 at offset 0
  // or 00 00 00 01 (prefix found at offset 1 with a zero byte before it).
  bool begins_ok = first == 0 || (first == 1 && bytes[0] == 0);
  if (!begins_ok) {
    raise(Errc::no_start_code,
          "stream does not begin with a start code (first prefix at byte " +
              std::to_string(first) + ")");
  }

  std::vector<NaluSpan> nalus;
  std::size_t prefix = first;
  while (prefix != std::string::npos) {
    NaluSpan span;
    if (prefix > 0 && bytes[prefix - 1] == 0 &&
        (nalus.empty() || prefix - 1 >= nalus.back().payload_offset)) {
      span.start_code_offset = prefix - 1;
      span.start_code_len = 4;
    } else {
      span.start_code_offset = prefix;
      span.start_code_len = 3;
    }
    span.header_offset = prefix + 3;
    if (span.header_offset >= bytes.size()) {
      raise(Errc::truncated_nalu,
            "start code at byte " + std::to_string(span.start_code_offset) +
                " is the final bytes of the stream");
    }
    std::uint8_t header = bytes[span.header_offset];
    span.forbidden_bit = header >> 7;
    span.nal_ref_idc = (header >> 5) & 0x3;
    span.nal_unit_type = header & 0x1F;
    span.kind = classify_nalu(span.nal_unit_type);
    span.payload_offset = span.header_offset + 1;

    std::size_t next_prefix = find_start_code_prefix(bytes, span.payload_offset);
    std::size_t span_end;
    if (next_prefix == std::string::npos) {
      span_end = bytes.size();
      prefix = std::string::npos;
    } else {
      // A trailing zero byte belongs to the next unit's 4-byte start code,
      // but never steals bytes from before this payload begins.
      span_end = next_prefix;
      if (next_prefix > span.payload_offset && bytes[next_prefix - 1] == 0) {
        span_end = next_prefix - 1;
      }
      prefix = next_prefix;
    }
    span.payload_len = span_end - span.payload_offset;
    nalus.push_back(span);
  }
  return nalus;
}

std::vector<std::uint8_t> serialize_nalus(const std::vector<NaluSpan>& nalus,
                                          const Bitstream& source) {
  std::vector<std::uint8_t> out;
  out.reserve(source.bytes.size());
  for (const NaluSpan& span : nalus) {
    if (span.start_code_len == 4) out.push_back(0);
    out.push_back(0);
    out.push_back(0);
    out.push_back(1);
    out.push_back(span.header_byte());
    if (span.payload_end() > source.bytes.size()) {
      raise(Errc::out_of_range, "span extends past source buffer");
    }
    out.insert(out.end(), source.bytes.begin() + span.payload_offset,
               source.bytes.begin() + span.payload_end());
  }
  return out;
}

GopIndex build_gop_index(const std::vector<NaluSpan>& nalus) {
  GopIndex index;
  for (std::size_t i = 0; i < nalus.size(); ++i) {
    if (nalus[i].is_vcl()) index.frames.push_back(i);
  }
  bool any_idr = false;
  for (std::size_t frame = 0; frame < index.frames.size(); ++frame) {
    const NaluSpan& span = nalus[index.frames[frame]];
    if (span.kind == NaluKind::SliceIdr) {
      any_idr = true;
      index.gops.push_back({frame, {}});
    } else if (!any_idr) {
      raise(Errc::stray_vcl_before_idr,
            "non-IDR slice precedes the first IDR (frame " +
                std::to_string(frame) + ")");
    }
    index.gops.back().frame_nalus.push_back(index.frames[frame]);
  }
  if (!any_idr) raise(Errc::no_idr_found, "stream contains no IDR slice");
  return index;
}

double payload_fraction(const std::vector<NaluSpan>& nalus) {
  if (nalus.empty()) return 0.0;
  std::size_t vcl_bytes = 0;
  for (const NaluSpan& span : nalus) {
    if (span.is_vcl()) vcl_bytes += span.payload_len;
  }
  const NaluSpan& last = nalus.back();
  std::size_t total = last.payload_end() - nalus.front().start_code_offset;
  return total == 0 ? 0.0 : static_cast<double>(vcl_bytes) /
                                static_cast<double>(total);
}

namespace {

// Minimal exp-Golomb reader over the first few payload bytes, with
// emulation-prevention bytes (00 00 03) removed. Enough to read
// first_mb_in_slice; returns npos if the payload is too short.
std::size_t read_first_ue(const std::vector<std::uint8_t>& bytes,
                          const NaluSpan& span) {
  std::uint8_t rbsp[8];
  std::size_t rbsp_len = 0;
  std::size_t zero_run = 0;
  for (std::size_t i = span.payload_offset;
       i < span.payload_end() && rbsp_len < sizeof(rbsp); ++i) {
    std::uint8_t b = bytes[i];
    if (zero_run >= 2 && b == 3) {
      zero_run = 0;
      continue;
    }
    zero_run = (b == 0) ? zero_run + 1 : 0;
    rbsp[rbsp_len++] = b;
  }
  std::size_t bit = 0;
  auto read_bit = [&]() -> int {
    if (bit >= rbsp_len * 8) return -1;
    int value = (rbsp[bit / 8] >> (7 - bit % 8)) & 1;
    ++bit;
    return value;
  };
  int leading_zeros = 0;
  int b = read_bit();
  while (b == 0) {
    ++leading_zeros;
    if (leading_zeros > 31) return std::string::npos;
    b = read_bit();
  }
  if (b < 0) return std::string::npos;
  std::size_t value = 0;
  for (int i = 0; i < leading_zeros; ++i) {
    int bit_value = read_bit();
    if (bit_value < 0) return std::string::npos;
    value = (value << 1) | static_cast<unsigned>(bit_value);
  }
  return ((std::size_t{1} << leading_zeros) - 1) + value;
}

}  // namespace

std::size_t count_slice_continuations(const Bitstream& stream,
                                      const std::vector<NaluSpan>& nalus) {
  std::size_t count = 0;
  for (const NaluSpan& span : nalus) {
    if (!span.is_vcl() || span.payload_len == 0) continue;
    std::size_t first_mb = read_first_ue(stream.bytes, span);
    if (first_mb != std::string::npos && first_mb != 0) ++count;
  }
  return count;
}

std::string nalu_index_json(const std::vector<NaluSpan>& nalus) {
  nlohmann::json array = nlohmann::json::array();
  for (const NaluSpan& span : nalus) {
    array.push_back({{"offset", span.start_code_offset},
                     {"start_code_len", span.start_code_len},
                     {"type", span.nal_unit_type},
                     {"kind", nalu_kind_name(span.kind)},
                     {"payload_len", span.payload_len}});
  }
  return array.dump(2);
}

}  // namespace corvid
