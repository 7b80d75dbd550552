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

#ifndef CORVID_ERRORS_HPP
#define CORVID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace corvid {

enum class Errc {
  no_start_code,
  truncated_nalu,
  no_idr_found,
  stray_vcl_before_idr,
  zero_payload,
  no_eligible_frames,
  encoder_unavailable,
  encode_failed,
  decoder_unavailable,
  decode_failed,
  empty_decode,
  dimension_mismatch,
  too_small,
  out_of_range,
  empty_input,
  inventory_mismatch,
  manifest_missing,
  bad_config,
  io_error,
};

const char* errc_name(Errc code);

/// All library failures surface as this exception; code() gives the
/// machine-readable category, what() the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::no_start_code: return "NoStartCode";
    case Errc::truncated_nalu: return "TruncatedNalu";
    case Errc::no_idr_found: return "NoIdrFound";
    case Errc::stray_vcl_before_idr: return "StrayVclBeforeIdr";
    case Errc::zero_payload: return "ZeroPayload";
    case Errc::no_eligible_frames: return "NoEligibleFrames";
    case Errc::encoder_unavailable: return "EncoderUnavailable";
    case Errc::encode_failed: return "EncodeFailed";
    case Errc::decoder_unavailable: return "DecoderUnavailable";
    case Errc::decode_failed: return "DecodeFailed";
    case Errc::empty_decode: return "EmptyDecode";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::too_small: return "TooSmall";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::empty_input: return "EmptyInput";
    case Errc::inventory_mismatch: return "InventoryMismatch";
    case Errc::manifest_missing: return "ManifestMissing";
    case Errc::bad_config: return "BadConfig";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace corvid

#endif  // CORVID_ERRORS_HPP
