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

#ifndef CORVID_CODEC_IO_HPP
#define CORVID_CODEC_IO_HPP

#include <string>
#include <vector>

#include "corvid/annexb.hpp"
#include "corvid/frame.hpp"

namespace corvid {

/// External codec commands. Placeholders {in}, {out} and, for encoding,
/// {gop} are substituted (shell-quoted) before the command runs through
/// the shell. The defaults target the corvid-codec companion tool; any
/// transcoder with equivalent flags can be dropped in via the config file.
struct CodecProfile {
  std::string encode_cmd_template;
  std::string decode_cmd_template;
  int gop_size = 16;
  bool closed_gop = true;

  void validate() const;

  static CodecProfile defaults(const std::string& codec_tool_path);
  static CodecProfile from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Locates the corvid-codec companion binary: $CORVID_CODEC_TOOL, then the
/// directory of the running executable, then PATH. Empty string if not
/// found.
std::string find_codec_tool();

struct CommandResult {
  int exit_code = -1;
  std::string output;  // combined stdout+stderr
};

/// Runs a shell command, capturing combined output. Exit code 127 is how
/// the shell reports a missing binary.
CommandResult run_command(const std::string& command);

/// Encodes a raw `<stem>_<W>x<H>.yuv` file (or whatever the profile's
/// encoder accepts) to an Annex-B stream at out_path, then verifies the
/// GOP structure against the profile. Returns the parsed stream.
Bitstream encode(const std::string& frames_path, const CodecProfile& profile,
                 const std::string& out_path);

/// Decodes an Annex-B file to frames via the profile's decoder, storing
/// the raw output at yuv_out_path. Frame geometry comes from the decoder's
/// `<out>.meta.json` sidecar when present (it is consumed and removed),
/// else from the output filename convention. Content-level errors in a
/// corrupted stream are not failures; only process-level ones are.
std::vector<FramePlane> decode_to_file(const std::string& bitstream_path,
                                       const CodecProfile& profile,
                                       const std::string& yuv_out_path);

/// decode_to_file through a temporary file that is removed afterwards.
std::vector<FramePlane> decode(const std::string& bitstream_path,
                               const CodecProfile& profile);

struct AlignedPair {
  FramePlane original;
  FramePlane corrupted;
  bool placeholder = false;  // corrupted side synthesized (decoder dropped it)
};

/// Pairs decoded originals with decoded corrupted frames by index. Missing
/// corrupted frames are replaced with flagged placeholders so every
/// original frame gets a mask downstream; surplus corrupted frames are
/// dropped. Throws Errc::empty_decode when `corrupted` is empty and
/// Errc::empty_input when `original` is.
std::vector<AlignedPair> align_frames(std::vector<FramePlane> original,
                                      std::vector<FramePlane> corrupted);

}  // namespace corvid

#endif  // CORVID_CODEC_IO_HPP
