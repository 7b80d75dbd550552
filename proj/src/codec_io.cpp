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

#include "corvid/codec_io.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace corvid {

void CodecProfile::validate() const {
  auto needs = [](const std::string& tmpl, const char* placeholder) {
    return tmpl.find(placeholder) != std::string::npos;
  };
  if (!needs(encode_cmd_template, "{in}") ||
      !needs(encode_cmd_template, "{out}") ||
      !needs(encode_cmd_template, "{gop}")) {
    raise(Errc::bad_config,
          "encode template must contain {in}, {out} and {gop}");
  }
  if (!needs(decode_cmd_template, "{in}") ||
      !needs(decode_cmd_template, "{out}")) {
    raise(Errc::bad_config, "decode template must contain {in} and {out}");
  }
  if (gop_size <= 0) raise(Errc::bad_config, "gop_size must be positive");
}

CodecProfile CodecProfile::defaults(const std::string& codec_tool_path) {
  CodecProfile profile;
  profile.encode_cmd_template = codec_tool_path +
                                " encode --in {in} --out {out} --gop {gop}"
                                " --crf 16 --preset veryfast --fps 30";
  profile.decode_cmd_template = codec_tool_path + " decode --in {in} --out {out}";
  return profile;
}

CodecProfile CodecProfile::from_json_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  CodecProfile profile;
  profile.encode_cmd_template = doc.at("encode_cmd").get<std::string>();
  profile.decode_cmd_template = doc.at("decode_cmd").get<std::string>();
  profile.gop_size = doc.value("gop_size", 16);
  profile.closed_gop = doc.value("closed_gop", true);
  profile.validate();
  return profile;
}

std::string CodecProfile::to_json_text() const {
  nlohmann::json doc = {{"encode_cmd", encode_cmd_template},
                        {"decode_cmd", decode_cmd_template},
                        {"gop_size", gop_size},
                        {"closed_gop", closed_gop}};
  return doc.dump(2);
}

std::string find_codec_tool() {
  if (const char* env = std::getenv("CORVID_CODEC_TOOL")) {
    if (fs::exists(env)) return env;
  }
  std::error_code ec;
  fs::path self = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    fs::path sibling = self.parent_path() / "corvid-codec";
    if (fs::exists(sibling)) return sibling.string();
    // Test binaries live one level below the tool in the build tree.
    fs::path uncle = self.parent_path().parent_path() / "corvid-codec";
    if (fs::exists(uncle)) return uncle.string();
  }
  if (const char* path_env = std::getenv("PATH")) {
    std::string paths(path_env);
    std::size_t begin = 0;
    while (begin <= paths.size()) {
      std::size_t end = paths.find(':', begin);
      if (end == std::string::npos) end = paths.size();
      fs::path candidate = fs::path(paths.substr(begin, end - begin)) / "corvid-codec";
      if (fs::exists(candidate)) return candidate.string();
      begin = end + 1;
    }
  }
  return {};
}

namespace {

std::string shell_quote(const std::string& value) {
  std::string quoted = "'";
  for (char c : value) {
    if (c == '\'') {
      quoted += "'\\''";
    } else {
      quoted += c;
    }
  }
  quoted += "'";
  return quoted;
}

std::string substitute(std::string tmpl,
                       const std::vector<std::pair<std::string, std::string>>&
                           replacements) {
  for (const auto& [placeholder, value] : replacements) {
    std::size_t pos = 0;
    while ((pos = tmpl.find(placeholder, pos)) != std::string::npos) {
      tmpl.replace(pos, placeholder.size(), value);
      pos += value.size();
    }
  }
  return tmpl;
}

}  // namespace

CommandResult run_command(const std::string& command) {
  CommandResult result;
  std::string wrapped = "( " + command + " ) 2>&1";
  std::FILE* pipe = popen(wrapped.c_str(), "r");
  if (!pipe) raise(Errc::io_error, "popen failed for: " + command);
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  int status = pclose(pipe);
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

Bitstream encode(const std::string& frames_path, const CodecProfile& profile,
                 const std::string& out_path) {
  profile.validate();
  if (!fs::exists(frames_path)) {
    raise(Errc::io_error, "encoder input missing: " + frames_path);
  }
  std::string command =
      substitute(profile.encode_cmd_template,
                 {{"{in}", shell_quote(frames_path)},
                  {"{out}", shell_quote(out_path)},
                  {"{gop}", std::to_string(profile.gop_size)}});
  CommandResult run = run_command(command);
  if (run.exit_code == 127) {
    raise(Errc::encoder_unavailable,
          "encoder command not found; install it or point the codec profile "
          "at an available transcoder. Command was: " +
              command);
  }
  if (run.exit_code != 0) {
    raise(Errc::encode_failed, "exit " + std::to_string(run.exit_code) + ": " +
                                   run.output);
  }

  Bitstream stream = load_bitstream(out_path);
  std::vector<NaluSpan> nalus = scan_nalus(stream);
  GopIndex gops = build_gop_index(nalus);
  for (std::size_t g = 0; g + 1 < gops.gops.size(); ++g) {
    if (gops.gops[g].frame_nalus.size() != std::size_t(profile.gop_size)) {
      raise(Errc::encode_failed,
            "encoder produced GOP " + std::to_string(g) + " of " +
                std::to_string(gops.gops[g].frame_nalus.size()) +
                " frames, profile wants " + std::to_string(profile.gop_size));
    }
  }
  if (!gops.gops.empty() &&
      gops.gops.back().frame_nalus.size() > std::size_t(profile.gop_size)) {
    raise(Errc::encode_failed, "tail GOP exceeds configured size");
  }
  return stream;
}

namespace {

struct DecodedMeta {
  int width = 0;
  int height = 0;
  std::size_t frames = 0;
};

// The sidecar is transport between the decode subprocess and this loader,
// not a dataset artifact; it is removed after reading.
std::optional<DecodedMeta> take_meta_sidecar(const std::string& yuv_path) {
  std::string meta_path = yuv_path + ".meta.json";
  std::ifstream in(meta_path);
  if (!in) return std::nullopt;
  nlohmann::json doc;
  in >> doc;
  in.close();
  DecodedMeta meta;
  meta.width = doc.at("width").get<int>();
  meta.height = doc.at("height").get<int>();
  meta.frames = doc.at("frames").get<std::size_t>();
  std::error_code ec;
  fs::remove(meta_path, ec);
  return meta;
}

}  // namespace

std::vector<FramePlane> decode_to_file(const std::string& bitstream_path,
                                       const CodecProfile& profile,
                                       const std::string& yuv_out_path) {
  profile.validate();
  if (!fs::exists(bitstream_path)) {
    raise(Errc::io_error, "decoder input missing: " + bitstream_path);
  }
  std::string command = substitute(profile.decode_cmd_template,
                                   {{"{in}", shell_quote(bitstream_path)},
                                    {"{out}", shell_quote(yuv_out_path)}});
  CommandResult run = run_command(command);
  if (run.exit_code == 127) {
    raise(Errc::decoder_unavailable,
          "decoder command not found. Command was: " + command);
  }
  if (run.exit_code != 0) {
    raise(Errc::decode_failed, "exit " + std::to_string(run.exit_code) + ": " +
                                   run.output);
  }

  int width = 0, height = 0;
  if (auto meta = take_meta_sidecar(yuv_out_path)) {
    width = meta->width;
    height = meta->height;
  } else if (auto dims = dims_from_filename(yuv_out_path)) {
    width = dims->first;
    height = dims->second;
  } else {
    raise(Errc::decode_failed,
          "cannot determine decoded frame size: no meta sidecar and no "
          "_<W>x<H>.yuv naming on " +
              yuv_out_path);
  }
  return read_yuv(yuv_out_path, width, height);
}

std::vector<FramePlane> decode(const std::string& bitstream_path,
                               const CodecProfile& profile) {
  fs::path temp = fs::path(bitstream_path).parent_path() /
                  (fs::path(bitstream_path).stem().string() + ".decode.tmp.yuv");
  std::vector<FramePlane> frames;
  try {
    frames = decode_to_file(bitstream_path, profile, temp.string());
  } catch (...) {
    std::error_code ec;
    fs::remove(temp, ec);
    throw;
  }
  std::error_code ec;
  fs::remove(temp, ec);
  return frames;
}

std::vector<AlignedPair> align_frames(std::vector<FramePlane> original,
                                      std::vector<FramePlane> corrupted) {
  if (original.empty()) raise(Errc::empty_input, "no original frames");
  if (corrupted.empty()) raise(Errc::empty_decode, "no corrupted frames decoded");

  std::vector<AlignedPair> pairs;
  pairs.reserve(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    AlignedPair pair;
    pair.original = std::move(original[i]);
    if (i < corrupted.size()) {
      pair.corrupted = std::move(corrupted[i]);
      if (!pair.original.same_dims(pair.corrupted)) {
        raise(Errc::dimension_mismatch,
              "frame " + std::to_string(i) + " decoded with different size");
      }
    } else {
      pair.corrupted = FramePlane::allocate(pair.original.width,
                                            pair.original.height,
                                            static_cast<int>(i));
      pair.placeholder = true;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace corvid
