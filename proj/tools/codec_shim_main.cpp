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

// corvid-codec: thin H.264 transcoder used by the default codec profile.
//
//   corvid-codec encode --in clip_320x240.yuv --out clip.264 --gop 16
//   corvid-codec decode --in clip.264 --out frames.yuv
//
// encode reads raw planar yuv420p (frame size from the _<W>x<H>.yuv name or
// --size), produces a closed-GOP Annex-B stream with no B-frames and one
// slice per frame. decode is error-resilient: slice-level damage yields
// concealed frames, never a process failure. It writes raw yuv420p plus an
// <out>.meta.json sidecar {width,height,frames}.

extern "C" {
#include <libavcodec/avcodec.h>
#include <libavformat/avformat.h>
#include <libavutil/imgutils.h>
#include <libavutil/opt.h>
#include <libswscale/swscale.h>
}

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

struct Dims {
  int width = 0;
  int height = 0;
};

bool parse_size(const std::string& text, Dims& dims) {
  return std::sscanf(text.c_str(), "%dx%d", &dims.width, &dims.height) == 2 &&
         dims.width > 0 && dims.height > 0;
}

bool dims_from_name(const std::string& name, Dims& dims) {
  static const std::regex pattern(R"(_(\d+)x(\d+)\.yuv$)");
  std::smatch match;
  if (!std::regex_search(name, match, pattern)) return false;
  dims.width = std::stoi(match[1]);
  dims.height = std::stoi(match[2]);
  return dims.width > 0 && dims.height > 0;
}

[[noreturn]] void die(const std::string& message) {
  std::fprintf(stderr, "corvid-codec: %s\n", message.c_str());
  std::exit(2);
}

int run_encode(const std::string& in_path, const std::string& out_path,
               int gop, int fps, int crf, const std::string& preset,
               const std::string& size) {
  Dims dims;
  if (!size.empty()) {
    if (!parse_size(size, dims)) die("bad --size, expected WxH");
  } else if (!dims_from_name(in_path, dims)) {
    die("cannot infer frame size; name the input <stem>_<W>x<H>.yuv or pass --size");
  }

  std::ifstream in(in_path, std::ios::binary);
  if (!in) die("cannot open " + in_path);

  const AVCodec* codec = avcodec_find_encoder_by_name("libx264");
  if (!codec) die("libx264 encoder not available in this libavcodec build");

  AVCodecContext* ctx = avcodec_alloc_context3(codec);
  ctx->width = dims.width;
  ctx->height = dims.height;
  ctx->time_base = AVRational{1, fps};
  ctx->framerate = AVRational{fps, 1};
  ctx->pix_fmt = AV_PIX_FMT_YUV420P;
  ctx->gop_size = gop;
  ctx->max_b_frames = 0;
  ctx->thread_count = 1;  // byte-reproducible output
  av_opt_set(ctx->priv_data, "preset", preset.c_str(), 0);
  av_opt_set(ctx->priv_data, "crf", std::to_string(crf).c_str(), 0);
  // Closed GOP with a keyframe exactly every `gop` frames, single slice.
  std::string x264_params = "scenecut=0:min-keyint=" + std::to_string(gop);
  av_opt_set(ctx->priv_data, "x264-params", x264_params.c_str(), 0);
  if (avcodec_open2(ctx, codec, nullptr) < 0) die("cannot open encoder");

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) die("cannot open " + out_path + " for writing");

  AVFrame* frame = av_frame_alloc();
  frame->format = ctx->pix_fmt;
  frame->width = ctx->width;
  frame->height = ctx->height;
  if (av_frame_get_buffer(frame, 0) < 0) die("frame alloc failed");
  AVPacket* pkt = av_packet_alloc();

  const int cw = (dims.width + 1) / 2;
  const int ch = (dims.height + 1) / 2;
  std::vector<std::uint8_t> y_plane(std::size_t(dims.width) * dims.height);
  std::vector<std::uint8_t> u_plane(std::size_t(cw) * ch);
  std::vector<std::uint8_t> v_plane(u_plane.size());

  auto drain = [&]() {
    while (avcodec_receive_packet(ctx, pkt) == 0) {
      out.write(reinterpret_cast<const char*>(pkt->data), pkt->size);
      av_packet_unref(pkt);
    }
  };

  std::int64_t index = 0;
  for (;;) {
    in.read(reinterpret_cast<char*>(y_plane.data()),
            static_cast<std::streamsize>(y_plane.size()));
    if (in.gcount() == 0) break;
    if (in.gcount() != static_cast<std::streamsize>(y_plane.size())) {
      die("input is not a whole number of frames");
    }
    in.read(reinterpret_cast<char*>(u_plane.data()),
            static_cast<std::streamsize>(u_plane.size()));
    in.read(reinterpret_cast<char*>(v_plane.data()),
            static_cast<std::streamsize>(v_plane.size()));
    if (!in) die("input is not a whole number of frames");

    if (av_frame_make_writable(frame) < 0) die("frame not writable");
    for (int row = 0; row < dims.height; ++row) {
      std::memcpy(frame->data[0] + std::size_t(row) * frame->linesize[0],
                  y_plane.data() + std::size_t(row) * dims.width, dims.width);
    }
    for (int row = 0; row < ch; ++row) {
      std::memcpy(frame->data[1] + std::size_t(row) * frame->linesize[1],
                  u_plane.data() + std::size_t(row) * cw, cw);
      std::memcpy(frame->data[2] + std::size_t(row) * frame->linesize[2],
                  v_plane.data() + std::size_t(row) * cw, cw);
    }
    frame->pts = index++;
    if (avcodec_send_frame(ctx, frame) < 0) die("encode failed");
    drain();
  }
  if (index == 0) die("no frames in input");
  avcodec_send_frame(ctx, nullptr);
  drain();
  out.flush();
  if (!out) die("short write on " + out_path);

  std::printf("encoded %lld frames %dx%d gop=%d -> %s\n",
              static_cast<long long>(index), dims.width, dims.height, gop,
              out_path.c_str());

  av_packet_free(&pkt);
  av_frame_free(&frame);
  avcodec_free_context(&ctx);
  return 0;
}

int run_decode(const std::string& in_path, const std::string& out_path) {
  AVFormatContext* fmt = nullptr;
  if (avformat_open_input(&fmt, in_path.c_str(), nullptr, nullptr) < 0) {
    die("cannot open input " + in_path);
  }
  if (avformat_find_stream_info(fmt, nullptr) < 0) {
    die("no decodable stream in " + in_path);
  }
  int stream_index =
      av_find_best_stream(fmt, AVMEDIA_TYPE_VIDEO, -1, -1, nullptr, 0);
  if (stream_index < 0) die("no video stream in " + in_path);

  const AVCodec* codec =
      avcodec_find_decoder(fmt->streams[stream_index]->codecpar->codec_id);
  if (!codec) die("decoder unavailable");
  AVCodecContext* ctx = avcodec_alloc_context3(codec);
  avcodec_parameters_to_context(ctx, fmt->streams[stream_index]->codecpar);
  ctx->thread_count = 1;
  // Keep going past slice damage: no strict error checks, conceal what we
  // can, and still emit frames marked corrupt.
  ctx->err_recognition = 0;
  ctx->error_concealment = FF_EC_GUESS_MVS | FF_EC_DEBLOCK;
  ctx->flags |= AV_CODEC_FLAG_OUTPUT_CORRUPT;
  if (avcodec_open2(ctx, codec, nullptr) < 0) die("cannot open decoder");

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) die("cannot open " + out_path + " for writing");

  AVPacket* pkt = av_packet_alloc();
  AVFrame* frame = av_frame_alloc();
  SwsContext* sws = nullptr;
  AVFrame* yuv = nullptr;
  int out_width = 0, out_height = 0;
  std::size_t frames_written = 0;

  auto write_frame = [&](AVFrame* decoded) {
    if (out_width == 0) {
      out_width = decoded->width;
      out_height = decoded->height;
    }
    if (decoded->width != out_width || decoded->height != out_height) {
      return;  // geometry drifted mid-stream; keep the established size
    }
    AVFrame* src = decoded;
    if (decoded->format != AV_PIX_FMT_YUV420P) {
      if (!sws) {
        sws = sws_getContext(out_width, out_height,
                             static_cast<AVPixelFormat>(decoded->format),
                             out_width, out_height, AV_PIX_FMT_YUV420P,
                             SWS_POINT, nullptr, nullptr, nullptr);
        yuv = av_frame_alloc();
        yuv->format = AV_PIX_FMT_YUV420P;
        yuv->width = out_width;
        yuv->height = out_height;
        av_frame_get_buffer(yuv, 0);
      }
      if (!sws) die("cannot convert pixel format");
      sws_scale(sws, decoded->data, decoded->linesize, 0, out_height,
                yuv->data, yuv->linesize);
      src = yuv;
    }
    const int cw = (out_width + 1) / 2;
    const int ch = (out_height + 1) / 2;
    for (int row = 0; row < out_height; ++row) {
      out.write(reinterpret_cast<const char*>(src->data[0] +
                                              std::size_t(row) * src->linesize[0]),
                out_width);
    }
    for (int plane = 1; plane <= 2; ++plane) {
      for (int row = 0; row < ch; ++row) {
        out.write(reinterpret_cast<const char*>(
                      src->data[plane] + std::size_t(row) * src->linesize[plane]),
                  cw);
      }
    }
    ++frames_written;
  };

  while (av_read_frame(fmt, pkt) >= 0) {
    if (pkt->stream_index == stream_index) {
      if (avcodec_send_packet(ctx, pkt) == 0) {
        while (avcodec_receive_frame(ctx, frame) == 0) write_frame(frame);
      }
    }
    av_packet_unref(pkt);
  }
  avcodec_send_packet(ctx, nullptr);
  while (avcodec_receive_frame(ctx, frame) == 0) write_frame(frame);

  out.flush();
  if (!out) die("short write on " + out_path);
  if (frames_written == 0) die("no frames decoded from " + in_path);

  std::ofstream meta(out_path + ".meta.json", std::ios::trunc);
  meta << "{\"width\": " << out_width << ", \"height\": " << out_height
       << ", \"frames\": " << frames_written << "}\n";
  meta.flush();
  if (!meta) die("cannot write meta sidecar");

  std::printf("decoded %zu frames %dx%d -> %s\n", frames_written, out_width,
              out_height, out_path.c_str());

  if (yuv) av_frame_free(&yuv);
  if (sws) sws_freeContext(sws);
  av_packet_free(&pkt);
  av_frame_free(&frame);
  avcodec_free_context(&ctx);
  avformat_close_input(&fmt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  av_log_set_level(AV_LOG_QUIET);

  CLI::App app{"corvid-codec: H.264 encode/decode companion tool"};
  app.require_subcommand(1);

  std::string in_path, out_path, preset = "veryfast", size;
  int gop = 16, fps = 30, crf = 18;

  CLI::App* encode = app.add_subcommand("encode", "raw yuv420p -> Annex-B H.264");
  encode->add_option("--in", in_path, "input .yuv")->required();
  encode->add_option("--out", out_path, "output .264")->required();
  encode->add_option("--gop", gop, "closed GOP size");
  encode->add_option("--fps", fps, "frame rate");
  encode->add_option("--crf", crf, "x264 constant rate factor");
  encode->add_option("--preset", preset, "x264 preset");
  encode->add_option("--size", size, "WxH when not in the filename");

  CLI::App* decode = app.add_subcommand("decode", "Annex-B H.264 -> raw yuv420p");
  decode->add_option("--in", in_path, "input .264")->required();
  decode->add_option("--out", out_path, "output .yuv")->required();

  CLI11_PARSE(app, argc, argv);

  if (encode->parsed()) {
    return run_encode(in_path, out_path, gop, fps, crf, preset, size);
  }
  return run_decode(in_path, out_path);
}
