#pragma once

// Thin RAII layer over the libav* C API shared by the codec bridge and the
// frame prober.

#include <memory>
#include <string>

extern "C" {
#include <libavcodec/avcodec.h>
#include <libavformat/avformat.h>
#include <libavutil/frame.h>
#include <libswscale/swscale.h>
}

#include "datakit/core/image.hpp"

namespace datakit::av {

struct CodecContextDeleter {
  void operator()(AVCodecContext* c) const noexcept { avcodec_free_context(&c); }
};
struct FrameDeleter {
  void operator()(AVFrame* f) const noexcept { av_frame_free(&f); }
};
struct PacketDeleter {
  void operator()(AVPacket* p) const noexcept { av_packet_free(&p); }
};
struct SwsDeleter {
  void operator()(SwsContext* s) const noexcept { sws_freeContext(s); }
};
struct InputFormatDeleter {
  void operator()(AVFormatContext* f) const noexcept { avformat_close_input(&f); }
};

using CodecContextPtr = std::unique_ptr<AVCodecContext, CodecContextDeleter>;
using FramePtr = std::unique_ptr<AVFrame, FrameDeleter>;
using PacketPtr = std::unique_ptr<AVPacket, PacketDeleter>;
using SwsPtr = std::unique_ptr<SwsContext, SwsDeleter>;
using InputFormatPtr = std::unique_ptr<AVFormatContext, InputFormatDeleter>;

/// Silences libav/x264/x265 informational logging once per process.
void quiet_logging();

std::string error_string(int errnum);
/// Throws CodecError with `what` and the libav message when `ret` < 0.
void check(int ret, const std::string& what);

FramePtr alloc_frame();
PacketPtr alloc_packet();
CodecContextPtr alloc_context(const AVCodec* codec);

/// Converts RGB into a newly allocated frame of `format`.
FramePtr rgb_to_frame(const RasterImage& img, AVPixelFormat format);
/// Converts any decoded frame to 8-bit RGB.
RasterImage frame_to_rgb(const AVFrame& frame);

/// libav version banner, e.g. "libavcodec 58.134.100 (FFmpeg 4.4.2)".
std::string version_string();

}  // namespace datakit::av
