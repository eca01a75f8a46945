#include "datakit/codec/av_util.hpp"

#include <cstring>
#include <mutex>

extern "C" {
#include <libavutil/error.h>
#include <libavutil/imgutils.h>
#include <libavutil/log.h>
}

#include "datakit/core/error.hpp"

namespace datakit::av {

void quiet_logging() {
  static std::once_flag once;
  std::call_once(once, [] { av_log_set_level(AV_LOG_FATAL); });
}

std::string error_string(int errnum) {
  char buf[AV_ERROR_MAX_STRING_SIZE] = {};
  av_strerror(errnum, buf, sizeof buf);
  return buf;
}

void check(int ret, const std::string& what) {
  if (ret < 0) throw CodecError(what + ": " + error_string(ret));
}

FramePtr alloc_frame() {
  FramePtr f(av_frame_alloc());
  if (!f) throw CodecError("av_frame_alloc failed");
  return f;
}

PacketPtr alloc_packet() {
  PacketPtr p(av_packet_alloc());
  if (!p) throw CodecError("av_packet_alloc failed");
  return p;
}

CodecContextPtr alloc_context(const AVCodec* codec) {
  CodecContextPtr c(avcodec_alloc_context3(codec));
  if (!c) throw CodecError("avcodec_alloc_context3 failed");
  return c;
}

FramePtr rgb_to_frame(const RasterImage& img, AVPixelFormat format) {
  auto frame = alloc_frame();
  frame->format = format;
  frame->width = img.width();
  frame->height = img.height();
  check(av_frame_get_buffer(frame.get(), 0), "av_frame_get_buffer");

  // swscale's SIMD paths need aligned rows, so stage RGB in a padded frame.
  auto rgb = alloc_frame();
  rgb->format = AV_PIX_FMT_RGB24;
  rgb->width = img.width();
  rgb->height = img.height();
  check(av_frame_get_buffer(rgb.get(), 0), "av_frame_get_buffer");
  const std::size_t row = static_cast<std::size_t>(img.width()) * 3;
  for (int y = 0; y < img.height(); ++y) std::memcpy(rgb->data[0] + y * rgb->linesize[0], img.data() + y * row, row);

  SwsPtr sws(sws_getContext(img.width(), img.height(), AV_PIX_FMT_RGB24, img.width(), img.height(), format,
                            SWS_BICUBIC, nullptr, nullptr, nullptr));
  if (!sws) throw CodecError("sws_getContext failed for RGB input");
  sws_scale(sws.get(), rgb->data, rgb->linesize, 0, img.height(), frame->data, frame->linesize);
  return frame;
}

RasterImage frame_to_rgb(const AVFrame& frame) {
  if (frame.width < 1 || frame.height < 1) throw DecodeError("decoded frame has zero dimension");
  auto rgb = alloc_frame();
  rgb->format = AV_PIX_FMT_RGB24;
  rgb->width = frame.width;
  rgb->height = frame.height;
  check(av_frame_get_buffer(rgb.get(), 0), "av_frame_get_buffer");

  SwsPtr sws(sws_getContext(frame.width, frame.height, static_cast<AVPixelFormat>(frame.format), frame.width,
                            frame.height, AV_PIX_FMT_RGB24, SWS_BICUBIC, nullptr, nullptr, nullptr));
  if (!sws) throw CodecError("sws_getContext failed for decoded frame");
  sws_scale(sws.get(), frame.data, frame.linesize, 0, frame.height, rgb->data, rgb->linesize);

  RasterImage out(frame.width, frame.height);
  const std::size_t row = static_cast<std::size_t>(frame.width) * 3;
  for (int y = 0; y < frame.height; ++y) std::memcpy(out.data() + y * row, rgb->data[0] + y * rgb->linesize[0], row);
  return out;
}

std::string version_string() {
  const unsigned v = avcodec_version();
  return "libavcodec " + std::to_string(AV_VERSION_MAJOR(v)) + "." + std::to_string(AV_VERSION_MINOR(v)) + "." +
         std::to_string(AV_VERSION_MICRO(v)) + " (FFmpeg " + av_version_info() + ")";
}

}  // namespace datakit::av
