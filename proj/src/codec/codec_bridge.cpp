#include "datakit/codec/codec_bridge.hpp"

#include <algorithm>
#include <cmath>

extern "C" {
#include <libavutil/opt.h>
}

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "datakit/codec/av_util.hpp"
#include "datakit/core/cv_bridge.hpp"
#include "datakit/core/error.hpp"
#include "datakit/core/image_io.hpp"

namespace datakit::codec {

namespace {

using Packets = std::vector<std::vector<std::uint8_t>>;

const AVCodec* find_encoder(Codec c) {
  const auto name = std::string(encoder_name(c));
  const AVCodec* enc = avcodec_find_encoder_by_name(name.c_str());
  if (!enc) throw CodecError("encoder " + name + " is not available in this libavcodec build");
  return enc;
}

void set_opt(AVCodecContext* ctx, const char* key, const std::string& value) {
  av::check(av_opt_set(ctx->priv_data, key, value.c_str(), 0), std::string("setting encoder option ") + key);
}

/// AVIF quality factor to an AV1 quantizer, using avifenc's mapping.
int avif_quantizer(int quality) { return static_cast<int>(std::lround((100 - quality) * 63.0 / 100.0)); }

void configure(AVCodecContext* ctx, const CompressionSpec& spec) {
  switch (spec.codec) {
    case Codec::mpeg2:
    case Codec::mpeg4:
      ctx->flags |= AV_CODEC_FLAG_QSCALE;
      ctx->global_quality = FF_QP2LAMBDA * spec.quality;
      break;
    case Codec::h264:
      set_opt(ctx, "preset", std::string(to_string(spec.preset)));
      set_opt(ctx, "crf", std::to_string(spec.quality));
      break;
    case Codec::h265:
      set_opt(ctx, "preset", std::string(to_string(spec.preset)));
      set_opt(ctx, "crf", std::to_string(spec.quality));
      set_opt(ctx, "x265-params", "log-level=error:pools=none:frame-threads=1");
      break;
    case Codec::avif:
      ctx->bit_rate = 0;
      set_opt(ctx, "crf", std::to_string(avif_quantizer(spec.quality)));
      set_opt(ctx, "cpu-used", std::to_string(spec.speed));
      set_opt(ctx, "lag-in-frames", "0");
      break;
    case Codec::webp:
      set_opt(ctx, "quality", std::to_string(spec.quality));
      set_opt(ctx, "lossless", "0");
      ctx->compression_level = spec.speed;
      break;
    case Codec::jpeg: break;
  }
}

Packets encode_one_frame(const RasterImage& img, const CompressionSpec& spec, AVPixelFormat pix_fmt) {
  av::quiet_logging();
  const AVCodec* enc = find_encoder(spec.codec);
  auto ctx = av::alloc_context(enc);
  ctx->width = img.width();
  ctx->height = img.height();
  ctx->pix_fmt = pix_fmt;
  ctx->time_base = AVRational{1, 25};
  ctx->framerate = AVRational{25, 1};
  ctx->thread_count = 1;
  ctx->gop_size = 1;
  configure(ctx.get(), spec);
  av::check(avcodec_open2(ctx.get(), enc, nullptr), "opening encoder " + std::string(encoder_name(spec.codec)));

  auto frame = av::rgb_to_frame(img, pix_fmt);
  frame->pts = 0;
  if (ctx->flags & AV_CODEC_FLAG_QSCALE) frame->quality = ctx->global_quality;

  Packets packets;
  auto pkt = av::alloc_packet();
  auto drain = [&] {
    for (;;) {
      const int ret = avcodec_receive_packet(ctx.get(), pkt.get());
      if (ret == AVERROR(EAGAIN) || ret == AVERROR_EOF) return;
      av::check(ret, "receiving encoded packet");
      packets.emplace_back(pkt->data, pkt->data + pkt->size);
      av_packet_unref(pkt.get());
    }
  };
  av::check(avcodec_send_frame(ctx.get(), frame.get()), "sending frame to encoder");
  drain();
  av::check(avcodec_send_frame(ctx.get(), nullptr), "flushing encoder");
  drain();
  if (packets.empty()) throw CodecError("encoder produced no packet");
  return packets;
}

RasterImage decode_one_frame(const Packets& packets, AVCodecID id) {
  av::quiet_logging();
  const AVCodec* dec = avcodec_find_decoder(id);
  if (!dec) throw CodecError(std::string("no decoder for ") + avcodec_get_name(id));
  auto ctx = av::alloc_context(dec);
  ctx->thread_count = 1;
  av::check(avcodec_open2(ctx.get(), dec, nullptr), std::string("opening decoder ") + dec->name);

  auto frame = av::alloc_frame();
  auto pkt = av::alloc_packet();
  std::optional<RasterImage> first;
  auto drain = [&] {
    for (;;) {
      const int ret = avcodec_receive_frame(ctx.get(), frame.get());
      if (ret == AVERROR(EAGAIN) || ret == AVERROR_EOF) return;
      av::check(ret, "receiving decoded frame");
      if (!first) first = av::frame_to_rgb(*frame);
      av_frame_unref(frame.get());
    }
  };
  for (const auto& bytes : packets) {
    av::check(av_new_packet(pkt.get(), static_cast<int>(bytes.size())), "allocating packet");
    std::copy(bytes.begin(), bytes.end(), pkt->data);
    av::check(avcodec_send_packet(ctx.get(), pkt.get()), "sending packet to decoder");
    av_packet_unref(pkt.get());
    drain();
  }
  av::check(avcodec_send_packet(ctx.get(), nullptr), "flushing decoder");
  drain();
  if (!first) throw CodecError("decoder produced no frame");
  return std::move(*first);
}

AVCodecID decoder_id(Codec c) {
  switch (c) {
    case Codec::mpeg2: return AV_CODEC_ID_MPEG2VIDEO;
    case Codec::mpeg4: return AV_CODEC_ID_MPEG4;
    case Codec::h264: return AV_CODEC_ID_H264;
    case Codec::h265: return AV_CODEC_ID_HEVC;
    case Codec::avif: return AV_CODEC_ID_AV1;
    case Codec::webp: return AV_CODEC_ID_WEBP;
    case Codec::jpeg: return AV_CODEC_ID_MJPEG;
  }
  return AV_CODEC_ID_NONE;
}

}  // namespace

bool ToolInfo::supports(Codec c) const noexcept {
  return std::find(supported_codecs.begin(), supported_codecs.end(), c) != supported_codecs.end();
}

std::string_view encoder_name(Codec c) noexcept {
  switch (c) {
    case Codec::jpeg: return "mjpeg";
    case Codec::webp: return "libwebp";
    case Codec::avif: return "libaom-av1";
    case Codec::mpeg2: return "mpeg2video";
    case Codec::mpeg4: return "mpeg4";
    case Codec::h264: return "libx264";
    case Codec::h265: return "libx265";
  }
  return "";
}

ToolInfo probe_tooling(const EncoderLookup& lookup) {
  ToolInfo info;
  info.tool_version = av::version_string();
  for (auto c : kAllCodecs) {
    // JPEG goes through OpenCV's libjpeg and needs nothing from libav.
    if (c == Codec::jpeg || lookup(encoder_name(c))) info.supported_codecs.push_back(c);
  }
  return info;
}

ToolInfo probe_tooling() {
  return probe_tooling([](std::string_view name) {
    return avcodec_find_encoder_by_name(std::string(name).c_str()) != nullptr;
  });
}

RasterImage pad_even(const RasterImage& img, int min_size) {
  const int w = std::max(min_size, img.width() + (img.width() & 1));
  const int h = std::max(min_size, img.height() + (img.height() & 1));
  if (w == img.width() && h == img.height()) return img;
  cv::Mat padded;
  cv::copyMakeBorder(as_mat(img), padded, 0, h - img.height(), 0, w - img.width(), cv::BORDER_REPLICATE);
  return raster_from_mat(padded);
}

std::vector<std::uint8_t> encode_image_codec(const RasterImage& img, const CompressionSpec& spec) {
  if (!is_image_codec(spec.codec)) throw RangeError("not an image codec: " + std::string(to_string(spec.codec)));
  validate(spec);
  switch (spec.codec) {
    case Codec::jpeg: return encode_image(img, ImageFormat::jpeg, spec.quality);
    case Codec::webp: {
      // libwebp takes packed BGRA and does its own RGB->YUV conversion.
      auto packets = encode_one_frame(img, spec, AV_PIX_FMT_RGB32);
      return std::move(packets.front());
    }
    case Codec::avif: {
      auto packets = encode_one_frame(pad_even(img), spec, AV_PIX_FMT_YUV420P);
      std::vector<std::uint8_t> out;
      for (auto& p : packets) out.insert(out.end(), p.begin(), p.end());
      return out;
    }
    default: break;
  }
  throw RangeError("unreachable codec");
}

RasterImage decode_image_codec(const std::vector<std::uint8_t>& bytes, const CompressionSpec& spec, int width,
                               int height) {
  switch (spec.codec) {
    case Codec::jpeg:
    case Codec::webp: {
      auto out = decode_image(bytes);
      if (out.width() != width || out.height() != height) throw CodecError("decoded dimensions differ");
      return out;
    }
    case Codec::avif: {
      auto full = decode_one_frame({bytes}, AV_CODEC_ID_AV1);
      return crop(full, 0, 0, width, height);
    }
    default: break;
  }
  throw RangeError("not an image codec: " + std::string(to_string(spec.codec)));
}

RasterImage roundtrip_image_codec(const RasterImage& img, const CompressionSpec& spec) {
  const auto bytes = encode_image_codec(img, spec);
  return decode_image_codec(bytes, spec, img.width(), img.height());
}

RasterImage roundtrip_video_codec(const RasterImage& img, const CompressionSpec& spec) {
  if (!is_video_codec(spec.codec)) throw RangeError("not a video codec: " + std::string(to_string(spec.codec)));
  validate(spec);
  const auto padded = pad_even(img);
  const auto packets = encode_one_frame(padded, spec, AV_PIX_FMT_YUV420P);
  const auto decoded = decode_one_frame(packets, decoder_id(spec.codec));
  if (decoded.width() != padded.width() || decoded.height() != padded.height()) {
    throw CodecError("decoded frame size differs from encoded size");
  }
  return crop(decoded, 0, 0, img.width(), img.height());
}

RasterImage roundtrip(const RasterImage& img, const CompressionSpec& spec) {
  return is_image_codec(spec.codec) ? roundtrip_image_codec(img, spec) : roundtrip_video_codec(img, spec);
}

}  // namespace datakit::codec
