#include "datakit/curation/frames.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <system_error>

#include "datakit/codec/av_util.hpp"
#include "datakit/core/error.hpp"
#include "datakit/core/image_io.hpp"

namespace datakit::curation {

namespace fs = std::filesystem;

namespace {

PictureType classify(AVPictureType t) {
  switch (t) {
    case AV_PICTURE_TYPE_I:
    case AV_PICTURE_TYPE_SI: return PictureType::I;
    case AV_PICTURE_TYPE_B:
    case AV_PICTURE_TYPE_BI: return PictureType::B;
    default: return PictureType::P;
  }
}

using FrameVisitor = std::function<void(const AVFrame&, PictureType, std::int64_t index, AVRational time_base)>;

/// Decodes every video frame of the best video stream in presentation order.
void decode_all(const fs::path& path, const FrameVisitor& visit) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError("no such video file: " + path.string());
  av::quiet_logging();

  AVFormatContext* raw = nullptr;
  if (avformat_open_input(&raw, path.c_str(), nullptr, nullptr) < 0) {
    throw DecodeError("cannot open video container: " + path.string());
  }
  av::InputFormatPtr fmt(raw);
  if (avformat_find_stream_info(fmt.get(), nullptr) < 0) throw DecodeError("no stream info in " + path.string());

  AVCodec* dec = nullptr;  // libavformat 58 takes a non-const pointer here.
  const int stream = av_find_best_stream(fmt.get(), AVMEDIA_TYPE_VIDEO, -1, -1, &dec, 0);
  if (stream < 0 || !dec) throw DecodeError("no decodable video stream in " + path.string());
  const AVStream* st = fmt->streams[stream];

  auto ctx = av::alloc_context(dec);
  if (avcodec_parameters_to_context(ctx.get(), st->codecpar) < 0) throw DecodeError("bad codec parameters");
  ctx->thread_count = 1;
  if (avcodec_open2(ctx.get(), dec, nullptr) < 0) throw DecodeError("cannot open decoder for " + path.string());

  auto pkt = av::alloc_packet();
  auto frame = av::alloc_frame();
  std::int64_t index = 0;
  auto drain = [&] {
    for (;;) {
      const int ret = avcodec_receive_frame(ctx.get(), frame.get());
      if (ret == AVERROR(EAGAIN) || ret == AVERROR_EOF) return;
      if (ret < 0) throw DecodeError("decoding " + path.string() + ": " + av::error_string(ret));
      visit(*frame, classify(frame->pict_type), index++, st->time_base);
      av_frame_unref(frame.get());
    }
  };
  for (;;) {
    const int ret = av_read_frame(fmt.get(), pkt.get());
    if (ret == AVERROR_EOF) break;
    if (ret < 0) throw DecodeError("reading " + path.string() + ": " + av::error_string(ret));
    if (pkt->stream_index == stream) {
      const int sent = avcodec_send_packet(ctx.get(), pkt.get());
      av_packet_unref(pkt.get());
      if (sent < 0) throw DecodeError("decoding " + path.string() + ": " + av::error_string(sent));
      drain();
    } else {
      av_packet_unref(pkt.get());
    }
  }
  avcodec_send_packet(ctx.get(), nullptr);
  drain();
  if (index == 0) throw DecodeError("no frames decoded from " + path.string());
}

}  // namespace

std::string_view to_string(PictureType t) noexcept {
  switch (t) {
    case PictureType::I: return "I";
    case PictureType::P: return "P";
    case PictureType::B: return "B";
  }
  return "?";
}

PictureType picture_type_from_string(std::string_view s) {
  if (s == "I") return PictureType::I;
  if (s == "P") return PictureType::P;
  if (s == "B") return PictureType::B;
  throw ConfigError("unknown picture type: " + std::string(s));
}

std::string video_id_for(const fs::path& video_path) { return video_path.stem().string(); }

std::vector<FrameRecord> probe_frames(const fs::path& video_path) {
  const auto id = video_id_for(video_path);
  std::vector<FrameRecord> records;
  decode_all(video_path, [&](const AVFrame& f, PictureType type, std::int64_t index, AVRational tb) {
    FrameRecord r;
    r.video_id = id;
    r.frame_index = index;
    r.picture_type = type;
    r.byte_size = f.pkt_size;
    const std::int64_t ts = f.best_effort_timestamp == AV_NOPTS_VALUE ? 0 : f.best_effort_timestamp;
    r.presentation_timestamp = {ts * tb.num, tb.den};
    records.push_back(std::move(r));
  });
  return records;
}

std::string frame_file_name(std::string_view video_id, std::int64_t frame_index) {
  char digits[32];
  std::snprintf(digits, sizeof digits, "%06lld", static_cast<long long>(frame_index));
  return std::string(video_id) + "_f" + digits + ".png";
}

std::optional<std::pair<std::string, std::int64_t>> parse_frame_file_name(std::string_view name) {
  constexpr std::string_view kExt = ".png";
  if (name.size() <= kExt.size() || !name.ends_with(kExt)) return std::nullopt;
  name.remove_suffix(kExt.size());
  const auto sep = name.rfind("_f");
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  const auto digits = name.substr(sep + 2);
  std::int64_t index = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || end != digits.data() + digits.size() || digits.size() < 6) return std::nullopt;
  return std::make_pair(std::string(name.substr(0, sep)), index);
}

std::vector<fs::path> extract_iframes(const fs::path& video_path, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  const auto id = video_id_for(video_path);
  std::vector<fs::path> written;
  decode_all(video_path, [&](const AVFrame& f, PictureType type, std::int64_t index, AVRational) {
    if (type != PictureType::I) return;
    auto out = out_dir / frame_file_name(id, index);
    save_image(av::frame_to_rgb(f), out, ImageFormat::png);
    written.push_back(std::move(out));
  });
  return written;
}

FrameSizeReport frame_size_report(const std::vector<FrameRecord>& records) {
  double sum_i = 0.0, sum_other = 0.0;
  std::size_t n_i = 0, n_other = 0;
  for (const auto& r : records) {
    if (r.picture_type == PictureType::I) {
      sum_i += static_cast<double>(r.byte_size);
      ++n_i;
    } else {
      sum_other += static_cast<double>(r.byte_size);
      ++n_other;
    }
  }
  if (n_i == 0 || n_other == 0) {
    throw InsufficientData("insufficient data: frame size report needs both I and non-I frames");
  }
  FrameSizeReport rep;
  rep.mean_i = sum_i / static_cast<double>(n_i);
  rep.mean_non_i = sum_other / static_cast<double>(n_other);
  rep.ratio = rep.mean_i / rep.mean_non_i;
  return rep;
}

}  // namespace datakit::curation
