#include "datakit/core/image_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "datakit/core/cv_bridge.hpp"
#include "datakit/core/error.hpp"

namespace datakit {

namespace {

std::optional<ImageFormat> sniff_format(std::span<const std::uint8_t> b) {
  static constexpr std::uint8_t kPng[] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (b.size() >= 8 && std::memcmp(b.data(), kPng, 8) == 0) return ImageFormat::png;
  if (b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF) return ImageFormat::jpeg;
  if (b.size() >= 12 && std::memcmp(b.data(), "RIFF", 4) == 0 && std::memcmp(b.data() + 8, "WEBP", 4) == 0) {
    return ImageFormat::webp;
  }
  return std::nullopt;
}

// PNG and JPEG carry explicit end markers; OpenCV happily returns a partially
// decoded JPEG for truncated input, so reject missing trailers up front.
void check_complete(ImageFormat fmt, std::span<const std::uint8_t> b) {
  if (fmt == ImageFormat::png) {
    static constexpr std::uint8_t kIend[] = {'I', 'E', 'N', 'D', 0xAE, 0x42, 0x60, 0x82};
    if (b.size() < 8 + 12 || std::memcmp(b.data() + b.size() - 8, kIend, 8) != 0) {
      throw DecodeError("PNG stream is truncated (no IEND chunk)");
    }
  } else if (fmt == ImageFormat::jpeg) {
    // EOI must follow the last start-of-scan marker.
    static constexpr std::uint8_t kSos[] = {0xFF, 0xDA};
    static constexpr std::uint8_t kEoi[] = {0xFF, 0xD9};
    const auto sos = std::find_end(b.begin(), b.end(), std::begin(kSos), std::end(kSos));
    if (sos == b.end() || std::search(sos, b.end(), std::begin(kEoi), std::end(kEoi)) == b.end()) {
      throw DecodeError("JPEG stream is truncated (no EOI marker)");
    }
  } else {
    const std::uint32_t riff = b[4] | (b[5] << 8) | (b[6] << 16) | (static_cast<std::uint32_t>(b[7]) << 24);
    if (static_cast<std::size_t>(riff) + 8 > b.size()) throw DecodeError("WebP stream is truncated");
  }
}

cv::Mat to_8bit(const cv::Mat& m) {
  if (m.depth() == CV_8U) return m;
  cv::Mat out;
  if (m.depth() == CV_16U) {
    m.convertTo(out, CV_8U, 1.0 / 257.0);
  } else {
    throw UnsupportedFormat("unsupported sample depth");
  }
  return out;
}

RasterImage composite_over_white(const cv::Mat& bgra) {
  RasterImage out(bgra.cols, bgra.rows);
  for (int y = 0; y < bgra.rows; ++y) {
    const auto* row = bgra.ptr<cv::Vec4b>(y);
    for (int x = 0; x < bgra.cols; ++x) {
      const int a = row[x][3];
      for (int c = 0; c < 3; ++c) {
        const int v = row[x][2 - c];
        // (v*a + 255*(255-a)) / 255, rounded to nearest.
        out.at(x, y, c) = static_cast<std::uint8_t>((v * a + 255 * (255 - a) + 127) / 255);
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(ImageFormat f) noexcept {
  switch (f) {
    case ImageFormat::png: return "png";
    case ImageFormat::jpeg: return "jpeg";
    case ImageFormat::webp: return "webp";
  }
  return "?";
}

ImageFormat image_format_from_string(std::string_view s) {
  if (s == "png") return ImageFormat::png;
  if (s == "jpeg" || s == "jpg") return ImageFormat::jpeg;
  if (s == "webp") return ImageFormat::webp;
  throw UnsupportedFormat("unknown image format '" + std::string(s) + "'");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
  const auto fmt = sniff_format(bytes);
  if (!fmt) throw UnsupportedFormat("not a PNG, JPEG or WebP stream");
  check_complete(*fmt, bytes);

  const cv::Mat buf(1, static_cast<int>(bytes.size()), CV_8UC1, const_cast<std::uint8_t*>(bytes.data()));
  cv::Mat m = cv::imdecode(buf, cv::IMREAD_UNCHANGED);
  if (m.empty()) throw DecodeError(std::string("failed to decode ") + std::string(to_string(*fmt)) + " stream");
  if (m.cols < 1 || m.rows < 1) throw DecodeError("decoded image has zero dimension");
  m = to_8bit(m);

  cv::Mat rgb;
  switch (m.channels()) {
    case 1: cv::cvtColor(m, rgb, cv::COLOR_GRAY2RGB); break;
    case 3: cv::cvtColor(m, rgb, cv::COLOR_BGR2RGB); break;
    case 4: return composite_over_white(m);
    default: throw UnsupportedFormat("unsupported channel count " + std::to_string(m.channels()));
  }
  return raster_from_mat(rgb);
}

RasterImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_image(const RasterImage& img, ImageFormat format, std::optional<int> quality) {
  std::vector<int> params;
  std::string ext;
  switch (format) {
    case ImageFormat::png:
      if (quality) throw RangeError("PNG is lossless and takes no quality parameter");
      ext = ".png";
      break;
    case ImageFormat::jpeg:
      if (quality && (*quality < 0 || *quality > 100)) {
        throw RangeError("JPEG quality must be in [0, 100], got " + std::to_string(*quality));
      }
      ext = ".jpg";
      params = {cv::IMWRITE_JPEG_QUALITY, quality.value_or(95)};
      break;
    case ImageFormat::webp:
      if (quality && (*quality < 1 || *quality > 100)) {
        throw RangeError("WebP quality must be in [1, 100], got " + std::to_string(*quality));
      }
      ext = ".webp";
      params = {cv::IMWRITE_WEBP_QUALITY, quality.value_or(95)};
      break;
  }
  cv::Mat bgr;
  cv::cvtColor(as_mat(img), bgr, cv::COLOR_RGB2BGR);
  std::vector<std::uint8_t> out;
  if (!cv::imencode(ext, bgr, out, params)) throw IoError("encoder rejected image for " + ext);
  return out;
}

void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format,
                std::optional<int> quality) {
  const auto parent = path.parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw IoError("parent directory does not exist: " + parent.string());
  }
  write_file(path, encode_image(img, format, quality));
}

}  // namespace datakit
