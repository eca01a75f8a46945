#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "datakit/codec/compression_spec.hpp"
#include "datakit/core/image.hpp"

namespace datakit::codec {

/// Encoder availability captured once per run and echoed into manifests.
struct ToolInfo {
  std::string tool_version;
  std::vector<Codec> supported_codecs;

  bool supports(Codec c) const noexcept;
};

/// Answers whether an encoder of the given libav name is usable.
using EncoderLookup = std::function<bool(std::string_view encoder_name)>;

ToolInfo probe_tooling();
/// Same as probe_tooling() but with an injectable availability check.
ToolInfo probe_tooling(const EncoderLookup& lookup);

/// libav encoder name backing a codec ("libx264", "mpeg2video", ...).
std::string_view encoder_name(Codec c) noexcept;

/// Encode-then-decode through JPEG, WebP or AVIF. Dimensions are preserved.
RasterImage roundtrip_image_codec(const RasterImage& img, const CompressionSpec& spec);

/// Encodes `img` as a one-frame MPEG2/MPEG4/H.264/H.265 stream (yuv420p,
/// intra only by construction) and decodes it back. Odd dimensions are
/// padded by edge replication and cropped after decoding.
RasterImage roundtrip_video_codec(const RasterImage& img, const CompressionSpec& spec);

/// Dispatches on spec.codec.
RasterImage roundtrip(const RasterImage& img, const CompressionSpec& spec);

/// Compressed bytes for the image codecs: a JFIF file for JPEG, a RIFF WebP
/// file, or a raw AV1 temporal unit for AVIF.
std::vector<std::uint8_t> encode_image_codec(const RasterImage& img, const CompressionSpec& spec);
RasterImage decode_image_codec(const std::vector<std::uint8_t>& bytes, const CompressionSpec& spec, int width,
                               int height);

/// Edge-replicates `img` to at least (min_width, min_height) and to even size.
RasterImage pad_even(const RasterImage& img, int min_size = 16);

}  // namespace datakit::codec
