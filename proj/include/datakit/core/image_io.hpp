#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "datakit/core/image.hpp"

namespace datakit {

enum class ImageFormat { png, jpeg, webp };

std::string_view to_string(ImageFormat f) noexcept;
ImageFormat image_format_from_string(std::string_view s);

/// Decodes PNG, JPEG or WebP. Grayscale is expanded to RGB, 16-bit samples
/// are reduced to 8 bits and alpha is composited over white.
RasterImage load_image(const std::filesystem::path& path);
RasterImage decode_image(std::span<const std::uint8_t> bytes);

/// Writes `img` in `format`. `quality` is only accepted for lossy formats
/// (JPEG 0-100, WebP 1-100).
void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format,
                std::optional<int> quality = std::nullopt);
std::vector<std::uint8_t> encode_image(const RasterImage& img, ImageFormat format,
                                       std::optional<int> quality = std::nullopt);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace datakit
