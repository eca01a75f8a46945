#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace datakit::curation {

enum class PictureType { I, P, B };

std::string_view to_string(PictureType t) noexcept;
PictureType picture_type_from_string(std::string_view s);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double seconds() const noexcept { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// One coded frame of a video, in presentation order.
struct FrameRecord {
  std::string video_id;
  std::int64_t frame_index = 0;
  PictureType picture_type = PictureType::I;
  std::int64_t byte_size = 0;
  Rational presentation_timestamp;

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

/// Video identifier derived from a path: the file stem.
std::string video_id_for(const std::filesystem::path& video_path);

/// Decodes every frame and reports its picture type and coded packet size.
/// Throws IoError for a missing file and DecodeError for anything libav
/// cannot open or decode.
std::vector<FrameRecord> probe_frames(const std::filesystem::path& video_path);

/// Output file name for an extracted frame: "<video_id>_f<index, 6 digits>.png".
std::string frame_file_name(std::string_view video_id, std::int64_t frame_index);
/// Inverse of frame_file_name; nullopt for names it did not produce.
std::optional<std::pair<std::string, std::int64_t>> parse_frame_file_name(std::string_view name);

/// Writes one PNG per I-frame into `out_dir` (created if needed) and returns
/// the paths in presentation order.
std::vector<std::filesystem::path> extract_iframes(const std::filesystem::path& video_path,
                                                   const std::filesystem::path& out_dir);

struct FrameSizeReport {
  double mean_i = 0.0;
  double mean_non_i = 0.0;
  double ratio = 0.0;
};

/// Mean coded size of I-frames versus all other frames. Throws
/// InsufficientData unless both classes are present.
FrameSizeReport frame_size_report(const std::vector<FrameRecord>& records);

}  // namespace datakit::curation
