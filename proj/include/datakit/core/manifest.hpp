#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace datakit {

/// One line of the dataset manifest. Rejected entries describe items that
/// were considered but produced no file (manual rejection or failure).
struct ManifestEntry {
  std::string source_path;
  std::optional<std::string> source_video_id;
  std::optional<std::int64_t> frame_index;
  std::optional<std::string> picture_type;
  std::optional<double> complexity_score;
  std::optional<std::string> scorer_id;
  std::string output_path;
  /// Files emitted alongside output_path for the same item (plan JSON, paired patch).
  std::vector<std::string> extra_outputs;
  bool rescaled_720p = false;
  bool upscaled = false;
  bool rejected = false;
  std::string reject_reason;
  std::optional<std::string> plan_digest;
  std::optional<std::uint64_t> item_index;
  std::optional<std::uint64_t> master_seed;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct ManifestHeader {
  std::string command;
  std::string tool_version;
  nlohmann::json config = nlohmann::json::object();
};

void to_json(nlohmann::json& j, const ManifestEntry& e);
void from_json(const nlohmann::json& j, ManifestEntry& e);

struct Manifest {
  ManifestHeader header;
  std::vector<ManifestEntry> entries;

  std::size_t emitted_count() const;
  std::size_t rejected_count() const;
};

/// Line-delimited JSON writer. The first line is the header; each entry is
/// flushed as soon as it is appended. Appends are serialized internally so
/// several workers may share one writer.
class ManifestWriter {
 public:
  ManifestWriter(const std::filesystem::path& path, const ManifestHeader& header);

  void append(const ManifestEntry& entry);
  std::size_t entry_count() const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::ofstream out_;
  std::size_t count_ = 0;
};

Manifest read_manifest(const std::filesystem::path& path);

}  // namespace datakit
