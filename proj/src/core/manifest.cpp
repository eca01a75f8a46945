#include "datakit/core/manifest.hpp"

#include <algorithm>

#include "datakit/core/error.hpp"

namespace datakit {

namespace {

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    v.reset();
  } else {
    v = it->get<T>();
  }
}

}  // namespace

void to_json(nlohmann::json& j, const ManifestEntry& e) {
  j = nlohmann::json::object();
  j["kind"] = "entry";
  j["source_path"] = e.source_path;
  put_optional(j, "source_video_id", e.source_video_id);
  put_optional(j, "frame_index", e.frame_index);
  put_optional(j, "picture_type", e.picture_type);
  put_optional(j, "complexity_score", e.complexity_score);
  put_optional(j, "scorer_id", e.scorer_id);
  j["output_path"] = e.output_path;
  j["extra_outputs"] = e.extra_outputs;
  j["rescaled_720p"] = e.rescaled_720p;
  j["upscaled"] = e.upscaled;
  j["rejected"] = e.rejected;
  j["reject_reason"] = e.reject_reason;
  put_optional(j, "plan_digest", e.plan_digest);
  put_optional(j, "item_index", e.item_index);
  put_optional(j, "master_seed", e.master_seed);
}

void from_json(const nlohmann::json& j, ManifestEntry& e) {
  e.source_path = j.value("source_path", "");
  get_optional(j, "source_video_id", e.source_video_id);
  get_optional(j, "frame_index", e.frame_index);
  get_optional(j, "picture_type", e.picture_type);
  get_optional(j, "complexity_score", e.complexity_score);
  get_optional(j, "scorer_id", e.scorer_id);
  e.output_path = j.value("output_path", "");
  e.extra_outputs = j.value("extra_outputs", std::vector<std::string>{});
  e.rescaled_720p = j.value("rescaled_720p", false);
  e.upscaled = j.value("upscaled", false);
  e.rejected = j.value("rejected", false);
  e.reject_reason = j.value("reject_reason", "");
  get_optional(j, "plan_digest", e.plan_digest);
  get_optional(j, "item_index", e.item_index);
  get_optional(j, "master_seed", e.master_seed);
}

std::size_t Manifest::emitted_count() const {
  std::size_t n = 0;
  for (const auto& e : entries) {
    if (!e.rejected) n += 1 + e.extra_outputs.size();
  }
  return n;
}

std::size_t Manifest::rejected_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.rejected; }));
}

ManifestWriter::ManifestWriter(const std::filesystem::path& path, const ManifestHeader& header)
    : path_(path), out_(path, std::ios::trunc) {
  if (!out_) throw IoError("cannot open manifest " + path.string());
  nlohmann::json h{{"kind", "header"}, {"command", header.command}, {"tool_version", header.tool_version},
                   {"config", header.config}};
  out_ << h.dump() << '\n';
  out_.flush();
}

void ManifestWriter::append(const ManifestEntry& entry) {
  const std::string line = nlohmann::json(entry).dump();
  std::lock_guard lock(mutex_);
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw IoError("manifest write failed: " + path_.string());
  ++count_;
}

std::size_t ManifestWriter::entry_count() const {
  std::lock_guard lock(mutex_);
  return count_;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  Manifest m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DecodeError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    const auto kind = j.value("kind", "entry");
    if (kind == "header") {
      m.header.command = j.value("command", "");
      m.header.tool_version = j.value("tool_version", "");
      m.header.config = j.value("config", nlohmann::json::object());
    } else {
      m.entries.push_back(j.get<ManifestEntry>());
    }
  }
  return m;
}

}  // namespace datakit
