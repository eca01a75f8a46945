#include "datakit/core/random.hpp"

#include <cstring>

#include "datakit/core/digest.hpp"

namespace datakit {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

}  // namespace

void to_json(nlohmann::json& j, const SeedSpec& s) {
  j = nlohmann::json{{"master_seed", s.master_seed}, {"item_index", s.item_index}, {"stage_label", s.stage_label}};
}

void from_json(const nlohmann::json& j, SeedSpec& s) {
  j.at("master_seed").get_to(s.master_seed);
  j.at("item_index").get_to(s.item_index);
  j.at("stage_label").get_to(s.stage_label);
}

RandomStream::result_type RandomStream::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGoldenGamma);
}

double RandomStream::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>((*this)());
  // Rejecting draws below 2^64 mod span leaves a whole number of spans.
  const std::uint64_t threshold = (0 - span) % span;
  std::uint64_t draw;
  do {
    draw = (*this)();
  } while (draw < threshold);
  return lo + static_cast<std::int64_t>(draw % span);
}

RandomStream derive_stream(const SeedSpec& seed) {
  // Length-prefixed encoding keeps (seed, index, label) triples unambiguous.
  std::string material = "datakit-stream-v1";
  put_u64_le(material, seed.master_seed);
  put_u64_le(material, seed.item_index);
  put_u64_le(material, seed.stage_label.size());
  material += seed.stage_label;
  const auto digest = sha256(material);
  std::uint64_t key = 0;
  std::memcpy(&key, digest.data(), sizeof key);
  return RandomStream(key);
}

}  // namespace datakit
