#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

namespace datakit {

/// Identifies one independent random stream: a run-wide master seed, the
/// item being processed and the pipeline stage consuming the draws.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t item_index = 0;
  std::string stage_label;

  SeedSpec with_label(std::string label) const { return {master_seed, item_index, std::move(label)}; }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

void to_json(nlohmann::json& j, const SeedSpec& s);
void from_json(const nlohmann::json& j, SeedSpec& s);

/// Counter-based generator. The key is a SHA-256 digest of the seed triple;
/// draw i is a SplitMix64 finalizer applied to key + i * golden-gamma, so
/// the sequence depends on nothing but the triple.
///
/// Satisfies UniformRandomBitGenerator and can drive <random> distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

RandomStream derive_stream(const SeedSpec& seed);

}  // namespace datakit
