#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace datakit {

/// Binary mask; true marks a hand-drawn line pixel.
class EdgeMap {
 public:
  EdgeMap(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool get(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v) noexcept { bits_[index(x, y)] = v ? 1 : 0; }
  /// Out-of-range coordinates read as false.
  bool get_or_false(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_ && get(x, y);
  }

  std::size_t count() const noexcept;
  /// Every true pixel of this map is also true in `other`.
  bool subset_of(const EdgeMap& other) const noexcept;

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

 private:
  std::size_t index(int x, int y) const noexcept { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace datakit
