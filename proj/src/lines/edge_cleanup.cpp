#include "datakit/lines/edge_cleanup.hpp"

#include <deque>
#include <vector>

#include "datakit/core/error.hpp"

namespace datakit::lines {

EdgeMap outlier_filter(const EdgeMap& m, std::size_t threshold) {
  if (threshold < 1) throw RangeError("outlier threshold must be at least 1");
  const int w = m.width();
  const int h = m.height();
  EdgeMap out = m;
  std::vector<std::uint8_t> seen(m.size(), 0);
  std::vector<std::pair<int, int>> component;
  std::deque<std::pair<int, int>> queue;

  for (int sy = 0; sy < h; ++sy) {
    for (int sx = 0; sx < w; ++sx) {
      const auto start = static_cast<std::size_t>(sy) * w + sx;
      if (!m.get(sx, sy) || seen[start]) continue;
      seen[start] = 1;
      component.clear();
      queue.emplace_back(sx, sy);
      while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        component.emplace_back(x, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx;
            const int ny = y + dy;
            if (!m.get_or_false(nx, ny)) continue;
            auto& s = seen[static_cast<std::size_t>(ny) * w + nx];
            if (s) continue;
            s = 1;
            queue.emplace_back(nx, ny);
          }
        }
      }
      if (component.size() < threshold) {
        for (const auto& [x, y] : component) out.set(x, y, false);
      }
    }
  }
  return out;
}

EdgeMap passive_dilate(const EdgeMap& m) {
  EdgeMap out = m;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (m.get(x, y)) continue;
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) n += (dx || dy) && m.get_or_false(x + dx, y + dy);
      }
      if (n >= kPassiveDilateMinNeighbors) out.set(x, y, true);
    }
  }
  return out;
}

EdgeMap passive_dilate(const EdgeMap& m, int passes) {
  if (passes < 0) throw RangeError("dilate passes must be non-negative");
  EdgeMap out = m;
  for (int i = 0; i < passes; ++i) out = passive_dilate(out);
  return out;
}

}  // namespace datakit::lines
