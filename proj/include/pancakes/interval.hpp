//
// Copyright 2026 The pancakes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PANCAKES_INTERVAL_HPP
#define PANCAKES_INTERVAL_HPP

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

namespace pancakes {

/// Closed interval [lo, hi] on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double center() const { return 0.5 * (lo + hi); }
  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(double z) const { return lo <= z && z <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline bool contains_any(std::span<const Interval> set, double z) {
  return std::any_of(set.begin(), set.end(),
                     [z](const Interval& iv) { return iv.contains(z); });
}

inline std::vector<Interval> sorted_by_lo(std::vector<Interval> set) {
  std::sort(set.begin(), set.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return set;
}

// Smallest distance between a point of `a` and a point of `b`; 0 when they
// touch or overlap.
inline double set_distance(std::span<const Interval> a,
                           std::span<const Interval> b) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : a) {
    for (const auto& y : b) {
      double gap = 0.0;
      if (x.hi < y.lo) {
        gap = y.lo - x.hi;
      } else if (y.hi < x.lo) {
        gap = x.lo - y.hi;
      }
      best = std::min(best, gap);
    }
  }
  return best;
}

}  // namespace pancakes

#endif  // PANCAKES_INTERVAL_HPP
