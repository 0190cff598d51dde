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

#ifndef PANCAKES_QUADRATURE_HPP
#define PANCAKES_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pancakes/interval.hpp"

namespace pancakes {

// Adaptive 61-point Gauss-Kronrod on [a, b]; infinite limits allowed.
// The integration range is split at every breakpoint inside (a, b) so that
// jump discontinuities of piecewise densities never sit inside a panel.
template <class F>
double integrate(F&& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 double tolerance = 1e-13) {
  if (a == b) return 0.0;
  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, cuts[i], cuts[i + 1], 20, tolerance, &err);
  }
  return total;
}

// Sum of integrals over a union of disjoint pieces.
template <class F>
double integrate_over(F&& f, std::span<const Interval> pieces,
                      double tolerance = 1e-13) {
  double total = 0.0;
  for (const auto& iv : pieces) {
    total += integrate(f, iv.lo, iv.hi, {}, tolerance);
  }
  return total;
}

}  // namespace pancakes

#endif  // PANCAKES_QUADRATURE_HPP
