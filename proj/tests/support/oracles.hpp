/* Copyright 2026 The clinet-bench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Reference implementations used to cross-check the library. They favour
// obviousness over speed and share no code with src/.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clinet/autolabel.hpp"
#include "clinet/grid.hpp"

namespace oracle {

// ---- generators -------------------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool Coin(double p = 0.5) { return Uniform(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Distinct random cells on an h x w grid, each present with probability p.
inline std::vector<clinet::Cell> RandomCells(Gen& g, int h, int w, double p) {
  std::vector<clinet::Cell> out;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (g.Coin(p)) out.push_back({i, j});
    }
  }
  return out;
}

inline clinet::LabelGrid GridFromCells(const std::vector<clinet::Cell>& cells, int h1,
                                       int w1, int s = 8) {
  clinet::LabelGrid grid;
  grid.config.h1 = h1;
  grid.config.w1 = w1;
  grid.config.s = s;
  grid.config.h0 = h1 * s;
  grid.config.w0 = w1 * s;
  for (const clinet::Cell& c : cells) {
    clinet::KeyPoint kp;
    kp.cell = c;
    kp.offset = {0.5, 0.5};
    kp.pixel = {(c.j + 0.5) * s, (c.i + 0.5) * s};
    kp.depth_m = 10.0;
    kp.xyz_cam = clinet::Vec3(0.0, 0.0, 10.0);
    grid.keypoints.push_back(kp);
  }
  std::sort(grid.keypoints.begin(), grid.keypoints.end(),
            [](const clinet::KeyPoint& a, const clinet::KeyPoint& b) { return a.cell < b.cell; });
  return grid;
}

// ---- metrics ----------------------------------------------------------------

struct MatchOut {
  std::int64_t tp = 0, fp = 0, fn = 0;
  std::vector<std::pair<clinet::Cell, clinet::Cell>> pairs;  // gt cell, pred cell
};

// Window scan by explicit offsets. A ground-truth cell is a hit when any
// predicted cell is within Chebyshev distance r; a predicted cell is a
// false positive when no hit lies within distance r of it.
inline MatchOut BruteForceMatch(std::vector<clinet::Cell> gt,
                                const std::vector<clinet::Cell>& pred, int h, int w,
                                int n) {
  const int r = n / 2;
  std::set<std::pair<int, int>> occupied;
  for (const auto& c : pred) occupied.insert({c.i, c.j});
  std::sort(gt.begin(), gt.end());
  MatchOut out;
  std::vector<clinet::Cell> hits;
  for (const auto& g : gt) {
    bool found = false;
    clinet::Cell best{};
    int best_d2 = 0;
    for (int di = -r; di <= r; ++di) {
      for (int dj = -r; dj <= r; ++dj) {
        const int i = g.i + di, j = g.j + dj;
        if (i < 0 || j < 0 || i >= h || j >= w) continue;
        if (!occupied.count({i, j})) continue;
        const int d2 = di * di + dj * dj;
        // Offsets are visited row-major, so strict < keeps the first tie.
        if (!found || d2 < best_d2) {
          found = true;
          best = {i, j};
          best_d2 = d2;
        }
      }
    }
    if (found) {
      ++out.tp;
      hits.push_back(g);
      out.pairs.push_back({g, best});
    } else {
      ++out.fn;
    }
  }
  for (const auto& [pi, pj] : occupied) {
    bool covered = false;
    for (const auto& g : hits) {
      if (std::abs(g.i - pi) <= r && std::abs(g.j - pj) <= r) covered = true;
    }
    if (!covered) ++out.fp;
  }
  return out;
}

// ---- losses -----------------------------------------------------------------

inline double ConfLoss(const clinet::Grid& f, const clinet::Grid& fh) {
  double pos = 0.0, neg = 0.0;
  int ne = 0, nd = 0;
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) {
      if (f.at(i, j) == 1.0) {
        pos += (1.0 - fh.at(i, j)) * (1.0 - fh.at(i, j));
        ++ne;
      } else {
        neg += fh.at(i, j) * fh.at(i, j);
        ++nd;
      }
    }
  }
  return (ne ? pos / ne : 0.0) + (nd ? neg / nd : 0.0);
}

inline double OffsetLoss(const clinet::Grid& f, const clinet::Grid& o,
                         const clinet::Grid& oh) {
  double sum = 0.0;
  int ne = 0;
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) {
      if (f.at(i, j) != 1.0) continue;
      ++ne;
      for (int c = 0; c < 2; ++c) sum += std::pow(o.at(i, j, c) - oh.at(i, j, c), 2);
    }
  }
  return ne ? sum / ne : 0.0;
}

inline double DepthLoss(const clinet::Grid& f, const clinet::Grid& z,
                        const clinet::Grid& zh) {
  double sum = 0.0;
  int ne = 0;
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) {
      if (f.at(i, j) != 1.0) continue;
      ++ne;
      sum += std::pow(z.at(i, j) - zh.at(i, j), 2);
    }
  }
  return ne ? sum / ne : 0.0;
}

// ---- thinning / resampling --------------------------------------------------

// Greedy simulation over plain pixel positions: indices of kept points.
inline std::vector<std::size_t> GreedyThin(const std::vector<clinet::Vec2>& px,
                                           double spacing) {
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < px.size(); ++k) {
    if (kept.empty()) {
      kept.push_back(k);
      continue;
    }
    const clinet::Vec2 d = px[k] - px[kept.back()];
    if (std::sqrt(d.x() * d.x() + d.y() * d.y()) >= spacing) kept.push_back(k);
  }
  return kept;
}

inline double PointSegmentDistance(const clinet::Vec3& p, const clinet::Vec3& a,
                                   const clinet::Vec3& b) {
  const clinet::Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - p).norm();
}

inline double PolylineLength(const std::vector<clinet::Vec3>& pts) {
  double total = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) total += (pts[k] - pts[k - 1]).norm();
  return total;
}

}  // namespace oracle
