// Copyright 2026 The sketchsynth Authors.
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

#include "sketchsynth/geomap.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sketchsynth/error.h"

namespace sketchsynth {

namespace {

constexpr double kEps = 1e-9;

double Cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool OnSegment(Point a, Point b, Point p) {
  if (std::abs(Cross(a, b, p)) > kEps * std::max(1.0, std::hypot(b.x - a.x, b.y - a.y))) {
    return false;
  }
  return p.x >= std::min(a.x, b.x) - kEps && p.x <= std::max(a.x, b.x) + kEps &&
         p.y >= std::min(a.y, b.y) - kEps && p.y <= std::max(a.y, b.y) + kEps;
}

int Orientation(Point a, Point b, Point c) {
  double v = Cross(a, b, c);
  if (std::abs(v) <= kEps) return 0;
  return v > 0 ? 1 : -1;
}

bool SegmentsIntersect(Point p1, Point p2, Point q1, Point q2) {
  int o1 = Orientation(p1, p2, q1);
  int o2 = Orientation(p1, p2, q2);
  int o3 = Orientation(q1, q2, p1);
  int o4 = Orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && OnSegment(p1, p2, q1)) return true;
  if (o2 == 0 && OnSegment(p1, p2, q2)) return true;
  if (o3 == 0 && OnSegment(q1, q2, p1)) return true;
  if (o4 == 0 && OnSegment(q1, q2, p2)) return true;
  return false;
}

double Distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

}  // namespace

const MapRegion* MapModel::FindRegion(std::string_view id) const {
  for (const auto& r : regions) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

double SignedArea(std::span<const Point> polygon) {
  double sum = 0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % polygon.size()];
    sum += a.x * b.y - b.x * a.y;
  }
  return sum / 2;
}

double Area(std::span<const Point> polygon) {
  return std::abs(SignedArea(polygon));
}

Point Centroid(std::span<const Point> polygon) {
  double a = SignedArea(polygon);
  if (std::abs(a) < kEps) {
    Point c;
    for (const auto& p : polygon) {
      c.x += p.x;
      c.y += p.y;
    }
    if (!polygon.empty()) {
      c.x /= polygon.size();
      c.y /= polygon.size();
    }
    return c;
  }
  double cx = 0, cy = 0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point& p = polygon[i];
    const Point& q = polygon[(i + 1) % polygon.size()];
    double f = p.x * q.y - q.x * p.y;
    cx += (p.x + q.x) * f;
    cy += (p.y + q.y) * f;
  }
  return {cx / (6 * a), cy / (6 * a)};
}

bool Contains(std::span<const Point> polygon, Point p) {
  const size_t n = polygon.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    if (OnSegment(polygon[i], polygon[(i + 1) % n], p)) return true;
  }
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[i];
    const Point& b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

bool IsSimplePolygon(std::span<const Point> polygon) {
  const size_t n = polygon.size();
  if (n < 3 || Area(polygon) < kEps) return false;
  for (size_t i = 0; i < n; ++i) {
    if (Distance(polygon[i], polygon[(i + 1) % n]) < kEps) return false;
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      Point a1 = polygon[i], a2 = polygon[(i + 1) % n];
      Point b1 = polygon[j], b2 = polygon[(j + 1) % n];
      if (adjacent) {
        // Adjacent edges may only share their common vertex.
        Point shared = (j == i + 1) ? a2 : a1;
        Point other_a = (j == i + 1) ? a1 : a2;
        Point other_b = (j == i + 1) ? b2 : b1;
        if (Orientation(shared, other_a, other_b) == 0 &&
            ((other_a.x - shared.x) * (other_b.x - shared.x) +
             (other_a.y - shared.y) * (other_b.y - shared.y)) > 0) {
          return false;
        }
        continue;
      }
      if (SegmentsIntersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

std::optional<std::string> RegionAt(const MapModel& map, Point p) {
  const MapRegion* best = nullptr;
  double best_area = 0;
  for (const auto& region : map.regions) {
    if (!Contains(region.polygon, p)) continue;
    double a = Area(region.polygon);
    if (!best || a < best_area - kEps ||
        (std::abs(a - best_area) <= kEps && region.id < best->id)) {
      best = &region;
      best_area = a;
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

std::vector<Point> ResampleStroke(const Sketch& sketch, double spacing_m) {
  std::vector<Point> out;
  if (sketch.points.empty()) return out;
  Point prev{sketch.points[0].x, sketch.points[0].y};
  out.push_back(prev);
  double carried = 0;  // arc length since the last emitted sample
  for (size_t i = 1; i < sketch.points.size(); ++i) {
    Point next{sketch.points[i].x, sketch.points[i].y};
    double seg = Distance(prev, next);
    double offset = spacing_m - carried;
    while (offset <= seg + kEps && seg > kEps) {
      double t = std::min(1.0, offset / seg);
      out.push_back({prev.x + t * (next.x - prev.x),
                     prev.y + t * (next.y - prev.y)});
      offset += spacing_m;
    }
    carried = seg - (offset - spacing_m);
    prev = next;
  }
  if (Distance(out.back(), prev) > kEps) out.push_back(prev);
  return out;
}

namespace {

struct Run {
  std::optional<std::string> region;
  size_t begin = 0;  // sample range [begin, end)
  size_t end = 0;
  bool reentered = false;  // left to uncoloured space and came back
};

double RunLength(const std::vector<Point>& samples, const Run& run) {
  // Half a segment on each side approximates where the boundary was crossed.
  double len = 0;
  for (size_t i = run.begin; i + 1 < run.end; ++i) {
    len += Distance(samples[i], samples[i + 1]);
  }
  if (run.begin > 0) len += Distance(samples[run.begin - 1], samples[run.begin]) / 2;
  if (run.end < samples.size()) len += Distance(samples[run.end - 1], samples[run.end]) / 2;
  return len;
}

double TurningDegrees(const std::vector<Point>& samples, size_t begin,
                      size_t end) {
  double total = 0;
  std::optional<double> heading;
  for (size_t i = begin; i + 1 < end; ++i) {
    Point a = samples[i], b = samples[i + 1];
    if (Distance(a, b) < 1e-6) continue;
    double h = std::atan2(b.y - a.y, b.x - a.x);
    if (heading) {
      double d = h - *heading;
      while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
      while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
      total += d;
    }
    heading = h;
  }
  return std::abs(total) * 180.0 / std::numbers::pi;
}

std::vector<Run> MergeAdjacent(std::vector<Run> runs) {
  std::vector<Run> out;
  for (auto& r : runs) {
    if (!out.empty() && out.back().region == r.region) {
      out.back().end = r.end;
      out.back().reentered = out.back().reentered || r.reentered;
    } else {
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

RegionSequence ParseSketch(const MapModel& map, const Sketch& sketch,
                           bool attached, const SketchOptions& options) {
  if (sketch.points.empty()) {
    throw Error(ErrorCode::kEmptySketch, "empty sketch: no points");
  }
  std::vector<Point> samples = ResampleStroke(sketch, options.resample_spacing_m);

  std::vector<Run> runs;
  for (size_t i = 0; i < samples.size(); ++i) {
    auto label = RegionAt(map, samples[i]);
    if (runs.empty() || runs.back().region != label) {
      runs.push_back({label, i, i + 1});
    } else {
      runs.back().end = i + 1;
    }
  }

  // Drop short interior touches (finger slips across corners or gaps).
  bool changed = true;
  while (changed && runs.size() > 2) {
    changed = false;
    size_t shortest = 0;
    double shortest_len = options.min_touch_length_m;
    for (size_t i = 1; i + 1 < runs.size(); ++i) {
      double len = RunLength(samples, runs[i]);
      if (len < shortest_len) {
        shortest = i;
        shortest_len = len;
      }
    }
    if (shortest != 0) {
      // The slip's samples are given to the run before it.
      runs[shortest - 1].end = runs[shortest].end;
      runs.erase(runs.begin() + static_cast<long>(shortest));
      runs = MergeAdjacent(std::move(runs));
      changed = true;
    }
  }

  // Remove uncoloured stretches; a region left and re-entered this way is a
  // self-loop gesture.
  std::vector<Run> coloured;
  for (const auto& r : runs) {
    if (!r.region) continue;
    if (!coloured.empty() && coloured.back().region == r.region) {
      Run again = r;
      again.reentered = true;
      coloured.push_back(again);
    } else {
      coloured.push_back(r);
    }
  }
  if (coloured.empty()) {
    throw Error(ErrorCode::kEmptySketch,
                "empty sketch: stroke lies entirely outside coloured regions");
  }

  RegionSequence seq;
  for (const auto& r : coloured) {
    if (r.reentered && !seq.regions.empty() && seq.regions.back() == *r.region) {
      seq.self_loops.insert(seq.regions.size() - 1);
    }
    seq.regions.push_back(*r.region);
    if (TurningDegrees(samples, r.begin, r.end) >= options.self_loop_turning_deg) {
      seq.self_loops.insert(seq.regions.size() - 1);
      seq.regions.push_back(*r.region);
    }
  }

  if (attached) {
    seq.attachment = seq.regions.front();
    return seq;
  }

  // The start region is where the robot happens to be; it is not a visit.
  const std::string start = seq.regions.front();
  size_t drop = 0;
  while (drop < seq.regions.size() && seq.regions[drop] == start) ++drop;
  RegionSequence out;
  out.regions.assign(seq.regions.begin() + static_cast<long>(drop),
                     seq.regions.end());
  for (size_t i : seq.self_loops) {
    if (i >= drop) out.self_loops.insert(i - drop);
  }
  return out;
}

World WorldFromMap(const MapModel& map) {
  World world;
  for (const auto& r : map.regions) world.regions.insert(r.id);
  return world;
}

MapEdit AddRegion(const MapModel& map, const World& world,
                  const Polygon& polygon, const std::string& label) {
  if (!IsSimplePolygon(polygon)) {
    throw Error(ErrorCode::kInvalidPolygon,
                "region '" + label + "' is degenerate or self-intersecting");
  }
  std::string base = ToLower(label);
  base.erase(0, base.find_first_not_of(" \t"));
  base.erase(base.find_last_not_of(" \t") + 1);
  if (base.empty()) base = "region";
  std::string id = base;
  for (int n = 2; map.FindRegion(id) || LocationExists(world, id); ++n) {
    id = base + "_" + std::to_string(n);
  }
  MapEdit edit{map, world, id};
  edit.map.regions.push_back({id, label, polygon});
  edit.world.regions.insert(id);
  return edit;
}

MapEdit PlaceIcon(const Domain& domain, const MapModel& map, const World& world,
                  const std::string& entity_type, Point point) {
  auto region = RegionAt(map, point);
  if (!region) {
    throw Error(ErrorCode::kOutsideRegions,
                "icon for '" + entity_type + "' is outside every region");
  }
  auto inserted =
      WorldInsert(domain, world, entity_type, *region, Provenance::kUser);
  MapEdit edit{map, std::move(inserted.world), inserted.id};
  edit.map.icons.push_back({inserted.id, point});
  return edit;
}

}  // namespace sketchsynth
