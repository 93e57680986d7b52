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

#ifndef SKETCHSYNTH_GEOMAP_H_
#define SKETCHSYNTH_GEOMAP_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sketchsynth/knowledge.h"

namespace sketchsynth {

// Map-frame coordinates in meters.
struct Point {
  double x = 0;
  double y = 0;

  bool operator==(const Point&) const = default;
};

using Polygon = std::vector<Point>;

struct MapRegion {
  std::string id;
  std::string label;
  Polygon polygon;

  bool operator==(const MapRegion&) const = default;
};

struct MapIcon {
  std::string entity_id;
  Point position;

  bool operator==(const MapIcon&) const = default;
};

struct MapModel {
  std::string frame = "map";
  std::vector<MapRegion> regions;
  std::vector<MapIcon> icons;

  const MapRegion* FindRegion(std::string_view id) const;
  bool operator==(const MapModel&) const = default;
};

struct SketchPoint {
  double x = 0;
  double y = 0;
  double t_ms = 0;

  bool operator==(const SketchPoint&) const = default;
};

struct Sketch {
  std::vector<SketchPoint> points;

  bool operator==(const Sketch&) const = default;
};

struct RegionSequence {
  std::vector<std::string> regions;
  // Index i is present when regions[i] == regions[i + 1] came from a
  // deliberate self-loop gesture.
  std::set<size_t> self_loops;
  // For attached recordings: the region the stroke started in.
  std::optional<std::string> attachment;

  bool operator==(const RegionSequence&) const = default;
};

// Tunables for sketch parsing. Defaults are the documented behaviour.
struct SketchOptions {
  double resample_spacing_m = 0.02;
  double min_touch_length_m = 0.10;
  double self_loop_turning_deg = 270.0;
};

// Signed shoelace area (positive for counter-clockwise).
double SignedArea(std::span<const Point> polygon);
double Area(std::span<const Point> polygon);
Point Centroid(std::span<const Point> polygon);

// Boundary counts as inside.
bool Contains(std::span<const Point> polygon, Point p);

// At least three vertices, non-zero area, no two non-adjacent edges touch.
bool IsSimplePolygon(std::span<const Point> polygon);

// Smallest-area region containing `p` (ties broken by id); nullopt outside.
std::optional<std::string> RegionAt(const MapModel& map, Point p);

// Resamples the stroke at fixed arc-length spacing, keeping both endpoints.
std::vector<Point> ResampleStroke(const Sketch& sketch, double spacing_m);

// Converts a stroke into the region sequence the robot must visit. Initial
// recordings drop the leading (start) region; attached recordings keep it and
// report it as the attachment point. Throws kEmptySketch when no sample falls
// inside a region.
RegionSequence ParseSketch(const MapModel& map, const Sketch& sketch,
                           bool attached = false,
                           const SketchOptions& options = {});

struct MapEdit {
  MapModel map;
  World world;
  std::string id;
};

// Adds a labelled region; the region id is derived from the label and made
// unique. Throws kInvalidPolygon for degenerate or self-intersecting input.
MapEdit AddRegion(const MapModel& map, const World& world,
                  const Polygon& polygon, const std::string& label);

// Places an entity icon and records the entity (user provenance) in the
// enclosing region. Throws kOutsideRegions when the point is in no region.
MapEdit PlaceIcon(const Domain& domain, const MapModel& map, const World& world,
                  const std::string& entity_type, Point point);

// A world whose regions mirror the map; entities are left empty.
World WorldFromMap(const MapModel& map);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_GEOMAP_H_
