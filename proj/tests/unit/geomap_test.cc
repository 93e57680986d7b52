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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sketchsynth/documents.h"
#include "sketchsynth/error.h"
#include "sketchsynth/geomap.h"
#include "suites/suites.h"

namespace sketchsynth {
namespace {

Polygon Rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Two rooms side by side and a closet inside the right one.
MapModel Rooms() {
  MapModel m;
  m.regions = {{"left", "left", Rect(0, 0, 4, 4)},
               {"right", "right", Rect(4, 0, 8, 4)},
               {"closet", "closet", Rect(6, 1, 7, 2)}};
  return m;
}

Sketch Line(std::vector<Point> pts, double step = 0.01) {
  Sketch s;
  double t = 0;
  s.points.push_back({pts[0].x, pts[0].y, t});
  for (size_t i = 1; i < pts.size(); ++i) {
    Point a = pts[i - 1], b = pts[i];
    int n = std::max(1, static_cast<int>(std::hypot(b.x - a.x, b.y - a.y) / step));
    for (int k = 1; k <= n; ++k) {
      double f = static_cast<double>(k) / n;
      s.points.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y), t += 10});
    }
  }
  return s;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kSynthesis;
}

TEST(PolygonTest, AreaCentroidAndContainment) {
  Polygon sq = Rect(0, 0, 2, 2);
  EXPECT_DOUBLE_EQ(SignedArea(sq), 4.0);
  Polygon cw(sq.rbegin(), sq.rend());
  EXPECT_DOUBLE_EQ(SignedArea(cw), -4.0);
  EXPECT_DOUBLE_EQ(Area(cw), 4.0);
  Point c = Centroid(sq);
  EXPECT_DOUBLE_EQ(c.x, 1.0);
  EXPECT_DOUBLE_EQ(c.y, 1.0);
  EXPECT_TRUE(Contains(sq, {1, 1}));
  EXPECT_TRUE(Contains(sq, {2, 1}));  // boundary
  EXPECT_FALSE(Contains(sq, {2.01, 1}));
}

TEST(PolygonTest, SimplicityCheck) {
  EXPECT_TRUE(IsSimplePolygon(Rect(0, 0, 1, 1)));
  Polygon bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_FALSE(IsSimplePolygon(bowtie));
  EXPECT_FALSE(IsSimplePolygon(Polygon{{0, 0}, {1, 1}}));
  EXPECT_FALSE(IsSimplePolygon(Polygon{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(RegionAtTest, SmallestRegionWins) {
  MapModel m = Rooms();
  EXPECT_EQ(RegionAt(m, {1, 1}), "left");
  EXPECT_EQ(RegionAt(m, {5, 3}), "right");
  EXPECT_EQ(RegionAt(m, {6.5, 1.5}), "closet");
  EXPECT_EQ(RegionAt(m, {9, 9}), std::nullopt);
}

TEST(ResampleTest, FixedSpacingKeepsEndpoints) {
  Sketch s{{{0, 0, 0}, {1, 0, 10}}};
  auto pts = ResampleStroke(s, 0.1);
  ASSERT_EQ(pts.size(), 11u);
  EXPECT_NEAR(pts.back().x, 1.0, 1e-9);
  for (size_t i = 1; i < pts.size(); ++i) {
    EXPECT_NEAR(std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y), 0.1, 1e-9);
  }
}

TEST(ParseSketchTest, InitialDropsStartAttachedKeepsIt) {
  MapModel m = Rooms();
  Sketch s = Line({{2, 3}, {5, 3}});
  RegionSequence initial = ParseSketch(m, s);
  EXPECT_EQ(initial.regions, std::vector<std::string>{"right"});
  EXPECT_FALSE(initial.attachment.has_value());

  RegionSequence attached = ParseSketch(m, s, true);
  EXPECT_EQ(attached.regions, (std::vector<std::string>{"left", "right"}));
  EXPECT_EQ(attached.attachment, "left");
}

TEST(ParseSketchTest, ShortTouchesAreIgnored) {
  MapModel m = Rooms();
  // Clips 5 cm of the closet's corner on the way through the right room.
  Sketch s = Line({{2, 2.5}, {5, 2.5}, {6.95, 2.5}, {6.95, 1.98}, {7.5, 1.98}, {7.5, 3}});
  RegionSequence seq = ParseSketch(m, s, true);
  EXPECT_EQ(seq.regions, (std::vector<std::string>{"left", "right"}));
}

TEST(ParseSketchTest, CircleMarksSelfLoop) {
  MapModel m = Rooms();
  Sketch s = Line({{2, 2}, {5, 2}});
  double t = s.points.back().t_ms;
  for (int k = 1; k <= 200; ++k) {
    double a = 2 * std::numbers::pi * k / 100 - std::numbers::pi;
    s.points.push_back({5.5 + 0.5 * std::cos(a), 2 + 0.5 * std::sin(a), t += 10});
  }
  RegionSequence seq = ParseSketch(m, s);
  EXPECT_EQ(seq.regions, (std::vector<std::string>{"right", "right"}));
  EXPECT_EQ(seq.self_loops, std::set<size_t>{0});
}

TEST(ParseSketchTest, GentleCurveIsNotALoop) {
  MapModel m = Rooms();
  Sketch s = Line({{2, 2}, {5, 1}, {5.5, 3}, {5, 3.5}});
  RegionSequence seq = ParseSketch(m, s);
  EXPECT_EQ(seq.regions, std::vector<std::string>{"right"});
  EXPECT_TRUE(seq.self_loops.empty());
}

TEST(ParseSketchTest, EmptyOrOutsideStrokesFail) {
  MapModel m = Rooms();
  EXPECT_EQ(CodeOf([&] { ParseSketch(m, Sketch{}); }), ErrorCode::kEmptySketch);
  EXPECT_EQ(CodeOf([&] { ParseSketch(m, Line({{10, 10}, {12, 12}})); }),
            ErrorCode::kEmptySketch);
}

TEST(MapEditTest, AddRegionDerivesUniqueIds) {
  MapModel m = Rooms();
  World w = WorldFromMap(m);
  MapEdit e = AddRegion(m, w, Rect(0, 4, 4, 8), "  Pantry ");
  EXPECT_EQ(e.id, "pantry");
  EXPECT_TRUE(e.world.regions.count("pantry"));
  MapEdit again = AddRegion(e.map, e.world, Rect(4, 4, 8, 8), "pantry");
  EXPECT_EQ(again.id, "pantry_2");
  EXPECT_EQ(CodeOf([&] { AddRegion(m, w, {{0, 0}, {1, 1}, {1, 0}, {0, 1}}, "x"); }),
            ErrorCode::kInvalidPolygon);
}

TEST(MapEditTest, PlaceIconRecordsEntityInRegion) {
  const Domain& d = DefaultDomain();
  MapModel m = Rooms();
  World w = WorldFromMap(m);
  MapEdit e = PlaceIcon(d, m, w, "chest", {6.5, 1.5});
  EXPECT_EQ(e.id, "chest");
  EXPECT_EQ(e.world.entities.at("chest").placements.at("closet"), 1);
  EXPECT_EQ(e.map.icons.size(), 1u);
  EXPECT_EQ(CodeOf([&] { PlaceIcon(d, m, w, "chest", {20, 20}); }),
            ErrorCode::kOutsideRegions);
}

TEST(GeometrySuiteTest, GeneratedStrokesOnScenarioMaps) {
  std::vector<MapModel> maps;
  for (const char* name : {"home", "store", "hospital"}) {
    maps.push_back(DecodeMap(ReadFile(suites::DataDir() + "/maps/" + name + ".json")));
  }
  suites::SuiteResult r = suites::Geometry(maps, 20, 11);
  EXPECT_GE(r.checked, 50u);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
}

}  // namespace
}  // namespace sketchsynth
