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

#include "service.h"

#include <string>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "sketchsynth/corpus.h"
#include "sketchsynth/documents.h"
#include "sketchsynth/dot.h"
#include "sketchsynth/error.h"
#include "sketchsynth/executor.h"
#include "sketchsynth/geomap.h"

namespace sketchsynth::tools {

namespace {

using json = nlohmann::json;

constexpr const char* kJson = "application/json";

std::string Slug(ErrorCode code) {
  std::string s(ErrorCodeName(code));
  for (char& c : s) {
    if (c == ' ') c = '_';
  }
  return s;
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDocument:
    case ErrorCode::kEmptySketch:
    case ErrorCode::kInvalidPolygon:
    case ErrorCode::kOutsideRegions:
    case ErrorCode::kUnknownType:
    case ErrorCode::kUnknownLocation:
    case ErrorCode::kDuplicateName:
      return 400;
    default:
      return 422;
  }
}

void SendError(httplib::Response& res, const Error& e) {
  json err = {{"code", Slug(e.code())}, {"message", e.what()}};
  if (auto* s = dynamic_cast<const SynthesisError*>(&e)) {
    err["code"] = Slug(s->cause());
    err["recording"] = s->recording();
    err["stage"] = s->stage();
  }
  if (auto* f = dynamic_cast<const RuntimeFault*>(&e)) err["state"] = f->state();
  res.status = StatusFor(e.code());
  res.set_content(json{{"error", err}}.dump(2) + "\n", kJson);
}

[[noreturn]] void BadRequest(const std::string& why) {
  throw Error(ErrorCode::kInvalidDocument, "invalid request: " + why);
}

json ParseBody(const httplib::Request& req) {
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) BadRequest("body is not a JSON object");
  return j;
}

Point ParsePoint(const json& j, const char* what) {
  if (!j.is_array() || j.size() < 2 || !j[0].is_number() || !j[1].is_number()) {
    BadRequest(std::string(what) + " must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string Str(const json& j, const char* key, bool required = true) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) BadRequest(std::string("missing '") + key + "'");
    return "";
  }
  if (!it->is_string()) BadRequest(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

void ClearOutputs(SessionBundle& b) {
  b.program.reset();
  b.results.clear();
  b.delta = {};
  b.synthesized_world.reset();
  b.diagnostics.clear();
}

Recording ParseRecording(const json& j, const SessionBundle& b) {
  Recording rec;
  rec.id = Str(j, "id", false);
  if (rec.id.empty()) rec.id = "r" + std::to_string(b.recordings.size() + 1);
  rec.utterance = Str(j, "utterance", false);
  auto sketch = j.find("sketch");
  if (sketch == j.end() || !sketch->is_object()) BadRequest("missing 'sketch'");
  auto points = sketch->find("points");
  if (points == sketch->end() || !points->is_array()) {
    BadRequest("'sketch.points' must be an array");
  }
  if (points->empty()) {
    throw Error(ErrorCode::kEmptySketch, "empty sketch: the stroke has no points");
  }
  for (const auto& p : *points) {
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() ||
        !p[1].is_number() || !p[2].is_number()) {
      BadRequest("sketch points must be [x, y, t_ms]");
    }
    rec.sketch.points.push_back(
        {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  auto att = j.find("attachment");
  if (att != j.end() && !att->is_null()) {
    if (!att->is_object()) BadRequest("'attachment' must be an object");
    rec.attachment = AttachmentPoint{Str(*att, "region", false), Str(*att, "host")};
  }
  for (const auto& r : b.recordings) {
    if (r.id == rec.id) {
      throw Error(ErrorCode::kDuplicateName, "duplicate recording id '" + rec.id + "'");
    }
  }
  return rec;
}

// Runs `body` and converts engine errors into the error envelope.
template <typename F>
httplib::Server::Handler Guarded(F body) {
  return [body](const httplib::Request& req, httplib::Response& res) {
    try {
      body(req, res);
    } catch (const Error& e) {
      SendError(res, e);
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(
          json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump(2) + "\n",
          kJson);
    }
  };
}

}  // namespace

SessionStore::SessionStore(const Domain& domain, SessionBundle initial,
                           std::optional<std::string> persist_path)
    : domain_(domain),
      bundle_(std::move(initial)),
      persist_path_(std::move(persist_path)) {}

SessionStore::Snapshot SessionStore::Read() const {
  std::lock_guard<std::mutex> lock(mu_);
  return {bundle_, version_};
}

void SessionStore::PersistLocked() const {
  if (persist_path_) WriteFile(*persist_path_, EncodeBundle(bundle_));
}

void InstallRoutes(httplib::Server& server, SessionStore& store) {
  server.Get("/map", Guarded([&store](const httplib::Request&, httplib::Response& res) {
    res.set_content(EncodeMap(store.Read().bundle.map), kJson);
  }));

  server.Put("/map", Guarded([&store](const httplib::Request& req, httplib::Response& res) {
    MapModel map = DecodeMap(req.body);
    uint64_t v = store.Mutate([&](SessionBundle& b) {
      World world = WorldFromMap(map);
      for (const auto& [id, e] : b.world.entities) {
        Entity kept = e;
        std::erase_if(kept.placements, [&](const auto& p) {
          return !world.regions.count(p.first) && !b.world.entities.count(p.first);
        });
        if (!kept.placements.empty()) world.entities[id] = std::move(kept);
      }
      if (b.world.robot_at && world.regions.count(*b.world.robot_at)) {
        world.robot_at = b.world.robot_at;
      }
      ValidateWorld(store.domain(), world);
      b.map = map;
      b.world = std::move(world);
      ClearOutputs(b);
    });
    res.set_content(json{{"version", v}}.dump(2) + "\n", kJson);
  }));

  server.Post("/regions", Guarded([&store](const httplib::Request& req, httplib::Response& res) {
    json j = ParseBody(req);
    auto poly = j.find("polygon");
    if (poly == j.end() || !poly->is_array()) BadRequest("'polygon' must be an array");
    Polygon polygon;
    for (const auto& p : *poly) polygon.push_back(ParsePoint(p, "polygon vertex"));
    std::string label = Str(j, "label");
    std::string id;
    uint64_t v = store.Mutate([&](SessionBundle& b) {
      MapEdit edit = AddRegion(b.map, b.world, polygon, label);
      b.map = std::move(edit.map);
      b.world = std::move(edit.world);
      id = edit.id;
      ClearOutputs(b);
    });
    res.status = 201;
    res.set_content(json{{"id", id}, {"version", v}}.dump(2) + "\n", kJson);
  }));

  server.Post("/icons", Guarded([&store](const httplib::Request& req, httplib::Response& res) {
    json j = ParseBody(req);
    std::string type = Str(j, "entity_type");
    auto pos = j.find("position");
    if (pos == j.end()) BadRequest("missing 'position'");
    Point p = ParsePoint(*pos, "position");
    std::string id;
    uint64_t v = store.Mutate([&](SessionBundle& b) {
      MapEdit edit = PlaceIcon(store.domain(), b.map, b.world, type, p);
      b.map = std::move(edit.map);
      b.world = std::move(edit.world);
      id = edit.id;
      ClearOutputs(b);
    });
    res.status = 201;
    res.set_content(json{{"id", id}, {"version", v}}.dump(2) + "\n", kJson);
  }));

  server.Post("/recordings", Guarded([&store](const httplib::Request& req, httplib::Response& res) {
    json j = ParseBody(req);
    std::string id;
    uint64_t v = store.Mutate([&](SessionBundle& b) {
      Recording rec = ParseRecording(j, b);
      id = rec.id;
      b.recordings.push_back(std::move(rec));
      ClearOutputs(b);
    });
    res.status = 201;
    res.set_content(json{{"id", id}, {"version", v}}.dump(2) + "\n", kJson);
  }));

  server.Post("/synthesize", Guarded([&store](const httplib::Request&, httplib::Response& res) {
    uint64_t v = store.Mutate([&](SessionBundle& b) {
      b = Synthesize(store.domain(), b);
    });
    SessionBundle b = store.Read().bundle;
    json out = {{"version", v},
                {"program", json::parse(EncodeProgram(*b.program))},
                {"delta", json::parse(EncodeDelta(b.delta))},
                {"diagnostics", b.diagnostics}};
    res.set_content(out.dump(2) + "\n", kJson);
  }));

  server.Get("/program", Guarded([&store](const httplib::Request&, httplib::Response& res) {
    auto snap = store.Read();
    if (!snap.bundle.program) {
      res.status = 404;
      res.set_content(
          json{{"error", {{"code", "no_program"}, {"message", "nothing synthesized yet"}}}}
                  .dump(2) + "\n",
          kJson);
      return;
    }
    res.set_header("X-Session-Version", std::to_string(snap.version));
    res.set_content(EncodeProgram(*snap.bundle.program), kJson);
  }));

  server.Get("/program.dot", Guarded([&store](const httplib::Request&, httplib::Response& res) {
    auto snap = store.Read();
    if (!snap.bundle.program) {
      res.status = 404;
      res.set_content("no program\n", "text/plain");
      return;
    }
    res.set_content(ExportDot(*snap.bundle.program), "text/vnd.graphviz");
  }));

  server.Post("/simulate", Guarded([&store](const httplib::Request& req, httplib::Response& res) {
    Script script = DecodeScript(req.body);
    auto snap = store.Read();
    if (!snap.bundle.program) {
      throw Error(ErrorCode::kSynthesis, "nothing synthesized yet");
    }
    const World& world = snap.bundle.synthesized_world ? *snap.bundle.synthesized_world
                                                       : snap.bundle.world;
    ExecState state = Run(store.domain(), *snap.bundle.program, world, script);
    res.set_content(EncodeLog(state), kJson);
  }));

  server.Get("/world", Guarded([&store](const httplib::Request&, httplib::Response& res) {
    auto snap = store.Read();
    const World& world = snap.bundle.synthesized_world ? *snap.bundle.synthesized_world
                                                       : snap.bundle.world;
    res.set_content(EncodeWorld(world), kJson);
  }));

  server.Get("/bundle", Guarded([&store](const httplib::Request&, httplib::Response& res) {
    res.set_content(EncodeBundle(store.Read().bundle), kJson);
  }));
}

}  // namespace sketchsynth::tools
