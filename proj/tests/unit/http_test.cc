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

#include <filesystem>
#include <sstream>
#include <thread>

#include "cli.h"
#include "httplib.h"
#include "json.hpp"
#include "service.h"
#include "sketchsynth/corpus.h"
#include "sketchsynth/documents.h"
#include "sketchsynth/dot.h"
#include "suites/suites.h"

namespace sketchsynth {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

const LoadedCase& Case(const std::string& id) {
  static const std::vector<LoadedCase> cases = LoadCorpus(suites::DataDir());
  for (const auto& c : cases) {
    if (c.spec.id == id) return c;
  }
  throw std::runtime_error("missing case " + id);
}

json RecordingBody(const Recording& r) {
  json points = json::array();
  for (const auto& p : r.sketch.points) points.push_back({p.x, p.y, p.t_ms});
  json body = {{"id", r.id}, {"utterance", r.utterance}, {"sketch", {{"points", points}}}};
  if (r.attachment) {
    body["attachment"] = {{"region", r.attachment->region}, {"host", r.attachment->host}};
  }
  return body;
}

// A session service on an ephemeral port, started with the case's map and
// world and no recordings.
class HttpTest : public ::testing::Test {
 protected:
  void Start(const std::string& id, std::optional<std::string> persist = std::nullopt) {
    const LoadedCase& c = Case(id);
    bundle_ = BuildBundle(DefaultDomain(), c.spec, c.map);
    SessionBundle empty = bundle_;
    empty.recordings.clear();
    store_ = std::make_unique<tools::SessionStore>(DefaultDomain(), empty, persist);
    tools::InstallRoutes(server_, *store_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Client Client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

  void PostRecordings() {
    auto client = Client();
    for (const auto& r : bundle_.recordings) {
      auto res = client.Post("/recordings", RecordingBody(r).dump(), "application/json");
      ASSERT_TRUE(res);
      ASSERT_EQ(res->status, 201) << res->body;
    }
  }

  SessionBundle bundle_;
  std::unique_ptr<tools::SessionStore> store_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpTest, SynthesizeServesGoldenProgramAndDot) {
  Start("grocery-02-golden-b");
  PostRecordings();
  auto client = Client();
  EXPECT_EQ(client.Get("/program")->status, 404);
  auto synth = client.Post("/synthesize", "", "application/json");
  ASSERT_TRUE(synth);
  ASSERT_EQ(synth->status, 200) << synth->body;
  auto program = client.Get("/program");
  ASSERT_EQ(program->status, 200);
  EXPECT_EQ(program->body, *Case("grocery-02-golden-b").golden);
  auto dot = client.Get("/program.dot");
  EXPECT_EQ(dot->body, ExportDot(DecodeProgram(program->body)));
  EXPECT_EQ(DecodeWorld(client.Get("/world")->body), *store_->Read().bundle.synthesized_world);
}

TEST_F(HttpTest, CliAndServiceProduceIdenticalPrograms) {
  for (const char* id : {"grocery-01-golden-a", "hospital-01-full", "tidying-01-full"}) {
    SCOPED_TRACE(id);
    const LoadedCase& c = Case(id);
    SessionBundle b = BuildBundle(DefaultDomain(), c.spec, c.map);
    fs::path file = fs::temp_directory_path() / (std::string("sketchsynth_http_") + id + ".json");
    WriteFile(file.string(), EncodeBundle(b));
    std::vector<std::string> args = {"sketchsynth", "synth", "--bundle", file.string()};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    ASSERT_EQ(tools::RunCli(static_cast<int>(argv.size()), argv.data(), out, err), 0)
        << err.str();
    fs::remove(file);

    httplib::Server server;
    tools::SessionStore store(DefaultDomain(), [&] {
      SessionBundle e = b;
      e.recordings.clear();
      return e;
    }());
    tools::InstallRoutes(server, store);
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client client("127.0.0.1", port);
    for (const auto& r : b.recordings) {
      ASSERT_EQ(client.Post("/recordings", RecordingBody(r).dump(), "application/json")->status,
                201);
    }
    ASSERT_EQ(client.Post("/synthesize", "", "application/json")->status, 200);
    std::string served = client.Get("/program")->body;
    server.stop();
    t.join();
    EXPECT_EQ(served, out.str());
  }
}

TEST_F(HttpTest, ConcurrentSynthesisIsSerialized) {
  Start("tidying-01-full");
  PostRecordings();
  uint64_t before = store_->Read().version;
  std::vector<int> status(2);
  std::vector<uint64_t> versions(2);
  std::vector<std::string> programs(2);
  std::vector<std::thread> threads;
  for (int i = 0; i < 2; ++i) {
    threads.emplace_back([&, i] {
      auto client = Client();
      auto res = client.Post("/synthesize", "", "application/json");
      if (!res) return;
      status[i] = res->status;
      json j = json::parse(res->body);
      versions[i] = j.at("version").get<uint64_t>();
      programs[i] = j.at("program").dump();
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(status, (std::vector<int>{200, 200}));
  std::sort(versions.begin(), versions.end());
  EXPECT_EQ(versions, (std::vector<uint64_t>{before + 1, before + 2}));
  EXPECT_EQ(programs[0], programs[1]);
  EXPECT_EQ(store_->Read().version, before + 2);
}

TEST_F(HttpTest, EmptySketchIsRejected) {
  Start("grocery-01-golden-a");
  auto client = Client();
  json body = {{"utterance", "bring in the groceries"}, {"sketch", {{"points", json::array()}}}};
  auto res = client.Post("/recordings", body.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_GE(res->status, 400);
  EXPECT_LT(res->status, 500);
  EXPECT_NE(res->body.find("empty sketch"), std::string::npos) << res->body;

  // A stroke entirely outside every region is empty after parsing.
  body["sketch"]["points"] = {{500, 500, 0}, {501, 500, 10}};
  ASSERT_EQ(client.Post("/recordings", body.dump(), "application/json")->status, 201);
  res = client.Post("/synthesize", "", "application/json");
  EXPECT_GE(res->status, 400);
  EXPECT_LT(res->status, 500);
  EXPECT_NE(res->body.find("empty sketch"), std::string::npos) << res->body;
  EXPECT_EQ(json::parse(res->body)["error"]["stage"], "sketch");
}

TEST_F(HttpTest, MapEditsAndSimulation) {
  Start("grocery-01-golden-a");
  auto client = Client();
  MapModel map = DecodeMap(client.Get("/map")->body);
  EXPECT_EQ(map, bundle_.map);

  json region = {{"label", "Porch"}, {"polygon", {{100, 100}, {102, 100}, {102, 102}, {100, 102}}}};
  auto res = client.Post("/regions", region.dump(), "application/json");
  ASSERT_EQ(res->status, 201) << res->body;
  EXPECT_EQ(json::parse(res->body)["id"], "porch");
  res = client.Post("/icons", json{{"entity_type", "toy"}, {"position", {101, 101}}}.dump(),
                    "application/json");
  ASSERT_EQ(res->status, 201) << res->body;
  EXPECT_EQ(DecodeWorld(client.Get("/world")->body).entities.at("toy").placements.at("porch"), 1);
  res = client.Post("/icons", json{{"entity_type", "toy"}, {"position", {900, 900}}}.dump(),
                    "application/json");
  EXPECT_EQ(res->status, 400);

  // Replacing the map drops the porch and the toy with it.
  ASSERT_EQ(client.Put("/map", EncodeMap(bundle_.map), "application/json")->status, 200);
  World w = DecodeWorld(client.Get("/world")->body);
  EXPECT_FALSE(w.regions.count("porch"));
  EXPECT_FALSE(w.entities.count("toy"));

  PostRecordings();
  ASSERT_EQ(client.Post("/synthesize", "", "application/json")->status, 200);
  Script script{{Stimulus::Event(MakeCommand("eventApproach")), Stimulus::Tick(),
                 Stimulus::Tick(), Stimulus::Tick()}};
  res = client.Post("/simulate", EncodeScript(script), "application/json");
  ASSERT_EQ(res->status, 200) << res->body;
  EXPECT_TRUE(DecodeLog(res->body).halted);
  EXPECT_EQ(client.Post("/simulate", "{}", "application/json")->status, 400);
}

TEST_F(HttpTest, SessionIsPersisted) {
  fs::path file = fs::temp_directory_path() / "sketchsynth_http_session.json";
  fs::remove(file);
  Start("grocery-01-golden-a", file.string());
  PostRecordings();
  ASSERT_EQ(Client().Post("/synthesize", "", "application/json")->status, 200);
  SessionBundle saved = DecodeBundle(ReadFile(file.string()));
  EXPECT_EQ(saved, store_->Read().bundle);
  EXPECT_EQ(EncodeBundle(saved), Client().Get("/bundle")->body);
  fs::remove(file);
}

}  // namespace
}  // namespace sketchsynth
