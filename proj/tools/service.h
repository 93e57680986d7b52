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

#ifndef SKETCHSYNTH_TOOLS_SERVICE_H_
#define SKETCHSYNTH_TOOLS_SERVICE_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "sketchsynth/knowledge.h"
#include "sketchsynth/pipeline.h"

namespace httplib {
class Server;
}

namespace sketchsynth::tools {

// The authoring session behind the HTTP service. Every mutation takes the
// lock, bumps the version and, when a path is set, rewrites the bundle file.
// Synthesis runs under the lock, so concurrent requests are queued.
class SessionStore {
 public:
  SessionStore(const Domain& domain, SessionBundle initial,
               std::optional<std::string> persist_path = std::nullopt);

  struct Snapshot {
    SessionBundle bundle;
    uint64_t version = 0;
  };
  Snapshot Read() const;

  // Applies `edit` to a copy of the bundle and commits it if it returns
  // without throwing. Returns the new version.
  template <typename F>
  uint64_t Mutate(F&& edit) {
    std::lock_guard<std::mutex> lock(mu_);
    SessionBundle next = bundle_;
    edit(next);
    bundle_ = std::move(next);
    ++version_;
    PersistLocked();
    return version_;
  }

  const Domain& domain() const { return domain_; }

 private:
  void PersistLocked() const;

  const Domain& domain_;
  mutable std::mutex mu_;
  SessionBundle bundle_;
  uint64_t version_ = 0;
  std::optional<std::string> persist_path_;
};

// Installs the JSON endpoints on `server`:
//   GET/PUT /map, POST /regions, POST /icons, POST /recordings,
//   POST /synthesize, GET /program, GET /program.dot, POST /simulate,
//   GET /world, GET /bundle.
// Failures answer with {"error": {"code", "message", "recording", "stage"}}.
void InstallRoutes(httplib::Server& server, SessionStore& store);

}  // namespace sketchsynth::tools

#endif  // SKETCHSYNTH_TOOLS_SERVICE_H_
