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

#ifndef SKETCHSYNTH_DOCUMENTS_H_
#define SKETCHSYNTH_DOCUMENTS_H_

#include <string>
#include <string_view>

#include "sketchsynth/assembler.h"
#include "sketchsynth/executor.h"
#include "sketchsynth/geomap.h"
#include "sketchsynth/knowledge.h"
#include "sketchsynth/pipeline.h"
#include "sketchsynth/planner.h"

// JSON documents. Every document carries "format_version"; decoding is strict
// (unknown keys, missing keys and wrong types are kInvalidDocument errors).
// Encoding is deterministic: keys sorted, two-space indent, trailing newline.

namespace sketchsynth {

inline constexpr int kFormatVersion = 1;

std::string EncodeDomain(const DomainDocument& doc);
DomainDocument DecodeDomain(std::string_view text);

std::string EncodeLexicon(const LexiconDocument& doc);
LexiconDocument DecodeLexicon(std::string_view text);

std::string EncodeMap(const MapModel& map);
MapModel DecodeMap(std::string_view text);

std::string EncodeWorld(const World& world);
World DecodeWorld(std::string_view text);

std::string EncodeSketch(const Sketch& sketch);
Sketch DecodeSketch(std::string_view text);

std::string EncodeRecording(const Recording& recording);
Recording DecodeRecording(std::string_view text);

std::string EncodeScript(const Script& script);
Script DecodeScript(std::string_view text);

// Log documents hold the action log, the final state and halted flag.
std::string EncodeLog(const ExecState& state);
ExecState DecodeLog(std::string_view text);

std::string EncodeTrace(const Trace& trace);
Trace DecodeTrace(std::string_view text);

std::string EncodeDelta(const WorldDelta& delta);
WorldDelta DecodeDelta(std::string_view text);

std::string EncodeProgram(const Program& program);
Program DecodeProgram(std::string_view text);

std::string EncodeBundle(const SessionBundle& bundle);
SessionBundle DecodeBundle(std::string_view text);

// Command literal used in scripts and on the command line: `eventApproach`,
// `eventSpeech: "go home"`. Inverse of ToString for ground commands whose
// arguments are text or identifiers.
Command ParseCommandLiteral(const Domain& domain, std::string_view text);

// The bundled domain and lexicon documents.
std::string_view BundledDomainDocument();
std::string_view BundledLexiconDocument();

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_DOCUMENTS_H_
