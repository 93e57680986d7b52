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

#include "sketchsynth/documents.h"

#include <cctype>
#include <exception>
#include <set>

#include "json.hpp"
#include "sketchsynth/corpus.h"
#include "sketchsynth/error.h"

namespace sketchsynth {

namespace {

using json = nlohmann::json;

[[noreturn]] void Invalid(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::kInvalidDocument,
              "invalid document: " + (path.empty() ? "<root>" : path) + ": " +
                  why);
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

json Parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    Invalid("", std::string("malformed JSON (") + e.what() + ")");
  }
}

// Strict object reader: every key must be read exactly once.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) Invalid(path_, "expected an object");
  }
  Reader(const Reader&) = delete;

  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) Invalid(Path(key), "unknown key");
    }
  }

  bool Has(const std::string& key) const { return j_.contains(key); }

  const json& Req(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) Invalid(Path(key), "missing required key");
    used_.insert(key);
    return *it;
  }

  const json* Opt(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    used_.insert(key);
    return it->is_null() ? nullptr : &*it;
  }

  std::string Str(const std::string& key) { return AsStr(Req(key), Path(key)); }
  std::string Str(const std::string& key, const std::string& fallback) {
    const json* v = Opt(key);
    return v ? AsStr(*v, Path(key)) : fallback;
  }
  std::optional<std::string> OptStr(const std::string& key) {
    const json* v = Opt(key);
    if (!v) return std::nullopt;
    return AsStr(*v, Path(key));
  }
  int64_t Int(const std::string& key) { return AsInt(Req(key), Path(key)); }
  double Num(const std::string& key) { return AsNum(Req(key), Path(key)); }
  bool Bool(const std::string& key, bool fallback) {
    const json* v = Opt(key);
    if (!v) return fallback;
    if (!v->is_boolean()) Invalid(Path(key), "expected a boolean");
    return v->get<bool>();
  }
  const json& Arr(const std::string& key) {
    const json& v = Req(key);
    if (!v.is_array()) Invalid(Path(key), "expected an array");
    return v;
  }
  const json* OptArr(const std::string& key) {
    const json* v = Opt(key);
    if (v && !v->is_array()) Invalid(Path(key), "expected an array");
    return v;
  }
  std::vector<std::string> Strings(const std::string& key) {
    std::vector<std::string> out;
    const json& a = Arr(key);
    for (size_t i = 0; i < a.size(); ++i) {
      out.push_back(AsStr(a[i], Path(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }
  std::vector<std::string> OptStrings(const std::string& key) {
    return Has(key) ? Strings(key) : std::vector<std::string>{};
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  static std::string AsStr(const json& v, const std::string& path) {
    if (!v.is_string()) Invalid(path, "expected a string");
    return v.get<std::string>();
  }
  static int64_t AsInt(const json& v, const std::string& path) {
    if (!v.is_number_integer()) Invalid(path, "expected an integer");
    return v.get<int64_t>();
  }
  static double AsNum(const json& v, const std::string& path) {
    if (!v.is_number()) Invalid(path, "expected a number");
    return v.get<double>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

std::string Index(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void CheckVersion(Reader& r) {
  int64_t v = r.Int("format_version");
  if (v != kFormatVersion) {
    Invalid(r.Path("format_version"),
            "unsupported version " + std::to_string(v));
  }
}

json Versioned(json j) {
  j["format_version"] = kFormatVersion;
  return j;
}

// --- commands and predicates -------------------------------------------------

json ToJson(const Arg& a) {
  return {{"kind", std::string(ArgKindName(a.kind))}, {"value", a.value}};
}

Arg ArgFromJson(const json& j, const std::string& path) {
  Reader r(j, path);
  Arg a;
  try {
    a.kind = ParseArgKind(r.Str("kind"));
  } catch (const Error& e) {
    Invalid(r.Path("kind"), e.what());
  }
  a.value = r.Str("value");
  return a;
}

json ToJson(const Command& c) {
  json args = json::array();
  for (const auto& a : c.args) args.push_back(ToJson(a));
  return {{"schema", c.schema}, {"args", args}};
}

Command CommandFromJson(const json& j, const std::string& path) {
  Reader r(j, path);
  Command c;
  c.schema = r.Str("schema");
  if (const json* args = r.OptArr("args")) {
    for (size_t i = 0; i < args->size(); ++i) {
      c.args.push_back(ArgFromJson((*args)[i], Index(r.Path("args"), i)));
    }
  }
  return c;
}

json OptCommand(const std::optional<Command>& c) {
  return c ? ToJson(*c) : json(nullptr);
}

json ToJson(const Predicate& p) {
  return {{"predicate", std::string(PredicateNameString(p.name))},
          {"args", p.args},
          {"negated", p.negated}};
}

Predicate PredicateFromJson(const json& j, const std::string& path) {
  Reader r(j, path);
  Predicate p;
  try {
    p.name = ParsePredicateName(r.Str("predicate"));
  } catch (const Error& e) {
    Invalid(r.Path("predicate"), e.what());
  }
  p.args = r.Strings("args");
  p.negated = r.Bool("negated", false);
  return p;
}

std::vector<Predicate> Predicates(Reader& r, const std::string& key) {
  std::vector<Predicate> out;
  const json& a = r.Arr(key);
  for (size_t i = 0; i < a.size(); ++i) {
    out.push_back(PredicateFromJson(a[i], Index(r.Path(key), i)));
  }
  return out;
}

json PredicatesJson(const std::vector<Predicate>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(ToJson(p));
  return a;
}

std::string_view ParamTypeName(ParamSpec::Type t) {
  switch (t) {
    case ParamSpec::Type::kEntity:
      return "entity";
    case ParamSpec::Type::kLocation:
      return "location";
    case ParamSpec::Type::kText:
      return "text";
  }
  return "entity";
}

ParamSpec::Type ParseParamType(const std::string& s, const std::string& path) {
  if (s == "entity") return ParamSpec::Type::kEntity;
  if (s == "location") return ParamSpec::Type::kLocation;
  if (s == "text") return ParamSpec::Type::kText;
  Invalid(path, "unknown parameter type '" + s + "'");
}

std::string_view KindName(CommandKind k) {
  return k == CommandKind::kEvent ? "event" : "action";
}

CommandKind ParseKind(const std::string& s, const std::string& path) {
  if (s == "action") return CommandKind::kAction;
  if (s == "event") return CommandKind::kEvent;
  Invalid(path, "unknown command kind '" + s + "'");
}

// --- geometry ----------------------------------------------------------------

json ToJson(const Point& p) { return json::array({p.x, p.y}); }

Point PointFromJson(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) Invalid(path, "expected [x, y]");
  return {Reader::AsNum(j[0], path + "[0]"), Reader::AsNum(j[1], path + "[1]")};
}

json SketchJson(const Sketch& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(json::array({p.x, p.y, p.t_ms}));
  return {{"points", pts}};
}

Sketch SketchFromJson(const json& j, const std::string& path, bool versioned) {
  Reader r(j, path);
  if (versioned) CheckVersion(r);
  Sketch s;
  const json& pts = r.Arr("points");
  for (size_t i = 0; i < pts.size(); ++i) {
    std::string p = Index(r.Path("points"), i);
    const json& v = pts[i];
    if (!v.is_array() || (v.size() != 2 && v.size() != 3)) {
      Invalid(p, "expected [x, y, t_ms]");
    }
    SketchPoint sp;
    sp.x = Reader::AsNum(v[0], p);
    sp.y = Reader::AsNum(v[1], p);
    sp.t_ms = v.size() == 3 ? Reader::AsNum(v[2], p) : 0.0;
    s.points.push_back(sp);
  }
  return s;
}

json MapJson(const MapModel& m) {
  json regions = json::array();
  for (const auto& r : m.regions) {
    json poly = json::array();
    for (const auto& p : r.polygon) poly.push_back(ToJson(p));
    regions.push_back({{"id", r.id}, {"label", r.label}, {"polygon", poly}});
  }
  json icons = json::array();
  for (const auto& i : m.icons) {
    icons.push_back({{"entity_id", i.entity_id}, {"position", ToJson(i.position)}});
  }
  return {{"frame", m.frame}, {"regions", regions}, {"icons", icons}};
}

MapModel MapFromJson(const json& j, const std::string& path, bool versioned) {
  Reader r(j, path);
  if (versioned) CheckVersion(r);
  MapModel m;
  m.frame = r.Str("frame", "map");
  const json& regions = r.Arr("regions");
  for (size_t i = 0; i < regions.size(); ++i) {
    Reader rr(regions[i], Index(r.Path("regions"), i));
    MapRegion reg;
    reg.id = rr.Str("id");
    reg.label = rr.Str("label", reg.id);
    const json& poly = rr.Arr("polygon");
    for (size_t k = 0; k < poly.size(); ++k) {
      reg.polygon.push_back(PointFromJson(poly[k], Index(rr.Path("polygon"), k)));
    }
    m.regions.push_back(std::move(reg));
  }
  if (const json* icons = r.OptArr("icons")) {
    for (size_t i = 0; i < icons->size(); ++i) {
      Reader ir((*icons)[i], Index(r.Path("icons"), i));
      MapIcon icon;
      icon.entity_id = ir.Str("entity_id");
      icon.position = PointFromJson(ir.Req("position"), ir.Path("position"));
      m.icons.push_back(std::move(icon));
    }
  }
  return m;
}

// --- world -------------------------------------------------------------------

json WorldJson(const World& w) {
  json entities = json::array();
  for (const auto& [id, e] : w.entities) {
    json placements = json::object();
    for (const auto& [loc, count] : e.placements) placements[loc] = count;
    entities.push_back({{"id", id},
                        {"type", e.type},
                        {"placements", placements},
                        {"provenance", std::string(ProvenanceName(e.provenance))}});
  }
  return {{"regions", w.regions},
          {"entities", entities},
          {"robot_at", w.robot_at ? json(*w.robot_at) : json(nullptr)},
          {"holding", w.holding ? json(*w.holding) : json(nullptr)}};
}

World WorldFromJson(const json& j, const std::string& path, bool versioned) {
  Reader r(j, path);
  if (versioned) CheckVersion(r);
  World w;
  for (auto& region : r.Strings("regions")) w.regions.insert(std::move(region));
  const json& entities = r.Arr("entities");
  for (size_t i = 0; i < entities.size(); ++i) {
    Reader er(entities[i], Index(r.Path("entities"), i));
    Entity e;
    e.id = er.Str("id");
    e.type = er.Str("type");
    const json& placements = er.Req("placements");
    if (!placements.is_object()) Invalid(er.Path("placements"), "expected an object");
    for (const auto& [loc, count] : placements.items()) {
      int64_t n = Reader::AsInt(count, er.Path("placements") + "." + loc);
      if (n < 0) Invalid(er.Path("placements") + "." + loc, "negative count");
      e.placements[loc] = static_cast<int>(n);
    }
    try {
      e.provenance = ParseProvenance(er.Str("provenance", "user"));
    } catch (const Error& err) {
      Invalid(er.Path("provenance"), err.what());
    }
    if (!w.entities.emplace(e.id, e).second) {
      Invalid(er.Path("id"), "duplicate entity '" + e.id + "'");
    }
  }
  w.robot_at = r.OptStr("robot_at");
  w.holding = r.OptStr("holding");
  return w;
}

// --- recordings, scripts, logs -------------------------------------------------

json RecordingJson(const Recording& rec) {
  json att = nullptr;
  if (rec.attachment) {
    att = {{"region", rec.attachment->region}, {"host", rec.attachment->host}};
  }
  return {{"id", rec.id},
          {"utterance", rec.utterance},
          {"sketch", SketchJson(rec.sketch)},
          {"attachment", att}};
}

Recording RecordingFromJson(const json& j, const std::string& path,
                            bool versioned) {
  Reader r(j, path);
  if (versioned) CheckVersion(r);
  Recording rec;
  rec.id = r.Str("id");
  rec.utterance = r.Str("utterance", "");
  rec.sketch = SketchFromJson(r.Req("sketch"), r.Path("sketch"), false);
  if (const json* att = r.Opt("attachment")) {
    Reader ar(*att, r.Path("attachment"));
    rec.attachment = AttachmentPoint{ar.Str("region", ""), ar.Str("host")};
  }
  return rec;
}

json TraceJson(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"event", OptCommand(s.event)},
                     {"action", ToJson(s.action)},
                     {"location", s.location},
                     {"region", s.region}});
  }
  return {{"steps", steps},
          {"loop_begin", t.loop_begin ? json(*t.loop_begin) : json(nullptr)}};
}

Trace TraceFromJson(const json& j, const std::string& path, bool versioned) {
  Reader r(j, path);
  if (versioned) CheckVersion(r);
  Trace t;
  const json& steps = r.Arr("steps");
  for (size_t i = 0; i < steps.size(); ++i) {
    Reader sr(steps[i], Index(r.Path("steps"), i));
    TraceStep s;
    if (const json* e = sr.Opt("event")) s.event = CommandFromJson(*e, sr.Path("event"));
    s.action = CommandFromJson(sr.Req("action"), sr.Path("action"));
    s.location = sr.Str("location", "");
    s.region = sr.Str("region", "");
    t.steps.push_back(std::move(s));
  }
  if (const json* lb = r.Opt("loop_begin")) {
    int64_t v = Reader::AsInt(*lb, r.Path("loop_begin"));
    if (v < 0) Invalid(r.Path("loop_begin"), "negative index");
    t.loop_begin = static_cast<size_t>(v);
  }
  return t;
}

json DeltaJson(const WorldDelta& d) {
  json ins = json::array();
  for (size_t i = 0; i < d.insertions.size(); ++i) {
    ins.push_back({{"entity_type", d.insertions[i].entity_type},
                   {"location", d.insertions[i].location},
                   {"entity_id", i < d.entity_ids.size() ? d.entity_ids[i] : ""}});
  }
  return {{"insertions", ins}};
}

WorldDelta DeltaFromJson(const json& j, const std::string& path, bool versioned) {
  Reader r(j, path);
  if (versioned) CheckVersion(r);
  WorldDelta d;
  const json& ins = r.Arr("insertions");
  for (size_t i = 0; i < ins.size(); ++i) {
    Reader ir(ins[i], Index(r.Path("insertions"), i));
    d.insertions.push_back({ir.Str("entity_type"), ir.Str("location")});
    d.entity_ids.push_back(ir.Str("entity_id", ""));
  }
  return d;
}

size_t Size(Reader& r, const std::string& key) {
  int64_t v = r.Int(key);
  if (v < 0) Invalid(r.Path(key), "negative index");
  return static_cast<size_t>(v);
}

json ProgramJson(const Program& p) {
  json states = json::array();
  for (const auto& s : p.states) {
    states.push_back({{"id", s.id},
                      {"action", ToJson(s.action)},
                      {"location", s.location},
                      {"region", s.region},
                      {"halt", s.halt}});
  }
  json transitions = json::array();
  for (const auto& t : p.transitions) {
    transitions.push_back({{"src", t.src},
                           {"dst", t.dst},
                           {"kind", std::string(LabelKindName(t.kind))},
                           {"event", OptCommand(t.event)},
                           {"guard", PredicatesJson(t.guard)}});
  }
  return {{"initial", p.initial},
          {"states", states},
          {"transitions", transitions},
          {"diagnostics", p.diagnostics}};
}

Program ProgramFromJson(const json& j, const std::string& path, bool versioned) {
  Reader r(j, path);
  if (versioned) CheckVersion(r);
  Program p;
  p.initial = Size(r, "initial");
  const json& states = r.Arr("states");
  for (size_t i = 0; i < states.size(); ++i) {
    Reader sr(states[i], Index(r.Path("states"), i));
    ProgramState s;
    s.id = Size(sr, "id");
    if (s.id != i) Invalid(sr.Path("id"), "state ids must be 0..n-1 in order");
    s.action = CommandFromJson(sr.Req("action"), sr.Path("action"));
    s.location = sr.Str("location", "");
    s.region = sr.Str("region", "");
    s.halt = sr.Bool("halt", false);
    p.states.push_back(std::move(s));
  }
  if (!p.states.empty() && p.initial >= p.states.size()) {
    Invalid(r.Path("initial"), "no such state");
  }
  const json& transitions = r.Arr("transitions");
  for (size_t i = 0; i < transitions.size(); ++i) {
    Reader tr(transitions[i], Index(r.Path("transitions"), i));
    Transition t;
    t.src = Size(tr, "src");
    t.dst = Size(tr, "dst");
    if (t.src >= p.states.size() || t.dst >= p.states.size()) {
      Invalid(tr.Path("src"), "transition references a missing state");
    }
    try {
      t.kind = ParseLabelKind(tr.Str("kind"));
    } catch (const Error& e) {
      Invalid(tr.Path("kind"), e.what());
    }
    if (const json* e = tr.Opt("event")) t.event = CommandFromJson(*e, tr.Path("event"));
    if (t.kind == LabelKind::kEvent && !t.event) {
      Invalid(tr.Path("event"), "event transitions need an event");
    }
    if (tr.Has("guard")) t.guard = Predicates(tr, "guard");
    p.transitions.push_back(std::move(t));
  }
  p.diagnostics = r.OptStrings("diagnostics");
  return p;
}

json SequenceJson(const RegionSequence& s) {
  return {{"regions", s.regions},
          {"self_loops", s.self_loops},
          {"attachment", s.attachment ? json(*s.attachment) : json(nullptr)}};
}

RegionSequence SequenceFromJson(const json& j, const std::string& path) {
  Reader r(j, path);
  RegionSequence s;
  s.regions = r.Strings("regions");
  const json& loops = r.Arr("self_loops");
  for (size_t i = 0; i < loops.size(); ++i) {
    int64_t v = Reader::AsInt(loops[i], Index(r.Path("self_loops"), i));
    if (v < 0) Invalid(Index(r.Path("self_loops"), i), "negative index");
    s.self_loops.insert(static_cast<size_t>(v));
  }
  s.attachment = r.OptStr("attachment");
  return s;
}

json ResultJson(const RecordingResult& res) {
  json cores = json::array();
  for (const auto& c : res.cores) {
    cores.push_back({{"command", ToJson(c.command)},
                     {"clause_order", c.clause_order},
                     {"gate", c.gate}});
  }
  return {{"recording", res.recording},
          {"cores", cores},
          {"sequence", SequenceJson(res.sequence)},
          {"extended", SequenceJson(res.extended)},
          {"trace", TraceJson(res.trace)},
          {"delta", DeltaJson(res.delta)},
          {"cost", res.cost}};
}

RecordingResult ResultFromJson(const json& j, const std::string& path) {
  Reader r(j, path);
  RecordingResult res;
  res.recording = r.Str("recording");
  const json& cores = r.Arr("cores");
  for (size_t i = 0; i < cores.size(); ++i) {
    Reader cr(cores[i], Index(r.Path("cores"), i));
    CoreCommand c;
    c.command = CommandFromJson(cr.Req("command"), cr.Path("command"));
    c.clause_order = Size(cr, "clause_order");
    c.gate = cr.Bool("gate", false);
    res.cores.push_back(std::move(c));
  }
  res.sequence = SequenceFromJson(r.Req("sequence"), r.Path("sequence"));
  res.extended = SequenceFromJson(r.Req("extended"), r.Path("extended"));
  res.trace = TraceFromJson(r.Req("trace"), r.Path("trace"), false);
  res.delta = DeltaFromJson(r.Req("delta"), r.Path("delta"), false);
  res.cost = r.Num("cost");
  return res;
}

}  // namespace

// --- public API ----------------------------------------------------------------

std::string EncodeDomain(const DomainDocument& doc) {
  json categories = json::array();
  for (const auto& c : doc.categories) {
    categories.push_back({{"name", c.name}, {"parents", c.parents}});
  }
  json types = json::array();
  for (const auto& t : doc.entity_types) {
    types.push_back({{"name", t.name}, {"categories", t.categories}});
  }
  json commands = json::array();
  for (const auto& s : doc.commands) {
    json params = json::array();
    for (const auto& p : s.params) {
      json pj = {{"name", p.name}, {"type", std::string(ParamTypeName(p.type))}};
      if (!p.category.empty()) pj["category"] = p.category;
      params.push_back(pj);
    }
    commands.push_back({{"name", s.name},
                        {"kind", std::string(KindName(s.kind))},
                        {"params", params},
                        {"preconditions", PredicatesJson(s.preconditions)},
                        {"postconditions", PredicatesJson(s.postconditions)}});
  }
  json j = {{"categories", categories},
            {"entity_types", types},
            {"commands", commands}};
  j["format_version"] = doc.format_version;
  return Dump(j);
}

DomainDocument DecodeDomain(std::string_view text) {
  json j = Parse(text);
  Reader r(j, "");
  CheckVersion(r);
  DomainDocument doc;
  const json& categories = r.Arr("categories");
  for (size_t i = 0; i < categories.size(); ++i) {
    Reader cr(categories[i], Index("categories", i));
    doc.categories.push_back({cr.Str("name"), cr.OptStrings("parents")});
  }
  const json& types = r.Arr("entity_types");
  for (size_t i = 0; i < types.size(); ++i) {
    Reader tr(types[i], Index("entity_types", i));
    doc.entity_types.push_back({tr.Str("name"), tr.Strings("categories")});
  }
  const json& commands = r.Arr("commands");
  for (size_t i = 0; i < commands.size(); ++i) {
    Reader cr(commands[i], Index("commands", i));
    CommandSchema s;
    s.name = cr.Str("name");
    s.kind = ParseKind(cr.Str("kind"), cr.Path("kind"));
    const json& params = cr.Arr("params");
    for (size_t k = 0; k < params.size(); ++k) {
      Reader pr(params[k], Index(cr.Path("params"), k));
      ParamSpec p;
      p.name = pr.Str("name");
      p.type = ParseParamType(pr.Str("type"), pr.Path("type"));
      p.category = pr.Str("category", "");
      s.params.push_back(std::move(p));
    }
    s.preconditions = Predicates(cr, "preconditions");
    s.postconditions = Predicates(cr, "postconditions");
    doc.commands.push_back(std::move(s));
  }
  return doc;
}

std::string EncodeLexicon(const LexiconDocument& doc) {
  json j = {{"verbs", doc.verbs},
            {"nouns", doc.nouns},
            {"event_keywords", doc.event_keywords},
            {"pronouns", doc.pronouns},
            {"stop_words", doc.stop_words}};
  j["format_version"] = doc.format_version;
  return Dump(j);
}

LexiconDocument DecodeLexicon(std::string_view text) {
  json j = Parse(text);
  Reader r(j, "");
  CheckVersion(r);
  LexiconDocument doc;
  const json& verbs = r.Req("verbs");
  if (!verbs.is_object()) Invalid("verbs", "expected an object");
  for (const auto& [verb, targets] : verbs.items()) {
    std::string p = "verbs." + verb;
    if (targets.is_string()) {
      doc.verbs[verb] = {targets.get<std::string>()};
      continue;
    }
    if (!targets.is_array() || targets.empty()) {
      Invalid(p, "expected a non-empty array of command names");
    }
    for (size_t i = 0; i < targets.size(); ++i) {
      doc.verbs[verb].push_back(Reader::AsStr(targets[i], Index(p, i)));
    }
  }
  if (const json* nouns = r.Opt("nouns")) {
    if (!nouns->is_object()) Invalid("nouns", "expected an object");
    for (const auto& [noun, target] : nouns->items()) {
      doc.nouns[noun] = Reader::AsStr(target, "nouns." + noun);
    }
  }
  if (r.Has("event_keywords")) doc.event_keywords = r.Strings("event_keywords");
  if (r.Has("pronouns")) doc.pronouns = r.Strings("pronouns");
  doc.stop_words = r.OptStrings("stop_words");
  return doc;
}

std::string EncodeMap(const MapModel& map) { return Dump(Versioned(MapJson(map))); }
MapModel DecodeMap(std::string_view text) {
  return MapFromJson(Parse(text), "", true);
}

std::string EncodeWorld(const World& world) {
  return Dump(Versioned(WorldJson(world)));
}
World DecodeWorld(std::string_view text) {
  return WorldFromJson(Parse(text), "", true);
}

std::string EncodeSketch(const Sketch& sketch) {
  return Dump(Versioned(SketchJson(sketch)));
}
Sketch DecodeSketch(std::string_view text) {
  return SketchFromJson(Parse(text), "", true);
}

std::string EncodeRecording(const Recording& recording) {
  return Dump(Versioned(RecordingJson(recording)));
}
Recording DecodeRecording(std::string_view text) {
  return RecordingFromJson(Parse(text), "", true);
}

std::string EncodeScript(const Script& script) {
  json stimuli = json::array();
  for (const auto& s : script.stimuli) {
    stimuli.push_back(s.is_tick() ? json("tick") : ToJson(*s.event));
  }
  return Dump(Versioned({{"stimuli", stimuli}}));
}

Script DecodeScript(std::string_view text) {
  json j = Parse(text);
  Reader r(j, "");
  CheckVersion(r);
  Script script;
  const json& stimuli = r.Arr("stimuli");
  for (size_t i = 0; i < stimuli.size(); ++i) {
    const json& s = stimuli[i];
    if (s.is_string()) {
      if (s.get<std::string>() != "tick") {
        Invalid(Index("stimuli", i), "expected \"tick\" or an event");
      }
      script.stimuli.push_back(Stimulus::Tick());
    } else {
      script.stimuli.push_back(
          Stimulus::Event(CommandFromJson(s, Index("stimuli", i))));
    }
  }
  return script;
}

std::string EncodeLog(const ExecState& state) {
  json entries = json::array();
  for (const auto& e : state.log) {
    entries.push_back({{"state", e.state},
                       {"action", ToJson(e.action)},
                       {"trigger", OptCommand(e.trigger)}});
  }
  return Dump(Versioned({{"entries", entries},
                         {"current", state.current},
                         {"halted", state.halted},
                         {"world", WorldJson(state.world)}}));
}

ExecState DecodeLog(std::string_view text) {
  json j = Parse(text);
  Reader r(j, "");
  CheckVersion(r);
  ExecState s;
  const json& entries = r.Arr("entries");
  for (size_t i = 0; i < entries.size(); ++i) {
    Reader er(entries[i], Index("entries", i));
    LogEntry e;
    e.state = Size(er, "state");
    e.action = CommandFromJson(er.Req("action"), er.Path("action"));
    if (const json* t = er.Opt("trigger")) e.trigger = CommandFromJson(*t, er.Path("trigger"));
    s.log.push_back(std::move(e));
  }
  s.current = Size(r, "current");
  s.halted = r.Bool("halted", false);
  s.world = WorldFromJson(r.Req("world"), "world", false);
  return s;
}

std::string EncodeTrace(const Trace& trace) {
  return Dump(Versioned(TraceJson(trace)));
}
Trace DecodeTrace(std::string_view text) {
  return TraceFromJson(Parse(text), "", true);
}

std::string EncodeDelta(const WorldDelta& delta) {
  return Dump(Versioned(DeltaJson(delta)));
}
WorldDelta DecodeDelta(std::string_view text) {
  return DeltaFromJson(Parse(text), "", true);
}

std::string EncodeProgram(const Program& program) {
  return Dump(Versioned(ProgramJson(program)));
}
Program DecodeProgram(std::string_view text) {
  return ProgramFromJson(Parse(text), "", true);
}

std::string EncodeBundle(const SessionBundle& b) {
  json recordings = json::array();
  for (const auto& rec : b.recordings) recordings.push_back(RecordingJson(rec));
  json results = json::array();
  for (const auto& res : b.results) results.push_back(ResultJson(res));
  return Dump(Versioned(
      {{"domain", b.domain},
       {"map", MapJson(b.map)},
       {"world", WorldJson(b.world)},
       {"recordings", recordings},
       {"program", b.program ? ProgramJson(*b.program) : json(nullptr)},
       {"results", results},
       {"delta", DeltaJson(b.delta)},
       {"synthesized_world",
        b.synthesized_world ? WorldJson(*b.synthesized_world) : json(nullptr)},
       {"diagnostics", b.diagnostics}}));
}

SessionBundle DecodeBundle(std::string_view text) {
  json j = Parse(text);
  Reader r(j, "");
  CheckVersion(r);
  SessionBundle b;
  b.domain = r.Str("domain", "default");
  b.map = MapFromJson(r.Req("map"), "map", false);
  b.world = WorldFromJson(r.Req("world"), "world", false);
  const json& recordings = r.Arr("recordings");
  for (size_t i = 0; i < recordings.size(); ++i) {
    b.recordings.push_back(
        RecordingFromJson(recordings[i], Index("recordings", i), false));
  }
  if (const json* p = r.Opt("program")) b.program = ProgramFromJson(*p, "program", false);
  if (const json* results = r.OptArr("results")) {
    for (size_t i = 0; i < results->size(); ++i) {
      b.results.push_back(ResultFromJson((*results)[i], Index("results", i)));
    }
  }
  if (const json* d = r.Opt("delta")) b.delta = DeltaFromJson(*d, "delta", false);
  if (const json* w = r.Opt("synthesized_world")) {
    b.synthesized_world = WorldFromJson(*w, "synthesized_world", false);
  }
  b.diagnostics = r.OptStrings("diagnostics");
  return b;
}

Command ParseCommandLiteral(const Domain& domain, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  size_t colon = text.find(':');
  std::string name(trim(text.substr(0, colon)));
  const CommandSchema* schema = domain.FindSchema(name);
  if (!schema) {
    throw Error(ErrorCode::kInvalidDocument, "unknown command '" + name + "'");
  }
  Command c{schema->name, {}};
  if (colon == std::string_view::npos) return c;
  std::string_view rest = text.substr(colon + 1);
  size_t i = 0;
  while (i < rest.size()) {
    while (i < rest.size() && (std::isspace(static_cast<unsigned char>(rest[i])) || rest[i] == ',')) ++i;
    if (i >= rest.size()) break;
    if (rest[i] == '"') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < rest.size()) {
        if (rest[i] == '\\' && i + 1 < rest.size()) {
          value += rest[i + 1];
          i += 2;
        } else if (rest[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          value += rest[i++];
        }
      }
      if (!closed) throw Error(ErrorCode::kInvalidDocument, "unterminated quote");
      c.args.push_back(Arg::Text(std::move(value)));
    } else {
      size_t end = rest.find(',', i);
      std::string value(trim(rest.substr(i, end == std::string_view::npos ? end : end - i)));
      size_t k = c.args.size();
      bool text_param = k < schema->params.size() &&
                        schema->params[k].type == ParamSpec::Type::kText;
      c.args.push_back(text_param ? Arg::Text(value) : Arg::Entity(value));
      i = end == std::string_view::npos ? rest.size() : end;
    }
  }
  if (c.args.size() != schema->params.size()) {
    throw Error(ErrorCode::kInvalidDocument,
                "command '" + name + "' takes " +
                    std::to_string(schema->params.size()) + " arguments");
  }
  return c;
}

const Domain& DefaultDomain() {
  static const Domain domain = LoadDomain(DecodeDomain(BundledDomainDocument()),
                                          DecodeLexicon(BundledLexiconDocument()));
  return domain;
}

std::string EncodeCorpusCase(const CorpusCase& c) {
  json entities = json::array();
  for (const auto& e : c.entities) {
    entities.push_back({{"id", e.id},
                        {"type", e.type},
                        {"location", e.location},
                        {"units", e.units}});
  }
  json recordings = json::array();
  for (const auto& rec : c.recordings) {
    json att = nullptr;
    if (rec.attachment) {
      att = {{"region", rec.attachment->region}, {"host", rec.attachment->host}};
    }
    recordings.push_back({{"id", rec.id},
                          {"utterance", rec.utterance},
                          {"waypoints", rec.waypoints},
                          {"self_loops", rec.self_loops},
                          {"attachment", att}});
  }
  json expect = {{"traces", c.expect.traces},
                 {"script", c.expect.script},
                 {"log", c.expect.log}};
  if (c.expect.halted) expect["halted"] = *c.expect.halted;
  if (c.expect.deterministic) expect["deterministic"] = *c.expect.deterministic;
  if (c.expect.inserted_types) expect["inserted_types"] = *c.expect.inserted_types;
  return Dump(Versioned({{"id", c.id},
                         {"scenario", c.scenario},
                         {"description", c.description},
                         {"map", c.map},
                         {"entities", entities},
                         {"robot_at", c.robot_at ? json(*c.robot_at) : json(nullptr)},
                         {"recordings", recordings},
                         {"expect", expect}}));
}

CorpusCase DecodeCorpusCase(std::string_view text) {
  json j = Parse(text);
  Reader r(j, "");
  CheckVersion(r);
  CorpusCase c;
  c.id = r.Str("id");
  c.scenario = r.Str("scenario");
  c.description = r.Str("description", "");
  c.map = r.Str("map");
  if (const json* entities = r.OptArr("entities")) {
    for (size_t i = 0; i < entities->size(); ++i) {
      Reader er((*entities)[i], Index("entities", i));
      CorpusEntity e;
      e.id = er.Str("id");
      e.type = er.Str("type", e.id);
      e.location = er.Str("location");
      if (er.Has("units")) e.units = static_cast<int>(er.Int("units"));
      if (e.units < 1) Invalid(er.Path("units"), "must be positive");
      c.entities.push_back(std::move(e));
    }
  }
  c.robot_at = r.OptStr("robot_at");
  const json& recordings = r.Arr("recordings");
  for (size_t i = 0; i < recordings.size(); ++i) {
    Reader rr(recordings[i], Index("recordings", i));
    CorpusRecording rec;
    rec.id = rr.Str("id");
    rec.utterance = rr.Str("utterance", "");
    rec.waypoints = rr.Strings("waypoints");
    if (const json* loops = rr.OptArr("self_loops")) {
      for (size_t k = 0; k < loops->size(); ++k) {
        int64_t v = Reader::AsInt((*loops)[k], Index(rr.Path("self_loops"), k));
        if (v < 0 || static_cast<size_t>(v) >= rec.waypoints.size()) {
          Invalid(Index(rr.Path("self_loops"), k), "waypoint index out of range");
        }
        rec.self_loops.insert(static_cast<size_t>(v));
      }
    }
    if (const json* att = rr.Opt("attachment")) {
      Reader ar(*att, rr.Path("attachment"));
      rec.attachment = AttachmentPoint{ar.Str("region", ""), ar.Str("host")};
    }
    c.recordings.push_back(std::move(rec));
  }
  if (const json* e = r.Opt("expect")) {
    Reader er(*e, "expect");
    c.expect.traces = er.OptStrings("traces");
    c.expect.script = er.OptStrings("script");
    c.expect.log = er.OptStrings("log");
    if (er.Has("halted")) c.expect.halted = er.Bool("halted", false);
    if (er.Has("deterministic")) c.expect.deterministic = er.Bool("deterministic", true);
    if (er.Has("inserted_types")) c.expect.inserted_types = er.Strings("inserted_types");
  }
  return c;
}

}  // namespace sketchsynth
