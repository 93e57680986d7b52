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

#include "sketchsynth/knowledge.h"

#include <algorithm>
#include <cctype>
#include <functional>

#include "sketchsynth/error.h"

namespace sketchsynth {

std::string ToLower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view PredicateNameString(PredicateName name) {
  switch (name) {
    case PredicateName::kRobotAt: return "robot_at";
    case PredicateName::kHolding: return "holding";
    case PredicateName::kHandsFree: return "hands_free";
    case PredicateName::kAt: return "at";
    case PredicateName::kExists: return "exists";
  }
  return "hands_free";
}

PredicateName ParsePredicateName(std::string_view name) {
  for (auto p : {PredicateName::kRobotAt, PredicateName::kHolding,
                 PredicateName::kHandsFree, PredicateName::kAt,
                 PredicateName::kExists}) {
    if (PredicateNameString(p) == name) return p;
  }
  throw Error(ErrorCode::kInvalidDocument,
              "unknown predicate '" + std::string(name) + "'");
}

namespace {

size_t Arity(PredicateName name) {
  switch (name) {
    case PredicateName::kHandsFree: return 0;
    case PredicateName::kAt: return 2;
    default: return 1;
  }
}

bool IsVariable(std::string_view arg) {
  return !arg.empty() && (arg.front() == '$' || arg.front() == '@');
}

}  // namespace

bool Predicate::IsGround() const {
  return std::none_of(args.begin(), args.end(),
                      [](const std::string& a) { return IsVariable(a); });
}

std::string ToString(const Predicate& predicate) {
  std::string out = predicate.negated ? "not " : "";
  out += PredicateNameString(predicate.name);
  if (!predicate.args.empty()) {
    out += "(";
    for (size_t i = 0; i < predicate.args.size(); ++i) {
      if (i) out += ", ";
      out += predicate.args[i];
    }
    out += ")";
  }
  return out;
}

std::optional<size_t> CommandSchema::ParamIndex(std::string_view param) const {
  for (size_t i = 0; i < params.size(); ++i) {
    if (params[i].name == param) return i;
  }
  return std::nullopt;
}

std::vector<size_t> CommandSchema::ParamsUsedBy(PredicateName predicate) const {
  std::vector<size_t> out;
  for (const auto& pre : preconditions) {
    if (pre.name != predicate || pre.negated || pre.args.empty()) continue;
    const std::string& a = pre.args.front();
    if (a.size() > 1 && a.front() == '$') {
      if (auto idx = ParamIndex(std::string_view(a).substr(1))) {
        out.push_back(*idx);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Domain
// ---------------------------------------------------------------------------

const CommandSchema* Domain::FindSchema(std::string_view name) const {
  const std::string key = ToLower(name);
  for (const auto& s : schemas_) {
    if (ToLower(s.name) == key) return &s;
  }
  return nullptr;
}

const EntityType* Domain::FindType(std::string_view name) const {
  const std::string key = ToLower(name);
  for (const auto& t : types_) {
    if (t.name == key) return &t;
  }
  return nullptr;
}

bool Domain::HasCategory(std::string_view name) const {
  return categories_.count(ToLower(name)) > 0;
}

bool Domain::IsA(std::string_view type_name, std::string_view category) const {
  auto it = closure_.find(ToLower(type_name));
  if (it == closure_.end()) {
    throw Error(ErrorCode::kUnknownType,
                "unknown entity type '" + std::string(type_name) + "'");
  }
  return it->second.count(ToLower(category)) > 0;
}

std::vector<std::string> Domain::TypesInCategory(
    std::string_view category) const {
  std::vector<std::string> out;
  for (const auto& [type, closure] : closure_) {
    if (closure.count(ToLower(category))) out.push_back(type);
  }
  return out;
}

Domain LoadDomain(const DomainDocument& doc, const LexiconDocument& lexicon) {
  Domain d;

  for (const auto& c : doc.categories) {
    const std::string name = ToLower(c.name);
    if (name.empty() || !d.categories_.insert(name).second) {
      throw Error(ErrorCode::kDuplicateName,
                  "duplicate category '" + c.name + "'");
    }
  }
  for (const auto& c : doc.categories) {
    auto& parents = d.category_parents_[ToLower(c.name)];
    for (const auto& p : c.parents) {
      if (!d.categories_.count(ToLower(p))) {
        throw Error(ErrorCode::kUnknownCategory,
                    "category '" + c.name + "' has unknown parent '" + p + "'");
      }
      parents.push_back(ToLower(p));
    }
  }

  std::set<std::string> type_names;
  for (const auto& t : doc.entity_types) {
    EntityType type{ToLower(t.name), {}};
    if (type.name.empty() || !type_names.insert(type.name).second) {
      throw Error(ErrorCode::kDuplicateName,
                  "duplicate entity type '" + t.name + "'");
    }
    for (const auto& c : t.categories) type.categories.push_back(ToLower(c));
    d.types_.push_back(std::move(type));
  }
  // An entity type may list categories or other entity types ("kitchen
  // cabinets" is a "cabinet", which is a "container").
  for (const auto& t : d.types_) {
    for (const auto& c : t.categories) {
      if (!d.categories_.count(c) && !type_names.count(c)) {
        throw Error(ErrorCode::kUnknownCategory,
                    "entity type '" + t.name + "' has unknown category '" + c +
                        "'");
      }
    }
  }

  std::map<std::string, std::vector<std::string>> edges = d.category_parents_;
  for (const auto& t : d.types_) edges[t.name] = t.categories;

  // Reflexive-transitive closure with cycle detection.
  std::map<std::string, int> mark;  // 0 new, 1 on stack, 2 done
  std::map<std::string, std::set<std::string>> closure;
  std::function<const std::set<std::string>&(const std::string&)> visit =
      [&](const std::string& node) -> const std::set<std::string>& {
    int& m = mark[node];
    if (m == 1) {
      throw Error(ErrorCode::kInvalidDocument,
                  "category graph has a cycle through '" + node + "'");
    }
    if (m == 2) return closure[node];
    m = 1;
    std::set<std::string> acc = {node};
    for (const auto& next : edges[node]) {
      const auto& sub = visit(next);
      acc.insert(sub.begin(), sub.end());
    }
    mark[node] = 2;
    closure[node] = std::move(acc);
    return closure[node];
  };
  for (const auto& [node, _] : edges) visit(node);
  for (const auto& t : d.types_) d.closure_[t.name] = closure[t.name];

  std::set<std::string> schema_names;
  for (const auto& s : doc.commands) {
    if (s.name.empty() || !schema_names.insert(ToLower(s.name)).second) {
      throw Error(ErrorCode::kDuplicateName,
                  "duplicate command schema '" + s.name + "'");
    }
    CommandSchema schema = s;
    for (auto& p : schema.params) {
      p.category = ToLower(p.category);
      if (!p.category.empty() && !d.categories_.count(p.category) &&
          !type_names.count(p.category)) {
        throw Error(ErrorCode::kUnknownCategory,
                    "schema '" + s.name + "' parameter '" + p.name +
                        "' requires unknown category '" + p.category + "'");
      }
    }
    auto check_predicates = [&](const std::vector<Predicate>& preds) {
      for (const auto& pred : preds) {
        if (pred.args.size() != Arity(pred.name)) {
          throw Error(ErrorCode::kInvalidDocument,
                      "schema '" + s.name + "': wrong arity for " +
                          ToString(pred));
        }
        for (const auto& a : pred.args) {
          if (a == "@here") continue;
          if (a.size() < 2 || a.front() != '$' ||
              !schema.ParamIndex(std::string_view(a).substr(1))) {
            throw Error(ErrorCode::kInvalidDocument,
                        "schema '" + s.name + "': unbound variable '" + a +
                            "'");
          }
        }
      }
    };
    check_predicates(schema.preconditions);
    check_predicates(schema.postconditions);
    if (schema.kind == CommandKind::kEvent) {
      for (const auto& post : schema.postconditions) {
        if (post.name == PredicateName::kRobotAt) {
          throw Error(ErrorCode::kInvalidDocument,
                      "event schema '" + s.name + "' may not move the robot");
        }
      }
    }
    d.schemas_.push_back(std::move(schema));
  }

  for (const auto& [verb, targets] : lexicon.verbs) {
    auto& out = d.verbs_[ToLower(verb)];
    for (const auto& target : targets) {
      const CommandSchema* schema = d.FindSchema(target);
      if (!schema) {
        throw Error(ErrorCode::kLexiconTargetMissing,
                    "verb '" + verb + "' maps to unknown schema '" + target +
                        "'");
      }
      out.push_back(schema->name);
    }
  }
  for (const auto& [noun, target] : lexicon.nouns) {
    if (!type_names.count(ToLower(target))) {
      throw Error(ErrorCode::kLexiconTargetMissing,
                  "noun '" + noun + "' maps to unknown entity type '" +
                      target + "'");
    }
    d.nouns_[ToLower(noun)] = ToLower(target);
  }
  for (const auto& k : lexicon.event_keywords) {
    d.event_keywords_.push_back(ToLower(k));
  }
  for (const auto& p : lexicon.pronouns) d.pronouns_.push_back(ToLower(p));
  for (const auto& w : lexicon.stop_words) d.stop_words_.push_back(ToLower(w));
  return d;
}

// ---------------------------------------------------------------------------
// World
// ---------------------------------------------------------------------------

std::string_view ProvenanceName(Provenance provenance) {
  return provenance == Provenance::kUser ? "user" : "synthesized";
}

Provenance ParseProvenance(std::string_view name) {
  if (name == "user") return Provenance::kUser;
  if (name == "synthesized") return Provenance::kSynthesized;
  throw Error(ErrorCode::kInvalidDocument,
              "unknown provenance '" + std::string(name) + "'");
}

int Entity::Units() const {
  int n = 0;
  for (const auto& [_, count] : placements) n += count;
  return n;
}

std::optional<std::string> Entity::PrimaryLocation() const {
  for (const auto& [loc, count] : placements) {
    if (count > 0) return loc;
  }
  return std::nullopt;
}

bool LocationExists(const World& world, std::string_view location) {
  const std::string key(location);
  return world.regions.count(key) || world.entities.count(key);
}

std::vector<std::string> ContainmentChain(const World& world,
                                          std::string_view location) {
  std::vector<std::string> chain = {std::string(location)};
  std::set<std::string> seen = {chain.back()};
  while (true) {
    auto it = world.entities.find(chain.back());
    if (it == world.entities.end()) break;
    auto next = it->second.PrimaryLocation();
    if (!next || !seen.insert(*next).second) break;
    chain.push_back(*next);
  }
  return chain;
}

std::optional<std::string> RegionOf(const World& world,
                                    std::string_view location) {
  auto chain = ContainmentChain(world, location);
  if (world.regions.count(chain.back())) return chain.back();
  return std::nullopt;
}

namespace {

// True if some unit of `entity` sits at a location whose chain passes through
// `location`.
bool HasUnitWithin(const World& world, const Entity& entity,
                   std::string_view location) {
  for (const auto& [loc, count] : entity.placements) {
    if (count <= 0) continue;
    for (const auto& c : ContainmentChain(world, loc)) {
      if (c == location) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> EntitiesAt(const Domain& domain, const World& world,
                                    std::string_view location,
                                    const std::optional<std::string>& category) {
  if (!LocationExists(world, location)) {
    throw Error(ErrorCode::kUnknownLocation,
                "unknown location '" + std::string(location) + "'");
  }
  std::vector<std::string> out;
  for (const auto& [id, entity] : world.entities) {
    if (id == location) continue;
    if (!HasUnitWithin(world, entity, location)) continue;
    if (category && !domain.IsA(entity.type, *category)) continue;
    out.push_back(id);
  }
  return out;
}

InsertResult WorldInsert(const Domain& domain, const World& world,
                         std::string_view entity_type,
                         std::string_view location, Provenance provenance,
                         int units) {
  const EntityType* type = domain.FindType(entity_type);
  if (!type) {
    throw Error(ErrorCode::kUnknownType,
                "unknown entity type '" + std::string(entity_type) + "'");
  }
  if (!LocationExists(world, location)) {
    throw Error(ErrorCode::kUnknownLocation,
                "unknown location '" + std::string(location) + "'");
  }
  std::string id = type->name;
  for (int n = 2; world.entities.count(id) || world.regions.count(id); ++n) {
    id = type->name + "_" + std::to_string(n);
  }
  InsertResult result{world, id};
  Entity entity;
  entity.id = id;
  entity.type = type->name;
  entity.placements[std::string(location)] = units;
  entity.provenance = provenance;
  result.world.entities.emplace(id, std::move(entity));
  return result;
}

void ValidateWorld(const Domain& domain, const World& world) {
  for (const auto& [id, entity] : world.entities) {
    if (id != entity.id || id.empty()) {
      throw Error(ErrorCode::kInvalidDocument,
                  "entity key/id mismatch for '" + id + "'");
    }
    if (world.regions.count(id)) {
      throw Error(ErrorCode::kDuplicateName,
                  "entity '" + id + "' shadows a region id");
    }
    if (!domain.FindType(entity.type)) {
      throw Error(ErrorCode::kUnknownType, "entity '" + id +
                                               "' has unknown type '" +
                                               entity.type + "'");
    }
    for (const auto& [loc, count] : entity.placements) {
      if (count < 0) {
        throw Error(ErrorCode::kInvalidDocument,
                    "entity '" + id + "' has a negative unit count");
      }
      if (!LocationExists(world, loc) || loc == id) {
        throw Error(ErrorCode::kUnknownLocation,
                    "entity '" + id + "' placed at unknown location '" + loc +
                        "'");
      }
    }
    // Containment must bottom out in a region.
    auto chain = ContainmentChain(world, id);
    auto last = world.entities.find(chain.back());
    if (last != world.entities.end() && last->second.PrimaryLocation()) {
      throw Error(ErrorCode::kInvalidDocument,
                  "containment cycle through '" + id + "'");
    }
  }
  if (world.robot_at && !LocationExists(world, *world.robot_at)) {
    throw Error(ErrorCode::kUnknownLocation,
                "robot placed at unknown location '" + *world.robot_at + "'");
  }
  if (world.holding && !world.entities.count(*world.holding)) {
    throw Error(ErrorCode::kUnknownEntity,
                "robot holds unknown entity '" + *world.holding + "'");
  }
}

bool EvalPredicate(const World& world, const Predicate& predicate) {
  if (!predicate.IsGround()) {
    throw Error(ErrorCode::kUngroundPredicate,
                "cannot evaluate unground predicate " + ToString(predicate));
  }
  bool value = false;
  const auto& a = predicate.args;
  switch (predicate.name) {
    case PredicateName::kRobotAt:
      value = world.robot_at && *world.robot_at == a[0];
      break;
    case PredicateName::kHolding:
      value = world.holding && *world.holding == a[0];
      break;
    case PredicateName::kHandsFree:
      value = !world.holding.has_value();
      break;
    case PredicateName::kAt: {
      auto it = world.entities.find(a[0]);
      value = it != world.entities.end() && a[0] != a[1] &&
              HasUnitWithin(world, it->second, a[1]);
      break;
    }
    case PredicateName::kExists: {
      auto it = world.entities.find(a[0]);
      value = (it != world.entities.end() && it->second.Units() > 0) ||
              (world.holding && *world.holding == a[0]);
      break;
    }
  }
  return predicate.negated ? !value : value;
}

Predicate GroundPredicate(const CommandSchema& schema, const Command& command,
                          const Predicate& templ, const World& world) {
  Predicate out = templ;
  for (auto& a : out.args) {
    if (a == "@here") {
      a = world.robot_at.value_or("");
      continue;
    }
    auto idx = schema.ParamIndex(std::string_view(a).substr(1));
    if (!idx || *idx >= command.args.size()) {
      throw Error(ErrorCode::kUngroundPredicate,
                  "no argument for '" + a + "' in " + ToString(command));
    }
    const Arg& arg = command.args[*idx];
    if (arg.kind == Arg::Kind::kHole || arg.kind == Arg::Kind::kType) {
      throw Error(ErrorCode::kUngroundPredicate,
                  "argument '" + a + "' of " + ToString(command) +
                      " is not ground");
    }
    a = arg.value;
  }
  return out;
}

namespace {

const CommandSchema& SchemaOf(const Domain& domain, const Command& command) {
  const CommandSchema* schema = domain.FindSchema(command.schema);
  if (!schema) {
    throw Error(ErrorCode::kUnknownType,
                "unknown command schema '" + command.schema + "'");
  }
  return *schema;
}

}  // namespace

std::vector<Predicate> FailedPreconditions(const Domain& domain,
                                           const World& world,
                                           const Command& command) {
  const CommandSchema& schema = SchemaOf(domain, command);
  std::vector<Predicate> failed;
  for (const auto& pre : schema.preconditions) {
    Predicate g = GroundPredicate(schema, command, pre, world);
    if (!EvalPredicate(world, g)) failed.push_back(std::move(g));
  }
  return failed;
}

bool PreconditionsHold(const Domain& domain, const World& world,
                       const Command& command) {
  return FailedPreconditions(domain, world, command).empty();
}

World ApplyCommand(const Domain& domain, const World& world,
                   const Command& command) {
  const CommandSchema& schema = SchemaOf(domain, command);
  World next = world;
  auto fault = [&](const std::string& why) {
    return Error(ErrorCode::kRuntimeFault, ToString(command) + ": " + why);
  };

  // Additions first so a put's "not holding" sees the unit already placed.
  for (const auto& templ : schema.postconditions) {
    if (templ.negated) continue;
    Predicate p = GroundPredicate(schema, command, templ, world);
    switch (p.name) {
      case PredicateName::kRobotAt:
        next.robot_at = p.args[0];
        break;
      case PredicateName::kHolding: {
        if (next.holding) throw fault("hands are not free");
        auto it = next.entities.find(p.args[0]);
        if (it == next.entities.end()) throw fault("no such entity");
        const std::string here = world.robot_at.value_or("");
        std::optional<std::string> from;
        for (const auto& [loc, count] : it->second.placements) {
          if (count <= 0) continue;
          for (const auto& c : ContainmentChain(next, loc)) {
            if (c == here) {
              from = loc;
              break;
            }
          }
          if (from) break;
        }
        if (!from) throw fault("entity is not at the robot's location");
        if (--it->second.placements[*from] == 0) {
          it->second.placements.erase(*from);
        }
        next.holding = p.args[0];
        break;
      }
      case PredicateName::kAt: {
        auto it = next.entities.find(p.args[0]);
        if (it == next.entities.end()) throw fault("no such entity");
        if (next.holding && *next.holding == p.args[0]) {
          next.holding.reset();
          it->second.placements[p.args[1]] += 1;
        } else if (!EvalPredicate(next, p)) {
          throw fault("entity is neither held nor already in place");
        }
        break;
      }
      case PredicateName::kHandsFree:
      case PredicateName::kExists:
        break;
    }
  }
  for (const auto& templ : schema.postconditions) {
    if (!templ.negated) continue;
    Predicate p = GroundPredicate(schema, command, templ, world);
    if (p.name == PredicateName::kHolding && next.holding &&
        *next.holding == p.args[0]) {
      throw fault("held entity would be discarded");
    }
  }
  return next;
}

}  // namespace sketchsynth
