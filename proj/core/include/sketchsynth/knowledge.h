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

#ifndef SKETCHSYNTH_KNOWLEDGE_H_
#define SKETCHSYNTH_KNOWLEDGE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sketchsynth/command.h"

namespace sketchsynth {

// ---------------------------------------------------------------------------
// Domain: the fixed ontology. Entity types, categories, command schemas and
// the lexicons the parser grounds words against.
// ---------------------------------------------------------------------------

enum class PredicateName { kRobotAt, kHolding, kHandsFree, kAt, kExists };

std::string_view PredicateNameString(PredicateName name);
PredicateName ParsePredicateName(std::string_view name);

// A predicate template or ground predicate. In templates an argument is
// either `$param` (bound by the command's parameter of that name) or `@here`
// (the robot's current location). Ground predicates carry ids only.
struct Predicate {
  PredicateName name = PredicateName::kHandsFree;
  std::vector<std::string> args;
  bool negated = false;

  bool IsGround() const;
  auto operator<=>(const Predicate&) const = default;
};

std::string ToString(const Predicate& predicate);

struct ParamSpec {
  enum class Type { kEntity, kLocation, kText };

  std::string name;
  Type type = Type::kEntity;
  // Required category for entity parameters; empty means any entity.
  std::string category;
};

struct CommandSchema {
  std::string name;
  CommandKind kind = CommandKind::kAction;
  std::vector<ParamSpec> params;
  std::vector<Predicate> preconditions;
  std::vector<Predicate> postconditions;

  std::optional<size_t> ParamIndex(std::string_view param) const;
  // Parameters that appear as the first argument of a precondition with the
  // given predicate name, e.g. the place of `put` for robot_at.
  std::vector<size_t> ParamsUsedBy(PredicateName predicate) const;
};

struct EntityType {
  std::string name;
  std::vector<std::string> categories;
};

struct CategoryDecl {
  std::string name;
  std::vector<std::string> parents;
};

// Decoded form of a domain document.
struct DomainDocument {
  int format_version = 1;
  std::vector<CategoryDecl> categories;
  std::vector<EntityType> entity_types;
  std::vector<CommandSchema> commands;
};

// Decoded form of a lexicon document. A verb may map to several schemas of
// different kinds ("say" is both the say action and the eventSpeech event);
// the clause kind decides which one applies.
struct LexiconDocument {
  int format_version = 1;
  std::map<std::string, std::vector<std::string>> verbs;
  std::map<std::string, std::string> nouns;
  std::vector<std::string> event_keywords = {"if", "when", "whenever"};
  std::vector<std::string> pronouns = {"them", "it", "they", "those"};
  std::vector<std::string> stop_words;
};

class Domain {
 public:
  const std::vector<EntityType>& entity_types() const { return types_; }
  const std::vector<CommandSchema>& command_schemas() const { return schemas_; }
  const std::map<std::string, std::vector<std::string>>& verb_lexicon() const {
    return verbs_;
  }
  const std::map<std::string, std::string>& noun_lexicon() const {
    return nouns_;
  }
  const std::vector<std::string>& event_keywords() const {
    return event_keywords_;
  }
  const std::vector<std::string>& pronouns() const { return pronouns_; }
  const std::vector<std::string>& stop_words() const { return stop_words_; }

  // Case-insensitive lookups; nullptr when absent.
  const CommandSchema* FindSchema(std::string_view name) const;
  const EntityType* FindType(std::string_view name) const;
  bool HasCategory(std::string_view name) const;

  // True iff `category` equals `type_name` or is reachable through the
  // category graph. Throws kUnknownType for an undeclared type.
  bool IsA(std::string_view type_name, std::string_view category) const;

  // Entity types that are-a `category`, lexicographic.
  std::vector<std::string> TypesInCategory(std::string_view category) const;

 private:
  friend Domain LoadDomain(const DomainDocument&, const LexiconDocument&);

  std::vector<EntityType> types_;
  std::vector<CommandSchema> schemas_;
  std::set<std::string> categories_;
  std::map<std::string, std::vector<std::string>> category_parents_;
  // type name -> every category/type it is-a (transitive, reflexive).
  std::map<std::string, std::set<std::string>> closure_;
  std::map<std::string, std::vector<std::string>> verbs_;
  std::map<std::string, std::string> nouns_;
  std::vector<std::string> event_keywords_;
  std::vector<std::string> pronouns_;
  std::vector<std::string> stop_words_;
};

// Validates and freezes a domain. Identifiers are matched case-insensitively;
// type and category names are stored lowercase, schema names keep their
// declared casing for display.
Domain LoadDomain(const DomainDocument& domain, const LexiconDocument& lexicon);

// The bundled domain and lexicon shipped with the library.
const Domain& DefaultDomain();

std::string ToLower(std::string_view text);

// ---------------------------------------------------------------------------
// World: mutable ground truth. Handled as immutable values; every mutation
// returns a new World so planner branches never share state.
// ---------------------------------------------------------------------------

enum class Provenance { kUser, kSynthesized };

std::string_view ProvenanceName(Provenance provenance);
Provenance ParseProvenance(std::string_view name);

// An entity and the units of it placed at each location (region or entity).
// Units held by the robot are tracked by World::holding, not here.
struct Entity {
  std::string id;
  std::string type;
  std::map<std::string, int> placements;
  Provenance provenance = Provenance::kUser;

  int Units() const;
  // Lexicographically-least location holding at least one unit.
  std::optional<std::string> PrimaryLocation() const;

  bool operator==(const Entity&) const = default;
};

struct World {
  std::set<std::string> regions;
  std::map<std::string, Entity> entities;
  std::optional<std::string> robot_at;
  std::optional<std::string> holding;

  bool operator==(const World&) const = default;
};

bool LocationExists(const World& world, std::string_view location);

// Region enclosing `location` following entity containment; nullopt for an
// entity with no placed units.
std::optional<std::string> RegionOf(const World& world,
                                    std::string_view location);

// Locations from `location` outward: itself, its container, ... its region.
std::vector<std::string> ContainmentChain(const World& world,
                                          std::string_view location);

// Entities with a unit whose containment chain passes through `location`
// (excluding `location` itself), filtered by category, ordered by id.
std::vector<std::string> EntitiesAt(
    const Domain& domain, const World& world, std::string_view location,
    const std::optional<std::string>& category = std::nullopt);

struct Insertion {
  std::string entity_type;
  std::string location;

  auto operator<=>(const Insertion&) const = default;
};

struct InsertResult {
  World world;
  std::string id;
};

// Returns a new world with a fresh entity (id = type name, or `type_N` when
// taken) placed at `location`. The input world is untouched.
InsertResult WorldInsert(const Domain& domain, const World& world,
                         std::string_view entity_type,
                         std::string_view location, Provenance provenance,
                         int units = 1);

// Throws kUnknownLocation / kUnknownType / kInvalidDocument on a world that
// violates its invariants (dangling locations, containment cycles).
void ValidateWorld(const Domain& domain, const World& world);

// Closed-world evaluation. Throws kUngroundPredicate for templates.
bool EvalPredicate(const World& world, const Predicate& predicate);

// Substitutes `$param` and `@here` for a ground command.
Predicate GroundPredicate(const CommandSchema& schema, const Command& command,
                          const Predicate& templ, const World& world);

bool PreconditionsHold(const Domain& domain, const World& world,
                       const Command& command);

// Preconditions that fail, as ground predicates (empty when all hold).
std::vector<Predicate> FailedPreconditions(const Domain& domain,
                                           const World& world,
                                           const Command& command);

// Applies the schema's postconditions. Grabbing moves one unit from the
// robot's location into the hand; putting moves the held unit to the place.
// Throws kRuntimeFault when the effect cannot be realised.
World ApplyCommand(const Domain& domain, const World& world,
                   const Command& command);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_KNOWLEDGE_H_
