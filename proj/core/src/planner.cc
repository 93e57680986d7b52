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

#include "sketchsynth/planner.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sketchsynth/error.h"

namespace sketchsynth {

size_t Trace::loop_length() const {
  if (!loop_begin || *loop_begin >= steps.size()) return 0;
  return (steps.size() - *loop_begin) / 2;
}

std::string ToString(const Trace& trace) {
  std::string out;
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    if (i > 0) {
      out += s.event ? " --" + ToString(*s.event) + "--> " : " --> ";
    }
    out += ToString(s.action);
  }
  return out;
}

double CostOf(const Trace& trace, const WorldDelta& delta,
              const PenaltyWeights& weights) {
  double length = 0;
  double unvisited = 0;
  bool pending_move = false;
  for (const auto& step : trace.steps) {
    if (step.event) length += 1;
    if (step.action.schema == "idle") continue;
    length += 1;
    if (step.action.schema == "moveTo") {
      if (pending_move) unvisited += 1;
      pending_move = true;
    } else {
      pending_move = false;
    }
  }
  if (pending_move) unvisited += 1;
  return weights.length * length + weights.visit * unvisited +
         weights.insert * static_cast<double>(delta.insertions.size());
}

namespace {

bool IsMove(const Command& c) { return c.schema == "moveTo"; }

const Entity* FindEntity(const World& world, const std::string& id) {
  auto it = world.entities.find(id);
  return it == world.entities.end() ? nullptr : &it->second;
}

// Whether entity `id` satisfies an argument constraint from a core command.
bool Satisfies(const Domain& domain, const World& world, const Arg& constraint,
               const std::string& id) {
  const Entity* e = FindEntity(world, id);
  switch (constraint.kind) {
    case Arg::Kind::kEntity:
      return constraint.value == id;
    case Arg::Kind::kType:
      return e && domain.IsA(e->type, constraint.value);
    case Arg::Kind::kHole:
      return e && (constraint.value.empty() ||
                   domain.IsA(e->type, constraint.value));
    default:
      return false;
  }
}

std::string RegionOrSelf(const World& world, const std::string& location) {
  if (world.regions.count(location)) return location;
  return RegionOf(world, location).value_or("");
}

void CheckResolvable(const Domain& domain, const World& world,
                     const Command& command) {
  const CommandSchema* schema = domain.FindSchema(command.schema);
  if (!schema) {
    throw Error(ErrorCode::kUnknownType,
                "unknown command '" + command.schema + "'");
  }
  for (size_t i = 0; i < command.args.size(); ++i) {
    const Arg& a = command.args[i];
    if (a.kind != Arg::Kind::kHole) continue;
    const ParamSpec& p = schema->params[i];
    bool ok = p.type == ParamSpec::Type::kEntity &&
              (!p.category.empty() || !world.entities.empty());
    if (ok && !p.category.empty() && domain.TypesInCategory(p.category).empty()) {
      ok = std::any_of(world.entities.begin(), world.entities.end(),
                       [&](const auto& kv) {
                         return domain.IsA(kv.second.type, p.category);
                       });
    }
    if (!ok) {
      throw Error(ErrorCode::kUnresolvableHole,
                  "unresolvable hole for '" + p.name + "' in " +
                      ToString(command));
    }
  }
}

// Ordered candidate entities for one argument executed at `here`.
std::vector<std::string> ArgCandidates(const Domain& domain, const World& world,
                                       const ParamSpec& param, const Arg& arg,
                                       const std::string& here) {
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  if (arg.kind == Arg::Kind::kEntity || arg.kind == Arg::Kind::kRegion) {
    return {arg.value};
  }
  Arg constraint = arg;
  if (arg.kind == Arg::Kind::kHole && arg.value.empty()) {
    constraint.value = param.category;
  }
  if (world.holding && Satisfies(domain, world, constraint, *world.holding)) {
    add(*world.holding);
  }
  if (!here.empty() && Satisfies(domain, world, constraint, here)) add(here);
  std::string region = here.empty() ? "" : RegionOrSelf(world, here);
  if (!region.empty()) {
    for (const auto& id : EntitiesAt(domain, world, region)) {
      if (Satisfies(domain, world, constraint, id)) add(id);
    }
  }
  if (arg.kind == Arg::Kind::kType) {
    for (const auto& [id, e] : world.entities) {
      if (Satisfies(domain, world, constraint, id)) add(id);
    }
  }
  return out;
}

// Ground commands realising `core` at `here`, in resolution order.
std::vector<Command> GroundCandidates(const Domain& domain, const World& world,
                                      const Command& core,
                                      const std::string& here,
                                      size_t limit = 64) {
  const CommandSchema* schema = domain.FindSchema(core.schema);
  std::vector<std::vector<Arg>> options;
  for (size_t i = 0; i < core.args.size(); ++i) {
    const Arg& a = core.args[i];
    if (a.kind == Arg::Kind::kText || a.kind == Arg::Kind::kEntity ||
        a.kind == Arg::Kind::kRegion) {
      options.push_back({a});
      continue;
    }
    std::vector<Arg> opts;
    for (const auto& id : ArgCandidates(domain, world, schema->params[i], a, here)) {
      opts.push_back(Arg::Entity(id));
    }
    if (opts.empty()) return {};
    options.push_back(std::move(opts));
  }
  std::vector<Command> out;
  std::vector<size_t> idx(options.size(), 0);
  while (out.size() < limit) {
    Command c{core.schema, {}};
    for (size_t i = 0; i < options.size(); ++i) c.args.push_back(options[i][idx[i]]);
    out.push_back(std::move(c));
    size_t k = options.size();
    while (k > 0) {
      --k;
      if (++idx[k] < options[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (options.empty()) break;
  }
  return out;
}

// Constraint on the entity a core needs the robot to stand at.
struct Needs {
  std::vector<Arg> robot_at;  // place-like params
  std::vector<Arg> items;     // params the robot must hold or pick up
};

Needs NeedsOf(const Domain& domain, const Command& core) {
  Needs needs;
  const CommandSchema* schema = domain.FindSchema(core.schema);
  auto param_arg = [&](const std::string& var) -> const Arg* {
    if (var.size() < 2 || var[0] != '$') return nullptr;
    auto idx = schema->ParamIndex(std::string_view(var).substr(1));
    return idx && *idx < core.args.size() ? &core.args[*idx] : nullptr;
  };
  auto constraint = [&](const Arg* a, const std::string& var) -> std::optional<Arg> {
    if (!a) return std::nullopt;
    if (a->kind != Arg::Kind::kHole) return *a;
    auto idx = schema->ParamIndex(std::string_view(var).substr(1));
    return Arg::Hole(a->value.empty() ? schema->params[*idx].category : a->value);
  };
  auto scan = [&](const std::vector<Predicate>& preds, bool post) {
    for (const auto& p : preds) {
      if (p.negated || p.args.empty()) continue;
      if (p.name == PredicateName::kRobotAt) {
        if (auto c = constraint(param_arg(p.args[0]), p.args[0])) {
          needs.robot_at.push_back(*c);
        }
      } else if (!post && (p.name == PredicateName::kHolding ||
                           (p.name == PredicateName::kAt && p.args.size() == 2 &&
                            p.args[1] == "@here"))) {
        if (auto c = constraint(param_arg(p.args[0]), p.args[0])) {
          needs.items.push_back(*c);
        }
      }
    }
  };
  scan(schema->preconditions, false);
  scan(schema->postconditions, true);
  return needs;
}

bool HasPrecondition(const Domain& domain, const Command& core,
                     PredicateName name) {
  const CommandSchema* schema = domain.FindSchema(core.schema);
  for (const auto& p : schema->preconditions) {
    if (p.name == name && !p.negated) return true;
  }
  return false;
}

// Domain type to insert for a constraint, or empty when none applies.
std::string InsertableType(const Domain& domain, const Arg& constraint) {
  if (constraint.kind == Arg::Kind::kType) return constraint.value;
  if (constraint.kind == Arg::Kind::kHole && !constraint.value.empty()) {
    auto types = domain.TypesInCategory(constraint.value);
    if (!types.empty()) return *std::min_element(types.begin(), types.end());
  }
  return {};
}

struct Node {
  World world;
  World base;
  std::vector<TraceStep> steps;
  WorldDelta delta;
  size_t visit = 0;
  size_t cores = 0;
  bool acted = true;
  std::optional<size_t> iter_begin;
  double g = 0;
  double f = 0;
  bool complete = false;
  std::vector<std::string> tokens;
  std::optional<size_t> parent;
};

std::string StepToken(const TraceStep& s) {
  std::string t = s.event ? ToString(*s.event) : std::string();
  t += '|';
  t += ToString(s.action);
  return t;
}

// (cost, length, serialization) with a small tolerance on cost.
bool Better(const Node& a, const Node& b) {
  if (std::abs(a.f - b.f) > 1e-9) return a.f < b.f;
  if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
  return a.tokens < b.tokens;
}

std::string StateKey(const Node& n) {
  std::ostringstream k;
  k << n.visit << '/' << n.cores << '/' << n.acted << '/'
    << n.world.robot_at.value_or("") << '/' << n.world.holding.value_or("")
    << '/';
  for (const auto& [id, e] : n.world.entities) {
    k << id << ':' << e.type << '@';
    for (const auto& [loc, count] : e.placements) k << loc << '*' << count << ',';
    k << ';';
  }
  if (n.iter_begin) {
    k << "#";
    for (size_t i = *n.iter_begin; i < n.tokens.size(); ++i) k << n.tokens[i] << '\n';
  }
  return k.str();
}

class Search {
 public:
  Search(const Domain& domain, const World& world,
         const std::vector<CoreCommand>& cores, const PlanSequence& seq,
         const PlannerOptions& options)
      : domain_(domain), cores_(cores), seq_(seq), options_(options) {
    Node root;
    root.world = world;
    root.base = world;
    std::string here = world.robot_at.value_or("");
    root.steps.push_back({std::nullopt, MakeCommand("idle"), here,
                          here.empty() ? "" : RegionOrSelf(world, here)});
    root.tokens.push_back(StepToken(root.steps.back()));
    AdvanceStays(root);
    if (seq_.loop_start && *seq_.loop_start < root.visit) {
      // The loop starts with a stay entry: the iteration begins at the next
      // step.
      root.iter_begin = root.steps.size();
    }
    root.f = root.g + Heuristic(domain_, seq_, root.visit, cores_, root.cores);
    Push(std::move(root));
  }

  PlanResult Run() {
    std::vector<size_t> done;
    std::optional<double> best;
    while (!open_.empty()) {
      size_t id = open_.top();
      open_.pop();
      Node& n = nodes_[id];
      if (best && n.f > *best + 1e-9) break;
      if (n.complete) {
        if (!best) best = n.f;
        done.push_back(id);
        continue;
      }
      auto key = StateKey(n);
      auto it = closed_.find(key);
      if (it != closed_.end() && it->second != id) continue;
      if (++expansions_ > options_.max_expansions) {
        throw Error(ErrorCode::kNoPlan,
                    "no plan: node budget of " +
                        std::to_string(options_.max_expansions) +
                        " expansions exhausted");
      }
      if (IsGoal(n)) {
        Complete(id);
      } else {
        Expand(id);
      }
    }
    if (done.empty()) {
      throw Error(ErrorCode::kNoPlan,
                  "no plan satisfies the sketch and the utterance");
    }
    std::sort(done.begin(), done.end(), [&](size_t a, size_t b) {
      return Better(nodes_[a], nodes_[b]);
    });
    const Node& n = nodes_[done.front()];
    PlanResult result;
    result.trace.steps = n.steps;
    result.trace.loop_begin = seq_.loop_start ? n.iter_begin : std::nullopt;
    result.delta = n.delta;
    result.augmented = n.base;
    result.cost = n.f;
    result.expansions = expansions_;
    if (options_.search_graph_dot) WriteDot(done.front());
    return result;
  }

 private:
  struct Order {
    const std::vector<Node>* nodes;
    bool operator()(size_t a, size_t b) const {
      return Better((*nodes)[b], (*nodes)[a]);
    }
  };

  bool IsGoal(const Node& n) const {
    return n.visit == seq_.visits.size() && n.cores == cores_.size();
  }

  void AdvanceStays(Node& n) const {
    std::string region =
        RegionOrSelf(n.world, n.world.robot_at.value_or(""));
    while (n.visit < seq_.visits.size() && seq_.visits[n.visit].stay &&
           seq_.visits[n.visit].region == region) {
      ++n.visit;
    }
  }

  void Push(Node node) {
    std::string key = node.complete ? std::string() : StateKey(node);
    size_t id = nodes_.size();
    if (!node.complete) {
      auto it = closed_.find(key);
      if (it != closed_.end()) {
        const Node& old = nodes_[it->second];
        if (!Better(node, old)) return;
        it->second = id;
      } else {
        closed_.emplace(key, id);
      }
    }
    nodes_.push_back(std::move(node));
    open_.push(id);
  }

  void Complete(size_t id) {
    Node n = nodes_[id];
    n.parent = id;
    // An iteration with no steps (nothing to repeat) stays loopless.
    if (n.iter_begin && *n.iter_begin >= n.steps.size()) n.iter_begin.reset();
    if (seq_.loop_start && n.iter_begin) {
      size_t begin = *n.iter_begin;
      size_t end = n.steps.size();
      for (size_t i = begin; i < end; ++i) {
        TraceStep step = n.steps[i];
        if (i == begin && IsMove(step.action)) step.event.reset();
        if (step.action.schema == "grab" && !step.action.args.empty()) {
          // Replenishable source: the location supplies another unit.
          const std::string& item = step.action.args[0].value;
          std::string here = n.world.robot_at.value_or("");
          Predicate at{PredicateName::kAt, {item, here}, false};
          if (!here.empty() && n.world.entities.count(item) &&
              !EvalPredicate(n.world, at) && n.world.holding != item) {
            n.world.entities[item].placements[here] += 1;
          }
        }
        if (!PreconditionsHold(domain_, n.world, step.action)) return;
        n.world = ApplyCommand(domain_, n.world, step.action);
        step.location = n.world.robot_at.value_or("");
        step.region = RegionOrSelf(n.world, step.location);
        n.tokens.push_back(StepToken(step));
        n.steps.push_back(std::move(step));
      }
    }
    Trace t{n.steps, std::nullopt};
    n.f = n.g = CostOf(t, n.delta, options_.weights);
    n.complete = true;
    Push(std::move(n));
  }

  void Expand(size_t id) {
    // Copy: pushing may reallocate nodes_.
    const Node n = nodes_[id];
    const World& w = n.world;
    const std::string here = w.robot_at.value_or("");
    const std::string here_region = here.empty() ? "" : RegionOrSelf(w, here);

    std::optional<Command> event;
    size_t next = n.cores;
    if (next < cores_.size() && cores_[next].gate) {
      event = cores_[next].command;
      ++next;
    }
    const Command* core =
        next < cores_.size() && !cores_[next].gate ? &cores_[next].command : nullptr;

    struct Candidate {
      Command action;
      std::optional<std::string> insert_type;
      std::string insert_at;
    };
    std::vector<Candidate> candidates;
    std::set<Command> seen;
    auto add = [&](Command c, std::optional<std::string> type = std::nullopt,
                   std::string at = {}) {
      if (!type && !seen.insert(c).second) return;
      candidates.push_back({std::move(c), std::move(type), std::move(at)});
    };

    // Core command, grounded at the current location.
    if (core) {
      if (IsMove(*core)) {
        for (auto& c : GroundCandidates(domain_, w, *core, here)) {
          if (c.args[0].value != here) add(std::move(c));
        }
      } else {
        for (auto& c : GroundCandidates(domain_, w, *core, here)) {
          if (PreconditionsHold(domain_, w, c)) {
            add(std::move(c));
            break;
          }
        }
      }
    }

    Needs needs;
    for (size_t i = next; i < cores_.size(); ++i) {
      if (cores_[i].gate) continue;
      Needs nd = NeedsOf(domain_, cores_[i].command);
      needs.robot_at.insert(needs.robot_at.end(), nd.robot_at.begin(), nd.robot_at.end());
      needs.items.insert(needs.items.end(), nd.items.begin(), nd.items.end());
    }

    // Repairs for the next core: pick up what it needs, or put down what
    // blocks it.
    if (core && !here.empty()) {
      Needs nd = NeedsOf(domain_, *core);
      bool wants_item = HasPrecondition(domain_, *core, PredicateName::kHolding);
      if (wants_item && !w.holding && domain_.FindSchema("grab")) {
        for (const auto& c : nd.items) {
          bool found = false;
          for (const auto& id2 : EntitiesAt(domain_, w, here)) {
            if (!Satisfies(domain_, w, c, id2)) continue;
            Command grab = MakeCommand("grab", {Arg::Entity(id2)});
            if (PreconditionsHold(domain_, w, grab)) {
              add(grab);
              found = true;
            }
          }
          if (!found) {
            std::string type = InsertableType(domain_, c);
            if (!type.empty()) add(MakeCommand("grab"), type, here);
          }
        }
      }
      bool wants_free = HasPrecondition(domain_, *core, PredicateName::kHandsFree);
      if (wants_free && w.holding && domain_.FindSchema("put")) {
        Command put = MakeCommand("put", {Arg::Entity(*w.holding), Arg::Entity(here)});
        if (w.entities.count(here) && PreconditionsHold(domain_, w, put)) add(put);
      }
    }

    // Moves: the next sketched region, entities a remaining core needs, and
    // entities inserted into the next region when none exist.
    const bool has_visit = n.visit < seq_.visits.size();
    const std::string visit_region = has_visit ? seq_.visits[n.visit].region : "";
    if (has_visit && visit_region != here) {
      add(MakeCommand("moveTo", {Arg::Region(visit_region)}));
    }
    std::set<std::string> targets;
    for (const auto& [eid, e] : w.entities) {
      if (eid == here || e.Units() == 0) continue;
      for (const auto& c : needs.robot_at) {
        if (Satisfies(domain_, w, c, eid)) targets.insert(eid);
      }
      for (const auto& c : needs.items) {
        if (!Satisfies(domain_, w, c, eid)) continue;
        auto loc = e.PrimaryLocation();
        if (loc && w.entities.count(*loc) && *loc != here) targets.insert(*loc);
      }
    }
    for (const auto& t : targets) add(MakeCommand("moveTo", {Arg::Entity(t)}));
    std::string insert_region = has_visit ? visit_region : here_region;
    if (!insert_region.empty()) {
      std::set<std::string> types;
      for (const auto& c : needs.robot_at) {
        bool present = false;
        for (const auto& eid : EntitiesAt(domain_, w, insert_region)) {
          if (Satisfies(domain_, w, c, eid)) present = true;
        }
        if (present) continue;
        std::string type = InsertableType(domain_, c);
        if (!type.empty()) types.insert(type);
      }
      for (const auto& type : types) {
        add(MakeCommand("moveTo"), type, insert_region);
      }
    }

    if (event && next == cores_.size() && !has_visit) add(MakeCommand("idle"));

    for (auto& cand : candidates) {
      Node child;
      child.world = w;
      child.base = n.base;
      child.delta = n.delta;
      double extra = 0;
      if (cand.insert_type) {
        InsertResult r = WorldInsert(domain_, w, *cand.insert_type,
                                     cand.insert_at, Provenance::kSynthesized);
        child.world = std::move(r.world);
        child.base = WorldInsert(domain_, n.base, *cand.insert_type,
                                 cand.insert_at, Provenance::kSynthesized)
                         .world;
        child.delta.insertions.push_back({*cand.insert_type, cand.insert_at});
        child.delta.entity_ids.push_back(r.id);
        cand.action.args = {Arg::Entity(r.id)};
        extra += options_.weights.insert;
      }
      if (!PreconditionsHold(domain_, child.world, cand.action)) continue;
      child.world = ApplyCommand(domain_, child.world, cand.action);

      TraceStep step;
      step.event = event;
      step.action = cand.action;
      step.location = child.world.robot_at.value_or("");
      step.region = RegionOrSelf(child.world, step.location);

      child.cores = next;
      if (core && MatchesCore(domain_, child.world, *core, cand.action)) {
        ++child.cores;
      }
      child.visit = n.visit;
      child.iter_begin = n.iter_begin;
      bool moved = IsMove(cand.action);
      if (moved && has_visit && step.region == visit_region) {
        if (seq_.loop_start && n.visit == *seq_.loop_start && !child.iter_begin) {
          child.iter_begin = n.steps.size();
        }
        ++child.visit;
      }
      if (seq_.loop_start && !child.iter_begin && n.visit > *seq_.loop_start) {
        child.iter_begin = n.steps.size();
      }

      bool idle = cand.action.schema == "idle";
      double cost = (event ? 1 : 0) + (idle ? 0 : 1);
      child.g = n.g + options_.weights.length * cost + extra;
      if (moved) {
        if (!n.acted) child.g += options_.weights.visit;
        child.acted = false;
      } else {
        child.acted = idle ? n.acted : true;
      }
      child.steps = n.steps;
      child.steps.push_back(std::move(step));
      child.tokens = n.tokens;
      child.tokens.push_back(StepToken(child.steps.back()));
      AdvanceStays(child);
      child.f = child.g + Heuristic(domain_, seq_, child.visit, cores_, child.cores);
      if (IsGoal(child) && !child.acted) {
        // The final move is a visit without an action.
        child.f += options_.weights.visit;
        child.g += options_.weights.visit;
        child.acted = true;
      }
      child.parent = id;
      if (options_.search_graph_dot) edges_.emplace_back(id, nodes_.size());
      Push(std::move(child));
    }
  }

  void WriteDot(size_t chosen) {
    std::set<size_t> path;
    for (std::optional<size_t> p = chosen; p; p = nodes_[*p].parent) {
      path.insert(*p);
    }
    std::ostringstream out;
    out << "digraph search {\n  node [shape=box, fontsize=10];\n";
    for (size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      out << "  n" << i << " [label=\"" << (n.tokens.empty() ? "" : n.tokens.back())
          << "\\ng=" << n.g << " f=" << n.f << "\"";
      if (path.count(i)) out << ", color=blue";
      out << "];\n";
    }
    for (auto [a, b] : edges_) out << "  n" << a << " -> n" << b << ";\n";
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].complete && nodes_[i].parent) {
        out << "  n" << *nodes_[i].parent << " -> n" << i << " [style=dashed];\n";
      }
    }
    out << "}\n";
    *options_.search_graph_dot = out.str();
  }

  const Domain& domain_;
  const std::vector<CoreCommand>& cores_;
  const PlanSequence& seq_;
  const PlannerOptions& options_;
  std::vector<Node> nodes_;
  std::priority_queue<size_t, std::vector<size_t>, Order> open_{Order{&nodes_}};
  std::unordered_map<std::string, size_t> closed_;
  std::vector<std::pair<size_t, size_t>> edges_;
  size_t expansions_ = 0;
};

}  // namespace

bool MatchesCore(const Domain& domain, const World& world, const Command& core,
                 const Command& step) {
  if (core.schema != step.schema || core.args.size() != step.args.size()) {
    return false;
  }
  const CommandSchema* schema = domain.FindSchema(core.schema);
  for (size_t i = 0; i < core.args.size(); ++i) {
    const Arg& c = core.args[i];
    const Arg& s = step.args[i];
    switch (c.kind) {
      case Arg::Kind::kEntity:
      case Arg::Kind::kRegion:
      case Arg::Kind::kText:
        if (c != s) return false;
        break;
      case Arg::Kind::kType:
        if (s.kind != Arg::Kind::kEntity ||
            !Satisfies(domain, world, c, s.value)) {
          return false;
        }
        break;
      case Arg::Kind::kHole: {
        if (s.kind == Arg::Kind::kText || s.kind == Arg::Kind::kHole) return false;
        std::string category =
            c.value.empty() && schema ? schema->params[i].category : c.value;
        if (!category.empty() &&
            !Satisfies(domain, world, Arg::Hole(category), s.value)) {
          return false;
        }
        break;
      }
    }
  }
  return true;
}

std::optional<Command> ResolveHole(const Domain& domain, const World& world,
                                   const Command& partial,
                                   const std::string& here) {
  CheckResolvable(domain, world, partial);
  if (!partial.HasHole()) return partial;
  const CommandSchema* schema = domain.FindSchema(partial.schema);
  Command out = partial;
  for (size_t i = 0; i < out.args.size(); ++i) {
    if (out.args[i].kind != Arg::Kind::kHole) continue;
    auto c = ArgCandidates(domain, world, schema->params[i], out.args[i], here);
    if (c.empty()) return std::nullopt;
    out.args[i] = Arg::Entity(c.front());
  }
  return out;
}

double Heuristic(const Domain& domain, const PlanSequence& sequence,
                 size_t next_visit, const std::vector<CoreCommand>& cores,
                 size_t cores_done) {
  double h = 0;
  for (size_t i = next_visit; i < sequence.visits.size(); ++i) {
    if (!sequence.visits[i].stay) h += 1;
  }
  for (size_t i = cores_done; i < cores.size(); ++i) {
    const CommandSchema* s = domain.FindSchema(cores[i].command.schema);
    if (!s || s->name != "moveTo") h += 1;
  }
  return h;
}

PlanResult PlanTrace(const Domain& domain, const World& world,
                     const std::vector<CoreCommand>& cores,
                     const PlanSequence& sequence,
                     const PlannerOptions& options) {
  for (const auto& v : sequence.visits) {
    if (!world.regions.count(v.region)) {
      throw Error(ErrorCode::kUnknownLocation,
                  "unknown region '" + v.region + "' in sketch");
    }
  }
  for (const auto& core : cores) {
    CheckResolvable(domain, world, core.command);
    const CommandSchema* schema = domain.FindSchema(core.command.schema);
    if (schema->kind == CommandKind::kEvent && core.command.HasHole()) {
      throw Error(ErrorCode::kUnresolvableHole,
                  "unresolvable hole in event " + ToString(core.command));
    }
  }
  Search search(domain, world, cores, sequence, options);
  return search.Run();
}

}  // namespace sketchsynth
