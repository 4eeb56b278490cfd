#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fate/errors.hpp"

namespace fate {

using PlaceId = int;
using TransitionId = int;

/// A marking of a safe net: the set of marked places, kept sorted.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::vector<PlaceId> marked);

  const std::vector<PlaceId>& places() const { return marked_; }
  bool contains(PlaceId p) const;
  bool contains_all(const std::vector<PlaceId>& ps) const;
  std::size_t size() const { return marked_.size(); }
  bool empty() const { return marked_.empty(); }

  auto operator<=>(const Marking&) const = default;

 private:
  std::vector<PlaceId> marked_;
};

struct Place {
  std::string name;
};

struct Transition {
  std::string name;
  std::vector<PlaceId> pre;   // sorted, non-empty
  std::vector<PlaceId> post;  // sorted
};

/// Safe Petri net. Construction validates ids, name uniqueness and
/// rejects source transitions (empty preset).
class PetriNet {
 public:
  PetriNet(std::vector<Place> places, std::vector<Transition> transitions,
           Marking initial);

  const std::vector<Place>& places() const { return places_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Marking& initial() const { return initial_; }

  const std::string& place_name(PlaceId p) const { return places_[p].name; }
  const std::string& transition_name(TransitionId t) const {
    return transitions_[t].name;
  }
  std::optional<PlaceId> place_by_name(const std::string& name) const;
  std::optional<TransitionId> transition_by_name(const std::string& name) const;

  std::string marking_to_string(const Marking& m) const;

 private:
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  Marking initial_;
  std::map<std::string, PlaceId> place_index_;
  std::map<std::string, TransitionId> transition_index_;
};

std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m);
Marking fire(const PetriNet& net, const Marking& m, TransitionId t);

struct ReachabilityGraph {
  struct Edge {
    int src;
    TransitionId label;
    int dst;
  };

  std::vector<Marking> nodes;  // BFS discovery order, nodes[0] = initial
  int root = 0;
  std::vector<Edge> edges;                // grouped by src, label ascending
  std::vector<std::vector<int>> out;      // node -> edge indices
  std::vector<int> scc_of;                // node -> scc id
  std::vector<std::vector<int>> sccs;     // scc id -> sorted node list
  std::vector<int> terminal_sccs;         // scc ids without leaving edges

  std::optional<int> node_of(const Marking& m) const;
  int require_node(const Marking& m) const;  // throws UnknownMarking

 private:
  friend ReachabilityGraph build_reachability_graph(const PetriNet&,
                                                    std::size_t);
  std::map<Marking, int> index_;
};

ReachabilityGraph build_reachability_graph(const PetriNet& net,
                                           std::size_t node_cap = 1u << 20);

struct Attractor {
  std::vector<int> nodes;  // one terminal SCC, sorted node ids
  bool fixed_point = false;
};

std::vector<Attractor> attractors(const ReachabilityGraph& graph);

/// Largest S containing the attractor such that every node of
/// S \ attractor has at least one outgoing edge and all of them stay in S.
std::vector<int> basin(const ReachabilityGraph& graph, const Attractor& a);

/// Shortest distance from every node to any attractor node (K_M).
std::vector<int> attractor_distances(const ReachabilityGraph& graph);
int attractor_distance(const ReachabilityGraph& graph, const Marking& m);
int net_distance(const ReachabilityGraph& graph);  // K_N

struct Policy {
  enum class Kind { Scripted, RoundRobin };
  Kind kind = Kind::RoundRobin;
  std::vector<TransitionId> script;  // repeated cyclically

  static Policy round_robin() { return Policy{Kind::RoundRobin, {}}; }
  static Policy scripted(std::vector<TransitionId> word) {
    return Policy{Kind::Scripted, std::move(word)};
  }
  std::string describe(const PetriNet& net) const;
};

struct FairnessTrace {
  struct Step {
    Marking marking;      // marking the transition fired from
    TransitionId fired;
  };

  const PetriNet* net = nullptr;
  std::vector<Step> steps;
  Marking terminal;
  std::string policy;
  bool deadlocked = false;
  // first index into the marking sequence m_0..m_n such that all later
  // markings lie in the attractor below
  std::optional<int> attractor_entry;
  std::optional<Attractor> entered_attractor;
  // (start, period) over steps; the continuation repeats forever
  std::optional<std::pair<int, int>> lasso;
};

FairnessTrace simulate(const PetriNet& net, const Policy& policy,
                       std::size_t max_steps);

/// Decidable for deadlocked or lasso traces only; otherwise NotDecidable.
bool is_situation_fair(const FairnessTrace& trace);

}  // namespace fate
