#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fate/net.hpp"

namespace fate {

using CondId = int;
using EventId = int;
inline constexpr EventId kBottom = -1;

struct Condition {
  PlaceId fold = -1;
  EventId producer = kBottom;      // kBottom for initial conditions
  std::vector<EventId> consumers;  // ascending
  int instance = 0;                // per-place occurrence index, 1-based
};

enum class CutoffReason { None, MarkingRepeat, BadMarking };

struct Event {
  TransitionId fold = -1;
  std::vector<CondId> preset;   // sorted
  std::vector<CondId> postset;  // sorted
  bool cutoff = false;
  CutoffReason reason = CutoffReason::None;
  int instance = 0;  // per-transition occurrence index, 1-based
};

enum class OrderKind { SubsetOrder, ErvTotalOrder, DheightOrder };

/// Height hook for DheightOrder. `virtual_preset`/`virtual_fold`, when
/// given, stand for one additional top event that is not part of the
/// prefix yet (a queued candidate).
using HeightFn = std::function<int(
    const class Prefix& prefix, const std::vector<EventId>& events,
    const std::vector<CondId>* virtual_preset, TransitionId virtual_fold)>;

struct Order {
  OrderKind kind = OrderKind::ErvTotalOrder;
  HeightFn height;  // required by DheightOrder

  static Order subset() { return {OrderKind::SubsetOrder, nullptr}; }
  static Order erv() { return {OrderKind::ErvTotalOrder, nullptr}; }
};

struct CutoffPolicy {
  bool extra_bad_cutoff = false;
  bool loop_subset_mode = false;  // SubsetOrder only
  std::function<bool(const Marking&)> is_bad;  // needed by extra_bad_cutoff
};

struct UnfoldLimits {
  std::size_t max_events = 20000;
};

/// A branching process of a safe net: occurrence net, folding
/// homomorphism and cutoff flags. Immutable once built.
class Prefix {
 public:
  const PetriNet& net() const { return net_; }
  const Marking& start_marking() const { return start_; }
  const std::vector<Condition>& conditions() const { return conditions_; }
  const std::vector<Event>& events() const { return events_; }
  const std::vector<CondId>& initial_cut() const { return initial_cut_; }

  /// Events of the cone [e], sorted, including e itself.
  const std::vector<EventId>& cone_events(EventId e) const;
  const Marking& cone_mark(EventId e) const;

  std::size_t num_cutoffs() const;
  std::size_t num_noncutoff() const { return events_.size() - num_cutoffs(); }

  std::string event_name(EventId e) const;      // e.g. "alpha#2"
  std::string condition_name(CondId b) const;   // e.g. "p1^2"

  void check_event(EventId e) const;
  void check_condition(CondId b) const;

 private:
  friend class Unfolder;
  PetriNet net_{{}, {}, Marking{}};
  Marking start_;
  std::vector<Condition> conditions_;
  std::vector<Event> events_;
  std::vector<CondId> initial_cut_;
  std::vector<std::vector<EventId>> cones_;
  std::vector<Marking> cone_marks_;
};

Prefix unfold(const PetriNet& net, const Marking& start, const Order& order,
              const CutoffPolicy& policy = {}, const UnfoldLimits& limits = {});

/// Causally closed, conflict-free event set of one prefix.
struct Configuration {
  const Prefix* prefix = nullptr;
  std::vector<EventId> events;  // sorted

  bool operator==(const Configuration& o) const {
    return prefix == o.prefix && events == o.events;
  }
  bool operator<(const Configuration& o) const { return events < o.events; }
};

Configuration cone(const Prefix& prefix, EventId e);
Configuration stump(const Prefix& prefix, EventId e);
std::vector<EventId> crest(const Configuration& c);
std::vector<CondId> cut(const Configuration& c);
Marking mark(const Configuration& c);
bool is_configuration(const Prefix& prefix, const std::vector<EventId>& events);
std::vector<EventId> enabled_events(const Configuration& c);

/// Node handle for the relation queries (conditions or events).
struct PrefixNode {
  bool is_event = true;
  int id = 0;
  static PrefixNode event(EventId e) { return {true, e}; }
  static PrefixNode condition(CondId b) { return {false, b}; }
};

bool causal(const Prefix& prefix, PrefixNode x, PrefixNode y);
bool direct_conflict(const Prefix& prefix, EventId e1, EventId e2);
bool in_conflict(const Prefix& prefix, PrefixNode x, PrefixNode y);
bool concurrent(const Prefix& prefix, PrefixNode x, PrefixNode y);

enum class Ordering { Less, Greater, Equal, Incomparable };

Ordering compare(const Order& order, const Configuration& c1,
                 const Configuration& c2);

/// Every configuration (including the empty one), smallest-first by size,
/// then by event ids. Throws CapExceeded past `cap` configurations.
std::vector<Configuration> enumerate_configurations(const Prefix& prefix,
                                                    std::size_t cap);

/// Configurations that enable no further prefix event.
std::vector<Configuration> maximal_configurations(const Prefix& prefix,
                                                  std::size_t cap);

}  // namespace fate
