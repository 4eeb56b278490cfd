#include "fate/unfold.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace fate {

namespace {

std::vector<EventId> sorted_union(const std::vector<EventId>& a,
                                  const std::vector<EventId>& b) {
  std::vector<EventId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

bool contains_sorted(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Sorted fold word of a configuration, optionally with one extra label.
std::vector<TransitionId> phi_word(const Prefix& p,
                                   const std::vector<EventId>& events,
                                   TransitionId extra_fold) {
  std::vector<TransitionId> w;
  w.reserve(events.size() + 1);
  for (EventId e : events) w.push_back(p.events()[e].fold);
  if (extra_fold >= 0) w.push_back(extra_fold);
  std::sort(w.begin(), w.end());
  return w;
}

// Cartier-Foata levels: level(e) = 1 + max level of immediate causal
// predecessors; each level reported as a sorted fold word.
std::vector<std::vector<TransitionId>> foata_form(
    const Prefix& p, const std::vector<EventId>& events,
    const std::vector<CondId>* virtual_preset, TransitionId virtual_fold) {
  std::map<EventId, int> level;
  int depth = 0;
  for (EventId e : events) {  // ascending ids = topological order
    int l = 1;
    for (CondId b : p.events()[e].preset) {
      EventId prod = p.conditions()[b].producer;
      if (prod != kBottom) l = std::max(l, level.at(prod) + 1);
    }
    level[e] = l;
    depth = std::max(depth, l);
  }
  int vlevel = 0;
  if (virtual_preset) {
    vlevel = 1;
    for (CondId b : *virtual_preset) {
      EventId prod = p.conditions()[b].producer;
      if (prod != kBottom) vlevel = std::max(vlevel, level.at(prod) + 1);
    }
    depth = std::max(depth, vlevel);
  }
  std::vector<std::vector<TransitionId>> fc(depth);
  for (EventId e : events) fc[level[e] - 1].push_back(p.events()[e].fold);
  if (virtual_preset) fc[vlevel - 1].push_back(virtual_fold);
  for (auto& lvl : fc) std::sort(lvl.begin(), lvl.end());
  return fc;
}

int compare_vec(const std::vector<TransitionId>& a,
                const std::vector<TransitionId>& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_foata(const std::vector<std::vector<TransitionId>>& a,
                  const std::vector<std::vector<TransitionId>>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare_vec(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace

const std::vector<EventId>& Prefix::cone_events(EventId e) const {
  check_event(e);
  return cones_[e];
}

const Marking& Prefix::cone_mark(EventId e) const {
  check_event(e);
  return cone_marks_[e];
}

std::size_t Prefix::num_cutoffs() const {
  std::size_t n = 0;
  for (const Event& e : events_)
    if (e.cutoff) ++n;
  return n;
}

std::string Prefix::event_name(EventId e) const {
  check_event(e);
  return net_.transition_name(events_[e].fold) + "#" +
         std::to_string(events_[e].instance);
}

std::string Prefix::condition_name(CondId b) const {
  check_condition(b);
  return net_.place_name(conditions_[b].fold) + "^" +
         std::to_string(conditions_[b].instance);
}

void Prefix::check_event(EventId e) const {
  if (e < 0 || e >= static_cast<EventId>(events_.size()))
    throw UnknownEvent("event id " + std::to_string(e) + " out of range");
}

void Prefix::check_condition(CondId b) const {
  if (b < 0 || b >= static_cast<CondId>(conditions_.size()))
    throw UnknownNode("condition id " + std::to_string(b) + " out of range");
}

Configuration cone(const Prefix& prefix, EventId e) {
  prefix.check_event(e);
  return Configuration{&prefix, prefix.cone_events(e)};
}

Configuration stump(const Prefix& prefix, EventId e) {
  prefix.check_event(e);
  std::vector<EventId> events = prefix.cone_events(e);
  events.erase(std::remove(events.begin(), events.end(), e), events.end());
  return Configuration{&prefix, std::move(events)};
}

std::vector<EventId> crest(const Configuration& c) {
  const Prefix& p = *c.prefix;
  std::vector<EventId> result;
  for (EventId e : c.events) {
    bool maximal = true;
    for (CondId b : p.events()[e].postset)
      for (EventId consumer : p.conditions()[b].consumers)
        if (contains_sorted(c.events, consumer)) maximal = false;
    if (maximal) result.push_back(e);
  }
  return result;
}

std::vector<CondId> cut(const Configuration& c) {
  const Prefix& p = *c.prefix;
  std::vector<char> in_cut(p.conditions().size(), 0);
  for (CondId b : p.initial_cut()) in_cut[b] = 1;
  for (EventId e : c.events)
    for (CondId b : p.events()[e].postset) in_cut[b] = 1;
  for (EventId e : c.events)
    for (CondId b : p.events()[e].preset) in_cut[b] = 0;
  std::vector<CondId> result;
  for (CondId b = 0; b < static_cast<CondId>(in_cut.size()); ++b)
    if (in_cut[b]) result.push_back(b);
  return result;
}

Marking mark(const Configuration& c) {
  const Prefix& p = *c.prefix;
  std::vector<PlaceId> places;
  for (CondId b : cut(c)) places.push_back(p.conditions()[b].fold);
  return Marking(std::move(places));
}

bool is_configuration(const Prefix& prefix,
                      const std::vector<EventId>& events) {
  std::vector<EventId> sorted = events;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != events.size()) return false;
  for (EventId e : sorted) {
    if (e < 0 || e >= static_cast<EventId>(prefix.events().size()))
      return false;
    for (EventId pred : prefix.cone_events(e))
      if (!contains_sorted(sorted, pred)) return false;
  }
  // closed and conflict-free iff no condition is consumed twice
  std::vector<char> consumed(prefix.conditions().size(), 0);
  for (EventId e : sorted)
    for (CondId b : prefix.events()[e].preset) {
      if (consumed[b]) return false;
      consumed[b] = 1;
    }
  return true;
}

std::vector<EventId> enabled_events(const Configuration& c) {
  const Prefix& p = *c.prefix;
  std::vector<char> in_cut(p.conditions().size(), 0);
  for (CondId b : cut(c)) in_cut[b] = 1;
  std::vector<EventId> result;
  for (EventId e = 0; e < static_cast<EventId>(p.events().size()); ++e) {
    if (contains_sorted(c.events, e)) continue;
    bool ok = true;
    for (CondId b : p.events()[e].preset)
      if (!in_cut[b]) ok = false;
    if (ok) result.push_back(e);
  }
  return result;
}

namespace {

// Event set lying strictly below a node.
std::vector<EventId> past_of(const Prefix& p, PrefixNode x) {
  if (x.is_event) return p.cone_events(x.id);  // includes the event itself
  EventId prod = p.conditions()[x.id].producer;
  if (prod == kBottom) return {};
  return p.cone_events(prod);
}

bool sets_conflict(const Prefix& p, const std::vector<EventId>& a,
                   const std::vector<EventId>& b) {
  // distinct consumers of one condition, one on each side
  for (EventId u : a)
    for (CondId cond : p.events()[u].preset)
      for (EventId v : p.conditions()[cond].consumers)
        if (v != u && contains_sorted(b, v)) return true;
  return false;
}

}  // namespace

bool causal(const Prefix& prefix, PrefixNode x, PrefixNode y) {
  if (x.is_event)
    prefix.check_event(x.id);
  else
    prefix.check_condition(x.id);
  if (y.is_event)
    prefix.check_event(y.id);
  else
    prefix.check_condition(y.id);

  if (x.is_event && y.is_event)
    return x.id != y.id && contains_sorted(prefix.cone_events(y.id), x.id);
  if (x.is_event && !y.is_event) {
    EventId prod = prefix.conditions()[y.id].producer;
    return prod != kBottom && contains_sorted(prefix.cone_events(prod), x.id);
  }
  if (!x.is_event && y.is_event) {
    for (EventId f : prefix.conditions()[x.id].consumers)
      if (contains_sorted(prefix.cone_events(y.id), f)) return true;
    return false;
  }
  if (x.id == y.id) return false;
  EventId prod = prefix.conditions()[y.id].producer;
  if (prod == kBottom) return false;
  for (EventId f : prefix.conditions()[x.id].consumers)
    if (contains_sorted(prefix.cone_events(prod), f)) return true;
  return false;
}

bool direct_conflict(const Prefix& prefix, EventId e1, EventId e2) {
  prefix.check_event(e1);
  prefix.check_event(e2);
  if (e1 == e2) return false;
  const auto& p1 = prefix.events()[e1].preset;
  const auto& p2 = prefix.events()[e2].preset;
  for (CondId b : p1)
    if (contains_sorted(p2, b)) return true;
  return false;
}

bool in_conflict(const Prefix& prefix, PrefixNode x, PrefixNode y) {
  std::vector<EventId> px = past_of(prefix, x);
  std::vector<EventId> py = past_of(prefix, y);
  return sets_conflict(prefix, px, py);
}

bool concurrent(const Prefix& prefix, PrefixNode x, PrefixNode y) {
  if (x.is_event == y.is_event && x.id == y.id) return false;
  return !causal(prefix, x, y) && !causal(prefix, y, x) &&
         !in_conflict(prefix, x, y);
}

Ordering compare(const Order& order, const Configuration& c1,
                 const Configuration& c2) {
  if (c1.prefix != c2.prefix)
    throw DifferentPrefixes("configurations belong to different prefixes");
  const Prefix& p = *c1.prefix;
  if (order.kind == OrderKind::SubsetOrder) {
    if (c1.events == c2.events) return Ordering::Equal;
    if (std::includes(c2.events.begin(), c2.events.end(), c1.events.begin(),
                      c1.events.end()))
      return Ordering::Less;
    if (std::includes(c1.events.begin(), c1.events.end(), c2.events.begin(),
                      c2.events.end()))
      return Ordering::Greater;
    return Ordering::Incomparable;
  }
  if (order.kind == OrderKind::DheightOrder) {
    if (!order.height)
      throw Error("DheightOrder requires a height hook");
    int h1 = order.height(p, c1.events, nullptr, -1);
    int h2 = order.height(p, c2.events, nullptr, -1);
    if (h1 != h2) return h1 < h2 ? Ordering::Less : Ordering::Greater;
  }
  if (c1.events.size() != c2.events.size())
    return c1.events.size() < c2.events.size() ? Ordering::Less
                                               : Ordering::Greater;
  if (int c = compare_vec(phi_word(p, c1.events, -1),
                          phi_word(p, c2.events, -1)))
    return c < 0 ? Ordering::Less : Ordering::Greater;
  if (int c = compare_foata(foata_form(p, c1.events, nullptr, -1),
                            foata_form(p, c2.events, nullptr, -1)))
    return c < 0 ? Ordering::Less : Ordering::Greater;
  return Ordering::Equal;
}

std::vector<Configuration> enumerate_configurations(const Prefix& prefix,
                                                    std::size_t cap) {
  std::vector<Configuration> out;
  std::set<std::vector<EventId>> level{{}};
  while (!level.empty()) {
    std::set<std::vector<EventId>> next;
    for (const auto& events : level) {
      if (out.size() >= cap)
        throw CapExceeded("more than " + std::to_string(cap) +
                          " configurations");
      out.push_back(Configuration{&prefix, events});
      for (EventId e : enabled_events(out.back())) {
        std::vector<EventId> ext = events;
        ext.insert(std::lower_bound(ext.begin(), ext.end(), e), e);
        next.insert(std::move(ext));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::vector<Configuration> maximal_configurations(const Prefix& prefix,
                                                  std::size_t cap) {
  std::vector<Configuration> out;
  for (Configuration& c : enumerate_configurations(prefix, cap))
    if (enabled_events(c).empty()) out.push_back(std::move(c));
  return out;
}

// ---------------------------------------------------------------------------
// construction

class Unfolder {
 public:
  Unfolder(const PetriNet& net, const Marking& start, const Order& order,
           const CutoffPolicy& policy, const UnfoldLimits& limits)
      : order_(order), policy_(policy), limits_(limits) {
    p_.net_ = net;
    p_.start_ = start;
    place_conds_.resize(net.places().size());
    place_instance_.assign(net.places().size(), 0);
    trans_instance_.assign(net.transitions().size(), 0);
  }

  Prefix run() {
    seed_initial_cut();
    Key empty_key;  // the empty configuration
    register_noncutoff(p_.start_, 0, empty_key);
    for (CondId b : p_.initial_cut_) generate_extensions(b);

    while (!queue_.empty()) {
      Candidate cand = std::move(queue_.begin()->second);
      queue_.erase(queue_.begin());
      append(cand);
    }
    return std::move(p_);
  }

 private:
  struct Key {
    int height = 0;  // used by DheightOrder only
    std::size_t size = 0;
    std::vector<TransitionId> phi;
    std::vector<std::vector<TransitionId>> foata;
    TransitionId fold = -1;
    std::vector<CondId> preset;

    bool operator<(const Key& o) const {
      if (height != o.height) return height < o.height;
      if (size != o.size) return size < o.size;
      if (int c = compare_vec(phi, o.phi)) return c < 0;
      if (int c = compare_foata(foata, o.foata)) return c < 0;
      if (fold != o.fold) return fold < o.fold;
      return preset < o.preset;
    }
  };

  struct Candidate {
    std::vector<CondId> preset;  // sorted
    TransitionId fold = -1;
    std::vector<EventId> stump;  // union of the producers' cones
    Marking mark;                // marking of stump + the event itself
    Key key;
  };

  void seed_initial_cut() {
    for (PlaceId pl : p_.start_.places()) {
      CondId b = static_cast<CondId>(p_.conditions_.size());
      p_.conditions_.push_back({pl, kBottom, {}, ++place_instance_[pl]});
      p_.initial_cut_.push_back(b);
      place_conds_[pl].push_back(b);
    }
  }

  void register_noncutoff(const Marking& m, std::size_t size, const Key& key) {
    if (order_.kind == OrderKind::ErvTotalOrder) {
      best_size_.emplace(m, size);  // first registration is minimal
    } else if (order_.kind == OrderKind::DheightOrder) {
      first_key_.emplace(m, key);
    }
  }

  // conditions of cut(events); `events` must be causally closed
  std::vector<CondId> cut_of(const std::vector<EventId>& events) const {
    std::vector<char> in_cut(p_.conditions_.size(), 0);
    for (CondId b : p_.initial_cut_) in_cut[b] = 1;
    for (EventId e : events)
      for (CondId b : p_.events_[e].postset) in_cut[b] = 1;
    for (EventId e : events)
      for (CondId b : p_.events_[e].preset) in_cut[b] = 0;
    std::vector<CondId> out;
    for (CondId b = 0; b < static_cast<CondId>(in_cut.size()); ++b)
      if (in_cut[b]) out.push_back(b);
    return out;
  }

  Marking mark_of(const std::vector<EventId>& events) const {
    std::vector<PlaceId> places;
    for (CondId b : cut_of(events)) places.push_back(p_.conditions_[b].fold);
    std::sort(places.begin(), places.end());
    if (std::adjacent_find(places.begin(), places.end()) != places.end())
      throw UnsafeNet("two concurrent tokens on place " +
                      p_.net_.place_name(*std::adjacent_find(places.begin(),
                                                             places.end())));
    return Marking(std::move(places));
  }

  const std::vector<EventId>& past(CondId b) const {
    static const std::vector<EventId> empty;
    EventId prod = p_.conditions_[b].producer;
    return prod == kBottom ? empty : p_.cones_[prod];
  }

  bool cond_causal(CondId x, CondId y) const {
    EventId prod = p_.conditions_[y].producer;
    if (prod == kBottom) return false;
    const auto& cy = p_.cones_[prod];
    for (EventId f : p_.conditions_[x].consumers)
      if (contains_sorted(cy, f)) return true;
    return false;
  }

  bool co(CondId x, CondId y) {
    if (x == y) return false;
    auto key = std::minmax(x, y);
    auto it = co_memo_.find(key);
    if (it != co_memo_.end()) return it->second;
    bool result = !cond_causal(x, y) && !cond_causal(y, x);
    if (result) {
      std::vector<EventId> merged = sorted_union(past(x), past(y));
      std::vector<char> consumed(p_.conditions_.size(), 0);
      for (EventId e : merged)
        for (CondId b : p_.events_[e].preset) {
          if (consumed[b]) {
            result = false;
            break;
          }
          consumed[b] = 1;
        }
    }
    co_memo_.emplace(key, result);
    return result;
  }

  // Possible extensions whose newest condition is `trigger`.
  void generate_extensions(CondId trigger) {
    PlaceId tp = p_.conditions_[trigger].fold;
    const auto& transitions = p_.net_.transitions();
    for (TransitionId t = 0; t < static_cast<TransitionId>(transitions.size());
         ++t) {
      const auto& pre = transitions[t].pre;
      if (!contains_sorted(pre, tp)) continue;
      std::vector<CondId> chosen;
      chosen.reserve(pre.size());
      build_cosets(pre, 0, trigger, chosen, t);
    }
  }

  void build_cosets(const std::vector<PlaceId>& pre, std::size_t idx,
                    CondId trigger, std::vector<CondId>& chosen,
                    TransitionId t) {
    if (idx == pre.size()) {
      enqueue_candidate(chosen, t);
      return;
    }
    PlaceId pl = pre[idx];
    if (pl == p_.conditions_[trigger].fold) {
      chosen.push_back(trigger);
      build_cosets(pre, idx + 1, trigger, chosen, t);
      chosen.pop_back();
      return;
    }
    for (CondId b : place_conds_[pl]) {
      if (b >= trigger) break;  // the trigger must be the newest member
      bool ok = co(b, trigger);
      for (CondId other : chosen)
        if (ok && other != trigger && !co(b, other)) ok = false;
      if (!ok) continue;
      chosen.push_back(b);
      build_cosets(pre, idx + 1, trigger, chosen, t);
      chosen.pop_back();
    }
  }

  void enqueue_candidate(const std::vector<CondId>& preset_in,
                         TransitionId t) {
    Candidate cand;
    cand.preset = preset_in;
    std::sort(cand.preset.begin(), cand.preset.end());
    cand.fold = t;
    for (CondId b : cand.preset) {
      EventId prod = p_.conditions_[b].producer;
      if (prod != kBottom) cand.stump = sorted_union(cand.stump, p_.cones_[prod]);
    }
    // marking after firing the candidate on top of its stump
    std::vector<char> in_cut(p_.conditions_.size(), 0);
    for (CondId b : cut_of(cand.stump)) in_cut[b] = 1;
    for (CondId b : cand.preset) {
      assert(in_cut[b]);
      in_cut[b] = 0;
    }
    std::vector<PlaceId> places;
    for (CondId b = 0; b < static_cast<CondId>(in_cut.size()); ++b)
      if (in_cut[b]) places.push_back(p_.conditions_[b].fold);
    for (PlaceId pl : p_.net_.transitions()[t].post) places.push_back(pl);
    std::sort(places.begin(), places.end());
    if (std::adjacent_find(places.begin(), places.end()) != places.end())
      throw UnsafeNet("two concurrent tokens on place " +
                      p_.net_.place_name(*std::adjacent_find(places.begin(),
                                                             places.end())));
    cand.mark = Marking(std::move(places));

    cand.key.size = cand.stump.size() + 1;
    cand.key.phi = phi_word(p_, cand.stump, t);
    cand.key.foata = foata_form(p_, cand.stump, &cand.preset, t);
    cand.key.fold = t;
    cand.key.preset = cand.preset;
    if (order_.kind == OrderKind::DheightOrder) {
      if (!order_.height) throw Error("DheightOrder requires a height hook");
      cand.key.height = order_.height(p_, cand.stump, &cand.preset, t);
    }
    bool fresh = queue_.emplace(cand.key, std::move(cand)).second;
    assert(fresh);
    (void)fresh;
  }

  // Marks of all sub-configurations of `stump` (down-closed subsets,
  // including the empty set and stump itself).
  const std::set<Marking>& downset_marks(const std::vector<EventId>& stump) {
    auto it = downset_memo_.find(stump);
    if (it != downset_memo_.end()) return it->second;
    std::set<Marking> marks;
    std::set<std::vector<EventId>> seen;
    std::vector<std::vector<EventId>> worklist{stump};
    seen.insert(stump);
    while (!worklist.empty()) {
      if (seen.size() > (1u << 20))
        throw EventLimitExceeded(
            "sub-configuration enumeration exceeded 2^20 sets");
      std::vector<EventId> d = std::move(worklist.back());
      worklist.pop_back();
      marks.insert(mark_of(d));
      // peel one maximal element at a time
      for (EventId e : d) {
        bool maximal = true;
        for (CondId b : p_.events_[e].postset)
          for (EventId consumer : p_.conditions_[b].consumers)
            if (maximal && contains_sorted(d, consumer)) maximal = false;
        if (!maximal) continue;
        std::vector<EventId> smaller;
        smaller.reserve(d.size() - 1);
        for (EventId x : d)
          if (x != e) smaller.push_back(x);
        if (seen.insert(smaller).second) worklist.push_back(std::move(smaller));
      }
    }
    return downset_memo_.emplace(stump, std::move(marks)).first->second;
  }

  bool marking_repeat(const Candidate& cand) {
    switch (order_.kind) {
      case OrderKind::ErvTotalOrder: {
        auto it = best_size_.find(cand.mark);
        return it != best_size_.end() && it->second < cand.key.size;
      }
      case OrderKind::DheightOrder: {
        auto it = first_key_.find(cand.mark);
        return it != first_key_.end() && it->second < cand.key;
      }
      case OrderKind::SubsetOrder: {
        if (policy_.loop_subset_mode)
          return downset_marks(cand.stump).count(cand.mark) > 0;
        if (cand.mark == p_.start_) return true;
        for (EventId e : cand.stump)
          if (p_.cone_marks_[e] == cand.mark) return true;
        return false;
      }
    }
    return false;
  }

  void append(const Candidate& cand) {
    if (p_.events_.size() >= limits_.max_events)
      throw EventLimitExceeded("unfolding exceeds " +
                               std::to_string(limits_.max_events) + " events");
    EventId e = static_cast<EventId>(p_.events_.size());
    Event ev;
    ev.fold = cand.fold;
    ev.preset = cand.preset;
    ev.instance = ++trans_instance_[cand.fold];

    CutoffReason reason = CutoffReason::None;
    if (policy_.extra_bad_cutoff && policy_.is_bad && policy_.is_bad(cand.mark))
      reason = CutoffReason::BadMarking;
    else if (marking_repeat(cand))
      reason = CutoffReason::MarkingRepeat;
    ev.cutoff = reason != CutoffReason::None;
    ev.reason = reason;

    std::vector<CondId> postset;
    for (PlaceId pl : p_.net_.transitions()[cand.fold].post) {
      CondId b = static_cast<CondId>(p_.conditions_.size());
      p_.conditions_.push_back({pl, e, {}, ++place_instance_[pl]});
      postset.push_back(b);
    }
    ev.postset = postset;
    p_.events_.push_back(std::move(ev));
    for (CondId b : cand.preset) p_.conditions_[b].consumers.push_back(e);

    std::vector<EventId> cone = cand.stump;
    cone.push_back(e);  // e has the largest id
    p_.cones_.push_back(std::move(cone));
    p_.cone_marks_.push_back(cand.mark);

    if (reason == CutoffReason::None) {
      register_noncutoff(cand.mark, cand.key.size, cand.key);
      for (CondId b : postset) {
        place_conds_[p_.conditions_[b].fold].push_back(b);
        generate_extensions(b);
      }
    }
    // cutoff events keep their postset conditions but are never extended
  }

  Order order_;
  CutoffPolicy policy_;
  UnfoldLimits limits_;
  Prefix p_;
  std::vector<std::vector<CondId>> place_conds_;  // extendable, per place
  std::vector<int> place_instance_, trans_instance_;
  std::map<Key, Candidate> queue_;
  std::map<std::pair<CondId, CondId>, bool> co_memo_;
  std::map<Marking, std::size_t> best_size_;  // ErvTotalOrder bookkeeping
  std::map<Marking, Key> first_key_;          // DheightOrder bookkeeping
  std::map<std::vector<EventId>, std::set<Marking>> downset_memo_;
};

Prefix unfold(const PetriNet& net, const Marking& start, const Order& order,
              const CutoffPolicy& policy, const UnfoldLimits& limits) {
  if (limits.max_events == 0) throw Error("max_events must be positive");
  if (order.kind != OrderKind::SubsetOrder && policy.loop_subset_mode)
    throw Error("loop_subset_mode requires SubsetOrder");
  for (PlaceId p : start.places())
    if (p < 0 || p >= static_cast<PlaceId>(net.places().size()))
      throw UnknownMarking("start marking refers to unknown place");
  return Unfolder(net, start, order, policy, limits).run();
}

}  // namespace fate
