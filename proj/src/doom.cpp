#include "fate/doom.hpp"

#include <algorithm>
#include <deque>

namespace fate {

BadSpec close_bad(const ReachabilityGraph& graph,
                  const std::vector<Marking>& raw) {
  BadSpec spec;
  spec.graph = &graph;
  spec.raw = raw;
  std::sort(spec.raw.begin(), spec.raw.end());
  spec.raw.erase(std::unique(spec.raw.begin(), spec.raw.end()),
                 spec.raw.end());

  std::vector<char> closed(graph.nodes.size(), 0);
  std::deque<int> queue;
  for (const Marking& m : spec.raw) {
    auto node = graph.node_of(m);
    if (!node) {
      spec.inert.push_back(m);
      continue;
    }
    if (!closed[*node]) {
      closed[*node] = 1;
      queue.push_back(*node);
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int ei : graph.out[v]) {
      int w = graph.edges[ei].dst;
      if (!closed[w]) {
        closed[w] = 1;
        queue.push_back(w);
      }
    }
  }
  for (int v = 0; v < static_cast<int>(graph.nodes.size()); ++v)
    if (closed[v]) {
      spec.closed_nodes.push_back(v);
      spec.closed.insert(graph.nodes[v]);
    }
  return spec;
}

bool is_bad(const BadSpec& spec, const Marking& m) {
  if (!spec.graph->node_of(m))
    throw UnknownMarking("marking is not a node of the reachability graph");
  return spec.closed.count(m) > 0;
}

FreeChecker::FreeChecker(const PetriNet& net, const BadSpec& spec,
                         UnfoldLimits limits)
    : net_(net), spec_(spec), limits_(limits) {}

bool FreeChecker::is_free(const Marking& m) {
  ++queries_;
  auto it = memo_.find(m);
  if (it != memo_.end()) return it->second;
  ++checks_;
  bool result = compute(m);
  memo_.emplace(m, result);
  return result;
}

DoomStatus FreeChecker::classify(const Marking& m) {
  if (spec_.closed.count(m)) return DoomStatus::Bad;
  return is_free(m) ? DoomStatus::Free : DoomStatus::Doomed;
}

bool FreeChecker::compute(const Marking& m) {
  CutoffPolicy policy;
  policy.loop_subset_mode = true;
  policy.extra_bad_cutoff = true;
  policy.is_bad = [this](const Marking& mm) {
    return spec_.closed.count(mm) > 0;
  };
  Prefix prefix = unfold(net_, m, Order::subset(), policy, limits_);

  // a good loop: bad cutoffs are classified first, so every
  // marking-repeat cutoff repeats a good marking
  for (const Event& e : prefix.events())
    if (e.cutoff && e.reason == CutoffReason::MarkingRepeat) return true;

  // a good deadlock of the net reachable inside the prefix
  std::set<std::vector<CondId>> seen;
  std::deque<std::vector<CondId>> queue;
  std::vector<CondId> init = prefix.initial_cut();
  std::sort(init.begin(), init.end());
  seen.insert(init);
  queue.push_back(std::move(init));
  while (!queue.empty()) {
    if (seen.size() > (1u << 20))
      throw EventLimitExceeded("freeness check explored more than 2^20 cuts");
    std::vector<CondId> cur = std::move(queue.front());
    queue.pop_front();
    std::vector<PlaceId> places;
    for (CondId b : cur) places.push_back(prefix.conditions()[b].fold);
    Marking mk(std::move(places));
    if (enabled(net_, mk).empty() && !spec_.closed.count(mk)) return true;
    for (EventId e = 0; e < static_cast<EventId>(prefix.events().size());
         ++e) {
      const Event& ev = prefix.events()[e];
      bool fireable = std::all_of(
          ev.preset.begin(), ev.preset.end(), [&](CondId b) {
            return std::binary_search(cur.begin(), cur.end(), b);
          });
      if (!fireable) continue;
      std::vector<CondId> next;
      next.reserve(cur.size());
      for (CondId b : cur)
        if (!std::binary_search(ev.preset.begin(), ev.preset.end(), b))
          next.push_back(b);
      for (CondId b : ev.postset)
        next.insert(std::lower_bound(next.begin(), next.end(), b), b);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return false;
}

bool free_check(const PetriNet& net, const Marking& m, const BadSpec& spec,
                UnfoldLimits limits) {
  return FreeChecker(net, spec, limits).is_free(m);
}

DoomStatus classify_marking(const PetriNet& net, const Marking& m,
                            const BadSpec& spec, UnfoldLimits limits) {
  return FreeChecker(net, spec, limits).classify(m);
}

bool is_unchallenged(const Prefix& prefix, EventId e) {
  prefix.check_event(e);
  for (CondId b : prefix.events()[e].preset)
    for (EventId consumer : prefix.conditions()[b].consumers)
      if (consumer != e) return false;
  return true;
}

Configuration shave(const Configuration& c) {
  Configuration result = c;
  bool changed = true;
  while (changed) {
    changed = false;
    for (EventId e : crest(result)) {
      if (is_unchallenged(*result.prefix, e)) {
        result.events.erase(
            std::remove(result.events.begin(), result.events.end(), e),
            result.events.end());
        changed = true;
      }
    }
  }
  return result;
}

std::vector<Configuration> wreath(const Configuration& c) {
  const Prefix& p = *c.prefix;
  if (!(shave(c).events == c.events))
    throw NotShaved("wreath requires a shaved configuration");
  std::set<std::vector<EventId>> out;
  for (EventId e : crest(c)) {
    std::set<EventId> challengers;
    for (CondId b : p.events()[e].preset)
      for (EventId e2 : p.conditions()[b].consumers)
        if (e2 != e) challengers.insert(e2);
    for (EventId e2 : challengers) {
      std::vector<EventId> events;
      for (EventId x : c.events)
        if (x != e) events.push_back(x);
      events.insert(std::lower_bound(events.begin(), events.end(), e2), e2);
      if (is_configuration(p, events)) out.insert(std::move(events));
    }
  }
  std::vector<Configuration> result;
  for (auto& events : out) result.push_back(Configuration{&p, events});
  return result;
}

std::vector<Configuration> min_bad_configs(const Prefix& prefix,
                                           const BadSpec& spec,
                                           std::size_t cap) {
  std::vector<Configuration> minimal;
  std::set<std::vector<EventId>> level{{}};
  std::size_t visited = 0;
  while (!level.empty()) {
    std::set<std::vector<EventId>> next;
    for (const auto& events : level) {
      if (++visited > cap)
        throw CapExceeded("min_bad_configs explored more than " +
                          std::to_string(cap) + " configurations");
      Configuration c{&prefix, events};
      if (spec.closed.count(mark(c))) {
        bool is_minimal = true;
        for (const Configuration& m : minimal)
          if (std::includes(events.begin(), events.end(), m.events.begin(),
                            m.events.end()))
            is_minimal = false;
        if (is_minimal) minimal.push_back(std::move(c));
        continue;  // supersets of a bad configuration cannot be minimal
      }
      for (EventId e : enabled_events(c)) {
        std::vector<EventId> ext = events;
        ext.insert(std::lower_bound(ext.begin(), ext.end(), e), e);
        next.insert(std::move(ext));
      }
    }
    level = std::move(next);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

namespace {

struct SmallestFirst {
  bool operator()(const std::vector<EventId>& a,
                  const std::vector<EventId>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

std::vector<std::vector<TransitionId>> fold_ridges(
    const Prefix& prefix, const std::vector<Configuration>& mindoo) {
  std::set<std::vector<TransitionId>> ridges;
  for (const Configuration& c : mindoo) {
    std::vector<TransitionId> folds;
    for (EventId e : crest(c)) folds.push_back(prefix.events()[e].fold);
    std::sort(folds.begin(), folds.end());
    folds.erase(std::unique(folds.begin(), folds.end()), folds.end());
    ridges.insert(std::move(folds));
  }
  return {ridges.begin(), ridges.end()};
}

}  // namespace

MinDooResult min_doo(const Prefix& prefix, const BadSpec& spec,
                     std::size_t cap) {
  MinDooResult result;
  FreeChecker checker(prefix.net(), spec);

  std::set<std::vector<EventId>, SmallestFirst> worklist;
  std::set<std::vector<EventId>> seen;
  bool empty_doomed = false;
  auto enqueue = [&](Configuration c) {
    if (c.events.empty()) empty_doomed = true;
    if (seen.insert(c.events).second) worklist.insert(std::move(c.events));
  };

  // the paper's seeds: shaved minimal bad configurations
  for (const Configuration& c : min_bad_configs(prefix, spec, cap))
    enqueue(shave(c));
  // doomed maximal configurations; restores completeness when a minimal
  // doomed configuration is not contained in any minimal bad one
  for (const Configuration& c : maximal_configurations(prefix, cap))
    if (!checker.is_free(mark(c))) enqueue(shave(c));
  result.stats.initial_worklist = worklist.size();

  std::set<std::vector<EventId>> mindoo;
  while (!worklist.empty() && !empty_doomed) {
    std::vector<EventId> events = *worklist.begin();
    worklist.erase(worklist.begin());
    ++result.stats.processed;
    Configuration c{&prefix, events};
    std::vector<EventId> top = crest(c);

    bool addit = true;
    std::vector<EventId> rest;
    std::set_difference(events.begin(), events.end(), top.begin(), top.end(),
                        std::back_inserter(rest));
    if (!checker.is_free(mark(Configuration{&prefix, rest}))) {
      addit = false;
      enqueue(shave(Configuration{&prefix, std::move(rest)}));
    } else {
      for (EventId e : top) {
        std::vector<EventId> reduced;
        for (EventId x : events)
          if (x != e) reduced.push_back(x);
        if (!checker.is_free(mark(Configuration{&prefix, reduced}))) {
          addit = false;
          enqueue(shave(Configuration{&prefix, std::move(reduced)}));
        }
      }
    }
    if (addit) mindoo.insert(events);
  }
  if (empty_doomed) mindoo = {{}};  // the unique minimally doomed configuration

  for (const auto& events : mindoo)
    result.mindoo.push_back(Configuration{&prefix, events});
  for (const Configuration& c : result.mindoo)
    result.cliff_edges.push_back(crest(c));
  result.ridges = fold_ridges(prefix, result.mindoo);
  result.stats.freeness_checks = checker.checks_performed();
  result.stats.freeness_queries = checker.queries();
  return result;
}

bool ridges_witnessed(const Prefix& subset_prefix, const MinDooResult& result,
                      const BadSpec& spec, std::size_t cap) {
  std::vector<Configuration> oracle_minimal;
  {
    // exhaustive reference enumeration, independent of the worklist path
    FreeChecker checker(subset_prefix.net(), spec);
    std::set<std::vector<EventId>> level{{}};
    std::size_t visited = 0;
    while (!level.empty()) {
      std::set<std::vector<EventId>> next;
      for (const auto& events : level) {
        if (++visited > cap)
          throw CapExceeded("ridge enumeration exceeded cap");
        Configuration c{&subset_prefix, events};
        if (checker.classify(mark(c)) != DoomStatus::Free) {
          bool minimal = true;
          for (const Configuration& m : oracle_minimal)
            if (std::includes(events.begin(), events.end(), m.events.begin(),
                              m.events.end()))
              minimal = false;
          if (minimal) oracle_minimal.push_back(std::move(c));
          continue;  // supersets are doomed but not minimal
        }
        for (EventId e : enabled_events(c)) {
          std::vector<EventId> ext = events;
          ext.insert(std::lower_bound(ext.begin(), ext.end(), e), e);
          next.insert(std::move(ext));
        }
      }
      level = std::move(next);
    }
  }
  auto oracle_ridges = fold_ridges(subset_prefix, oracle_minimal);
  for (const auto& r : oracle_ridges)
    if (std::find(result.ridges.begin(), result.ridges.end(), r) ==
        result.ridges.end())
      return false;
  return true;
}

}  // namespace fate
