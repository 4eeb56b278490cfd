#include "fate/protect.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>

namespace fate {

namespace {

bool contains_sorted(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Prefix events outside `context` with stump inside `context` that are
// in direct conflict with an event of `partners`.
std::vector<EventId> opponents(const Prefix& p,
                               const std::vector<EventId>& partners,
                               const std::vector<EventId>& context) {
  std::vector<char> consumed(p.conditions().size(), 0);
  for (EventId e : partners)
    for (CondId b : p.events()[e].preset) consumed[b] = 1;
  std::vector<EventId> out;
  for (EventId e2 = 0; e2 < static_cast<EventId>(p.events().size()); ++e2) {
    if (contains_sorted(context, e2)) continue;
    bool stump_in = true;
    for (EventId pred : p.cone_events(e2))
      if (pred != e2 && !contains_sorted(context, pred)) stump_in = false;
    if (!stump_in) continue;
    bool conflicts = false;
    for (CondId b : p.events()[e2].preset)
      if (consumed[b]) conflicts = true;
    if (conflicts) out.push_back(e2);
  }
  return out;
}

// Events of `partners` that have a strict conflict partner in `context`.
std::size_t literal_count(const Prefix& p,
                          const std::vector<EventId>& partners,
                          const std::vector<EventId>& context) {
  std::vector<EventId> opp = opponents(p, partners, context);
  std::set<EventId> counted;
  for (EventId e2 : opp)
    for (CondId b : p.events()[e2].preset)
      for (EventId e : p.conditions()[b].consumers)
        if (contains_sorted(partners, e)) counted.insert(e);
  return counted.size();
}

}  // namespace

std::vector<EventId> strict_opponents(const Configuration& c,
                                      const Configuration& context) {
  if (c.prefix != context.prefix)
    throw DifferentPrefixes("configurations belong to different prefixes");
  if (!std::includes(context.events.begin(), context.events.end(),
                     c.events.begin(), c.events.end()))
    throw InvalidPair("c must be contained in context");
  return opponents(*c.prefix, c.events, context.events);
}

int dheight(const Configuration& c, HeightMode mode) {
  const Prefix& p = *c.prefix;
  if (mode == HeightMode::OpponentCount)
    return static_cast<int>(opponents(p, c.events, c.events).size());
  return static_cast<int>(literal_count(p, c.events, c.events));
}

std::vector<Configuration> mindoo_extensions(const Configuration& c,
                                             const MinDooResult& result,
                                             const BadSpec& spec,
                                             FreeChecker* checker) {
  Marking mk = mark(c);
  if (spec.closed.count(mk)) return {c};
  bool free = checker ? checker->is_free(mk)
                      : free_check(c.prefix->net(), mk, spec);
  if (!free) return {c};
  std::vector<Configuration> out;
  for (const Configuration& m : result.mindoo)
    if (std::includes(m.events.begin(), m.events.end(), c.events.begin(),
                      c.events.end()))
      out.push_back(m);
  return out;
}

Protectedness protectedness(const Configuration& c, const MinDooResult& result,
                            const BadSpec& spec, HeightMode mode,
                            FreeChecker* checker) {
  std::vector<Configuration> ext = mindoo_extensions(c, result, spec, checker);
  if (ext.empty()) return Protectedness::Safe();
  const Prefix& p = *c.prefix;
  int best = INT_MAX;
  for (const Configuration& target : ext) {
    std::vector<EventId> suffix;
    std::set_difference(target.events.begin(), target.events.end(),
                        c.events.begin(), c.events.end(),
                        std::back_inserter(suffix));
    int h;
    if (mode == HeightMode::OpponentCount)
      h = static_cast<int>(opponents(p, suffix, target.events).size());
    else
      h = static_cast<int>(literal_count(p, suffix, target.events));
    best = std::min(best, h);
  }
  return Protectedness::Finite(best);
}

int unfolding_height(const Prefix& prefix, const std::vector<EventId>& events,
                     const std::vector<CondId>* virtual_preset,
                     TransitionId virtual_fold, HeightMode mode) {
  const Prefix& p = prefix;

  // condition pool of the configuration
  std::vector<CondId> pool = p.initial_cut();
  for (EventId e : events)
    for (CondId b : p.events()[e].postset) pool.push_back(b);
  std::sort(pool.begin(), pool.end());

  std::vector<char> consumed(p.conditions().size(), 0);
  for (EventId e : events)
    for (CondId b : p.events()[e].preset) consumed[b] = 1;
  if (virtual_preset)
    for (CondId b : *virtual_preset) consumed[b] = 1;

  // identities already in the configuration (including the virtual top)
  std::set<std::pair<std::vector<CondId>, TransitionId>> own;
  for (EventId e : events)
    own.insert({p.events()[e].preset, p.events()[e].fold});
  if (virtual_preset) {
    std::vector<CondId> vp = *virtual_preset;
    std::sort(vp.begin(), vp.end());
    own.insert({std::move(vp), virtual_fold});
  }

  const auto& transitions = p.net().transitions();
  std::vector<std::vector<CondId>> by_place(p.net().places().size());
  for (CondId b : pool) by_place[p.conditions()[b].fold].push_back(b);

  // -2 stands for the virtual top event in literal counting
  std::set<EventId> literal_partners;
  int opponent_total = 0;

  auto causally_related = [&](CondId x, CondId y) {
    return causal(p, PrefixNode::condition(x), PrefixNode::condition(y)) ||
           causal(p, PrefixNode::condition(y), PrefixNode::condition(x));
  };

  std::vector<CondId> chosen;
  auto consider = [&](TransitionId t, const std::vector<CondId>& preset) {
    std::vector<CondId> sorted = preset;
    std::sort(sorted.begin(), sorted.end());
    bool hits = std::any_of(sorted.begin(), sorted.end(),
                            [&](CondId b) { return consumed[b]; });
    if (!hits) return;
    if (own.count({sorted, t})) return;
    ++opponent_total;
    if (mode == HeightMode::LiteralCount) {
      for (CondId b : sorted) {
        for (EventId e : p.conditions()[b].consumers)
          if (contains_sorted(events, e)) literal_partners.insert(e);
        if (virtual_preset &&
            std::binary_search(virtual_preset->begin(), virtual_preset->end(),
                               b))
          literal_partners.insert(-2);
      }
    }
  };

  std::function<void(TransitionId, const std::vector<PlaceId>&, std::size_t)>
      search = [&](TransitionId t, const std::vector<PlaceId>& pre,
                   std::size_t idx) {
        if (idx == pre.size()) {
          consider(t, chosen);
          return;
        }
        for (CondId b : by_place[pre[idx]]) {
          bool ok = true;
          for (CondId other : chosen)
            if (causally_related(other, b)) ok = false;
          if (!ok) continue;
          chosen.push_back(b);
          search(t, pre, idx + 1);
          chosen.pop_back();
        }
      };

  for (TransitionId t = 0; t < static_cast<TransitionId>(transitions.size());
       ++t) {
    bool feasible = std::all_of(
        transitions[t].pre.begin(), transitions[t].pre.end(),
        [&](PlaceId pl) { return !by_place[pl].empty(); });
    if (!feasible) continue;
    chosen.clear();
    search(t, transitions[t].pre, 0);
  }

  if (mode == HeightMode::OpponentCount) return opponent_total;
  return static_cast<int>(literal_partners.size());
}

HeightFn unfolding_height_fn(HeightMode mode) {
  return [mode](const Prefix& prefix, const std::vector<EventId>& events,
                const std::vector<CondId>* virtual_preset,
                TransitionId virtual_fold) {
    return unfolding_height(prefix, events, virtual_preset, virtual_fold,
                            mode);
  };
}

Order dheight_order(HeightMode mode) {
  Order order;
  order.kind = OrderKind::DheightOrder;
  order.height = unfolding_height_fn(mode);
  return order;
}

}  // namespace fate
