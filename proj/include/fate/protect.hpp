#pragma once

#include <vector>

#include "fate/doom.hpp"
#include "fate/unfold.hpp"

namespace fate {

enum class HeightMode { OpponentCount, LiteralCount };

/// Events of the prefix outside `context` that were enabled by it
/// (stump inside `context`) and stand in direct conflict with some
/// event of `c`: the decisions taken against them while performing c.
/// Requires c to be a subset of context.
std::vector<EventId> strict_opponents(const Configuration& c,
                                      const Configuration& context);

/// Decisional height of a configuration.
int dheight(const Configuration& c, HeightMode mode = HeightMode::OpponentCount);

struct Protectedness {
  bool safe = false;
  int value = 0;

  static Protectedness Safe() { return {true, 0}; }
  static Protectedness Finite(int n) { return {false, n}; }
  bool operator==(const Protectedness&) const = default;
};

/// Minimally doomed configurations relevant to c: all mindoo members
/// extending a free c; c itself when c is bad or doomed.
std::vector<Configuration> mindoo_extensions(const Configuration& c,
                                             const MinDooResult& result,
                                             const BadSpec& spec,
                                             FreeChecker* checker = nullptr);

/// Minimum number of decisions on any path from c into a minimally
/// doomed configuration; Safe when no such configuration extends a
/// free c.
Protectedness protectedness(const Configuration& c, const MinDooResult& result,
                            const BadSpec& spec,
                            HeightMode mode = HeightMode::OpponentCount,
                            FreeChecker* checker = nullptr);

/// Height of the configuration against the full unfolding: opponents are
/// enumerated as co-sets over the configuration's own conditions, so the
/// value does not depend on how much of the prefix has been built. Used
/// by the DheightOrder cutoff comparisons.
int unfolding_height(const Prefix& prefix, const std::vector<EventId>& events,
                     const std::vector<CondId>* virtual_preset,
                     TransitionId virtual_fold,
                     HeightMode mode = HeightMode::OpponentCount);

HeightFn unfolding_height_fn(HeightMode mode = HeightMode::OpponentCount);

/// The adequate total order (height, size, Parikh word, Foata form).
Order dheight_order(HeightMode mode = HeightMode::OpponentCount);

}  // namespace fate
