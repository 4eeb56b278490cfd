#pragma once

#include <set>
#include <vector>

#include "fate/net.hpp"
#include "fate/unfold.hpp"

namespace fate {

/// User-declared bad markings together with their forward reachability
/// closure over a reachability graph.
struct BadSpec {
  std::vector<Marking> raw;      // sorted, as declared
  std::vector<int> closed_nodes; // node ids, sorted
  std::set<Marking> closed;      // markings of closed_nodes
  std::vector<Marking> inert;    // raw markings that are not reachable
  const ReachabilityGraph* graph = nullptr;
};

BadSpec close_bad(const ReachabilityGraph& graph,
                  const std::vector<Marking>& raw);

/// Membership in the closed bad set; m must be a reachable marking.
bool is_bad(const BadSpec& spec, const Marking& m);

enum class DoomStatus { Bad, Doomed, Free };

/// Unfolding-based freeness oracle with per-marking memoization.
/// A marking is free iff its loop/bad-cutoff subset-order prefix exposes
/// a good loop or reaches a good deadlock.
class FreeChecker {
 public:
  FreeChecker(const PetriNet& net, const BadSpec& spec,
              UnfoldLimits limits = {});

  bool is_free(const Marking& m);
  DoomStatus classify(const Marking& m);

  std::size_t checks_performed() const { return checks_; }
  std::size_t queries() const { return queries_; }

 private:
  bool compute(const Marking& m);

  const PetriNet& net_;
  const BadSpec& spec_;
  UnfoldLimits limits_;
  std::map<Marking, bool> memo_;
  std::size_t checks_ = 0;
  std::size_t queries_ = 0;
};

bool free_check(const PetriNet& net, const Marking& m, const BadSpec& spec,
                UnfoldLimits limits = {});
DoomStatus classify_marking(const PetriNet& net, const Marking& m,
                            const BadSpec& spec, UnfoldLimits limits = {});

/// No other event shares a preset condition with e.
bool is_unchallenged(const Prefix& prefix, EventId e);

/// Removes unchallenged crest events until none remain; doom status of
/// the marking is preserved.
Configuration shave(const Configuration& c);

/// Replaces one crest event by one of its enabled challengers; valid
/// configurations only. Diagnostic helper; requires c shaved.
std::vector<Configuration> wreath(const Configuration& c);

/// Subset-minimal configurations whose marking is bad.
std::vector<Configuration> min_bad_configs(const Prefix& prefix,
                                           const BadSpec& spec,
                                           std::size_t cap = 1u << 20);

struct MinDooResult {
  std::vector<Configuration> mindoo;              // sorted
  std::vector<std::vector<EventId>> cliff_edges;  // crests of mindoo
  std::vector<std::vector<TransitionId>> ridges;  // deduplicated folds
  struct Stats {
    std::size_t freeness_checks = 0;  // prefix constructions performed
    std::size_t freeness_queries = 0;
    std::size_t initial_worklist = 0;
    std::size_t processed = 0;
  } stats;
};

/// Worklist search for the subset-minimal doomed configurations of a
/// complete prefix built from the net's initial marking.
MinDooResult min_doo(const Prefix& prefix, const BadSpec& spec,
                     std::size_t cap = 1u << 20);

/// Every ridge found by exhaustive oracle enumeration over this prefix
/// appears among the ridges of `result`.
bool ridges_witnessed(const Prefix& subset_prefix, const MinDooResult& result,
                      const BadSpec& spec, std::size_t cap = 1u << 20);

}  // namespace fate
