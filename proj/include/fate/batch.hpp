#pragma once

#include <vector>

#include "fate/doom.hpp"
#include "fate/net.hpp"

namespace fate {

/// Doom status of every node of the graph via per-marking freeness
/// checks. Serial reference implementation.
std::vector<DoomStatus> classify_all_serial(const PetriNet& net,
                                            const ReachabilityGraph& graph,
                                            const BadSpec& spec,
                                            const UnfoldLimits& limits = {});

/// Same result; the freeness checks run as an OpenMP parallel loop.
/// Falls back to the serial path when OpenMP is unavailable.
std::vector<DoomStatus> classify_all_parallel(const PetriNet& net,
                                              const ReachabilityGraph& graph,
                                              const BadSpec& spec,
                                              const UnfoldLimits& limits = {});

}  // namespace fate
