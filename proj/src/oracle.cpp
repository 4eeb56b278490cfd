#include "fate/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace fate {

DoomStatus MarkingClassification::of(const Marking& m) const {
  return status[graph->require_node(m)];
}

MarkingClassification oracle_classify(const ReachabilityGraph& graph,
                                      const BadSpec& spec) {
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<char> bad(n, 0);
  for (int v : spec.closed_nodes) bad[v] = 1;

  // seeds: good nodes on a cycle, or good deadlocks
  std::vector<char> free(n, 0);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) {
    if (bad[v]) continue;
    bool on_cycle = graph.sccs[graph.scc_of[v]].size() > 1;
    for (int ei : graph.out[v])
      if (graph.edges[ei].dst == v) on_cycle = true;
    bool deadlock = graph.out[v].empty();
    if (on_cycle || deadlock) {
      free[v] = 1;
      queue.push_back(v);
    }
  }
  // backward reachability through good nodes
  std::vector<std::vector<int>> rev(n);
  for (const auto& e : graph.edges) rev[e.dst].push_back(e.src);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : rev[v])
      if (!bad[w] && !free[w]) {
        free[w] = 1;
        queue.push_back(w);
      }
  }

  MarkingClassification cls;
  cls.graph = &graph;
  cls.status.resize(n);
  for (int v = 0; v < n; ++v)
    cls.status[v] = bad[v] ? DoomStatus::Bad
                           : (free[v] ? DoomStatus::Free : DoomStatus::Doomed);
  return cls;
}

std::vector<Configuration> oracle_mindoo(const Prefix& prefix,
                                         const MarkingClassification& cls,
                                         std::size_t cap) {
  std::vector<Configuration> minimal;
  std::set<std::vector<EventId>> level{{}};
  std::size_t visited = 0;
  while (!level.empty()) {
    std::set<std::vector<EventId>> next;
    for (const auto& events : level) {
      if (++visited > cap)
        throw CapExceeded("oracle_mindoo explored more than " +
                          std::to_string(cap) + " configurations");
      Configuration c{&prefix, events};
      if (cls.of(mark(c)) != DoomStatus::Free) {
        bool is_minimal = true;
        for (const Configuration& m : minimal)
          if (std::includes(events.begin(), events.end(), m.events.begin(),
                            m.events.end()))
            is_minimal = false;
        if (is_minimal) minimal.push_back(std::move(c));
        continue;  // supersets are doomed but never minimal
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

std::vector<LoopWitness> oracle_loops(const ReachabilityGraph& graph,
                                      const Marking& m) {
  int source = graph.require_node(m);
  const int n = static_cast<int>(graph.nodes.size());

  // shortest path tree from the source
  std::vector<int> dist(n, -1), via_edge(n, -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int ei : graph.out[v]) {
      int w = graph.edges[ei].dst;
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        via_edge[w] = ei;
        queue.push_back(w);
      }
    }
  }

  std::vector<LoopWitness> result;
  for (int v = 0; v < n; ++v) {
    if (dist[v] == -1) continue;
    // shortest closed walk at v
    std::vector<int> cdist(n, -1), cvia(n, -1);
    std::deque<int> cq{v};
    cdist[v] = 0;
    int closing_edge = -1;
    while (!cq.empty() && closing_edge == -1) {
      int x = cq.front();
      cq.pop_front();
      for (int ei : graph.out[x]) {
        int w = graph.edges[ei].dst;
        if (w == v) {
          closing_edge = ei;
          break;
        }
        if (cdist[w] == -1) {
          cdist[w] = cdist[x] + 1;
          cvia[w] = ei;
          cq.push_back(w);
        }
      }
    }
    if (closing_edge == -1) continue;

    LoopWitness witness;
    for (int x = v; x != source; x = graph.edges[via_edge[x]].src) {
      witness.path_nodes.push_back(x);
      witness.path_labels.push_back(graph.edges[via_edge[x]].label);
    }
    witness.path_nodes.push_back(source);
    std::reverse(witness.path_nodes.begin(), witness.path_nodes.end());
    std::reverse(witness.path_labels.begin(), witness.path_labels.end());

    for (int x = graph.edges[closing_edge].src; x != v;
         x = graph.edges[cvia[x]].src) {
      witness.cycle_nodes.push_back(x);
      witness.cycle_labels.push_back(graph.edges[cvia[x]].label);
    }
    witness.cycle_nodes.push_back(v);
    std::reverse(witness.cycle_nodes.begin(), witness.cycle_nodes.end());
    std::reverse(witness.cycle_labels.begin(), witness.cycle_labels.end());
    witness.cycle_labels.push_back(graph.edges[closing_edge].label);
    result.push_back(std::move(witness));
  }
  return result;
}

}  // namespace fate
