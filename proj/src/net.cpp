#include "fate/net.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace fate {

Marking::Marking(std::vector<PlaceId> marked) : marked_(std::move(marked)) {
  std::sort(marked_.begin(), marked_.end());
  marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
}

bool Marking::contains(PlaceId p) const {
  return std::binary_search(marked_.begin(), marked_.end(), p);
}

bool Marking::contains_all(const std::vector<PlaceId>& ps) const {
  return std::all_of(ps.begin(), ps.end(),
                     [&](PlaceId p) { return contains(p); });
}

namespace {

std::vector<PlaceId> sorted_unique(std::vector<PlaceId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

PetriNet::PetriNet(std::vector<Place> places,
                   std::vector<Transition> transitions, Marking initial)
    : places_(std::move(places)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)) {
  const int np = static_cast<int>(places_.size());
  for (PlaceId p = 0; p < np; ++p) {
    if (!place_index_.emplace(places_[p].name, p).second)
      throw DuplicateName("duplicate place name: " + places_[p].name);
  }
  const int nt = static_cast<int>(transitions_.size());
  for (TransitionId t = 0; t < nt; ++t) {
    Transition& tr = transitions_[t];
    if (!transition_index_.emplace(tr.name, t).second)
      throw DuplicateName("duplicate transition name: " + tr.name);
    tr.pre = sorted_unique(std::move(tr.pre));
    tr.post = sorted_unique(std::move(tr.post));
    if (tr.pre.empty())
      throw SourceTransition("transition " + tr.name + " has an empty preset");
    for (PlaceId p : tr.pre)
      if (p < 0 || p >= np)
        throw DanglingArc("transition " + tr.name + " consumes unknown place");
    for (PlaceId p : tr.post)
      if (p < 0 || p >= np)
        throw DanglingArc("transition " + tr.name + " produces unknown place");
  }
  for (PlaceId p : initial_.places())
    if (p < 0 || p >= np)
      throw DanglingArc("initial marking refers to unknown place");
}

std::optional<PlaceId> PetriNet::place_by_name(const std::string& name) const {
  auto it = place_index_.find(name);
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TransitionId> PetriNet::transition_by_name(
    const std::string& name) const {
  auto it = transition_index_.find(name);
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

std::string PetriNet::marking_to_string(const Marking& m) const {
  std::vector<std::string> names;
  names.reserve(m.size());
  for (PlaceId p : m.places()) names.push_back(places_[p].name);
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  out += "}";
  return out;
}

std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m) {
  std::vector<TransitionId> result;
  const int nt = static_cast<int>(net.transitions().size());
  for (TransitionId t = 0; t < nt; ++t)
    if (m.contains_all(net.transitions()[t].pre)) result.push_back(t);
  return result;
}

Marking fire(const PetriNet& net, const Marking& m, TransitionId t) {
  const Transition& tr = net.transitions().at(t);
  if (!m.contains_all(tr.pre))
    throw NotEnabled("transition " + tr.name + " not enabled at " +
                     net.marking_to_string(m));
  std::vector<PlaceId> base;  // m \ pre(t), stays sorted
  base.reserve(m.size());
  for (PlaceId p : m.places())
    if (!std::binary_search(tr.pre.begin(), tr.pre.end(), p))
      base.push_back(p);
  std::vector<PlaceId> next = base;
  for (PlaceId p : tr.post) {
    if (std::binary_search(base.begin(), base.end(), p))
      throw UnsafeFiring("firing " + tr.name + " at " +
                         net.marking_to_string(m) + " puts a second token on " +
                         net.place_name(p));
    next.push_back(p);
  }
  return Marking(std::move(next));
}

std::optional<int> ReachabilityGraph::node_of(const Marking& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ReachabilityGraph::require_node(const Marking& m) const {
  auto n = node_of(m);
  if (!n) throw UnknownMarking("marking is not reachable");
  return *n;
}

namespace {

// Iterative Tarjan; recursion depth can reach the node count.
void tarjan_sccs(ReachabilityGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> num(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  g.scc_of.assign(n, -1);
  int counter = 0;

  struct Frame {
    int v;
    std::size_t next_edge;
  };
  for (int start = 0; start < n; ++start) {
    if (num[start] != -1) continue;
    std::vector<Frame> frames{{start, 0}};
    num[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < g.out[f.v].size()) {
        int w = g.edges[g.out[f.v][f.next_edge++]].dst;
        if (num[w] == -1) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == num[v]) {
          std::vector<int> scc;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            g.scc_of[w] = static_cast<int>(g.sccs.size());
            scc.push_back(w);
            if (w == v) break;
          }
          std::sort(scc.begin(), scc.end());
          g.sccs.push_back(std::move(scc));
        }
      }
    }
  }

  std::vector<char> leaves(g.sccs.size(), 0);
  for (const auto& e : g.edges)
    if (g.scc_of[e.src] != g.scc_of[e.dst]) leaves[g.scc_of[e.src]] = 1;
  for (int c = 0; c < static_cast<int>(g.sccs.size()); ++c)
    if (!leaves[c]) g.terminal_sccs.push_back(c);
}

}  // namespace

ReachabilityGraph build_reachability_graph(const PetriNet& net,
                                           std::size_t node_cap) {
  ReachabilityGraph g;
  g.root = 0;
  g.nodes.push_back(net.initial());
  g.index_.emplace(net.initial(), 0);
  g.out.emplace_back();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    Marking m = g.nodes[v];
    for (TransitionId t : enabled(net, m)) {
      Marking next;
      try {
        next = fire(net, m, t);
      } catch (const UnsafeFiring& e) {
        throw UnsafeNet(std::string("net is not safe: ") + e.what());
      }
      auto it = g.index_.find(next);
      int w;
      if (it == g.index_.end()) {
        if (g.nodes.size() >= node_cap)
          throw StateLimitExceeded("reachability graph exceeds " +
                                   std::to_string(node_cap) + " markings");
        w = static_cast<int>(g.nodes.size());
        g.nodes.push_back(next);
        g.index_.emplace(std::move(next), w);
        g.out.emplace_back();
        queue.push_back(w);
      } else {
        w = it->second;
      }
      g.out[v].push_back(static_cast<int>(g.edges.size()));
      g.edges.push_back({v, t, w});
    }
  }
  tarjan_sccs(g);
  return g;
}

std::vector<Attractor> attractors(const ReachabilityGraph& graph) {
  std::vector<Attractor> result;
  for (int c : graph.terminal_sccs) {
    Attractor a;
    a.nodes = graph.sccs[c];
    if (a.nodes.size() == 1) {
      int v = a.nodes[0];
      a.fixed_point = true;
      for (int ei : graph.out[v])
        if (graph.edges[ei].dst != v) a.fixed_point = false;
    }
    result.push_back(std::move(a));
  }
  return result;
}

std::vector<int> basin(const ReachabilityGraph& graph, const Attractor& a) {
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<char> in_a(n, 0), in_s(n, 1);
  for (int v : a.nodes) in_a[v] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!in_s[v] || in_a[v]) continue;
      bool escapes = graph.out[v].empty();
      for (int ei : graph.out[v])
        if (!in_s[graph.edges[ei].dst]) escapes = true;
      if (escapes) {
        in_s[v] = 0;
        changed = true;
      }
    }
  }
  std::vector<int> result;
  for (int v = 0; v < n; ++v)
    if (in_s[v]) result.push_back(v);
  return result;
}

std::vector<int> attractor_distances(const ReachabilityGraph& graph) {
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<std::vector<int>> rev(n);
  for (const auto& e : graph.edges) rev[e.dst].push_back(e.src);
  std::vector<int> dist(n, -1);
  std::deque<int> queue;
  for (const Attractor& a : attractors(graph))
    for (int v : a.nodes) {
      dist[v] = 0;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : rev[v])
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

int attractor_distance(const ReachabilityGraph& graph, const Marking& m) {
  return attractor_distances(graph)[graph.require_node(m)];
}

int net_distance(const ReachabilityGraph& graph) {
  auto dist = attractor_distances(graph);
  return *std::max_element(dist.begin(), dist.end());
}

std::string Policy::describe(const PetriNet& net) const {
  if (kind == Kind::RoundRobin) return "round-robin";
  std::string out = "script:";
  for (std::size_t i = 0; i < script.size(); ++i) {
    if (i) out += ",";
    out += net.transition_name(script[i]);
  }
  return out;
}

FairnessTrace simulate(const PetriNet& net, const Policy& policy,
                       std::size_t max_steps) {
  if (policy.kind == Policy::Kind::Scripted && policy.script.empty())
    throw ScriptNotFireable("empty script");

  FairnessTrace trace;
  trace.net = &net;
  trace.policy = policy.describe(net);

  ReachabilityGraph graph = build_reachability_graph(net);
  std::vector<Attractor> atts = attractors(graph);
  std::vector<int> att_of(graph.nodes.size(), -1);
  for (std::size_t i = 0; i < atts.size(); ++i)
    for (int v : atts[i].nodes) att_of[v] = static_cast<int>(i);

  // policy state for lasso detection: marking node plus either the script
  // position or the per-marking round-robin counters (mod fan-out)
  std::map<Marking, int> counters;
  using State = std::pair<int, std::vector<int>>;
  std::map<State, int> seen;
  std::vector<int> node_seq;

  Marking current = net.initial();
  std::size_t script_pos = 0;
  for (std::size_t step = 0;; ++step) {
    int node = graph.require_node(current);
    node_seq.push_back(node);
    std::vector<TransitionId> en = enabled(net, current);
    if (en.empty()) {
      trace.deadlocked = true;
      break;
    }
    if (step == max_steps) break;

    if (!trace.lasso) {
      std::vector<int> policy_state;
      if (policy.kind == Policy::Kind::Scripted) {
        policy_state.push_back(static_cast<int>(script_pos));
      } else {
        for (const auto& [m, k] : counters) {
          policy_state.push_back(graph.require_node(m));
          policy_state.push_back(k);
        }
      }
      auto [it, fresh] =
          seen.emplace(State{node, std::move(policy_state)},
                       static_cast<int>(trace.steps.size()));
      if (!fresh)
        trace.lasso = {it->second,
                       static_cast<int>(trace.steps.size()) - it->second};
    }

    TransitionId t;
    if (policy.kind == Policy::Kind::Scripted) {
      t = policy.script[script_pos];
      script_pos = (script_pos + 1) % policy.script.size();
      if (!std::binary_search(en.begin(), en.end(), t))
        throw ScriptNotFireable("scripted transition " +
                                net.transition_name(t) + " not enabled at " +
                                net.marking_to_string(current));
    } else {
      int n = static_cast<int>(en.size());
      int& k = counters[current];
      t = en[k % n];
      k = (k + 1) % n;
    }
    trace.steps.push_back({current, t});
    current = fire(net, current, t);
  }
  trace.terminal = current;

  // longest suffix of the visited markings inside one attractor
  int last_att = att_of[node_seq.back()];
  if (last_att != -1) {
    int entry = static_cast<int>(node_seq.size()) - 1;
    while (entry > 0 && att_of[node_seq[entry - 1]] == last_att) --entry;
    trace.attractor_entry = entry;
    trace.entered_attractor = atts[last_att];
  }
  return trace;
}

bool is_situation_fair(const FairnessTrace& trace) {
  if (trace.deadlocked) return true;
  if (!trace.lasso)
    throw NotDecidable("trace was truncated without deadlock or lasso");
  const auto [start, period] = *trace.lasso;
  std::set<std::pair<Marking, TransitionId>> fired;
  std::set<Marking> visited;
  for (int i = start; i < start + period; ++i) {
    fired.insert({trace.steps[i].marking, trace.steps[i].fired});
    visited.insert(trace.steps[i].marking);
  }
  for (const Marking& m : visited)
    for (TransitionId t : enabled(*trace.net, m))
      if (!fired.count({m, t})) return false;
  return true;
}

}  // namespace fate
