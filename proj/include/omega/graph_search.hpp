#pragma once

// Explicit-state exploration and accepting-lasso extraction with
// generalized Büchi marks on edges. Every search in the library (automaton
// emptiness, transducer evaluation, PCP configurations, Turing machine
// configurations) is phrased as: explore a finite graph from one root, then
// find a reachable cycle whose edge marks cover a required mask.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace omega::search {

using Marks = std::uint32_t;

template <class Label>
struct Graph {
  struct Edge {
    std::size_t target;
    Marks marks;
    Label label;
  };

  std::vector<std::vector<Edge>> adjacency;

  std::size_t size() const { return adjacency.size(); }
};

template <class Label>
struct LassoRun {
  std::vector<Label> stem;
  std::vector<Label> cycle;
  std::size_t root = 0;  // node where the cycle starts and ends
};

template <class Key, class Label>
struct Exploration {
  Graph<Label> graph;
  std::vector<Key> keys;
  bool truncated = false;  // node budget exhausted
};

/// Breadth-first exploration from `initial`. `successors(key, emit)` must
/// call `emit(target_key, marks, label)` once per outgoing edge. Nodes beyond
/// `node_budget` are not created; edges into them are dropped and the result
/// is flagged truncated.
template <class Key, class Label, class Successors>
Exploration<Key, Label> explore(const Key& initial, Successors&& successors,
                                std::size_t node_budget = std::numeric_limits<std::size_t>::max()) {
  Exploration<Key, Label> ex;
  std::map<Key, std::size_t> ids;
  ids.emplace(initial, 0);
  ex.keys.push_back(initial);
  ex.graph.adjacency.emplace_back();
  for (std::size_t cur = 0; cur < ex.keys.size(); ++cur) {
    const Key key = ex.keys[cur];
    successors(key, [&](const Key& target, Marks marks, const Label& label) {
      auto it = ids.find(target);
      std::size_t id;
      if (it != ids.end()) {
        id = it->second;
      } else {
        if (ex.keys.size() >= node_budget) {
          ex.truncated = true;
          return;
        }
        id = ex.keys.size();
        ids.emplace(target, id);
        ex.keys.push_back(target);
        ex.graph.adjacency.emplace_back();
      }
      ex.graph.adjacency[cur].push_back({id, marks, label});
    });
  }
  return ex;
}

namespace detail {

// Iterative Tarjan. Returns the component id of every node; unreachable
// nodes get npos.
template <class Label>
std::vector<std::size_t> strongly_connected(const Graph<Label>& g, std::size_t root) {
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, npos), low(n, 0), comp(n, npos);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
  std::size_t counter = 0, comps = 0;

  index[root] = low[root] = counter++;
  stack.push_back(root);
  on_stack[root] = true;
  call.emplace_back(root, 0);
  while (!call.empty()) {
    auto& [v, ei] = call.back();
    if (ei < g.adjacency[v].size()) {
      const std::size_t w = g.adjacency[v][ei++].target;
      if (index[w] == npos) {
        index[w] = low[w] = counter++;
        stack.push_back(w);
        on_stack[w] = true;
        call.emplace_back(w, 0);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
      continue;
    }
    const std::size_t done = v;
    call.pop_back();
    if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    if (low[done] == index[done]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
      } while (w != done);
      ++comps;
    }
  }
  return comp;
}

// BFS from `from` restricted to nodes with allowed[node]; returns the edge
// path (node, edge index) to the first edge satisfying `pred`.
template <class Label, class Pred>
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> path_to_edge(
    const Graph<Label>& g, std::size_t from, const std::vector<bool>& allowed, Pred pred) {
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> parent(g.size(), {npos, npos});
  std::vector<bool> seen(g.size(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t ei = 0; ei < g.adjacency[v].size(); ++ei) {
      const auto& e = g.adjacency[v][ei];
      if (!allowed[e.target]) continue;
      if (pred(v, e)) {
        std::vector<std::pair<std::size_t, std::size_t>> path{{v, ei}};
        for (std::size_t u = v; u != from;) {
          path.push_back(parent[u]);
          u = parent[u].first;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!seen[e.target]) {
        seen[e.target] = true;
        parent[e.target] = {v, ei};
        queue.push_back(e.target);
      }
    }
  }
  return std::nullopt;
}

template <class Label>
std::vector<std::size_t> bfs_order(const Graph<Label>& g, std::size_t root) {
  std::vector<std::size_t> order{root};
  std::vector<bool> seen(g.size(), false);
  seen[root] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& e : g.adjacency[order[i]]) {
      if (!seen[e.target]) {
        seen[e.target] = true;
        order.push_back(e.target);
      }
    }
  }
  return order;
}

// Builds a cycle through `root` inside the component `allowed` whose marks
// cover `required`, assuming the component's internal marks do.
template <class Label>
std::vector<Label> build_cycle(const Graph<Label>& g, std::size_t root, const std::vector<bool>& allowed,
                               Marks required) {
  std::vector<Label> cycle;
  Marks covered = 0;
  std::size_t cur = root;
  auto take = [&](const std::vector<std::pair<std::size_t, std::size_t>>& path) {
    for (auto [v, ei] : path) {
      const auto& e = g.adjacency[v][ei];
      cycle.push_back(e.label);
      covered |= e.marks;
      cur = e.target;
    }
  };
  for (Marks bit = 1; bit != 0 && bit <= required; bit <<= 1) {
    if (!(required & bit) || (covered & bit)) continue;
    auto path = path_to_edge(g, cur, allowed, [bit](std::size_t, const auto& e) { return (e.marks & bit) != 0; });
    take(*path);
  }
  if (cycle.empty() || cur != root) {
    auto path = path_to_edge(g, cur, allowed, [root](std::size_t, const auto& e) { return e.target == root; });
    take(*path);
  }
  return cycle;
}

}  // namespace detail

/// Accepting lassos from `root`, one per (accepting component, node in it)
/// pair, components in BFS discovery order, at most `limit` runs.
template <class Label>
std::vector<LassoRun<Label>> accepting_lassos(const Graph<Label>& g, std::size_t root, Marks required,
                                              std::size_t limit, bool every_root = false) {
  std::vector<LassoRun<Label>> runs;
  if (g.size() == 0 || limit == 0) return runs;
  const auto comp = detail::strongly_connected(g, root);
  const auto order = detail::bfs_order(g, root);

  std::map<std::size_t, Marks> comp_marks;
  std::map<std::size_t, bool> comp_has_edge;
  for (std::size_t v : order) {
    for (const auto& e : g.adjacency[v]) {
      if (comp[e.target] == comp[v]) {
        comp_marks[comp[v]] |= e.marks;
        comp_has_edge[comp[v]] = true;
      }
    }
  }

  // Shortest stems from the root.
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> parent(g.size(), {npos, npos});
  {
    std::vector<bool> seen(g.size(), false);
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t ei = 0; ei < g.adjacency[v].size(); ++ei) {
        const std::size_t w = g.adjacency[v][ei].target;
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = {v, ei};
          queue.push_back(w);
        }
      }
    }
  }

  std::vector<bool> used_comp(g.size(), false);
  for (std::size_t v : order) {
    const std::size_t c = comp[v];
    if (!comp_has_edge[c] || (comp_marks[c] & required) != required) continue;
    if (used_comp[c] && !every_root) continue;
    used_comp[c] = true;
    std::vector<bool> allowed(g.size(), false);
    for (std::size_t u = 0; u < g.size(); ++u) allowed[u] = comp[u] == c;

    LassoRun<Label> run;
    run.root = v;
    for (std::size_t u = v; u != root;) {
      const auto [p, ei] = parent[u];
      run.stem.push_back(g.adjacency[p][ei].label);
      u = p;
    }
    std::reverse(run.stem.begin(), run.stem.end());
    run.cycle = detail::build_cycle(g, v, allowed, required);
    runs.push_back(std::move(run));
    if (runs.size() >= limit) break;
  }
  return runs;
}

template <class Label>
std::optional<LassoRun<Label>> find_accepting_lasso(const Graph<Label>& g, std::size_t root, Marks required) {
  auto runs = accepting_lassos(g, root, required, 1);
  if (runs.empty()) return std::nullopt;
  return std::move(runs.front());
}

}  // namespace omega::search
