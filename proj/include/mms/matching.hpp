#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace mms {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

// Left vertices are agents, right vertices are bundles.
struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::vector<std::size_t>> adj;  // adj[x] = sorted right neighbours

  explicit BipartiteGraph(std::size_t l = 0, std::size_t r = 0) : left(l), right(r), adj(l) {}
  void add_edge(std::size_t x, std::size_t y) {
    auto& nb = adj.at(x);
    auto it = std::lower_bound(nb.begin(), nb.end(), y);
    if (it == nb.end() || *it != y) nb.insert(it, y);
  }
  bool has_edge(std::size_t x, std::size_t y) const { return std::binary_search(adj[x].begin(), adj[x].end(), y); }
};

// match[x] is the right vertex paired with x, or kUnmatched.
using BipartiteMatching = std::vector<std::size_t>;

inline std::size_t matching_size(const BipartiteMatching& match) {
  return static_cast<std::size_t>(std::count_if(match.begin(), match.end(), [](std::size_t y) { return y != kUnmatched; }));
}

// Kuhn's augmenting paths; left vertices and their neighbours are tried in
// ascending order so the result is reproducible, and a free neighbour is
// always preferred to rerouting an earlier match.
inline BipartiteMatching max_bipartite_matching(const BipartiteGraph& g) {
  BipartiteMatching match(g.left, kUnmatched);
  std::vector<std::size_t> owner(g.right, kUnmatched);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t x) -> bool {
    for (std::size_t y : g.adj[x]) {
      if (seen[y] || owner[y] != kUnmatched) continue;
      seen[y] = 1;
      owner[y] = x;
      match[x] = y;
      return true;
    }
    for (std::size_t y : g.adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      if (owner[y] == kUnmatched || self(self, owner[y])) {
        owner[y] = x;
        match[x] = y;
        return true;
      }
    }
    return false;
  };
  for (std::size_t x = 0; x < g.left; ++x) {
    seen.assign(g.right, 0);
    augment(augment, x);
  }
  return match;
}

// No unmatched left vertex is adjacent to a matched right vertex.
inline bool is_envy_free(const BipartiteGraph& g, const BipartiteMatching& match) {
  std::vector<char> taken(g.right, 0);
  for (std::size_t x = 0; x < g.left; ++x) {
    if (match[x] == kUnmatched) continue;
    if (!g.has_edge(x, match[x]) || taken[match[x]]) return false;
    taken[match[x]] = 1;
  }
  for (std::size_t x = 0; x < g.left; ++x)
    if (match[x] == kUnmatched)
      for (std::size_t y : g.adj[x])
        if (taken[y]) return false;
  return true;
}

// Maximum-cardinality envy-free matching: take a maximum matching and drop
// every left vertex reachable from an unmatched one by an alternating path.
inline BipartiteMatching envy_free_matching(const BipartiteGraph& g) {
  BipartiteMatching match = max_bipartite_matching(g);
  std::vector<std::size_t> owner(g.right, kUnmatched);
  for (std::size_t x = 0; x < g.left; ++x)
    if (match[x] != kUnmatched) owner[match[x]] = x;

  std::vector<char> reached(g.left, 0);
  std::queue<std::size_t> frontier;
  for (std::size_t x = 0; x < g.left; ++x)
    if (match[x] == kUnmatched) {
      reached[x] = 1;
      frontier.push(x);
    }
  while (!frontier.empty()) {
    std::size_t x = frontier.front();
    frontier.pop();
    for (std::size_t y : g.adj[x]) {
      std::size_t z = owner[y];
      if (z != kUnmatched && !reached[z]) {
        reached[z] = 1;
        frontier.push(z);
      }
    }
  }
  for (std::size_t x = 0; x < g.left; ++x)
    if (reached[x]) match[x] = kUnmatched;
  return match;
}

// mate[v] for a maximum-cardinality matching of a general graph, found with
// Edmonds' blossom contraction. Vertices are scanned in ascending order.
inline std::vector<std::size_t> max_general_matching(std::size_t n,
                                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  std::vector<std::size_t> mate(n, kUnmatched), parent(n), base(n);
  std::vector<char> used(n), blossom(n);

  auto lca = [&](std::size_t a, std::size_t b) {
    std::vector<char> mark(n, 0);
    for (;;) {
      a = base[a];
      mark[a] = 1;
      if (mate[a] == kUnmatched) break;
      a = parent[mate[a]];
    }
    for (;;) {
      b = base[b];
      if (mark[b]) return b;
      b = parent[mate[b]];
    }
  };
  auto mark_path = [&](std::size_t v, std::size_t b, std::size_t child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[mate[v]]] = 1;
      parent[v] = child;
      child = mate[v];
      v = parent[mate[v]];
    }
  };
  auto find_path = [&](std::size_t root) -> std::size_t {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), kUnmatched);
    for (std::size_t i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop();
      for (std::size_t to : adj[v]) {
        if (base[v] == base[to] || mate[v] == to) continue;
        if (to == root || (mate[to] != kUnmatched && parent[mate[to]] != kUnmatched)) {
          std::size_t cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
          }
        } else if (parent[to] == kUnmatched) {
          parent[to] = v;
          if (mate[to] == kUnmatched) return to;
          used[mate[to]] = 1;
          q.push(mate[to]);
        }
      }
    }
    return kUnmatched;
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (mate[v] != kUnmatched) continue;
    std::size_t u = find_path(v);
    while (u != kUnmatched) {
      std::size_t pv = parent[u], ppv = mate[pv];
      mate[u] = pv;
      mate[pv] = u;
      u = ppv;
    }
  }
  return mate;
}

inline std::size_t general_matching_size(const std::vector<std::size_t>& mate) {
  std::size_t c = 0;
  for (std::size_t v = 0; v < mate.size(); ++v)
    if (mate[v] != kUnmatched && v < mate[v]) ++c;
  return c;
}

}  // namespace mms
