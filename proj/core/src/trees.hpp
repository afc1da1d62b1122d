#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace tropicount::detail {

using TreeEdges = std::vector<std::pair<int, int>>;

// Trees with labeled leaves 0..m-1 (m >= 3) and unlabeled inner vertices m, m+1, ...
// Each edge is (inner, other). With `trivalent_only` every inner vertex has valency 3,
// otherwise valency >= 3. Every tree is emitted exactly once.
inline void labeled_trees(int m, bool trivalent_only, const std::function<void(const TreeEdges&, int)>& emit) {
  std::function<void(TreeEdges&, int, int)> grow = [&](TreeEdges& edges, int next_leaf, int next_inner) {
    if (next_leaf == m) {
      emit(edges, next_inner);
      return;
    }
    if (!trivalent_only) {
      for (int v = m; v < next_inner; ++v) {
        edges.push_back({v, next_leaf});
        grow(edges, next_leaf + 1, next_inner);
        edges.pop_back();
      }
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto saved = edges[i];
      int w = next_inner;
      edges[i] = {saved.first, w};
      edges.push_back({w, saved.second});
      edges.push_back({w, next_leaf});
      grow(edges, next_leaf + 1, next_inner + 1);
      edges.pop_back();
      edges.pop_back();
      edges[i] = saved;
    }
  };
  TreeEdges star{{m, 0}, {m, 1}, {m, 2}};
  grow(star, 3, m + 1);
}

}  // namespace tropicount::detail
