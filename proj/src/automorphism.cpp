#include "bdmg/automorphism.hpp"

#include "bdmg/errors.hpp"

namespace bdmg {

// Images are assigned vertex by vertex. A candidate image u for vertex v must
// have v's degree and satisfy adj(u) ∩ assigned == { images of v's already
// assigned neighbors }, which the bitmask comparison below checks in O(1).
std::vector<Perm> automorphism_group(const Graph& g) {
  check_enum_size(g.n);
  const int n = g.n;
  std::vector<int> deg(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) deg[size_t(v)] = g.degree(v);

  std::vector<Perm> out;
  Perm img(size_t(n), 0);
  uint32_t used = 0;

  auto dfs = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(img);
      return;
    }
    uint32_t want = 0;
    for (int j = 0; j < v; ++j)
      if ((g.adj[size_t(v)] >> j) & 1u) want |= uint32_t(1) << img[size_t(j)];
    for (int u = 0; u < n; ++u) {
      if ((used >> u) & 1u) continue;
      if (deg[size_t(u)] != deg[size_t(v)]) continue;
      if ((uint32_t(g.adj[size_t(u)]) & used) != want) continue;
      img[size_t(v)] = uint8_t(u);
      used |= uint32_t(1) << u;
      self(self, v + 1);
      used &= ~(uint32_t(1) << u);
    }
  };
  dfs(dfs, 0);
  return out;
}

} // namespace bdmg
