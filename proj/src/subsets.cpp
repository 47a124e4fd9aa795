#include "bdmg/subsets.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "bdmg/automorphism.hpp"
#include "bdmg/errors.hpp"

namespace bdmg {

SubsetRepStream::SubsetRepStream(const Graph& g, std::vector<Perm> aut)
    : n_(g.n), aut_(std::move(aut)) {
  check_enum_size(n_);
  if (aut_.empty()) fail(Errc::invalid_spec, "automorphism group cannot be empty");
  total_ = factorial(n_) / uint64_t(aut_.size());
  preds_.assign(size_t(n_), {});
  succ_need_.assign(size_t(n_), 0);

  // Stabilizer chain over positions 0,1,2,...: at depth d, the surviving
  // elements fix 0..d-1 pointwise; the orbit of d under them gives the
  // ordering constraints γ(d) < γ(p).
  std::vector<const Perm*> level;
  level.reserve(aut_.size());
  for (const Perm& a : aut_) level.push_back(&a);
  int last_constrained = -1;
  for (int d = 0; d < n_; ++d) {
    uint32_t orbit = 0;
    for (const Perm* a : level) orbit |= uint32_t(1) << (*a)[size_t(d)];
    orbit &= ~(uint32_t(1) << d);
    succ_need_[size_t(d)] = __builtin_popcount(orbit);
    for (int p = d + 1; p < n_; ++p)
      if ((orbit >> p) & 1u) {
        preds_[size_t(p)].push_back(d);
        last_constrained = std::max(last_constrained, p);
      }
    std::vector<const Perm*> next;
    for (const Perm* a : level)
      if ((*a)[size_t(d)] == d) next.push_back(a);
    level.swap(next);
  }
  free_depth_ = last_constrained + 1;
}

void SubsetRepStream::run(size_t batch_size,
                          const std::function<bool(const uint8_t*, size_t)>& sink) const {
  if (batch_size == 0) batch_size = 1;
  const int n = n_;
  std::vector<uint8_t> buf(batch_size * size_t(n));
  size_t in_buf = 0;
  bool stopped = false;

  uint8_t vals[16] = {0};
  uint32_t used = 0;
  const uint32_t all = (uint32_t(1) << n) - 1;

  auto flush = [&]() {
    if (in_buf == 0 || stopped) return;
    if (!sink(buf.data(), in_buf)) stopped = true;
    in_buf = 0;
  };
  auto emit = [&]() {
    std::copy(vals, vals + n, buf.begin() + long(in_buf * size_t(n)));
    if (++in_buf == batch_size) flush();
  };

  auto dfs = [&](auto&& self, int d) -> void {
    if (stopped) return;
    if (d == n) {
      emit();
      return;
    }
    // Past the last constrained position every completion is valid: stream
    // the remaining values' permutations in lexicographic order directly.
    if (d >= free_depth_) {
      uint8_t save[16];
      std::copy(vals + d, vals + n, save);
      int m = 0;
      for (int v = 0; v < n; ++v)
        if (!((used >> v) & 1u)) vals[d + m++] = uint8_t(v);
      do {
        emit();
        if (stopped) break;
      } while (std::next_permutation(vals + d, vals + n));
      std::copy(save, save + (n - d), vals + d);
      return;
    }
    int lb = -1;
    for (int j : preds_[size_t(d)]) lb = std::max(lb, int(vals[j]));
    const int need = succ_need_[size_t(d)];
    uint32_t avail = all & ~used;
    if (lb >= 0) avail &= ~((uint32_t(2) << lb) - 1); // keep values > lb
    while (avail) {
      const int v = __builtin_ctz(avail);
      avail &= avail - 1;
      // v's orbit partners at later positions all need values above v
      if (need > 0 && __builtin_popcount((all & ~used) >> (v + 1)) < need) break;
      vals[d] = uint8_t(v);
      used |= uint32_t(1) << v;
      self(self, d + 1);
      used &= ~(uint32_t(1) << v);
      if (stopped) return;
    }
  };
  dfs(dfs, 0);
  flush();
}

std::vector<Perm> SubsetRepStream::collect() const {
  std::vector<Perm> out;
  out.reserve(size_t(total()));
  run(4096, [&](const uint8_t* flat, size_t count) {
    for (size_t i = 0; i < count; ++i)
      out.emplace_back(flat + i * size_t(n_), flat + (i + 1) * size_t(n_));
    return true;
  });
  return out;
}

uint64_t SubsetRepStream::count_by_enumeration() const {
  uint64_t c = 0;
  run(8192, [&](const uint8_t*, size_t count) {
    c += count;
    return true;
  });
  return c;
}

std::vector<Perm> representatives_by_scan(const Graph& g) {
  check_enum_size(g.n);
  const int n = g.n;

  // packed upper triangle of the permuted adjacency matrix
  struct Key {
    uint64_t lo, hi;
    bool operator==(const Key& o) const { return lo == o.lo && hi == o.hi; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return size_t(SplitMix64::mix(k.lo ^ SplitMix64::mix(k.hi)));
    }
  };

  std::vector<int> tri_base(size_t(n), 0);
  for (int a = 1; a < n; ++a) tri_base[size_t(a)] = tri_base[size_t(a) - 1] + (n - a);

  std::vector<Perm> reps;
  std::unordered_set<Key, KeyHash> seen;
  Perm p = identity_perm(n);
  do {
    Key key{0, 0};
    for (auto [u, v] : g.edges) {
      int a = p[size_t(u)], b = p[size_t(v)];
      if (a > b) std::swap(a, b);
      const int bit = tri_base[size_t(a)] + (b - a - 1);
      if (bit < 64)
        key.lo |= 1ull << bit;
      else
        key.hi |= 1ull << (bit - 64);
    }
    if (seen.insert(key).second) reps.push_back(p);
  } while (next_perm(p));
  return reps;
}

uint64_t subset_count(const Graph& g) {
  return factorial(g.n) / uint64_t(automorphism_group(g).size());
}

void save_rep_cache(const std::string& path, const Graph& g, const std::vector<Perm>& aut) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot write representative cache: " + path);
  SubsetRepStream stream(g, aut);
  out << "# bdmg rep-cache v1\n";
  out << "graph_hash " << graph_hash(g) << "\n";
  out << "n " << g.n << "\n";
  out << "aut " << aut.size() << "\n";
  out << "count " << stream.total() << "\n";
  stream.run(4096, [&](const uint8_t* flat, size_t count) {
    for (size_t i = 0; i < count; ++i) {
      const uint8_t* q = flat + i * size_t(g.n);
      for (int j = 0; j < g.n; ++j) out << (j ? " " : "") << int(q[j]);
      out << "\n";
    }
    return true;
  });
  if (!out) fail(Errc::io_error, "write failed: " + path);
}

std::vector<Perm> load_rep_cache(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open representative cache: " + path);
  std::string line;
  uint64_t hash = 0, aut = 0, count = 0;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok == "graph_hash")
      ss >> hash;
    else if (tok == "n")
      ss >> n;
    else if (tok == "aut")
      ss >> aut;
    else if (tok == "count") {
      ss >> count;
      break;
    } else
      fail(Errc::bad_format, "unexpected header line in cache: " + line);
  }
  if (hash != graph_hash(g) || n != g.n)
    fail(Errc::bad_format, "representative cache does not match this graph");
  if (aut == 0 || count == 0 || factorial(n) != aut * count)
    fail(Errc::bad_format, "representative cache header is inconsistent");
  std::vector<Perm> reps;
  reps.reserve(size_t(count));
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Perm p;
    int x;
    while (ss >> x) p.push_back(uint8_t(x));
    if (int(p.size()) != n || !is_permutation(p))
      fail(Errc::bad_format, "bad permutation line in cache");
    reps.push_back(std::move(p));
  }
  if (reps.size() != count) fail(Errc::bad_format, "cache truncated: count mismatch");
  return reps;
}

} // namespace bdmg
