#include "bdmg/perturbation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <mutex>
#include <thread>

#include "bdmg/bdm.hpp"
#include "bdmg/errors.hpp"
#include "bdmg/subsets.hpp"

namespace bdmg {

double EdgeInfoReport::value_of(VertexPair e) const {
  if (e.first > e.second) std::swap(e.first, e.second);
  for (const EdgeInfo& x : entries)
    if (x.edge == e) return x.avg_info;
  fail(Errc::edge_not_found, "edge not present in report");
}

int EdgeInfoReport::rank_of(VertexPair e) const {
  if (e.first > e.second) std::swap(e.first, e.second);
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i].edge == e) return int(i) + 1;
  fail(Errc::edge_not_found, "edge not present in report");
}

double edge_info_single(const Graph& g, const Perm& perm, VertexPair edge_permuted,
                        const CtmTable& table, double base_bdm) {
  // definitional path: bdm(X) - bdm(X without the edge)
  BitMatrix x = adjacency_matrix(g, perm);
  VertexPair e = edge_permuted;
  if (e.first > e.second) std::swap(e.first, e.second);
  if (e.first < 0 || e.second >= g.n || !x.get(e.first, e.second))
    fail(Errc::edge_not_found, "permuted edge not present in the permuted graph");
  BitMatrix y = x;
  y.set(e.first, e.second, 0);
  y.set(e.second, e.first, 0);
  return base_bdm - bdm2d(y, table);
}

namespace {

// ------------------------------------------------------------------
// compensated accumulation

struct Neumaier {
  double sum = 0, comp = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// ------------------------------------------------------------------
// per-thread engine: permuted adjacency blocks as packed integers plus a
// multiplicity tally, so one edge perturbation touches only the few blocks
// its two matrix cells (and their wrap-around padding copies) fall into.

struct CellHit {
  uint16_t block;
  uint16_t mask;
};

struct EngineShared {
  const Graph* g = nullptr;
  int n = 0, l = 0, padded = 0, bper = 0, nblocks = 0;
  const double* ctm = nullptr;
  std::vector<double> log2_int;   // log2(0..nblocks), index 0 unused
  std::vector<CellHit> hits;      // cell (x,y) -> its padded copies, flattened
  std::vector<uint32_t> hit_abs;  // offsets into hits per cell (n*n + 1)

  EngineShared(const Graph& graph, const CtmTable& table) {
    g = &graph;
    n = graph.n;
    l = table.side;
    const int pad = (l - n % l) % l;
    padded = n + pad;
    bper = padded / l;
    nblocks = bper * bper;
    ctm = table.values.data();
    log2_int.resize(size_t(nblocks) + 1, 0.0);
    for (int i = 1; i <= nblocks; ++i) log2_int[size_t(i)] = std::log2(double(i));
    const int nbits = l * l;
    hit_abs.assign(size_t(n) * size_t(n) + 1, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        hit_abs[size_t(x) * size_t(n) + size_t(y)] = uint32_t(hits.size());
        if (x == y) continue;
        for (int i = x; i < padded; i += n)
          for (int j = y; j < padded; j += n) {
            const int block = (i / l) * bper + (j / l);
            const int bit = (i % l) * l + (j % l);
            hits.push_back({uint16_t(block), uint16_t(1u << (nbits - 1 - bit))});
          }
      }
    hit_abs[size_t(n) * size_t(n)] = uint32_t(hits.size());
    // the per-edge scratch in EngineLocal::process relies on this bound
    for (auto [u, v] : graph.edges) {
      const uint32_t c1 = uint32_t(u) * uint32_t(n) + uint32_t(v);
      const uint32_t c2 = uint32_t(v) * uint32_t(n) + uint32_t(u);
      const uint32_t total = (hit_abs[c1 + 1] - hit_abs[c1]) + (hit_abs[c2 + 1] - hit_abs[c2]);
      if (total > 8) fail(Errc::invalid_spec, "internal: edge touches more than 8 padded cells");
    }
  }
};

struct EngineLocal {
  const EngineShared& sh;
  std::vector<uint16_t> key;  // current block keys for this permutation
  std::vector<uint16_t> cnt;  // multiplicity per packed block value

  explicit EngineLocal(const EngineShared& s)
      : sh(s), key(size_t(s.nblocks), 0), cnt(size_t(1) << (s.l * s.l), 0) {}

  double contrib(uint16_t k) const {
    const uint16_t c = cnt[k];
    return c ? sh.ctm[k] + sh.log2_int[c] : 0.0;
  }

  // Per-edge contributions for one permutation, accumulated into acc[] in
  // edge order. perm maps original labels to permuted ones.
  void process(const uint8_t* perm, Neumaier* acc) {
    const Graph& g = *sh.g;
    const int n = sh.n;
    std::memset(key.data(), 0, key.size() * sizeof(uint16_t));
    for (auto [u, v] : g.edges) {
      const int w = perm[u], x = perm[v];
      const uint32_t c1 = uint32_t(w) * uint32_t(n) + uint32_t(x);
      const uint32_t c2 = uint32_t(x) * uint32_t(n) + uint32_t(w);
      for (uint32_t i = sh.hit_abs[c1]; i < sh.hit_abs[c1 + 1]; ++i)
        key[sh.hits[i].block] |= sh.hits[i].mask;
      for (uint32_t i = sh.hit_abs[c2]; i < sh.hit_abs[c2 + 1]; ++i)
        key[sh.hits[i].block] |= sh.hits[i].mask;
    }
    for (int b = 0; b < sh.nblocks; ++b) ++cnt[key[size_t(b)]];

    // local scratch: affected blocks (dedup) and involved keys (dedup)
    uint16_t ablock[8], amask[8];
    uint16_t keys[16];
    uint16_t oldk[8], newk[8];

    const size_t ecount = g.edges.size();
    for (size_t ei = 0; ei < ecount; ++ei) {
      const auto [u, v] = g.edges[ei];
      const int w = perm[u], x = perm[v];
      int nb = 0;
      for (uint32_t pass = 0; pass < 2; ++pass) {
        const uint32_t c = pass == 0 ? uint32_t(w) * uint32_t(n) + uint32_t(x)
                                     : uint32_t(x) * uint32_t(n) + uint32_t(w);
        for (uint32_t i = sh.hit_abs[c]; i < sh.hit_abs[c + 1]; ++i) {
          const uint16_t b = sh.hits[i].block;
          int slot = -1;
          for (int s = 0; s < nb; ++s)
            if (ablock[s] == b) { slot = s; break; }
          if (slot < 0) {
            ablock[nb] = b;
            amask[nb] = 0;
            slot = nb++;
          }
          amask[slot] = uint16_t(amask[slot] | sh.hits[i].mask);
        }
      }
      int nk = 0;
      for (int s = 0; s < nb; ++s) {
        oldk[s] = key[ablock[s]];
        newk[s] = uint16_t(oldk[s] ^ amask[s]);
        for (uint16_t k : {oldk[s], newk[s]}) {
          bool present = false;
          for (int t = 0; t < nk; ++t)
            if (keys[t] == k) { present = true; break; }
          if (!present) keys[nk++] = k;
        }
      }
      double pre = 0;
      for (int t = 0; t < nk; ++t) pre += contrib(keys[t]);
      for (int s = 0; s < nb; ++s) {
        --cnt[oldk[s]];
        ++cnt[newk[s]];
      }
      double post = 0;
      for (int t = 0; t < nk; ++t) post += contrib(keys[t]);
      for (int s = 0; s < nb; ++s) {
        ++cnt[oldk[s]];
        --cnt[newk[s]];
      }
      acc[ei].add(pre - post); // == bdm(X) - bdm(X \ edge)
    }

    for (int b = 0; b < sh.nblocks; ++b) --cnt[key[size_t(b)]];
  }
};

// ------------------------------------------------------------------
// checkpoint file: little-endian binary, header + one fixed-size record per
// finished chunk. Layout (all uint64 unless noted):
//   magic "BDMGCKP1", graph_hash, source kind, sample_size, seed, block side,
//   chunk_size, edge_count, then records { chunk_index, perms_in_chunk,
//   edge_count doubles }.

constexpr char kCkptMagic[8] = {'B', 'D', 'M', 'G', 'C', 'K', 'P', '1'};

struct ChunkResult {
  uint64_t perms = 0;
  std::vector<double> sums;
};

struct CheckpointHeader {
  uint64_t graph_hash, kind, sample_size, seed, side, chunk_size, edge_count;
};

void write_u64(std::ostream& out, uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }

bool read_u64(std::istream& in, uint64_t& v) {
  return bool(in.read(reinterpret_cast<char*>(&v), 8));
}

CheckpointHeader make_header(const Graph& g, const PermSource& src, int side, uint64_t chunk) {
  return CheckpointHeader{graph_hash(g), uint64_t(src.kind), src.sample_size,
                          src.seed,      uint64_t(side),     chunk,
                          uint64_t(g.edges.size())};
}

void save_checkpoint(const std::string& path, const CheckpointHeader& h,
                     const std::vector<ChunkResult>& chunks) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write checkpoint: " + tmp);
    out.write(kCkptMagic, 8);
    for (uint64_t v : {h.graph_hash, h.kind, h.sample_size, h.seed, h.side, h.chunk_size,
                       h.edge_count})
      write_u64(out, v);
    for (size_t i = 0; i < chunks.size(); ++i) {
      if (chunks[i].sums.empty()) continue;
      write_u64(out, uint64_t(i));
      write_u64(out, chunks[i].perms);
      out.write(reinterpret_cast<const char*>(chunks[i].sums.data()),
                long(chunks[i].sums.size() * sizeof(double)));
    }
    if (!out) fail(Errc::io_error, "checkpoint write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(Errc::io_error, "cannot move checkpoint into place: " + path);
}

// Returns completed chunks keyed by index; empty if the file is absent.
// A header mismatch is an error: resuming under different parameters would
// silently corrupt the averages.
std::vector<std::pair<uint64_t, ChunkResult>> load_checkpoint(const std::string& path,
                                                              const CheckpointHeader& h) {
  std::ifstream in(path, std::ios::binary);
  std::vector<std::pair<uint64_t, ChunkResult>> out;
  if (!in) return out;
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kCkptMagic, 8) != 0)
    fail(Errc::bad_format, "not a checkpoint file: " + path);
  uint64_t vals[7];
  for (auto& v : vals)
    if (!read_u64(in, v)) fail(Errc::bad_format, "checkpoint header truncated: " + path);
  const CheckpointHeader got{vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6]};
  if (got.graph_hash != h.graph_hash || got.kind != h.kind || got.sample_size != h.sample_size ||
      got.seed != h.seed || got.side != h.side || got.chunk_size != h.chunk_size ||
      got.edge_count != h.edge_count)
    fail(Errc::bad_format, "checkpoint does not match this run's configuration: " + path);
  while (true) {
    uint64_t idx, perms;
    if (!read_u64(in, idx)) break;
    if (!read_u64(in, perms)) fail(Errc::bad_format, "checkpoint record truncated: " + path);
    ChunkResult c;
    c.perms = perms;
    c.sums.resize(h.edge_count);
    if (!in.read(reinterpret_cast<char*>(c.sums.data()), long(h.edge_count * sizeof(double))))
      fail(Errc::bad_format, "checkpoint record truncated: " + path);
    out.emplace_back(idx, std::move(c));
  }
  return out;
}

// ------------------------------------------------------------------
// drivers

int resolve_workers(const RunOptions& options) {
  if (options.workers > 0) return options.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

// Index-addressable sources (symmetric group, samples): workers pull chunk
// indices from an atomic counter; chunk boundaries depend only on chunk_size,
// so results are identical for any worker count.
void run_indexed(const Graph& g, const PermSource& src, const EngineShared& shared,
                 const RunOptions& options, std::vector<ChunkResult>& chunks,
                 const CheckpointHeader& ckpt_header) {
  const uint64_t chunk = options.chunk_size;
  const uint64_t nchunks = (src.total + chunk - 1) / chunk;
  const int workers = resolve_workers(options);
  std::atomic<uint64_t> next{0};
  std::atomic<uint64_t> done_perms{0};
  std::atomic<uint64_t> processed_chunks{0};
  std::mutex ckpt_mu;
  uint64_t last_ckpt = 0;

  auto work = [&]() {
    EngineLocal local(shared);
    std::vector<Neumaier> acc(g.edges.size());
    Perm perm;
    while (true) {
      const uint64_t ci = next.fetch_add(1);
      if (ci >= nchunks) break;
      if (options.stop_after_chunks && processed_chunks.load() >= options.stop_after_chunks) break;
      if (!chunks[size_t(ci)].sums.empty()) continue; // restored from checkpoint
      const uint64_t lo = ci * chunk;
      const uint64_t hi = std::min(lo + chunk, src.total);
      for (auto& a : acc) a = Neumaier{};
      if (!src.materialized.empty()) {
        for (uint64_t i = lo; i < hi; ++i)
          local.process(src.materialized[size_t(i)].data(), acc.data());
      } else if (src.kind == PermKind::symmetric_group ||
                 src.kind == PermKind::automorphic_subsets) {
        // automorphic_subsets lands here only with |Aut| = 1, where the
        // subsets are exactly the symmetric group
        perm = perm_unrank(g.n, lo);
        for (uint64_t i = lo; i < hi; ++i) {
          local.process(perm.data(), acc.data());
          next_perm(perm);
        }
      } else {
        for (uint64_t i = lo; i < hi; ++i) {
          perm = sampled_perm(g.n, src.seed, i);
          local.process(perm.data(), acc.data());
        }
      }
      ChunkResult r;
      r.perms = hi - lo;
      r.sums.resize(g.edges.size());
      for (size_t e = 0; e < acc.size(); ++e) r.sums[e] = acc[e].value();
      chunks[size_t(ci)] = std::move(r);
      processed_chunks.fetch_add(1);
      const uint64_t total_done = done_perms.fetch_add(hi - lo) + (hi - lo);
      if (!options.checkpoint_path.empty() && total_done - last_ckpt >= options.checkpoint_every) {
        std::lock_guard<std::mutex> lock(ckpt_mu);
        if (total_done - last_ckpt >= options.checkpoint_every) {
          save_checkpoint(options.checkpoint_path, ckpt_header, chunks);
          last_ckpt = total_done;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

// Subset representatives come out of a single DFS producer in stream order;
// batches are handed to workers through a bounded queue and merged by batch
// index, so worker count again cannot change the result.
void run_subset_stream(const Graph& g, const PermSource& src, const EngineShared& shared,
                       const RunOptions& options, std::vector<ChunkResult>& chunks,
                       const CheckpointHeader& ckpt_header) {
  const uint64_t chunk = options.chunk_size;
  const int workers = resolve_workers(options);

  struct Batch {
    uint64_t index;
    uint64_t count;
    std::vector<uint8_t> flat;
  };
  std::deque<Batch> queue;
  std::mutex mu;
  std::condition_variable cv_push, cv_pop;
  bool producer_done = false;
  const size_t queue_cap = size_t(workers) * 2 + 2;
  std::atomic<uint64_t> done_perms{0};
  std::atomic<uint64_t> processed_chunks{0};
  std::mutex ckpt_mu;
  uint64_t last_ckpt = 0;
  bool stop_flag = false;

  auto worker_fn = [&]() {
    EngineLocal local(shared);
    std::vector<Neumaier> acc(g.edges.size());
    while (true) {
      Batch b;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv_pop.wait(lock, [&] { return !queue.empty() || producer_done; });
        if (queue.empty()) return;
        b = std::move(queue.front());
        queue.pop_front();
        cv_push.notify_one();
      }
      for (auto& a : acc) a = Neumaier{};
      for (uint64_t i = 0; i < b.count; ++i)
        local.process(b.flat.data() + i * size_t(g.n), acc.data());
      ChunkResult r;
      r.perms = b.count;
      r.sums.resize(g.edges.size());
      for (size_t e = 0; e < acc.size(); ++e) r.sums[e] = acc[e].value();
      chunks[size_t(b.index)] = std::move(r);
      processed_chunks.fetch_add(1);
      const uint64_t total_done = done_perms.fetch_add(b.count) + b.count;
      if (!options.checkpoint_path.empty() && total_done - last_ckpt >= options.checkpoint_every) {
        std::lock_guard<std::mutex> lock(ckpt_mu);
        if (total_done - last_ckpt >= options.checkpoint_every) {
          save_checkpoint(options.checkpoint_path, ckpt_header, chunks);
          last_ckpt = total_done;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker_fn);

  SubsetRepStream stream(g, src.aut);
  uint64_t batch_index = 0;
  stream.run(size_t(chunk), [&](const uint8_t* flat, size_t count) {
    const uint64_t idx = batch_index++;
    if (options.stop_after_chunks && idx >= options.stop_after_chunks) {
      stop_flag = true;
      return false;
    }
    if (!chunks[size_t(idx)].sums.empty()) return true; // restored from checkpoint
    Batch b;
    b.index = idx;
    b.count = count;
    b.flat.assign(flat, flat + count * size_t(g.n));
    {
      std::unique_lock<std::mutex> lock(mu);
      cv_push.wait(lock, [&] { return queue.size() < queue_cap; });
      queue.push_back(std::move(b));
    }
    cv_pop.notify_one();
    return true;
  });
  {
    std::lock_guard<std::mutex> lock(mu);
    producer_done = true;
  }
  cv_pop.notify_all();
  for (auto& t : pool) t.join();
  (void)stop_flag;
}

} // namespace

EdgeInfoReport average_info(const Graph& g, const PermSource& source, const CtmTable& table,
                            const RunOptions& options) {
  if (g.edges.empty()) fail(Errc::empty_graph, "graph has no edges to perturb");
  if (source.n != g.n) fail(Errc::invalid_spec, "permutation source size does not match graph");
  if (options.chunk_size < 1) fail(Errc::invalid_spec, "chunk size must be >= 1");

  EngineShared shared(g, table);
  const uint64_t nchunks = (source.total + options.chunk_size - 1) / options.chunk_size;
  std::vector<ChunkResult> chunks(static_cast<size_t>(nchunks));

  const CheckpointHeader header = make_header(g, source, table.side, options.chunk_size);
  if (!options.checkpoint_path.empty()) {
    for (auto& [idx, res] : load_checkpoint(options.checkpoint_path, header)) {
      if (idx >= nchunks) fail(Errc::bad_format, "checkpoint chunk index out of range");
      chunks[size_t(idx)] = std::move(res);
    }
  }

  // |Aut| = 1 makes the subset stream the whole symmetric group; use the
  // cheaper index-addressable walk in that case.
  if (source.materialized.empty() && source.kind == PermKind::automorphic_subsets &&
      source.aut.size() > 1)
    run_subset_stream(g, source, shared, options, chunks, header);
  else
    run_indexed(g, source, shared, options, chunks, header);

  if (options.stop_after_chunks) {
    // partial run (testing hook): persist progress and report what exists
    if (!options.checkpoint_path.empty()) save_checkpoint(options.checkpoint_path, header, chunks);
  }

  uint64_t consumed = 0;
  std::vector<Neumaier> totals(g.edges.size());
  for (const ChunkResult& c : chunks) {
    if (c.sums.empty()) continue;
    consumed += c.perms;
    for (size_t e = 0; e < totals.size(); ++e) totals[e].add(c.sums[e]);
  }
  if (!options.stop_after_chunks && consumed != source.total)
    fail(Errc::invalid_spec, "permutation stream yielded " + std::to_string(consumed) +
                                 " of " + std::to_string(source.total) + " permutations");

  EdgeInfoReport report;
  report.perm_count = consumed;
  report.source_kind = source.kind;
  report.block_side = table.side;
  report.table_source = table.source_id;
  report.graph_hash = graph_hash(g);
  report.entries.resize(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) {
    report.entries[e].edge = g.edges[e];
    report.entries[e].avg_info = totals[e].value() / double(source.total);
  }
  std::sort(report.entries.begin(), report.entries.end(), [](const EdgeInfo& a, const EdgeInfo& b) {
    if (a.avg_info != b.avg_info) return a.avg_info > b.avg_info;
    return a.edge < b.edge;
  });
  return report;
}

EdgeInfoReport average_info_sym_via_subsets(const Graph& g, const CtmTable& table,
                                            const RunOptions& options) {
  const PermSource subsets = make_subset_source(g);
  EdgeInfoReport base = average_info(g, subsets, table, options);

  // Orbit of each edge under Aut(G); the S_G average of an edge is the mean
  // of the subset averages over its orbit.
  const size_t ecount = g.edges.size();
  std::vector<double> by_edge(ecount, 0.0);
  for (const EdgeInfo& x : base.entries) {
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), x.edge);
    by_edge[size_t(it - g.edges.begin())] = x.avg_info;
  }
  EdgeInfoReport out;
  out.perm_count = factorial(g.n);
  out.source_kind = PermKind::symmetric_group;
  out.block_side = table.side;
  out.table_source = table.source_id;
  out.graph_hash = graph_hash(g);
  out.entries.resize(ecount);
  for (size_t e = 0; e < ecount; ++e) {
    const auto [u, v] = g.edges[e];
    Neumaier acc;
    uint64_t orbit = 0;
    for (const Perm& a : subsets.aut) {
      int au = a[size_t(u)], av = a[size_t(v)];
      if (au > av) std::swap(au, av);
      auto it = std::lower_bound(g.edges.begin(), g.edges.end(), VertexPair{au, av});
      acc.add(by_edge[size_t(it - g.edges.begin())]);
      ++orbit;
    }
    out.entries[e].edge = g.edges[e];
    out.entries[e].avg_info = acc.value() / double(orbit);
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const EdgeInfo& a, const EdgeInfo& b) {
    if (a.avg_info != b.avg_info) return a.avg_info > b.avg_info;
    return a.edge < b.edge;
  });
  return out;
}

RunStats run_stats(const EdgeInfoReport& report, double elapsed_sec) {
  if (report.entries.empty()) fail(Errc::empty_graph, "report has no entries");
  RunStats s;
  s.max_info_edge = report.entries[0].edge;
  s.top_gap = report.entries.size() > 1 ? report.entries[0].avg_info - report.entries[1].avg_info : 0.0;
  s.elapsed_sec = elapsed_sec;
  s.perms_per_sec = elapsed_sec > 0 ? double(report.perm_count) / elapsed_sec : 0.0;
  return s;
}

} // namespace bdmg
