#ifndef BDMG_CTM_TABLE_HPP
#define BDMG_CTM_TABLE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bdmg {

// An l x l binary block, row-major. bits holds the cells packed into an
// integer with cell (0,0) in the most significant of the l*l positions, which
// matches the character order of the CSV format.
struct BlockKey {
  int side = 0;
  uint32_t bits = 0;

  bool operator==(const BlockKey& o) const { return side == o.side && bits == o.bits; }
};

BlockKey block_key_from_string(const std::string& bits, int side);
std::string block_key_to_string(const BlockKey& key);

// Complexity values for every l x l binary block, densified to a flat array
// indexed by the packed bits. Immutable after construction; shareable across
// threads.
struct CtmTable {
  int side = 0;
  std::string source_id;
  std::vector<double> values; // size 1 << (side*side)

  uint32_t block_count() const { return uint32_t(1) << (side * side); }
  double lookup(const BlockKey& key) const;
  double at(uint32_t bits) const { return values[bits]; }
};

// CSV format: one "<bits>,<value>" record per line, <bits> exactly side*side
// characters of 0/1 in row-major order, <value> a positive decimal real.
// '#' starts a comment line; blank lines are ignored. The table must be
// complete (all 2^(side^2) blocks) with no duplicates.
CtmTable load_ctm_table(const std::string& path, int side);
CtmTable read_ctm_table(std::istream& in, int side, const std::string& source_id);
void save_ctm_table(std::ostream& out, const CtmTable& table);

// All blocks mapped to the same positive value; source_id "uniform".
CtmTable make_uniform_table(int side, double value);

// Deterministic stand-in for the published 2D CTM data, for running the
// pipeline when that dataset is not on hand (see data/README.md for how to
// convert the real one). Two-part-code model per block x:
//   K(x) = base + log2 C(l^2, popcount(x)) + w * boundary(x) + jitter(x)
// where boundary(x) counts horizontally/vertically adjacent unequal cells and
// jitter is a tiny hash term computed from the canonical representative of
// x's orbit under the 8 dihedral transforms and complement, so the table is
// exactly invariant under those symmetries, as the enumerated data is.
CtmTable make_synthetic_table(int side);

} // namespace bdmg

#endif
