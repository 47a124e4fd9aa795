#ifndef BDMG_BDM_HPP
#define BDMG_BDM_HPP

#include <cstdint>
#include <map>

#include "bdmg/bitmatrix.hpp"
#include "bdmg/ctm_table.hpp"

namespace bdmg {

// Multiset of l x l blocks produced by one partition; counts maps the packed
// block bits to its multiplicity.
struct BlockMultiset {
  int side = 0;
  std::map<uint32_t, uint32_t> counts;

  uint32_t total() const {
    uint32_t t = 0;
    for (auto& [k, c] : counts) t += c;
    return t;
  }
};

// Pads with wrapped-around leading rows, then leading columns, to the next
// multiple of l ((l - n mod l) mod l of each), then tiles into disjoint l x l
// blocks scanned row-major. Cell (i,j) of the padded matrix is m[i mod n][j mod n].
BlockMultiset partition_periodic(const BitMatrix& m, int l);

// Sum over distinct blocks of lookup(block) + log2(multiplicity).
double bdm2d(const BitMatrix& m, const CtmTable& table);

} // namespace bdmg

#endif
