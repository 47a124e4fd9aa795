#include "bdmg/bdm.hpp"

#include <cmath>

#include "bdmg/errors.hpp"

namespace bdmg {

BlockMultiset partition_periodic(const BitMatrix& m, int l) {
  if (l < 2 || l > 4) fail(Errc::invalid_spec, "block side must be 2, 3 or 4");
  if (m.size < 1) fail(Errc::invalid_spec, "matrix must be nonempty");
  const int n = m.size;
  const int pad = (l - n % l) % l;
  const int padded = n + pad;
  const int nbits = l * l;
  BlockMultiset out;
  out.side = l;
  for (int br = 0; br < padded / l; ++br)
    for (int bc = 0; bc < padded / l; ++bc) {
      uint32_t bits = 0;
      for (int r = 0; r < l; ++r)
        for (int c = 0; c < l; ++c) {
          const int i = (br * l + r) % n;
          const int j = (bc * l + c) % n;
          if (m.get(i, j)) bits |= uint32_t(1) << (nbits - 1 - (r * l + c));
        }
      ++out.counts[bits];
    }
  return out;
}

double bdm2d(const BitMatrix& m, const CtmTable& table) {
  const BlockMultiset blocks = partition_periodic(m, table.side);
  double sum = 0;
  for (auto& [bits, count] : blocks.counts)
    sum += table.at(bits) + std::log2(double(count));
  return sum;
}

} // namespace bdmg
