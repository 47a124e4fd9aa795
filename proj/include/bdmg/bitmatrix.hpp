#ifndef BDMG_BITMATRIX_HPP
#define BDMG_BITMATRIX_HPP

#include <cstdint>
#include <vector>

namespace bdmg {

// Square 0/1 matrix, one uint64 row mask per row (n <= 64).
struct BitMatrix {
  int size = 0;
  std::vector<uint64_t> rows;

  BitMatrix() = default;
  explicit BitMatrix(int n) : size(n), rows(size_t(n), 0) {}

  int get(int i, int j) const { return int((rows[size_t(i)] >> j) & 1u); }

  void set(int i, int j, int v) {
    const uint64_t bit = 1ull << j;
    if (v)
      rows[size_t(i)] |= bit;
    else
      rows[size_t(i)] &= ~bit;
  }

  bool operator==(const BitMatrix& o) const { return size == o.size && rows == o.rows; }
};

} // namespace bdmg

#endif
