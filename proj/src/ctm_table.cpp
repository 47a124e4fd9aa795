#include "bdmg/ctm_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "bdmg/errors.hpp"
#include "bdmg/rng.hpp"

namespace bdmg {

namespace {

void check_side(int side) {
  if (side < 2 || side > 4) fail(Errc::invalid_spec, "block side must be 2, 3 or 4");
}

} // namespace

BlockKey block_key_from_string(const std::string& bits, int side) {
  check_side(side);
  const int nbits = side * side;
  if (int(bits.size()) != nbits)
    fail(Errc::malformed_line, "block string must have exactly " + std::to_string(nbits) +
                                   " characters, got '" + bits + "'");
  BlockKey key{side, 0};
  for (int t = 0; t < nbits; ++t) {
    const char c = bits[size_t(t)];
    if (c != '0' && c != '1')
      fail(Errc::malformed_line, "block string must be 0/1 only, got '" + bits + "'");
    if (c == '1') key.bits |= uint32_t(1) << (nbits - 1 - t);
  }
  return key;
}

std::string block_key_to_string(const BlockKey& key) {
  const int nbits = key.side * key.side;
  std::string s(size_t(nbits), '0');
  for (int t = 0; t < nbits; ++t)
    if ((key.bits >> (nbits - 1 - t)) & 1u) s[size_t(t)] = '1';
  return s;
}

double CtmTable::lookup(const BlockKey& key) const {
  if (key.side != side)
    fail(Errc::side_mismatch, "lookup with a " + std::to_string(key.side) + "x" +
                                  std::to_string(key.side) + " key against a side-" +
                                  std::to_string(side) + " table");
  return values[key.bits];
}

CtmTable read_ctm_table(std::istream& in, int side, const std::string& source_id) {
  check_side(side);
  const int nbits = side * side;
  const uint32_t expect = uint32_t(1) << nbits;
  CtmTable table;
  table.side = side;
  table.source_id = source_id;
  table.values.assign(expect, 0.0);
  std::vector<bool> seen(expect, false);
  uint32_t count = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      fail(Errc::malformed_line, "line " + std::to_string(lineno) + ": expected <bits>,<value>");
    const BlockKey key = block_key_from_string(line.substr(0, comma), side);
    const std::string vs = line.substr(comma + 1);
    size_t used = 0;
    double value = 0;
    try {
      value = std::stod(vs, &used);
    } catch (...) {
      fail(Errc::malformed_line, "line " + std::to_string(lineno) + ": bad value '" + vs + "'");
    }
    while (used < vs.size() && (vs[used] == ' ' || vs[used] == '\t')) ++used;
    if (used != vs.size())
      fail(Errc::malformed_line, "line " + std::to_string(lineno) + ": trailing junk after value");
    if (!std::isfinite(value) || value <= 0.0)
      fail(Errc::non_positive_value, "line " + std::to_string(lineno) + ": value must be finite and > 0");
    if (seen[key.bits])
      fail(Errc::duplicate_entry, "line " + std::to_string(lineno) + ": duplicate block " +
                                      block_key_to_string(key));
    seen[key.bits] = true;
    table.values[key.bits] = value;
    ++count;
  }
  if (count != expect)
    fail(Errc::missing_entry, "table has " + std::to_string(count) + " of " +
                                  std::to_string(expect) + " blocks for side " + std::to_string(side));
  return table;
}

CtmTable load_ctm_table(const std::string& path, int side) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open CTM table: " + path);
  return read_ctm_table(in, side, path);
}

void save_ctm_table(std::ostream& out, const CtmTable& table) {
  out << "# side " << table.side << " source " << table.source_id << "\n";
  const int nbits = table.side * table.side;
  char buf[40];
  for (uint32_t b = 0; b < table.block_count(); ++b) {
    std::snprintf(buf, sizeof buf, "%.17g", table.values[b]);
    out << block_key_to_string(BlockKey{table.side, b});
    out << "," << buf << "\n";
  }
  (void)nbits;
}

CtmTable make_uniform_table(int side, double value) {
  check_side(side);
  if (!(value > 0.0)) fail(Errc::invalid_spec, "uniform table value must be > 0");
  CtmTable t;
  t.side = side;
  t.source_id = "uniform";
  t.values.assign(t.block_count(), value);
  return t;
}

namespace {

uint32_t transpose_bits(uint32_t bits, int l) {
  uint32_t out = 0;
  const int nb = l * l;
  for (int r = 0; r < l; ++r)
    for (int c = 0; c < l; ++c)
      if ((bits >> (nb - 1 - (r * l + c))) & 1u) out |= uint32_t(1) << (nb - 1 - (c * l + r));
  return out;
}

uint32_t flip_rows_bits(uint32_t bits, int l) {
  uint32_t out = 0;
  const int nb = l * l;
  for (int r = 0; r < l; ++r)
    for (int c = 0; c < l; ++c)
      if ((bits >> (nb - 1 - (r * l + c))) & 1u)
        out |= uint32_t(1) << (nb - 1 - ((l - 1 - r) * l + c));
  return out;
}

// Smallest packed value over the 8 dihedral transforms and both polarities.
// D4 is generated by transpose T and row-flip F: e, T, F, TF, FT, TFT, FTF, TFTF.
uint32_t canonical_orbit_rep(uint32_t bits, int l) {
  const int nb = l * l;
  const uint32_t mask = (nb == 32) ? 0xffffffffu : ((uint32_t(1) << nb) - 1);
  const uint32_t t = transpose_bits(bits, l);
  const uint32_t f = flip_rows_bits(bits, l);
  const uint32_t tf = transpose_bits(f, l);
  const uint32_t ft = flip_rows_bits(t, l);
  const uint32_t tft = transpose_bits(ft, l);
  const uint32_t ftf = flip_rows_bits(tf, l);
  const uint32_t tftf = transpose_bits(ftf, l);
  uint32_t best = mask;
  for (uint32_t y : {bits, t, f, tf, ft, tft, ftf, tftf}) {
    best = std::min(best, y);
    best = std::min(best, uint32_t(~y) & mask);
  }
  return best;
}

int boundary_count(uint32_t bits, int l) {
  const int nb = l * l;
  auto cell = [&](int r, int c) { return int((bits >> (nb - 1 - (r * l + c))) & 1u); };
  int d = 0;
  for (int r = 0; r < l; ++r)
    for (int c = 0; c + 1 < l; ++c) d += cell(r, c) != cell(r, c + 1);
  for (int r = 0; r + 1 < l; ++r)
    for (int c = 0; c < l; ++c) d += cell(r, c) != cell(r + 1, c);
  return d;
}

double log2_binomial(int n, int k) {
  double lg = 0;
  for (int i = 1; i <= k; ++i) lg += std::log2(double(n - k + i)) - std::log2(double(i));
  return lg;
}

} // namespace

CtmTable make_synthetic_table(int side) {
  check_side(side);
  CtmTable t;
  t.side = side;
  t.source_id = "synthetic-" + std::to_string(side) + "x" + std::to_string(side) + "-v1";
  t.values.assign(t.block_count(), 0.0);
  const int nb = side * side;
  const double base = side == 2 ? 8.0 : (side == 3 ? 11.9 : 19.0);
  const double w = side == 2 ? 0.8 : (side == 3 ? 0.55 : 0.35);
  for (uint32_t b = 0; b < t.block_count(); ++b) {
    const int k = std::min(__builtin_popcount(b), nb - __builtin_popcount(b));
    const double entropy = log2_binomial(nb, k);
    const double borders = w * boundary_count(b, side);
    const uint32_t canon = canonical_orbit_rep(b, side);
    const double jitter = 0.05 * double(SplitMix64::mix(canon + 1) >> 11) * 0x1.0p-53;
    t.values[b] = base + entropy + borders + jitter;
  }
  return t;
}

} // namespace bdmg
