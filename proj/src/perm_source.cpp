#include "bdmg/perm_source.hpp"

#include "bdmg/automorphism.hpp"
#include "bdmg/errors.hpp"

namespace bdmg {

const char* perm_kind_name(PermKind k) {
  switch (k) {
    case PermKind::symmetric_group:    return "symmetric_group";
    case PermKind::automorphic_subsets: return "automorphic_subsets";
    case PermKind::random_sample:       return "random_sample";
  }
  return "?";
}

PermSource make_symmetric_source(int n) {
  check_enum_size(n);
  PermSource s;
  s.kind = PermKind::symmetric_group;
  s.n = n;
  s.total = factorial(n);
  return s;
}

PermSource make_subset_source(const Graph& g) {
  check_enum_size(g.n);
  PermSource s;
  s.kind = PermKind::automorphic_subsets;
  s.n = g.n;
  s.aut = automorphism_group(g);
  s.total = factorial(g.n) / uint64_t(s.aut.size());
  return s;
}

PermSource make_sample_source(int n, uint64_t sample_size, uint64_t seed) {
  if (n < 1) fail(Errc::invalid_spec, "vertex count must be >= 1");
  if (sample_size < 1) fail(Errc::invalid_spec, "sample size must be >= 1");
  PermSource s;
  s.kind = PermKind::random_sample;
  s.n = n;
  s.total = sample_size;
  s.sample_size = sample_size;
  s.seed = seed;
  return s;
}

PermSource make_source(const SourceSpec& spec, const Graph& g) {
  switch (spec.kind) {
    case PermKind::symmetric_group:     return make_symmetric_source(g.n);
    case PermKind::automorphic_subsets: return make_subset_source(g);
    case PermKind::random_sample:       return make_sample_source(g.n, spec.sample_size, spec.seed);
  }
  fail(Errc::invalid_spec, "unknown permutation source kind");
}

} // namespace bdmg
