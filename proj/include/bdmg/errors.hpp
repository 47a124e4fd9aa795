#ifndef BDMG_ERRORS_HPP
#define BDMG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bdmg {

enum class Errc {
  malformed_line,
  missing_entry,
  duplicate_entry,
  non_positive_value,
  side_mismatch,
  edge_not_found,
  invalid_spec,
  too_large,
  empty_graph,
  io_error,
  bad_format,
};

// One exception type, tagged; the CLI maps tags to exit codes
// (1 usage, 2 data, 3 resource guard).
class Error : public std::runtime_error {
public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Errc code;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::malformed_line:     return "malformed_line";
    case Errc::missing_entry:      return "missing_entry";
    case Errc::duplicate_entry:    return "duplicate_entry";
    case Errc::non_positive_value: return "non_positive_value";
    case Errc::side_mismatch:      return "side_mismatch";
    case Errc::edge_not_found:     return "edge_not_found";
    case Errc::invalid_spec:       return "invalid_spec";
    case Errc::too_large:          return "too_large";
    case Errc::empty_graph:        return "empty_graph";
    case Errc::io_error:           return "io_error";
    case Errc::bad_format:         return "bad_format";
  }
  return "unknown";
}

} // namespace bdmg

#endif
