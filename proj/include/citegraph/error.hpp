#pragma once

#include <stdexcept>
#include <string>

namespace citegraph {

// Problems with input files or input records: missing file, bad header,
// unparseable row, inconsistent records. Callers map these to the
// input-error exit path.
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency check. A failure here is a bug, not bad input.
inline void internal_check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("internal invariant violated: ") + what);
}

}  // namespace citegraph
