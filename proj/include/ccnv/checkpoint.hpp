#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccnv/field.hpp"

namespace ccnv {

// Binary field container. Layout, all integers little-endian u32:
//   magic "CCNV" | format version | grid n | field count | scalar count |
//   scalars (name length, name bytes, f64) |
//   fields  (name length, name bytes, n*n f64 row-major)
// Scalar entries carry run metadata (t, chi, nu, beta); plain field saves
// write a zero scalar count.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct NamedScalar {
  std::string name;
  double value = 0.0;
};

struct CheckpointData {
  int n = 0;
  std::vector<NamedScalar> scalars;
  std::vector<std::pair<std::string, RealField>> fields;

  double scalar(const std::string& name) const;  // throws if absent
  const RealField& field(const std::string& name) const;
};

void write_checkpoint(const std::string& path,
                      const std::vector<std::pair<std::string, const RealField*>>& fields,
                      const std::vector<NamedScalar>& scalars = {});

CheckpointData read_checkpoint(const std::string& path);

}  // namespace ccnv
