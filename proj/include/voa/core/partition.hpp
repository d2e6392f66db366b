#pragma once

#include <vector>

namespace voa {

// Weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  int length() const { return static_cast<int>(parts.size()); }
  int size() const;
  auto operator<=>(const Partition&) const = default;
};

std::vector<Partition> partitions_of(int n);
std::vector<Partition> partitions_up_to(int n);

}  // namespace voa
