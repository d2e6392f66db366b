#include "voa/core/partition.hpp"

#include <numeric>

namespace voa {

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {

void extend(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition{cur});
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    extend(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  if (n >= 0) extend(n, n, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int m = 0; m <= n; ++m)
    for (auto& p : partitions_of(m)) out.push_back(std::move(p));
  return out;
}

}  // namespace voa
