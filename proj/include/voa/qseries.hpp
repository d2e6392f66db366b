#pragma once

#include <vector>

#include "voa/exact/rational.hpp"

namespace voa {

// q^offset * (c_0 + c_1 q + ... + c_N q^N + O(q^{N+1}))
struct QSeries {
  Rational offset;
  std::vector<Rational> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  static QSeries one(int order);
  // eta(q)^e = q^{e/24} prod_{n>=1} (1-q^n)^e
  static QSeries eta_power(int e, int order);

  QSeries truncated(int order) const;
  QSeries operator*(const QSeries& o) const;
  // requires identical offsets
  QSeries operator+(const QSeries& o) const;
  bool operator==(const QSeries&) const = default;
};

// number of partitions of n into parts of `colours` colours, for n = 0..order
std::vector<Integer> coloured_partition_counts(int colours, int order);

}  // namespace voa
