#include <doctest.h>

#include "voa/core/partition.hpp"
#include "voa/qseries.hpp"

using namespace voa;

TEST_CASE("partitions") {
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_of(5).size() == 7);
  CHECK(partitions_of(10).size() == 42);
  for (const auto& p : partitions_of(6)) {
    CHECK(p.size() == 6);
    for (std::size_t i = 1; i < p.parts.size(); ++i) CHECK(p.parts[i - 1] >= p.parts[i]);
  }
  CHECK(partitions_up_to(4).size() == 1 + 1 + 2 + 3 + 5);
}

TEST_CASE("eta powers against partition counting") {
  const int N = 12;
  QSeries inv = QSeries::eta_power(-1, N);
  CHECK(inv.offset == Rational(-1, 24));
  for (int n = 0; n <= N; ++n) CHECK(inv.coeffs[n] == Rational(static_cast<long>(partitions_of(n).size())));

  // two colours: sum over pairs of partitions
  auto two = coloured_partition_counts(2, N);
  for (int n = 0; n <= N; ++n) {
    Integer s = 0;
    for (int a = 0; a <= n; ++a) s += Integer(static_cast<long>(partitions_of(a).size() * partitions_of(n - a).size()));
    CHECK(two[n] == s);
    CHECK(QSeries::eta_power(-2, N).coeffs[n] == Rational(s));
  }

  QSeries prod = QSeries::eta_power(3, N) * QSeries::eta_power(-3, N);
  CHECK(prod.offset == 0);
  CHECK(prod == QSeries::one(N));
}

TEST_CASE("series addition needs equal offsets") {
  QSeries a = QSeries::eta_power(1, 4), b = QSeries::one(4);
  CHECK_THROWS(a + b);
  CHECK((b + b).coeffs[0] == 2);
  CHECK(a.truncated(2).order() == 2);
}
