#include "voa/qseries.hpp"

#include <algorithm>

#include "voa/error.hpp"

namespace voa {

QSeries QSeries::one(int order) {
  QSeries s{0, std::vector<Rational>(order + 1, Rational(0))};
  s.coeffs[0] = 1;
  return s;
}

QSeries QSeries::eta_power(int e, int order) {
  QSeries s = one(order);
  s.offset = Rational(e, 24);
  s.offset.canonicalize();
  auto& c = s.coeffs;
  for (int n = 1; n <= order; ++n) {
    for (int rep = 0; rep < std::abs(e); ++rep) {
      if (e > 0) {
        for (int i = order; i >= n; --i) c[i] -= c[i - n];
      } else {
        for (int i = n; i <= order; ++i) c[i] += c[i - n];
      }
    }
  }
  return s;
}

QSeries QSeries::truncated(int order) const {
  QSeries s = *this;
  s.coeffs.resize(std::min<std::size_t>(coeffs.size(), order + 1));
  return s;
}

QSeries QSeries::operator*(const QSeries& o) const {
  int n = std::min(order(), o.order());
  QSeries s{offset + o.offset, std::vector<Rational>(n + 1, Rational(0))};
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) s.coeffs[i + j] += coeffs[i] * o.coeffs[j];
  return s;
}

QSeries QSeries::operator+(const QSeries& o) const {
  if (offset != o.offset) throw Error("adding q-series with different offsets");
  int n = std::min(order(), o.order());
  QSeries s{offset, std::vector<Rational>(n + 1)};
  for (int i = 0; i <= n; ++i) s.coeffs[i] = coeffs[i] + o.coeffs[i];
  return s;
}

std::vector<Integer> coloured_partition_counts(int colours, int order) {
  auto s = QSeries::eta_power(-colours, order);
  std::vector<Integer> out;
  for (auto& c : s.coeffs) out.push_back(c.get_num());
  return out;
}

}  // namespace voa
