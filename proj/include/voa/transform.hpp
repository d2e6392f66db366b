#pragma once

#include <string>
#include <vector>

#include "voa/core/engine.hpp"

namespace voa {

// coeff * z^{-z_power} * d^derivs Y(z); generator -1 stands for the identity
// field, whose terms are kept with derivs = 0.
struct FieldTerm {
  RatFunc coeff;
  int z_power = 0;
  int derivs = 0;
  int generator = -1;

  bool operator==(const FieldTerm&) const = default;
};

using FieldImage = std::vector<FieldTerm>;

// Images of the generator fields under a map of the mode algebra that commutes
// with multiplication by z and with d/dz.
class FieldTransform {
 public:
  FieldTransform() = default;
  explicit FieldTransform(std::vector<FieldImage> images);

  static FieldTransform identity(int generators);

  int size() const { return static_cast<int>(images_.size()); }
  const FieldImage& image(int generator) const { return images_.at(generator); }

  // (this o other)(X) = this(other(X))
  FieldTransform compose(const FieldTransform& other) const;
  FieldTransform power(int n) const;

  bool operator==(const FieldTransform& o) const { return images_ == o.images_; }

  std::string render(const OpeTable& t) const;

 private:
  std::vector<FieldImage> images_;
};

// Sorted, merged and zero-free form of a field image.
FieldImage canonical(FieldImage terms);

// Generator modes of the transformed fields, evaluated with an engine.
class TransformedAction : public ModeAction {
 public:
  TransformedAction(const Engine& engine, FieldTransform transform);

  State apply(int generator, int index, const State& x) const override;
  int index_shift(int generator) const override { return shifts_.at(generator); }

  const FieldTransform& transform() const { return transform_; }

 private:
  const Engine& engine_;
  FieldTransform transform_;
  std::vector<int> shifts_;
};

struct TransformCheck {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Commutator formula [X~_(m), Y~_(n)] = sum_j C(m,j) (X_(j)Y)~_(m+n-j) on the
// test vectors, for all generator pairs and m, n in [lo, hi]. The right-hand
// side evaluates the table entries with the transformed generator modes, so a
// pass means the transformed fields satisfy the same OPEs.
TransformCheck check_transform(const Engine& engine, const FieldTransform& t, const std::vector<State>& tests, int lo,
                               int hi);

// Bershadsky-Polyakov spectral flow sigma^ell and conjugation, on the table ids bp::*.
// Conjugation: G+(z) -> z G-(z), G-(z) -> -z^{-1} G+(z), J(z) -> -J(z) + kappa' z^{-1},
// L(z) -> L(z) - dJ(z) - z^{-1} J(z).
FieldTransform bp_spectral_flow(const RatFunc& k, int ell);
FieldTransform bp_conjugation(const RatFunc& k);

}  // namespace voa
