#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "voa/core/ope_table.hpp"

namespace voa {

// How generator modes act; lets composite fields be evaluated against a
// transformed set of generator fields.
class ModeAction {
 public:
  virtual ~ModeAction() = default;
  virtual State apply(int generator, int index, const State& x) const = 0;
  // How far above the untransformed bound a generator mode may still act
  // non-trivially.
  virtual int index_shift(int generator) const = 0;
};

struct CommutatorTerm {
  Integer binomial;
  State field;  // a_(j) b on the vacuum
  int index;    // the commutator contains binomial * field_(index)
};

// Linear combination of field modes keyed by (field monomial on the vacuum,
// Borcherds index). Single-generator fields are reduced to modes of the
// generator itself and the vacuum field to the identity, key ({}, -1).
using ModeExpression = std::map<std::pair<Monomial, int>, RatFunc>;

class Engine {
 public:
  explicit Engine(OpeTable table);

  const OpeTable& table() const { return table_; }
  const Generator& generator(int g) const { return table_.generator(g); }

  // a_(index) x in PBW normal form
  State apply(int generator, int index, const State& x) const;
  State apply(const Mode& m, const State& x) const { return apply(m.generator, m.index, x); }
  // Applies the modes right to left, starting from g.
  State normal_order(const Monomial& raw, const GroundPtr& g = vacuum_ground()) const;

  // a_(j) b for generators, j >= 0, read from the table or by skew-symmetry.
  State product(int a, int j, int b) const;
  // Largest j with a_(j) b possibly non-zero.
  int pole_bound(int a, int b) const;

  // u_(n) x for u in the vacuum module.
  State act(const State& u, int n, const State& x, const ModeAction* action = nullptr) const;
  State nth_product(const State& a, int n, const State& b) const { return act(a, n, b); }
  State derivative(const State& s) const;

  std::vector<CommutatorTerm> mode_commutator(const Mode& a, const Mode& b) const;
  ModeExpression mode_expression(const std::vector<CommutatorTerm>& terms) const;

  // Twice the depth of a monomial above its ground vector.
  int twice_depth(const Monomial& m, const GroundVector& g) const;
  int max_twice_depth(const State& s) const;

  std::vector<Monomial> pbw_basis(int weight) const;
  std::vector<std::size_t> graded_dimension(int max_weight) const;

 private:
  State on_ground(const Mode& a, const GroundPtr& g) const;
  bool creates(const Mode& a, const GroundVector& g) const;
  State apply_monomial(const Mode& a, const Monomial& m, const GroundPtr& g) const;
  State act_monomial(const Monomial& u, int p, const Monomial& x, const GroundPtr& g, const ModeAction* action) const;
  State act_state(const Monomial& u, int p, const State& x, const ModeAction* action) const;
  State apply_with(const ModeAction* action, int generator, int index, const State& x) const;
  State derivative_monomial(const Monomial& m) const;

  OpeTable table_;

  using ApplyKey = std::tuple<Mode, Monomial, GroundPtr>;
  using ActKey = std::tuple<Monomial, int, Monomial, GroundPtr>;
  mutable std::mutex mutex_;
  mutable std::map<ApplyKey, State> apply_cache_;
  mutable std::map<ActKey, State> act_cache_;
  mutable std::map<std::tuple<int, int, int>, State> product_cache_;
};

}  // namespace voa
