#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voa/core/state.hpp"

namespace voa {

// Singular parts of the OPEs between strong generators: for each declared
// ordered pair (a, b) the states a_(j) b, j >= 0, on the vacuum. A pair that
// is declared with no entries is regular. Products for the reversed pair are
// obtained by skew-symmetry.
class OpeTable {
 public:
  OpeTable() = default;
  OpeTable(std::string name, std::vector<Generator> generators);

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  int size() const { return static_cast<int>(generators_.size()); }
  const Generator& generator(int i) const { return generators_.at(i); }
  int find(std::string_view name) const;

  const std::optional<RatFunc>& central_charge() const { return central_charge_; }
  void set_central_charge(RatFunc c) { central_charge_ = std::move(c); }

  void declare(int a, int b);
  // Declares (a, b) and stores a_(j) b; checks weight homogeneity.
  void set(int a, int j, int b, const State& s);
  bool declared(int a, int b) const { return entries_.count({a, b}) > 0; }
  const std::map<int, State>* entries(int a, int b) const;
  const std::map<std::pair<int, int>, std::map<int, State>>& all_entries() const { return entries_; }

  // Twice the conformal weight of a monomial on the vacuum.
  int twice_weight(const Monomial& m) const;

  OpeTable specialize(const Bindings& b) const;

  std::string render_monomial(const Monomial& m) const;
  std::string render(const State& s) const;
  // Parses the textual state format; modes must already be in normal form.
  State parse_state(std::string_view text) const;

  std::string dump() const;
  static OpeTable parse(std::string_view text);

  bool operator==(const OpeTable& o) const;

 private:
  std::string name_;
  std::vector<Generator> generators_;
  std::optional<RatFunc> central_charge_;
  std::map<std::pair<int, int>, std::map<int, State>> entries_;
};

}  // namespace voa
