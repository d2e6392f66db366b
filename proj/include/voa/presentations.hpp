#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voa/core/engine.hpp"

namespace voa {

// Generator ids (= PBW rank) of the concrete tables.
namespace bp {
inline constexpr int J = 0, Gp = 1, L = 2, Gm = 3;
}
namespace crit {
inline constexpr int J = 0, Gp = 1, S = 2, Gm = 3;
}
namespace zam {
inline constexpr int T = 0, W = 1;
}
namespace center {
inline constexpr int S2 = 0, S3 = 1;
}

RatFunc bp_central_charge(const RatFunc& k);
RatFunc zam_central_charge(const RatFunc& k);
RatFunc lattice_central_charge(const RatFunc& k);
// normalisation constant A of the W W OPE
RatFunc zam_normalisation(const RatFunc& k);

bool is_critical(const RatFunc& k);

// Bershadsky-Polyakov table; k = -3 yields the critical table.
OpeTable bp_table(const RatFunc& k = RatFunc::var(Var::k));
OpeTable bp_critical_table();
OpeTable zam_table(const RatFunc& k = RatFunc::var(Var::k));
// commutative algebra generated by S2 (weight 2) and S3 (weight 3)
OpeTable center_table();

// Bundled text form of a table: "bp", "zam", "bp-critical", "center".
std::string_view bundled_table(std::string_view name);
std::vector<std::string> bundled_table_names();

// Weight-shifted mode A_n = A_(n + weight - 1).
int borcherds_index(const Generator& g, int shifted);
int shifted_index(const Generator& g, int borcherds);

// State L~ = L - (1/2) dJ of the alternative conformal vector.
State bp_twisted_conformal_vector(const Engine& bp_engine);

// G^-_1 (G^+_{-1})^n 1 computed with the engine, as a multiple of (G^+_{-1})^{n-1} 1.
struct SingularVectorResult {
  RatFunc coefficient;
  bool proportional = true;  // the result is a multiple of (G^+_{-1})^{n-1} 1
  bool annihilated = true;   // J_m, L_m, G^-_m, G^+_m (m = 1..3) kill the vector
  // J_m, L_m, G^-_{m+1}, G^+_{m-1} (m = 1..3) kill it at every level
  bool other_modes_annihilate = true;
};
SingularVectorResult singular_vector_check(const Engine& bp_engine, int n);
RatFunc singular_vector_closed_form(int n, const RatFunc& k);

// [A_m, B_n] in weight-shifted modes, from the engine and from the closed
// forms of the BP mode algebra (table with symbolic level k).
ModeExpression bp_bracket(const Engine& bp_engine, int a, int m, int b, int n);
// nullopt for the ordered pairs without a listed closed form
std::optional<ModeExpression> bp_bracket_closed_form(const OpeTable& t, const RatFunc& k, int a, int m, int b, int n);

struct CommutatorReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return checks > 0 && failures.empty(); }
};
// All listed pairs for m, n in [lo, hi] at symbolic k.
CommutatorReport verify_commutators(int lo, int hi);

bool is_singular_vector(int n, const Rational& k);
bool universal_bp_is_simple(const Rational& k);
bool simple_embedding_exists(const Rational& k);
bool central_charge_identity();

}  // namespace voa
