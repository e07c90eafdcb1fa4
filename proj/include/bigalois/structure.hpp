#pragma once

// Matrix-level verifiers: congruence of bilinear forms, the automorphism
// group G_E, and the Hopf *-structure and CQG criteria on B(E).

#include <optional>
#include <string>
#include <vector>

#include "bigalois/matrix.hpp"

namespace bigalois {

/// Univariate polynomial over the scalars, coefficients from degree 0 up.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> coeffs);
  static UPoly constant(const Scalar& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({Scalar(0), Scalar(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& leading() const { return c_.back(); }

  UPoly monic() const;
  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  /// Quotient and remainder; b must be nonzero.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

  std::string str() const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

/// Monic invariant factors of xI - A, ascending by divisibility; the first
/// ones may be 1.
std::vector<UPoly> invariant_factors(const Matrix& a);

/// E^{-t} E; conjugated by M when E is replaced by tM E M.
Matrix asymmetry(const FormMatrix& e);

bool congruence_verify(const FormMatrix& e, const FormMatrix& f, const Matrix& m);

enum class CongruenceVerdict { NotCongruent, Inconclusive, CongruentWithWitness };

struct CongruenceReport {
  bool sizes_match = false;
  bool trace_equal = false;
  bool asymmetry_similar = false;
  std::vector<UPoly> factors_e;
  std::vector<UPoly> factors_f;
  CongruenceVerdict verdict = CongruenceVerdict::Inconclusive;
  std::optional<Matrix> witness;
};

/// Necessary invariants of F = tM E M; a supplied witness that verifies
/// upgrades Inconclusive to CongruentWithWitness.
CongruenceReport congruence_invariants(const FormMatrix& e, const FormMatrix& f,
                                       const std::optional<Matrix>& witness = std::nullopt);

enum class AutomorphismVerdict { InGE, NegativeOfIdentityClass, No };

/// Membership of P in G_E = {P : tP E P = E} / {+-I}; -I is reported as the
/// class of the identity.
AutomorphismVerdict automorphism_check(const FormMatrix& e, const Matrix& p);

/// P and Q define the same element of G_E.
bool same_automorphism_class(const Matrix& p, const Matrix& q);

enum class CqgVerdict { NotApplicable, Cqg, NotCqg, Undetermined };

struct StarReport {
  bool first_equation = false;   ///< tM E* M = E
  bool second_equation = false;  ///< conj(M) M = lambda I, lambda real and nonzero
  std::optional<Scalar> lambda;
  CqgVerdict cqg = CqgVerdict::NotApplicable;
  std::optional<Scalar> mu;
  std::optional<Matrix> h;  ///< tM^{-1} E
  std::vector<Scalar> minors;
  std::string reason;

  bool star_holds() const { return first_equation && second_equation; }
};

StarReport star_structure_verify(const FormMatrix& e, const Matrix& m);

/// Star check followed by the positivity test of mu tM^{-1} E.
StarReport cqg_verify(const FormMatrix& e, const Matrix& m);

std::string to_string(CongruenceVerdict v);
std::string to_string(AutomorphismVerdict v);
std::string to_string(CqgVerdict v);

}  // namespace bigalois
