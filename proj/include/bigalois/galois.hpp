#pragma once

// The algebras B(E) and B(E,F), their Hopf and bigalois structure maps, the
// normalization of F^{-1}, and the SL_q(2) reduction system.

#include <optional>
#include <string>
#include <vector>

#include "bigalois/fpalg.hpp"
#include "bigalois/matrix.hpp"
#include "bigalois/rewrite.hpp"

namespace bigalois {

/// Index of the letter prefix[i,j] (0-based i, j) in a rows x cols alphabet.
inline Letter matrix_letter(std::size_t i, std::size_t j, std::size_t cols) {
  return static_cast<Letter>(i * cols + j);
}

/// B(E,F): letters prefix[i,j] (i <= m, j <= n) with relations
/// F^{-1} z^t E z = I_n (n^2 entries) then z F^{-1} z^t E = I_m (m^2 entries).
PresentationPtr build_BEF(const FormMatrix& e, const FormMatrix& f, const std::string& prefix = "z");

/// B(E) = B(E,E) on letters prefix[i,j].
PresentationPtr build_BE(const FormMatrix& e, const std::string& prefix = "a");

/// Outcome of an identity checked on generators, either exactly in a free
/// algebra or by bounded ideal membership.
struct IdentityCheck {
  std::string name;
  bool holds = false;
  bool exact = false;  ///< decided without membership queries
  int bound = 0;
  std::size_t queries = 0;
};

struct HopfData {
  PresentationPtr algebra;
  MorphismSpec coproduct;
  MorphismSpec counit;
  MorphismSpec antipode;
  std::vector<MorphismCertificate> certificates;
  std::vector<IdentityCheck> identities;

  bool certified() const;
};

HopfData hopf_data(const FormMatrix& e, int bound, const ResourceLimits& limits = {});

struct Normalization {
  FormMatrix p;           ///< P with (P^t F^{-1} P)_{nn} = 0
  FormMatrix normalized;  ///< F' = P^{-1} F (P^t)^{-1}
  std::string method;     ///< "identity", "antidiagonal" or "lambda"
  std::optional<Scalar> lambda;
  TowerPtr tower;
};

/// The recipe making the bottom-right entry of the inverse vanish.
Normalization normalize_form(const FormMatrix& f, TowerPtr tower = nullptr);

/// The 1 x 2 x n reduction system of B(E_q, F) for (F^{-1})_{nn} = 0:
/// z[2,i]z[1,j] -> q z[1,i]z[2,j] - q F_ij and three rules with leading
/// words z[1,n]z[1,v], z[1,n]z[2,v], z[2,n]z[2,v].
RewriteSystem build_sl2_rewrite_system(const Scalar& q, const FormMatrix& f);

/// Position (n, v) (0-based) of the lexicographically largest nonzero entry
/// of F^{-1}; requires it to sit in the last row left of the diagonal.
std::pair<std::size_t, std::size_t> sl2_pivot(const FormMatrix& f);

/// sum_ij (F^{-1})_ij z[2,i] z[1,j] - 1, the relation implied by the others.
NcPoly sl2_redundant_relation(const FormMatrix& f, const AlphabetPtr& alphabet);

struct CongruenceData {
  FormMatrix p;
  FormMatrix q;
};

struct GaloisMaps {
  std::vector<MorphismCertificate> maps;
  std::vector<IdentityCheck> identities;
  std::vector<std::string> skipped;  ///< maps not built, with the reason

  bool certified() const;
};

/// alpha, beta, phi, gamma1, gamma2 for (E, F); psi when congruence data is
/// given; delta when E and F share the trace invariant. Also checks the
/// kernel identities, the generator-level eta/kappa inversions, and
/// coassociativity and counit laws of the coactions.
GaloisMaps structure_maps(const FormMatrix& e, const FormMatrix& f, int bound,
                          const std::optional<CongruenceData>& congruence = std::nullopt,
                          const ResourceLimits& limits = {});

/// psi : B(E,F) -> B(P^t E P, Q^t F Q), z -> P y Q^{-1}.
MorphismSpec transport_morphism(const FormMatrix& e, const FormMatrix& f, const Matrix& p,
                                const Matrix& q);

/// delta : B(E,F) -> B(E,E_q) (x) B(E_q,F), z_ij -> sum_k v_ik (x) w_kj.
MorphismSpec delta_morphism(const FormMatrix& e, const FormMatrix& f, const Scalar& q);

enum class Nonvanishing { Positive, Unknown };

struct BigaloisCertificate {
  Scalar trace;          ///< tr(F F^{-t})
  Scalar q;
  Scalar q_inv;
  TowerPtr tower;
  Genericity genericity;
  std::optional<Normalization> normalization;
  MorphismCertificate transport;  ///< B(E_q,F) -> B(E_q,F')
  std::optional<RewriteSystem> system;
  ConfluenceCertificate confluence;
  std::vector<std::uint64_t> basis_counts;    ///< irreducible words per degree
  std::vector<std::uint64_t> bounded_dims;    ///< cumulative quotient dimensions
  int pinching_degree = 0;
  bool pinching_holds = false;
  bool redundant_reduces = false;
  MembershipVerdict redundant_membership;
  Nonvanishing nonvanishing = Nonvanishing::Unknown;
  GaloisMaps maps;  ///< for (E_q, F')

  // The E side.
  Scalar trace_e;
  bool trace_condition = false;
  bool e_is_eq = false;
  std::string delta_route;  ///< "Certified", "NotApplicable" or "Unknown"
  std::optional<MorphismCertificate> delta;
  std::vector<std::string> delta_notes;
  std::vector<std::string> failures;

  bool passed() const;
};

struct CertificateOptions {
  int degree = 3;
  int bound = 4;
  bool structure_maps = true;
  ResourceLimits limits;
};

BigaloisCertificate bigalois_certificate(const FormMatrix& e, const FormMatrix& f,
                                         const CertificateOptions& options = {});

}  // namespace bigalois
