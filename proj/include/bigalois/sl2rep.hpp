#pragma once

// The representation semiring of SL_q(2): simple labels, fusion of tensor
// products in the generic and root-of-unity regimes, and dimensions.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bigalois/errors.hpp"

namespace bigalois {

/// Effective truncation order at a root of unity of order N >= 3.
int n0_of(int n);

class FusionContext {
 public:
  static FusionContext generic() { return FusionContext(0); }
  static FusionContext root_of_unity(int order);

  bool is_generic() const { return order_ == 0; }
  int order() const { return order_; }
  int n0() const { return n0_; }

  std::string str() const;

 private:
  explicit FusionContext(int order);

  int order_;
  int n0_ = 0;
};

/// V(v) (x) U(u); the generic regime only uses v = 0.
struct SimpleLabel {
  int v = 0;
  int u = 0;

  static SimpleLabel U(int n) { return {0, n}; }
  static SimpleLabel V(int n) { return {n, 0}; }

  bool is_unit() const { return v == 0 && u == 0; }
  std::uint64_t dim() const;
  std::string str() const;

  auto operator<=>(const SimpleLabel&) const = default;
};

/// Throws PreconditionError unless the label exists in `ctx`.
void validate_label(const SimpleLabel& x, const FusionContext& ctx);

/// Finite sum of simple labels with positive multiplicities.
class RepElement {
 public:
  RepElement() = default;
  RepElement(SimpleLabel x, std::uint64_t multiplicity = 1);  // NOLINT

  const std::map<SimpleLabel, std::uint64_t>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::uint64_t multiplicity(const SimpleLabel& x) const;
  std::uint64_t count() const;  ///< number of simple summands with multiplicity

  RepElement& operator+=(const RepElement& other);
  friend RepElement operator+(RepElement a, const RepElement& b) { return a += b; }
  bool operator==(const RepElement&) const = default;

  std::string str() const;

 private:
  std::map<SimpleLabel, std::uint64_t> terms_;
};

/// Composition factors of a non-semisimple product, bottom-up.
struct FiltrationReport {
  std::vector<SimpleLabel> factors;

  std::string str() const;
};

using FusionResult = std::variant<RepElement, FiltrationReport>;

/// Decomposition of x (x) y, or its composition series when the product is
/// not semisimple. Throws OutOfSpecifiedRange for root-of-unity products
/// outside the known rules.
FusionResult tensor_decompose(const SimpleLabel& x, const SimpleLabel& y,
                              const FusionContext& ctx);

/// Tensor product of semisimple elements; throws OutOfSpecifiedRange when a
/// summand product is not semisimple.
RepElement tensor(const RepElement& a, const RepElement& b, const FusionContext& ctx);

std::uint64_t dim_of(const RepElement& x);
std::uint64_t dim_of(const FusionResult& x);

std::string fusion_str(const FusionResult& x);

struct ContradictionReport {
  int order = 0;
  int n0 = 0;
  std::vector<SimpleLabel> ladder;   ///< U(N0-2), U(N0) from the semisimple rule
  std::vector<SimpleLabel> factors;  ///< U(N0-2), V(1), U(N0-2) from the filtration
  std::uint64_t ladder_dim = 0;
  std::uint64_t factor_dim = 0;
  bool multisets_differ = false;
};

/// Compares the two decompositions of U(N0-1) (x) U(1) at a root of unity of
/// order N: semisimple ladder against the composition factors.
ContradictionReport fusion_contradiction_check(int order);

}  // namespace bigalois
