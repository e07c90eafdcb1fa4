#pragma once

// Exact arithmetic in a short tower of quadratic extensions of the rationals.
//
// A tower Q = K0 < K1 < ... < Kh adjoins one root g_k of a monic irreducible
// quadratic x^2 + p1 x + p0 (p1, p0 in K_{k-1}) at each level. An element of
// K_h is stored as its 2^h rational coordinates over the product basis
// {g_1^e1 ... g_h^eh}, with the top generator selecting the upper half:
// x = x_low + x_high * g_h.

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bigalois/errors.hpp"

namespace bigalois {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// How complex conjugation acts on a level's generator.
enum class ConjugationKind {
  Real,      ///< discriminant is a positive real: generator fixed
  Complex,   ///< discriminant is a negative real: g -> -p1 - g
  Unstable,  ///< coefficients not conjugation-fixed, or sign undecidable
};

struct TowerLevel {
  std::string name;
  std::vector<mpq_class> linear;    ///< p1, coordinates over the level below
  std::vector<mpq_class> constant;  ///< p0, coordinates over the level below
  ConjugationKind conjugation = ConjugationKind::Unstable;

  bool same_field(const TowerLevel& other) const {
    return linear == other.linear && constant == other.constant;
  }
};

class Tower {
 public:
  /// Maximum number of levels, counting the rationals as level 0.
  static constexpr int kDefaultCap = 4;

  static TowerPtr rationals();
  static TowerPtr rationals_with_cap(int cap);

  int height() const { return static_cast<int>(levels_.size()); }
  std::size_t dimension() const { return std::size_t{1} << levels_.size(); }
  int cap() const { return cap_; }

  const TowerLevel& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  const std::vector<TowerLevel>& levels() const { return levels_; }

  /// True when every level of this tower is (structurally) a level of `other`
  /// at the same position.
  bool is_prefix_of(const Tower& other) const;

  /// Tower obtained by adjoining a root of x^2 + linear x + constant. The
  /// caller guarantees irreducibility; use extend_with_root for the checked path.
  TowerPtr adjoin(std::string name, std::vector<mpq_class> linear,
                  std::vector<mpq_class> constant, ConjugationKind kind) const;

  bool conjugation_stable() const;
  bool has_name(const std::string& name) const;

  std::string describe() const;

 private:
  Tower(std::vector<TowerLevel> levels, int cap) : levels_(std::move(levels)), cap_(cap) {}

  std::vector<TowerLevel> levels_;
  int cap_;
};

/// Deeper of two compatible towers; throws IncompatibleTowers otherwise.
TowerPtr join_towers(const TowerPtr& a, const TowerPtr& b);

class Scalar {
 public:
  Scalar();
  Scalar(long value);  // NOLINT: implicit by design of scalar literals in formulas
  Scalar(const mpq_class& value);  // NOLINT
  Scalar(TowerPtr tower, std::vector<mpq_class> coords);

  static Scalar zero(const TowerPtr& tower);
  static Scalar one(const TowerPtr& tower);
  static Scalar generator(const TowerPtr& tower, int level);
  static Scalar from_string(const std::string& rational);

  const TowerPtr& tower() const { return tower_; }
  std::span<const mpq_class> coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  std::optional<mpq_class> as_rational() const;

  /// Same element expressed in a tower extending this one's.
  Scalar lifted(const TowerPtr& tower) const;
  /// Same element in the smallest prefix of its tower that contains it.
  Scalar trimmed() const;

  Scalar inverse() const;
  Scalar pow(long exponent) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string str() const;

 private:
  TowerPtr tower_;
  std::vector<mpq_class> coords_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Complex conjugation; throws ConjugationError on unstable towers.
Scalar conjugate(const Scalar& s);

/// Sign of a conjugation-fixed scalar under the tower's designated real
/// embedding, or nullopt when the tower cannot decide it.
std::optional<int> real_sign(const Scalar& s);

/// A square root inside the scalar's own tower, if one exists.
std::optional<Scalar> sqrt_in_tower(const Scalar& s);

struct RootExtension {
  TowerPtr tower;
  Scalar root;
  bool extended = false;  ///< a new level was adjoined
};

/// Root of the monic quadratic x^2 + linear x + constant, adjoining one when
/// none exists in `tower`. Rational root pairs resolve to the root of larger
/// absolute value (positive on ties).
RootExtension extend_with_root(const TowerPtr& tower, const Scalar& linear,
                               const Scalar& constant, std::string name = {});

struct Sl2Parameter {
  Scalar q;
  Scalar q_inv;
};

/// Solves q^2 + c q + 1 = 0, extending `base` (or c's tower) when needed.
Sl2Parameter solve_sl2_parameter(const Scalar& c, const TowerPtr& base = nullptr);

inline constexpr int kMaxRootOfUnityOrder = 30;

struct Genericity {
  bool generic = true;
  int order = 0;  ///< multiplicative order N >= 3 when not generic

  static Genericity generic_parameter() { return {}; }
  static Genericity root_of_unity(int n) { return {false, n}; }
  bool operator==(const Genericity&) const = default;
};

/// Generic iff q in {1, -1} or q is not a root of unity. A scalar has degree
/// at most 2^height <= 8 over the rationals, and phi(N) <= 8 forces N <= 30,
/// so testing q^N = 1 for N <= kMaxRootOfUnityOrder decides the question.
Genericity classify_genericity(const Scalar& q);

}  // namespace bigalois
