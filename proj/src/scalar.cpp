#include "bigalois/scalar.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace bigalois {

namespace {

using Coords = std::vector<mpq_class>;
using View = std::span<const mpq_class>;

bool all_zero(View a) {
  return std::all_of(a.begin(), a.end(), [](const mpq_class& x) { return sgn(x) == 0; });
}

Coords zeros(std::size_t n) { return Coords(n, mpq_class(0)); }

Coords add(View a, View b) {
  Coords r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Coords sub(View a, View b) {
  Coords r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Coords neg(View a) {
  Coords r(a.begin(), a.end());
  for (auto& x : r) x = -x;
  return r;
}

Coords scale(View a, const mpq_class& s) {
  Coords r(a.begin(), a.end());
  for (auto& x : r) x *= s;
  return r;
}

Coords concat(Coords low, const Coords& high) {
  low.insert(low.end(), high.begin(), high.end());
  return low;
}

// Arithmetic on coordinate vectors of the level-k field of `t`.
class LevelArith {
 public:
  explicit LevelArith(const Tower& t) : t_(t) {}

  Coords mul(int k, View a, View b) const {
    if (k == 0) return {a[0] * b[0]};
    if (all_zero(a) || all_zero(b)) return zeros(a.size());
    const std::size_t h = a.size() / 2;
    View a0 = a.first(h), a1 = a.subspan(h), b0 = b.first(h), b1 = b.subspan(h);
    const bool a1z = all_zero(a1), b1z = all_zero(b1);
    if (a1z && b1z) return concat(mul(k - 1, a0, b0), zeros(h));
    if (a1z) return concat(mul(k - 1, a0, b0), mul(k - 1, a0, b1));
    if (b1z) return concat(mul(k - 1, a0, b0), mul(k - 1, a1, b0));
    const TowerLevel& lvl = t_.level(k - 1);
    Coords top = mul(k - 1, a1, b1);
    Coords low = sub(mul(k - 1, a0, b0), mul(k - 1, top, lvl.constant));
    Coords high = add(mul(k - 1, a0, b1), mul(k - 1, a1, b0));
    high = sub(high, mul(k - 1, top, lvl.linear));
    return concat(std::move(low), high);
  }

  Coords inv(int k, View a) const {
    if (k == 0) {
      if (sgn(a[0]) == 0) throw PreconditionError("division by zero scalar");
      return {1 / a[0]};
    }
    const std::size_t h = a.size() / 2;
    View a0 = a.first(h), a1 = a.subspan(h);
    if (all_zero(a1)) return concat(inv(k - 1, a0), zeros(h));
    const TowerLevel& lvl = t_.level(k - 1);
    // (a0 + a1 g)((a0 - a1 p1) - a1 g) = a0^2 - a0 a1 p1 + a1^2 p0
    Coords conj_low = sub(a0, mul(k - 1, a1, lvl.linear));
    Coords norm = mul(k - 1, a0, conj_low);
    norm = add(norm, mul(k - 1, mul(k - 1, a1, a1), lvl.constant));
    Coords ninv = inv(k - 1, norm);
    return concat(mul(k - 1, conj_low, ninv), neg(mul(k - 1, a1, ninv)));
  }

  Coords conj(int k, View a) const {
    if (k == 0) return {a[0]};
    const TowerLevel& lvl = t_.level(k - 1);
    const std::size_t h = a.size() / 2;
    Coords c0 = conj(k - 1, a.first(h));
    Coords c1 = conj(k - 1, a.subspan(h));
    switch (lvl.conjugation) {
      case ConjugationKind::Real:
        return concat(std::move(c0), c1);
      case ConjugationKind::Complex:
        return concat(sub(c0, mul(k - 1, c1, lvl.linear)), neg(c1));
      case ConjugationKind::Unstable:
        break;
    }
    throw ConjugationError("level '" + lvl.name + "' is not stable under complex conjugation");
  }

  // Writes x = A + B s with s = 2g + p1, s^2 = p1^2 - 4 p0.
  void split_sqrt_basis(int k, View a, Coords& A, Coords& B) const {
    const std::size_t h = a.size() / 2;
    const TowerLevel& lvl = t_.level(k - 1);
    B = scale(a.subspan(h), mpq_class(1, 2));
    A = sub(a.first(h), mul(k - 1, B, lvl.linear));
  }

  Coords discriminant(int k) const {
    const TowerLevel& lvl = t_.level(k - 1);
    return sub(mul(k - 1, lvl.linear, lvl.linear), scale(lvl.constant, 4));
  }

  std::optional<int> sign(int k, View a) const {
    if (k == 0) return sgn(a[0]);
    const TowerLevel& lvl = t_.level(k - 1);
    const std::size_t h = a.size() / 2;
    if (all_zero(a.subspan(h))) return sign(k - 1, a.first(h));
    if (lvl.conjugation != ConjugationKind::Real) return std::nullopt;
    Coords A, B;
    split_sqrt_basis(k, a, A, B);
    if (!is_real(k - 1, A) || !is_real(k - 1, B)) return std::nullopt;
    auto sa = sign(k - 1, A), sb = sign(k - 1, B);
    if (!sa || !sb) return std::nullopt;
    if (*sa == 0) return sb;
    if (*sb == 0 || *sa == *sb) return sa;
    // A and B s have opposite signs: compare A^2 with B^2 D.
    Coords diff = sub(mul(k - 1, A, A), mul(k - 1, mul(k - 1, B, B), discriminant(k)));
    auto sd = sign(k - 1, diff);
    if (!sd) return std::nullopt;
    return *sd > 0 ? sa : sb;
  }

  bool is_real(int k, View a) const {
    for (int j = 0; j < k; ++j) {
      if (t_.level(j).conjugation == ConjugationKind::Unstable) return false;
    }
    Coords c = conj(k, a);
    return std::equal(c.begin(), c.end(), a.begin());
  }

  std::optional<Coords> sqrt(int k, View a) const {
    if (k == 0) return rational_sqrt(a[0]);
    const std::size_t h = a.size() / 2;
    const TowerLevel& lvl = t_.level(k - 1);
    Coords A, B;
    split_sqrt_basis(k, a, A, B);
    const Coords D = discriminant(k);
    auto from_sqrt_basis = [&](const Coords& X, const Coords& Y) {
      // X + Y s = (X + Y p1) + 2Y g
      return concat(add(X, mul(k - 1, Y, lvl.linear)), scale(Y, 2));
    };
    if (all_zero(B)) {
      if (auto r = sqrt(k - 1, A)) return concat(std::move(*r), zeros(h));
      if (auto r = sqrt(k - 1, mul(k - 1, A, inv(k - 1, D)))) {
        return from_sqrt_basis(zeros(h), *r);
      }
      return std::nullopt;
    }
    // (X + Y s)^2 = X^2 + Y^2 D + 2XY s; X^2 is a root of u^2 - A u + B^2 D / 4.
    Coords norm = sub(mul(k - 1, A, A), mul(k - 1, mul(k - 1, B, B), D));
    auto t = sqrt(k - 1, norm);
    if (!t) return std::nullopt;
    for (int sgn_t : {1, -1}) {
      Coords u = scale(sgn_t > 0 ? add(A, *t) : sub(A, *t), mpq_class(1, 2));
      auto X = sqrt(k - 1, u);
      if (!X || all_zero(*X)) continue;
      Coords Y = mul(k - 1, B, inv(k - 1, scale(*X, 2)));
      return from_sqrt_basis(*X, Y);
    }
    return std::nullopt;
  }

 private:
  static std::optional<Coords> rational_sqrt(const mpq_class& x) {
    if (sgn(x) < 0) return std::nullopt;
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
      return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return Coords{r};
  }

  const Tower& t_;
};

std::string monomial_name(const Tower& t, std::size_t index) {
  std::string out;
  for (int j = 0; j < t.height(); ++j) {
    if ((index >> j) & 1u) {
      if (!out.empty()) out += '*';
      out += t.level(j).name;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Tower

TowerPtr Tower::rationals() {
  static const TowerPtr q = rationals_with_cap(kDefaultCap);
  return q;
}

TowerPtr Tower::rationals_with_cap(int cap) {
  if (cap < 1) throw PreconditionError("tower cap must be at least 1");
  return TowerPtr(new Tower({}, cap));
}

bool Tower::is_prefix_of(const Tower& other) const {
  if (this == &other) return true;
  if (levels_.size() > other.levels_.size()) return false;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!levels_[i].same_field(other.levels_[i])) return false;
  }
  return true;
}

TowerPtr Tower::adjoin(std::string name, std::vector<mpq_class> linear,
                       std::vector<mpq_class> constant, ConjugationKind kind) const {
  if (height() + 2 > cap_) {
    throw TowerLimitError("tower height limit of " + std::to_string(cap_) +
                          " levels exceeded while adjoining '" + name + "'");
  }
  if (linear.size() != dimension() || constant.size() != dimension()) {
    throw PreconditionError("minimal polynomial coefficients do not match tower");
  }
  std::vector<TowerLevel> levels = levels_;
  levels.push_back({std::move(name), std::move(linear), std::move(constant), kind});
  return TowerPtr(new Tower(std::move(levels), cap_));
}

bool Tower::conjugation_stable() const {
  return std::none_of(levels_.begin(), levels_.end(), [](const TowerLevel& l) {
    return l.conjugation == ConjugationKind::Unstable;
  });
}

bool Tower::has_name(const std::string& name) const {
  return std::any_of(levels_.begin(), levels_.end(),
                     [&](const TowerLevel& l) { return l.name == name; });
}

std::string Tower::describe() const {
  if (levels_.empty()) return "Q";
  std::string out = "Q";
  auto prefix = rationals_with_cap(cap_);
  for (const auto& lvl : levels_) {
    Scalar p1(prefix, lvl.linear), p0(prefix, lvl.constant);
    out += "(" + lvl.name + ": x^2";
    if (!p1.is_zero()) out += "+(" + p1.str() + ")*x";
    if (!p0.is_zero()) out += "+(" + p0.str() + ")";
    out += ")";
    prefix = prefix->adjoin(lvl.name, lvl.linear, lvl.constant, lvl.conjugation);
  }
  return out;
}

TowerPtr join_towers(const TowerPtr& a, const TowerPtr& b) {
  if (a == b) return a;
  if (a->height() < b->height() && a->is_prefix_of(*b)) return b;
  if (b->is_prefix_of(*a)) return a;
  throw IncompatibleTowers("scalars live in incompatible field towers: " + a->describe() +
                           " vs " + b->describe());
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() : tower_(Tower::rationals()), coords_{mpq_class(0)} {}

Scalar::Scalar(long value) : tower_(Tower::rationals()), coords_{mpq_class(value)} {}

Scalar::Scalar(const mpq_class& value) : tower_(Tower::rationals()), coords_{value} {
  coords_[0].canonicalize();
}

Scalar::Scalar(TowerPtr tower, std::vector<mpq_class> coords)
    : tower_(std::move(tower)), coords_(std::move(coords)) {
  if (coords_.size() != tower_->dimension()) {
    throw PreconditionError("coordinate count does not match tower dimension");
  }
  for (auto& c : coords_) c.canonicalize();
}

Scalar Scalar::zero(const TowerPtr& tower) { return Scalar(tower, zeros(tower->dimension())); }

Scalar Scalar::one(const TowerPtr& tower) {
  Coords c = zeros(tower->dimension());
  c[0] = 1;
  return Scalar(tower, std::move(c));
}

Scalar Scalar::generator(const TowerPtr& tower, int level) {
  if (level < 0 || level >= tower->height()) throw PreconditionError("no such tower level");
  Coords c = zeros(tower->dimension());
  c[std::size_t{1} << level] = 1;
  return Scalar(tower, std::move(c));
}

Scalar Scalar::from_string(const std::string& rational) {
  mpq_class v;
  if (v.set_str(rational, 10) != 0 || v.get_den() == 0) {
    throw ParseError("malformed rational literal '" + rational + "'");
  }
  v.canonicalize();
  return Scalar(v);
}

bool Scalar::is_zero() const { return all_zero(coords_); }

bool Scalar::is_one() const {
  return coords_[0] == 1 && all_zero(View(coords_).subspan(1));
}

bool Scalar::is_rational() const { return all_zero(View(coords_).subspan(1)); }

std::optional<mpq_class> Scalar::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return coords_[0];
}

Scalar Scalar::lifted(const TowerPtr& tower) const {
  if (tower == tower_) return *this;
  if (!tower_->is_prefix_of(*tower)) {
    throw IncompatibleTowers("cannot lift scalar into a tower that does not extend its own");
  }
  Coords c = coords_;
  c.resize(tower->dimension(), mpq_class(0));
  return Scalar(tower, std::move(c));
}

Scalar Scalar::trimmed() const {
  int h = tower_->height();
  std::size_t used = coords_.size();
  while (h > 0 && all_zero(View(coords_).subspan(used / 2, used / 2))) {
    --h;
    used /= 2;
  }
  if (h == tower_->height()) return *this;
  TowerPtr t = Tower::rationals_with_cap(tower_->cap());
  for (int j = 0; j < h; ++j) {
    const auto& l = tower_->level(j);
    t = t->adjoin(l.name, l.linear, l.constant, l.conjugation);
  }
  return Scalar(t, Coords(coords_.begin(), coords_.begin() + static_cast<long>(used)));
}

Scalar Scalar::inverse() const {
  return Scalar(tower_, LevelArith(*tower_).inv(tower_->height(), coords_));
}

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result = one(tower_);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Scalar Scalar::operator-() const { return Scalar(tower_, neg(coords_)); }

Scalar& Scalar::operator+=(const Scalar& other) {
  if (other.tower_ != tower_) {
    TowerPtr t = join_towers(tower_, other.tower_);
    *this = lifted(t);
    Scalar o = other.lifted(t);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.tower_ == b.tower_) {
    if (a.tower_->height() == 0) return Scalar(a.tower_, {a.coords_[0] * b.coords_[0]});
    return Scalar(a.tower_, LevelArith(*a.tower_).mul(a.tower_->height(), a.coords_, b.coords_));
  }
  TowerPtr t = join_towers(a.tower_, b.tower_);
  Scalar x = a.lifted(t), y = b.lifted(t);
  return Scalar(t, LevelArith(*t).mul(t->height(), x.coords_, y.coords_));
}

Scalar& Scalar::operator*=(const Scalar& other) { return *this = *this * other; }

Scalar& Scalar::operator/=(const Scalar& other) { return *this = *this / other; }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.tower_ == b.tower_) return a.coords_ == b.coords_;
  TowerPtr t = join_towers(a.tower_, b.tower_);
  return a.lifted(t).coords_ == b.lifted(t).coords_;
}

std::string Scalar::str() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const mpq_class& c = coords_[i];
    if (sgn(c) == 0) continue;
    std::string mono = monomial_name(*tower_, i);
    std::string term;
    if (mono.empty()) {
      term = c.get_str();
    } else if (c == 1) {
      term = mono;
    } else if (c == -1) {
      term = "-" + mono;
    } else {
      term = c.get_str() + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += '+';
    out += term;
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar conjugate(const Scalar& s) {
  const Tower& t = *s.tower();
  return Scalar(s.tower(), LevelArith(t).conj(t.height(), s.coords()));
}

std::optional<int> real_sign(const Scalar& s) {
  const Tower& t = *s.tower();
  LevelArith arith(t);
  if (!arith.is_real(t.height(), s.coords())) return std::nullopt;
  return arith.sign(t.height(), s.coords());
}

std::optional<Scalar> sqrt_in_tower(const Scalar& s) {
  const Tower& t = *s.tower();
  auto r = LevelArith(t).sqrt(t.height(), s.coords());
  if (!r) return std::nullopt;
  return Scalar(s.tower(), std::move(*r));
}

RootExtension extend_with_root(const TowerPtr& tower, const Scalar& linear,
                               const Scalar& constant, std::string name) {
  TowerPtr t = join_towers(tower, join_towers(linear.tower(), constant.tower()));
  Scalar b = linear.lifted(t), c = constant.lifted(t);
  Scalar disc = b * b - Scalar(4) * c;

  std::optional<Scalar> rational_sqrt;
  if (b.is_rational() && c.is_rational()) rational_sqrt = sqrt_in_tower(disc.trimmed());
  if (rational_sqrt) {
    Scalar r1 = (-b.trimmed() + *rational_sqrt) / Scalar(2);
    Scalar r2 = (-b.trimmed() - *rational_sqrt) / Scalar(2);
    mpq_class a1 = abs(*r1.as_rational()), a2 = abs(*r2.as_rational());
    const bool first = a1 > a2 || (a1 == a2 && sgn(*r1.as_rational()) >= 0);
    return {t, (first ? r1 : r2).lifted(t), false};
  }
  if (auto s = sqrt_in_tower(disc)) return {t, (-b + *s) / Scalar(2), false};

  if (name.empty()) {
    if (b.is_zero() && c.is_one() && !t->has_name("i")) {
      name = "i";
    } else {
      for (int k = 1;; ++k) {
        name = "w" + std::to_string(k);
        if (!t->has_name(name)) break;
      }
    }
  } else if (t->has_name(name)) {
    throw PreconditionError("tower already has a generator named '" + name + "'");
  }

  ConjugationKind kind = ConjugationKind::Unstable;
  if (t->conjugation_stable() && conjugate(b) == b && conjugate(c) == c) {
    if (auto sd = real_sign(disc)) kind = *sd > 0 ? ConjugationKind::Real : ConjugationKind::Complex;
  }
  TowerPtr ext = t->adjoin(std::move(name), Coords(b.coords().begin(), b.coords().end()),
                           Coords(c.coords().begin(), c.coords().end()), kind);
  return {ext, Scalar::generator(ext, ext->height() - 1), true};
}

Sl2Parameter solve_sl2_parameter(const Scalar& c, const TowerPtr& base) {
  TowerPtr t = base ? join_towers(base, c.tower()) : c.tower();
  RootExtension r = extend_with_root(t, c, Scalar(1));
  Scalar q = r.root;
  Scalar q_inv = -c.lifted(r.tower) - q;
  return {q, q_inv};
}

Genericity classify_genericity(const Scalar& q) {
  if (q.is_zero()) throw PreconditionError("genericity is undefined for q = 0");
  if (q.is_one() || (-q).is_one()) return Genericity::generic_parameter();
  Scalar power = q;
  for (int n = 1; n <= kMaxRootOfUnityOrder; ++n) {
    if (power.is_one()) return Genericity::root_of_unity(n);
    power *= q;
  }
  return Genericity::generic_parameter();
}

}  // namespace bigalois
