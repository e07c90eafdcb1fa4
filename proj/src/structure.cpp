#include "bigalois/structure.hpp"

#include <utility>

namespace bigalois {

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  const Scalar inv = leading().inverse();
  std::vector<Scalar> out;
  for (const auto& c : c_) out.push_back((c * inv).trimmed());
  return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
  std::vector<Scalar> out;
  for (const auto& c : c_) out.push_back(-c);
  return UPoly(std::move(out));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), Scalar(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return UPoly(std::move(out));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Scalar> q(std::max(a.degree() - b.degree() + 1, 0), Scalar(0));
  std::vector<Scalar> r = a.c_;
  const Scalar inv = b.leading().inverse();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const Scalar c = r[static_cast<std::size_t>(k + b.degree())] * inv;
    q[static_cast<std::size_t>(k)] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= c * b.c_[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

std::string UPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Scalar& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string coeff = c.str();
    const bool simple = c.is_rational();
    bool negative = simple && sgn(*c.as_rational()) < 0;
    if (negative) coeff = (-c).str();
    if (!simple) coeff = "(" + coeff + ")";
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    const std::string var = k == 0 ? "" : k == 1 ? "x" : "x^" + std::to_string(k);
    if (var.empty()) out += coeff;
    else if (simple && coeff == "1") out += var;
    else out += coeff + "*" + var;
  }
  return out;
}

// ---------------------------------------------------------------- congruence

std::vector<UPoly> invariant_factors(const Matrix& a) {
  if (!a.square()) throw PreconditionError("invariant factors need a square matrix");
  const std::size_t n = a.rows();
  std::vector<std::vector<UPoly>> m(n, std::vector<UPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = UPoly::constant(-a(i, j));
      if (i == j) m[i][j] = m[i][j] + UPoly::x();
    }
  }
  auto add_row = [&](std::size_t dst, std::size_t src, const UPoly& q) {
    for (std::size_t j = 0; j < n; ++j) m[dst][j] = m[dst][j] + q * m[src][j];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const UPoly& q) {
    for (std::size_t i = 0; i < n; ++i) m[i][dst] = m[i][dst] + q * m[i][src];
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (!m[i][j].is_zero() && (!best || m[i][j].degree() < m[best->first][best->second].degree()))
            best = {{i, j}};
      if (!best) break;
      std::swap(m[t], m[best->first]);
      for (std::size_t i = 0; i < n; ++i) std::swap(m[i][t], m[i][best->second]);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        auto [q, r] = divmod(m[i][t], m[t][t]);
        add_row(i, t, -q);
        clean = clean && r.is_zero();
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        auto [q, r] = divmod(m[t][j], m[t][t]);
        add_col(j, t, -q);
        clean = clean && r.is_zero();
      }
      if (!clean) continue;
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < n && !bad; ++i)
        for (std::size_t j = t + 1; j < n && !bad; ++j)
          if (!divmod(m[i][j], m[t][t]).second.is_zero()) bad = i;
      if (!bad) break;
      add_row(t, *bad, UPoly::constant(Scalar(1)));
    }
  }
  std::vector<UPoly> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(m[i][i].monic());
  return out;
}

Matrix asymmetry(const FormMatrix& e) { return e.inverse().transpose() * e.entries(); }

bool congruence_verify(const FormMatrix& e, const FormMatrix& f, const Matrix& m) {
  if (m.rows() != e.size() || m.cols() != f.size() || e.size() != f.size()) {
    throw PreconditionError("congruence witness has incompatible size");
  }
  return m.transpose() * e.entries() * m == f.entries();
}

CongruenceReport congruence_invariants(const FormMatrix& e, const FormMatrix& f,
                                       const std::optional<Matrix>& witness) {
  CongruenceReport r;
  r.sizes_match = e.size() == f.size();
  if (!r.sizes_match) {
    r.verdict = CongruenceVerdict::NotCongruent;
    return r;
  }
  r.trace_equal = trace_invariant(e) == trace_invariant(f);
  r.factors_e = invariant_factors(asymmetry(e));
  r.factors_f = invariant_factors(asymmetry(f));
  r.asymmetry_similar = r.factors_e == r.factors_f;
  if (!r.trace_equal || !r.asymmetry_similar) {
    r.verdict = CongruenceVerdict::NotCongruent;
  } else if (witness && witness->rows() == e.size() && witness->cols() == e.size() &&
             congruence_verify(e, f, *witness)) {
    r.verdict = CongruenceVerdict::CongruentWithWitness;
    r.witness = witness;
  }
  return r;
}

AutomorphismVerdict automorphism_check(const FormMatrix& e, const Matrix& p) {
  if (p.rows() != e.size() || p.cols() != e.size()) {
    throw PreconditionError("automorphism candidate has the wrong size");
  }
  if (!(p.transpose() * e.entries() * p == e.entries())) return AutomorphismVerdict::No;
  if (p == -Matrix::identity(e.size())) return AutomorphismVerdict::NegativeOfIdentityClass;
  return AutomorphismVerdict::InGE;
}

bool same_automorphism_class(const Matrix& p, const Matrix& q) { return p == q || p == -q; }

// ---------------------------------------------------------------- star structures

StarReport star_structure_verify(const FormMatrix& e, const Matrix& m) {
  if (m.rows() != e.size() || m.cols() != e.size()) {
    throw PreconditionError("star structure matrix has the wrong size");
  }
  StarReport r;
  r.first_equation = m.transpose() * e.entries().adjoint() * m == e.entries();
  const Matrix mm = m.conjugate() * m;
  const Scalar lambda = mm(0, 0);
  if (mm == lambda * Matrix::identity(e.size()) && !lambda.is_zero()) {
    const Scalar l = lambda.trimmed();
    r.lambda = l;
    r.second_equation = conjugate(l) == l;
  }
  if (!r.first_equation) r.reason = "tM E* M != E";
  else if (!r.second_equation) r.reason = "conj(M) M is not a nonzero real multiple of I";
  return r;
}

namespace {

/// Sign of a leading principal minor, or nullopt when undecidable.
std::optional<int> minor_sign(const Scalar& m) {
  try {
    if (!(conjugate(m) == m)) return std::nullopt;
  } catch (const ConjugationError&) {
    return std::nullopt;
  }
  return real_sign(m.trimmed());
}

}  // namespace

StarReport cqg_verify(const FormMatrix& e, const Matrix& m) {
  StarReport r = star_structure_verify(e, m);
  if (!r.star_holds()) return r;
  auto mt_inv = m.transpose().inverse();
  if (!mt_inv) {
    r.cqg = CqgVerdict::NotCqg;
    r.reason = "M is singular";
    return r;
  }
  const Matrix h = *mt_inv * e.entries();
  r.h = h;
  const Matrix hs = h.adjoint();
  const std::size_t n = e.size();

  std::optional<Scalar> c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!c && !h(i, j).is_zero()) c = (hs(i, j) / h(i, j)).trimmed();
  if (!c || !(hs == *c * h)) {
    r.cqg = CqgVerdict::NotCqg;
    r.reason = "H* is not a scalar multiple of H";
    return r;
  }

  // mu-bar = c mu: mu = 1 when c = 1, i when c = -1, 1 + c otherwise
  Scalar mu = c->is_one() ? Scalar(1) : Scalar(1) + *c;
  if (mu.is_zero()) {
    try {
      mu = extend_with_root(h.tower(), Scalar(0), Scalar(1)).root;
    } catch (const TowerLimitError& ex) {
      r.cqg = CqgVerdict::Undetermined;
      r.reason = std::string("cannot adjoin i: ") + ex.what();
      return r;
    }
  }

  const Matrix g = mu * h;
  std::vector<int> signs;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = g(i, j);
    const Scalar d = sub.determinant().trimmed();
    r.minors.push_back(d);
    auto s = minor_sign(d);
    if (!s) {
      r.cqg = CqgVerdict::Undetermined;
      r.reason = "sign of leading minor " + std::to_string(k) + " is undecidable";
      return r;
    }
    signs.push_back(*s);
  }
  bool positive = true, negative = true;
  std::size_t fail_pos = n, fail_neg = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (signs[k] <= 0 && positive) {
      positive = false;
      fail_pos = k;
    }
    const int want = k % 2 == 0 ? -1 : 1;
    if (signs[k] != want && negative) {
      negative = false;
      fail_neg = k;
    }
  }
  if (positive || negative) {
    r.cqg = CqgVerdict::Cqg;
    r.mu = positive ? mu.trimmed() : (-mu).trimmed();
    if (negative) {
      for (std::size_t k = 0; k < n; ++k)
        if (k % 2 == 0) r.minors[k] = -r.minors[k];
    }
    return r;
  }
  r.cqg = CqgVerdict::NotCqg;
  r.reason = "no multiple of H is positive: leading minor " +
             std::to_string(std::max(fail_pos, fail_neg) + 1) + " has the wrong sign";
  return r;
}

std::string to_string(CongruenceVerdict v) {
  switch (v) {
    case CongruenceVerdict::NotCongruent: return "NotCongruent";
    case CongruenceVerdict::Inconclusive: return "Inconclusive";
    case CongruenceVerdict::CongruentWithWitness: return "CongruentWithWitness";
  }
  return {};
}

std::string to_string(AutomorphismVerdict v) {
  switch (v) {
    case AutomorphismVerdict::InGE: return "InGE";
    case AutomorphismVerdict::NegativeOfIdentityClass: return "NegativeOfIdentityClass";
    case AutomorphismVerdict::No: return "No";
  }
  return {};
}

std::string to_string(CqgVerdict v) {
  switch (v) {
    case CqgVerdict::NotApplicable: return "NotApplicable";
    case CqgVerdict::Cqg: return "CQG";
    case CqgVerdict::NotCqg: return "NotCQG";
    case CqgVerdict::Undetermined: return "Undetermined";
  }
  return {};
}

}  // namespace bigalois
