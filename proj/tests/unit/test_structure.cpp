#include <doctest.h>

#include <random>

#include "bigalois/structure.hpp"

using namespace bigalois;

namespace {

Matrix mat(std::size_t n, std::vector<long> v) {
  std::vector<Scalar> s(v.begin(), v.end());
  return Matrix(n, n, std::move(s));
}

Matrix random_invertible(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-3, 3);
  while (true) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(d(rng));
    if (!m.determinant().is_zero()) return m;
  }
}

Scalar imaginary_unit() { return extend_with_root(Tower::rationals(), Scalar(0), Scalar(1)).root; }

const FormMatrix e1() { return FormMatrix(mat(2, {0, 1, -1, 0})); }

}  // namespace

TEST_CASE("polynomial arithmetic") {
  UPoly a({Scalar(-1), Scalar(0), Scalar(1)});  // x^2 - 1
  UPoly b({Scalar(1), Scalar(1)});              // x + 1
  auto [q, r] = divmod(a, b);
  CHECK(q.str() == "x - 1");
  CHECK(r.is_zero());
  CHECK(q * b == a);
  CHECK(UPoly({Scalar(2), Scalar(4)}).monic().str() == "x + 1/2");
}

TEST_CASE("invariant factors") {
  // diag(2, 2) and ((2,1),(0,2)) share a characteristic polynomial but are not similar
  auto f1 = invariant_factors(mat(2, {2, 0, 0, 2}));
  auto f2 = invariant_factors(mat(2, {2, 1, 0, 2}));
  CHECK(f1[0].str() == "x - 2");
  CHECK(f1[1].str() == "x - 2");
  CHECK(f2[0].str() == "1");
  CHECK(f2[1].str() == "x^2 - 4*x + 4");

  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_invertible(rng, 3);
    Matrix p = random_invertible(rng, 3);
    CHECK(invariant_factors(*p.inverse() * a * p) == invariant_factors(a));
    UPoly prod = UPoly::constant(Scalar(1));
    for (const auto& f : invariant_factors(a)) prod = prod * f;
    CHECK(prod.degree() == 3);
  }
}

TEST_CASE("trace invariant values") {
  CHECK(trace_invariant(sl2_form(Scalar(2))) == Scalar(mpq_class(-5, 2)));
  CHECK(trace_invariant(FormMatrix(Matrix::identity(3))) == Scalar(3));
}

TEST_CASE("congruence witnesses") {
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    FormMatrix e(random_invertible(rng, n));
    Matrix m = random_invertible(rng, n);
    FormMatrix f(m.transpose() * e.entries() * m);
    CHECK(congruence_verify(e, f, m));
    auto r = congruence_invariants(e, f, m);
    CHECK(r.verdict == CongruenceVerdict::CongruentWithWitness);
    CHECK(trace_invariant(e) == trace_invariant(f));
    CHECK(congruence_invariants(e, f).verdict == CongruenceVerdict::Inconclusive);
    Matrix bad = m;
    bad(0, 0) += Scalar(1);
    CHECK_FALSE(congruence_verify(e, f, bad));
  }

  const Scalar root2 = extend_with_root(Tower::rationals(), Scalar(0), Scalar(-2)).root;
  FormMatrix i2(Matrix::identity(2));
  FormMatrix d12(Matrix::diagonal({Scalar(1), Scalar(2)}));
  CHECK(congruence_verify(i2, d12, Matrix::diagonal({Scalar(1), root2})));
  auto r = congruence_invariants(i2, d12);
  CHECK(r.sizes_match);
  CHECK(r.trace_equal);
  CHECK(r.asymmetry_similar);
  CHECK(r.verdict == CongruenceVerdict::Inconclusive);

  auto neg = congruence_invariants(sl2_form(Scalar(2)), i2);
  CHECK_FALSE(neg.trace_equal);
  CHECK(neg.verdict == CongruenceVerdict::NotCongruent);
  CHECK(congruence_invariants(i2, FormMatrix(Matrix::identity(3))).verdict ==
        CongruenceVerdict::NotCongruent);
}

TEST_CASE("automorphism group of a form") {
  FormMatrix e = e1();
  CHECK(automorphism_check(e, Matrix::identity(2)) == AutomorphismVerdict::InGE);
  CHECK(automorphism_check(e, -Matrix::identity(2)) ==
        AutomorphismVerdict::NegativeOfIdentityClass);
  CHECK(same_automorphism_class(Matrix::identity(2), -Matrix::identity(2)));
  CHECK(automorphism_check(e, mat(2, {2, 0, 0, 1})) == AutomorphismVerdict::No);

  std::mt19937 rng(8);
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<Matrix> members;
  while (members.size() < 20) {
    Matrix p = mat(2, {d(rng), d(rng), d(rng), d(rng)});
    if (p.determinant() == Scalar(1)) {
      CHECK(automorphism_check(e, p) != AutomorphismVerdict::No);
      members.push_back(p);
    } else if (!p.determinant().is_zero()) {
      CHECK(automorphism_check(e, p) == AutomorphismVerdict::No);
    }
  }
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    CHECK(automorphism_check(e, members[i] * members[i + 1]) != AutomorphismVerdict::No);
    CHECK(automorphism_check(e, *members[i].inverse()) != AutomorphismVerdict::No);
  }
}

TEST_CASE("star structures and CQG fixtures") {
  FormMatrix id(Matrix::identity(2));
  auto a = cqg_verify(id, Matrix::identity(2));
  CHECK(a.star_holds());
  CHECK(*a.lambda == Scalar(1));
  CHECK(a.cqg == CqgVerdict::Cqg);
  CHECK(*a.mu == Scalar(1));

  const Scalar i = imaginary_unit();
  const Matrix m = i * e1().entries();
  auto b = cqg_verify(e1(), m);
  CHECK(b.star_holds());
  CHECK(*b.lambda == Scalar(-1));
  REQUIRE(b.cqg == CqgVerdict::Cqg);
  CHECK(*b.mu * *b.h == Matrix::identity(2));

  auto c = star_structure_verify(e1(), e1().entries());
  CHECK_FALSE(c.first_equation);
  CHECK_FALSE(c.star_holds());
  CHECK(cqg_verify(e1(), e1().entries()).cqg == CqgVerdict::NotApplicable);

  auto d = cqg_verify(FormMatrix(Matrix::diagonal({Scalar(1), Scalar(-1)})), Matrix::identity(2));
  CHECK(d.star_holds());
  CHECK(d.cqg == CqgVerdict::NotCqg);
}

TEST_CASE("CQG verdict is invariant under M -> -M") {
  const Scalar i = imaginary_unit();
  std::vector<std::pair<FormMatrix, Matrix>> cases = {
      {FormMatrix(Matrix::identity(2)), Matrix::identity(2)},
      {e1(), i * e1().entries()},
      {FormMatrix(Matrix::diagonal({Scalar(1), Scalar(-1)})), Matrix::identity(2)},
      {FormMatrix(Matrix::diagonal({Scalar(2), Scalar(3), Scalar(5)})), Matrix::identity(3)},
  };
  for (const auto& [e, m] : cases) {
    auto r1 = cqg_verify(e, m), r2 = cqg_verify(e, -m);
    CHECK(r1.cqg == r2.cqg);
    CHECK(r1.star_holds() == r2.star_holds());
  }
}

TEST_CASE("star involution squares to the identity") {
  const Scalar i = imaginary_unit();
  const Matrix m = i * e1().entries();
  auto r = star_structure_verify(e1(), m);
  REQUIRE(r.star_holds());
  const Matrix mm = m.conjugate() * m;
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    Matrix a = random_invertible(rng, 2);
    CHECK(mm * a * *mm.inverse() == a);
  }
}
