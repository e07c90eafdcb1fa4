#include <doctest.h>

#include <random>

#include "bigalois/textio.hpp"

using namespace bigalois;

TEST_CASE("scalar expressions") {
  CHECK(parse_scalar("1/2") == Scalar(mpq_class(1, 2)));
  CHECK(parse_scalar("-3 + 2*(1/4)") == Scalar(mpq_class(-5, 2)));
  CHECK(parse_scalar("2^10") == Scalar(1024));
  CHECK(parse_scalar("12345678901234567890123456789/2").str() ==
        "12345678901234567890123456789/2");
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1 +"), ParseError);
  CHECK_THROWS_AS(parse_scalar("y"), ParseError);
  try {
    parse_scalar("2 * (3 + w)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown name 'w'") != std::string::npos);
  }
}

TEST_CASE("polynomial expressions") {
  auto a = make_alphabet({"x", "y", "z[1,2]"});
  auto p = parse_poly("x*y - y*x", a, Tower::rationals());
  CHECK(p.str() == "-y*x + x*y");
  CHECK(parse_poly("(x + 1)^2", a, Tower::rationals()).str() == "x*x + 2*x + 1");
  CHECK(parse_poly("z[1,2]*x/2", a, Tower::rationals()).str() == "1/2*z[1,2]*x");
  CHECK_THROWS_AS(parse_poly("x/y", a, Tower::rationals()), ParseError);
}

TEST_CASE("matrix files") {
  const std::string text =
      "# the form E_1\n"
      "root i: x^2 + 1\n"
      "matrix 2\n"
      "0 i   # entries may use roots\n"
      "-i 1/2\n";
  auto f = parse_form_file(text);
  CHECK(f.size() == 2);
  CHECK(f.tower()->height() == 1);
  const Scalar i = f(0, 1);
  CHECK(i * i == Scalar(-1));
  CHECK(f(1, 1) == Scalar(mpq_class(1, 2)));

  auto again = parse_form_file(write_matrix_file(f.entries()));
  CHECK(again == f);

  CHECK_THROWS_AS(parse_form_file("matrix 2\n1 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_form_file("matrix 2\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_form_file("root r: x^2 - 4\nmatrix 1\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_form_file("matrix 1\n1 2\n"), ParseError);
  try {
    parse_form_file("matrix 2\n1 0\n0 q\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("matrix files round-trip") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> d(-5, 5);
  auto sqrt2 = extend_with_root(Tower::rationals(), Scalar(0), Scalar(-2), "s");
  auto ext = extend_with_root(sqrt2.tower, Scalar(1), sqrt2.root, "t");
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 3);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar v = Scalar(mpq_class(d(rng), 1 + std::abs(d(rng))));
        if (k % 2) v += Scalar(d(rng)) * ext.root + Scalar(d(rng)) * sqrt2.root.lifted(ext.tower);
        m(i, j) = v;
      }
    if (m.determinant().is_zero()) continue;
    FormMatrix f(m);
    CHECK(parse_form_file(write_matrix_file(m)) == f);
  }
}
