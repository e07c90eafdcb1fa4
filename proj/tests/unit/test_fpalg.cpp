#include <random>

#include "bigalois/fpalg.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace bigalois;

namespace {

NcPoly word(const AlphabetPtr& a, Word w, const Scalar& c = Scalar(1)) {
  return NcPoly::monomial(a, std::move(w), c);
}

PresentationPtr xy_minus_one() {
  auto a = make_alphabet({"x", "y"});
  return make_presentation("xy", a, {word(a, {0, 1}) - word(a, {})});
}

// Commutative polynomial ring in two variables plus x^2 = 1.
PresentationPtr small_commutative() {
  auto a = make_alphabet({"s", "t"});
  return make_presentation(
      "c", a, {word(a, {1, 0}) - word(a, {0, 1}), word(a, {0, 0}) - word(a, {})});
}

NcPoly random_ideal_element(std::mt19937& rng, const Presentation& p, int d) {
  NcPoly f(p.alphabet());
  const std::size_t sigma = p.alphabet()->size();
  for (int k = 0; k < 3; ++k) {
    const auto& r = p.relations()[rng() % p.relations().size()];
    int slack = d - r.degree();
    Word u, v;
    int lu = slack > 0 ? static_cast<int>(rng() % (slack + 1)) : 0;
    int lv = slack - lu > 0 ? static_cast<int>(rng() % (slack - lu + 1)) : 0;
    for (int i = 0; i < lu; ++i) u.push_back(rng() % sigma);
    for (int i = 0; i < lv; ++i) v.push_back(rng() % sigma);
    f.add_sandwich(Scalar(static_cast<long>(rng() % 9) - 4), u, r, v);
  }
  return f;
}

}  // namespace

TEST_CASE("free algebra dimensions") {
  auto a = make_alphabet({"a", "b", "c", "d"});
  auto p = make_presentation("free", a, {});
  CHECK(quotient_dim_bounded(p, 2) == std::vector<std::uint64_t>{1, 5, 21});
}

TEST_CASE("x*y - 1 on two letters matches the dense oracle") {
  auto p = xy_minus_one();
  auto dims = quotient_dim_bounded(p, 3);
  CHECK(dims == oracle::dense_quotient_dims(*p, 3));
  // 7 words of degree <= 2 modulo one relation
  CHECK(dims[2] == 6);
  CHECK(dims == std::vector<std::uint64_t>{1, 3, 6, 10});
}

TEST_CASE("bounded dimensions agree with the dense oracle (property)") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    auto a = make_alphabet({"x", "y"});
    std::vector<NcPoly> rels;
    for (int k = 0; k < 2; ++k) {
      NcPoly r(a);
      for (int t = 0; t < 3; ++t) {
        Word w;
        for (int len = static_cast<int>(rng() % 3); len > 0; --len) w.push_back(rng() % 2);
        r.add_term(w, Scalar(static_cast<long>(rng() % 5) - 2));
      }
      if (!r.is_zero()) rels.push_back(r);
    }
    auto p = make_presentation("rand", a, rels);
    CHECK(quotient_dim_bounded(p, 3) == oracle::dense_quotient_dims(*p, 3));
  }
}

TEST_CASE("membership: relations, ideal elements, non-members") {
  auto p = xy_minus_one();
  const auto& a = p->alphabet();
  auto v = ideal_membership_bounded(p, p->relations()[0], 2);
  CHECK(v.member);
  CHECK(reconstruct(*p, v.witness) == p->relations()[0]);
  // x*(xy - 1)*y = xxyy - xy
  NcPoly f = word(a, {0, 0, 1, 1}) - word(a, {0, 1});
  auto v4 = ideal_membership_bounded(p, f, 4);
  CHECK(v4.member);
  CHECK(witness_degree(*p, v4.witness) <= 4);
  CHECK_FALSE(ideal_membership_bounded(p, word(a, {0}), 3).member);
  CHECK_THROWS_AS(ideal_membership_bounded(p, f, 2), PreconditionError);
}

TEST_CASE("witnesses reconstruct random ideal elements (property)") {
  std::mt19937 rng(77);
  auto p = small_commutative();
  for (int trial = 0; trial < 25; ++trial) {
    NcPoly f = random_ideal_element(rng, *p, 4);
    if (f.is_zero()) continue;
    auto v = ideal_membership_bounded(p, f, 4);
    REQUIRE(v.member);
    CHECK(reconstruct(*p, v.witness) == f);
    CHECK(witness_degree(*p, v.witness) <= 4);
  }
}

TEST_CASE("tensor and opposite presentations") {
  auto x = make_presentation("X", make_alphabet({"x"}), {});
  auto t = tensor_presentation(x, x);
  CHECK(t->alphabet()->names() == std::vector<std::string>{"x", "x'"});
  REQUIRE(t->relations().size() == 1);
  CHECK(t->relations()[0].str() == "-x'*x + x*x'");

  auto p = xy_minus_one();
  auto op = opposite_presentation(p);
  CHECK(op->relations()[0].str() == "y*x - 1");
  CHECK(opposite_presentation(op)->relations() == p->relations());
}

TEST_CASE("tensor dimensions are the convolution at low degree") {
  auto p = xy_minus_one(), q = small_commutative();
  auto t = tensor_presentation(p, q);
  auto dp = quotient_dim_bounded(p, 2), dq = quotient_dim_bounded(q, 2);
  auto dt = quotient_dim_bounded(t, 2);
  CHECK(dt == oracle::dense_quotient_dims(*t, 2));
  // graded pieces convolve
  auto graded = [](const std::vector<std::uint64_t>& c) {
    std::vector<std::uint64_t> g(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) g[k] = c[k] - (k ? c[k - 1] : 0);
    return g;
  };
  auto gp = graded(dp), gq = graded(dq), gt = graded(dt);
  for (std::size_t k = 0; k < gt.size(); ++k) {
    std::uint64_t conv = 0;
    for (std::size_t i = 0; i <= k; ++i) conv += gp[i] * gq[k - i];
    CHECK(gt[k] == conv);
  }
}

TEST_CASE("tensor-aware membership certifies ideal elements (property)") {
  std::mt19937 rng(8);
  auto t = tensor_presentation(small_commutative(), xy_minus_one());
  for (int trial = 0; trial < 15; ++trial) {
    NcPoly f = random_ideal_element(rng, *t, 4);
    if (f.is_zero()) continue;
    auto v = ideal_membership_bounded(t, f, 4);
    REQUIRE(v.member);
    CHECK(reconstruct(*t, v.witness) == f);
    CHECK(witness_degree(*t, v.witness) <= 4);
  }
  auto s = shuffle_normal_form(*t, word(t->alphabet(), {2, 0, 3, 1}));
  CHECK(s.shuffled == word(t->alphabet(), {0, 1, 2, 3}));
  CHECK(reconstruct(*t, s.witness) + s.shuffled == word(t->alphabet(), {2, 0, 3, 1}));
}

TEST_CASE("morphisms: identity, anti-morphism, composition") {
  auto p = xy_minus_one();
  const auto& a = p->alphabet();
  MorphismSpec id{"id", p, p, {word(a, {0}), word(a, {1})}, Variance::Morphism};
  CHECK(certify_morphism(id, 2).certified);
  // x -> y, y -> x reversing products maps xy - 1 to xy - 1
  MorphismSpec swap{"swap", p, p, {word(a, {1}), word(a, {0})}, Variance::AntiMorphism};
  CHECK(apply_morphism(swap, p->relations()[0]) == p->relations()[0]);
  CHECK(certify_morphism(swap, 2).certified);
  // x -> y as a morphism sends xy - 1 to yx - 1, not in the ideal at low degree
  MorphismSpec bad{"bad", p, p, {word(a, {1}), word(a, {0})}, Variance::Morphism};
  CHECK_FALSE(certify_morphism(bad, 3).certified);
  auto twice = compose(swap, swap);
  CHECK(twice.variance == Variance::Morphism);
  CHECK(twice.images == id.images);
  // counit-style map to the ground field
  auto k = scalar_presentation();
  MorphismSpec eps{"eps", p, k, {NcPoly::constant(k->alphabet(), Scalar(2)),
                                 NcPoly::constant(k->alphabet(), Scalar(mpq_class(1, 2)))},
                   Variance::Morphism};
  CHECK(certify_morphism(eps, 2).certified);
}
