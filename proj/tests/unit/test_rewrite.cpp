#include <random>
#include <set>

#include "bigalois/rewrite.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace bigalois;

namespace {

NcPoly word(const AlphabetPtr& a, Word w, const Scalar& c = Scalar(1)) {
  return NcPoly::monomial(a, std::move(w), c);
}

// Commutative polynomials in x < y < z as a rewriting system.
RewriteSystem commutative3(const AlphabetPtr& a) {
  return RewriteSystem(a, {{{1, 0}, word(a, {0, 1})},
                           {{2, 0}, word(a, {0, 2})},
                           {{2, 1}, word(a, {1, 2})}});
}

std::vector<std::uint64_t> brute_force_counts(const RewriteSystem& s, int d) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(d) + 1, 0);
  for (const auto& w : oracle::all_words(s.alphabet()->size(), d)) {
    bool irreducible = true;
    for (const auto& r : s.rules()) irreducible = irreducible && !find_factor(w, r.lhs);
    if (irreducible) ++out[w.size()];
  }
  return out;
}

}  // namespace

TEST_CASE("rules must decrease") {
  auto a = make_alphabet({"x", "y"});
  CHECK_THROWS_AS(RewriteSystem(a, {{{0, 1}, word(a, {1, 0})}}), PreconditionError);
  CHECK_THROWS_AS(RewriteSystem(a, {{{1}, word(a, {0}) }, {{1}, word(a, {})}}), PreconditionError);
  CHECK_NOTHROW(RewriteSystem(a, {{{1, 0}, word(a, {0, 1})}}));
}

TEST_CASE("reduce: fixpoint, single step, commutative normal form") {
  auto a = make_alphabet({"x", "y", "z"});
  auto s = commutative3(a);
  NcPoly f = word(a, {0, 1, 2}) + word(a, {0});
  auto r0 = reduce(f, s);
  CHECK(r0.normal_form == f);
  CHECK(r0.steps == 0);
  auto r1 = reduce(word(a, {1, 0}), s);
  CHECK(r1.normal_form == word(a, {0, 1}));
  CHECK(r1.steps == 1);
  // zyx -> xyz
  auto r3 = reduce(word(a, {2, 1, 0}, Scalar(5)), s, true);
  CHECK(r3.normal_form == word(a, {0, 1, 2}, Scalar(5)));
  CHECK(r3.steps == 3);
  CHECK(r3.trace.size() == 3);
}

TEST_CASE("ambiguities and confluence of the commutative system") {
  auto a = make_alphabet({"x", "y", "z"});
  auto s = commutative3(a);
  auto amb = find_ambiguities(s);
  REQUIRE(amb.size() == 1);
  CHECK(amb[0].witness == Word{2, 1, 0});
  auto cert = certify_confluence(s);
  CHECK(cert.confluent);
  CHECK(cert.overlaps() == 1);
  CHECK(cert.inclusions() == 0);
  // commutative monomials of degree k in 3 variables: (k+1)(k+2)/2
  CHECK(count_irreducible(s, 4) == std::vector<std::uint64_t>{1, 3, 6, 10, 15});
}

TEST_CASE("broken constants give a counterexample") {
  auto a = make_alphabet({"x", "y"});
  RewriteSystem s(a, {{{0, 1}, word(a, {}, Scalar(1))}, {{1, 0}, word(a, {}, Scalar(2))}});
  auto cert = certify_confluence(s);
  CHECK_FALSE(cert.confluent);
  REQUIRE(cert.counterexample);
  const auto& res = cert.resolutions[*cert.counterexample];
  CHECK_FALSE(res.resolved);
  CHECK_FALSE(res.route_a.normal_form == res.route_b.normal_form);
}

TEST_CASE("two rules whose left sides overlap are not vacuously confluent") {
  // z11*z12 -> 0 and z12*z11 -> 1 overlap in z11*z12*z11.
  auto a = make_alphabet({"z[1,1]", "z[1,2]"});
  RewriteSystem s(a, {{{0, 1}, NcPoly(a)}, {{1, 0}, word(a, {}, Scalar(1))}});
  auto cert = certify_confluence(s);
  CHECK(cert.overlaps() == 2);
  CHECK_FALSE(cert.confluent);
  // a single rule without self-overlap has no ambiguities
  auto b = make_alphabet({"z[1,1]", "z[2,1]"});
  RewriteSystem single(b, {{{1, 0}, word(b, {0, 1})}});
  CHECK(find_ambiguities(single).empty());
}

TEST_CASE("inclusion ambiguities are reported") {
  auto a = make_alphabet({"x", "y"});
  RewriteSystem s(a, {{{1, 1, 0}, word(a, {0})}, {{1, 0}, word(a, {0, 1})}});
  auto amb = find_ambiguities(s);
  auto inclusions = std::count_if(amb.begin(), amb.end(), [](const Ambiguity& x) {
    return x.kind == AmbiguityKind::Inclusion;
  });
  CHECK(inclusions == 1);
}

TEST_CASE("count_irreducible matches brute force (property)") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t sigma = 2 + rng() % 3;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < sigma; ++i) names.push_back("x" + std::to_string(i));
    auto a = make_alphabet(names);
    std::vector<Rule> rules;
    std::set<Word> used;
    for (int k = 0; k < 3; ++k) {
      Word lhs;
      for (std::size_t len = 1 + rng() % 3; len > 0; --len) lhs.push_back(rng() % sigma);
      if (!used.insert(lhs).second) continue;
      rules.push_back({lhs, NcPoly(a)});
    }
    RewriteSystem s(a, rules);
    CHECK(count_irreducible(s, 5) == brute_force_counts(s, 5));
    auto words = irreducible_words(s, 5);
    auto counts = count_irreducible(s, 5);
    for (std::size_t k = 0; k < words.size(); ++k) {
      CHECK(words[k].size() == counts[k]);
      for (std::size_t i = 1; i < words[k].size(); ++i)
        CHECK(compare_words(words[k][i - 1], words[k][i]) < 0);
    }
  }
  auto a = make_alphabet({"a", "b", "c", "d"});
  CHECK(count_irreducible(RewriteSystem(a, {}), 2) == std::vector<std::uint64_t>{1, 4, 16});
}

TEST_CASE("normal forms do not depend on the strategy for a confluent system (property)") {
  auto a = make_alphabet({"x", "y", "z"});
  auto s = commutative3(a);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    NcPoly f(a);
    for (int k = 0; k < 4; ++k) {
      Word w;
      for (int len = static_cast<int>(rng() % 5); len > 0; --len) w.push_back(rng() % 3);
      f.add_term(w, Scalar(static_cast<long>(rng() % 7) - 3));
    }
    // random strategy: any reducible word, any match
    NcPoly g = f;
    while (true) {
      std::vector<std::pair<Word, Match>> options;
      for (const auto& [w, c] : g.terms())
        for (const auto& m : s.matches(w)) options.emplace_back(w, m);
      if (options.empty()) break;
      auto& [w, m] = options[rng() % options.size()];
      s.apply(g, w, m);
    }
    CHECK(g == reduce(f, s).normal_form);
  }
}
