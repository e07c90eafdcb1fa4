#pragma once

// Reduction systems on the free algebra and the diamond-lemma machinery:
// normal forms, ambiguities, confluence certificates, irreducible words.

#include <cstdint>
#include <optional>
#include <vector>

#include "bigalois/freealg.hpp"

namespace bigalois {

/// lhs -> rhs with every word of rhs strictly smaller than lhs.
struct Rule {
  Word lhs;
  NcPoly rhs;
};

/// One rule application: the word `word` had rule `rule` applied at `position`.
struct RewriteStep {
  std::size_t rule = 0;
  std::size_t position = 0;
  Word word;
};

struct Match {
  std::size_t position = 0;
  std::size_t rule = 0;
};

class RewriteSystem {
 public:
  /// Validates the order invariant and distinct left-hand sides.
  RewriteSystem(AlphabetPtr alphabet, std::vector<Rule> rules);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  std::size_t max_lhs_length() const { return max_lhs_; }

  /// Leftmost reducible position of `w`, first matching rule there.
  std::optional<Match> match(const Word& w) const;
  /// All (position, rule) pairs at which `w` is reducible, by position then rule.
  std::vector<Match> matches(const Word& w) const;
  bool is_irreducible(const Word& w) const { return !match(w).has_value(); }

  /// Replaces the occurrence of rule `m.rule` at `m.position` in the word `w`
  /// (with coefficient c in `f`) by the rule's right side.
  void apply(NcPoly& f, const Word& w, const Match& m) const;

  std::string rule_str(std::size_t index) const;

 private:
  AlphabetPtr alphabet_;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_first_letter_;
  std::size_t max_lhs_ = 0;
};

struct Reduction {
  NcPoly normal_form;
  std::size_t steps = 0;
  std::vector<RewriteStep> trace;  ///< filled only when requested
};

/// Normal form under the fixed strategy: deglex-largest reducible word,
/// leftmost position, first rule.
Reduction reduce(const NcPoly& f, const RewriteSystem& system, bool record_trace = false);

enum class AmbiguityKind { Overlap, Inclusion };

struct Ambiguity {
  AmbiguityKind kind = AmbiguityKind::Overlap;
  std::size_t rule_a = 0;
  std::size_t rule_b = 0;
  Word witness;
  std::size_t position_a = 0;
  std::size_t position_b = 0;
};

/// Overlaps (a proper nonempty suffix of lhs_a equal to a prefix of lhs_b,
/// a == b allowed) and inclusions (lhs_b a factor of lhs_a, a != b), ordered
/// by kind, then rule_a, rule_b, position_b.
std::vector<Ambiguity> find_ambiguities(const RewriteSystem& system);

struct AmbiguityResolution {
  Ambiguity ambiguity;
  Reduction route_a;  ///< rule_a first, then the fixed strategy
  Reduction route_b;
  bool resolved = false;
};

struct ConfluenceCertificate {
  std::vector<AmbiguityResolution> resolutions;
  bool confluent = true;
  std::optional<std::size_t> counterexample;  ///< index of the first unresolved ambiguity

  std::size_t overlaps() const;
  std::size_t inclusions() const;
};

ConfluenceCertificate certify_confluence(const RewriteSystem& system);

/// Number of irreducible words of each length 0..d.
std::vector<std::uint64_t> count_irreducible(const RewriteSystem& system, int d);

/// The irreducible words of each length 0..d in deglex order; throws
/// ResourceCapExceeded beyond `cap` words in total.
std::vector<std::vector<Word>> irreducible_words(const RewriteSystem& system, int d,
                                                 std::size_t cap = 1'000'000);

}  // namespace bigalois
