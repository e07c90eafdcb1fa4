#pragma once

// Words and noncommutative polynomials over a finite ordered alphabet.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bigalois/scalar.hpp"

namespace bigalois {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Named generators; the letter order is the order of construction.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter l) const { return names_.at(l); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Letter> find(const std::string& name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Letter> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);

/// Letters "prefix[i,j]" for 1 <= i <= rows, 1 <= j <= cols in lexicographic
/// order of (i, j).
std::vector<std::string> matrix_letter_names(const std::string& prefix, std::size_t rows,
                                             std::size_t cols);

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

/// Degree-lexicographic order: shorter words first, equal lengths compared
/// letter by letter.
std::strong_ordering compare_words(const Word& u, const Word& v);

/// compare_words with both words validated against `alphabet`.
std::strong_ordering compare_words(const Alphabet& alphabet, const Word& u, const Word& v);

struct DegLex {
  bool operator()(const Word& u, const Word& v) const { return compare_words(u, v) < 0; }
};

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);
Word reversed(const Word& w);
/// Position of the first occurrence of `factor` in `w` at or after `from`.
std::optional<std::size_t> find_factor(const Word& w, const Word& factor, std::size_t from = 0);

/// Finitely supported scalar combination of words, stored without zero
/// coefficients in deglex order.
class NcPoly {
 public:
  using Terms = std::map<Word, Scalar, DegLex>;

  explicit NcPoly(AlphabetPtr alphabet);

  static NcPoly constant(AlphabetPtr alphabet, const Scalar& c);
  static NcPoly letter(AlphabetPtr alphabet, Letter l);
  static NcPoly monomial(AlphabetPtr alphabet, Word w, const Scalar& c = Scalar(1));

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Length of the longest word; -1 for the zero polynomial.
  int degree() const;

  /// Largest word under deglex with its coefficient; throws on zero.
  std::pair<const Word&, const Scalar&> leading_term() const;
  Scalar coefficient(const Word& w) const;
  std::optional<Scalar> as_constant() const;

  /// this += c * w
  void add_term(const Word& w, const Scalar& c);
  /// this += c * other
  void add_scaled(const Scalar& c, const NcPoly& other);
  /// this += c * left * other * right
  void add_sandwich(const Scalar& c, const Word& left, const NcPoly& other, const Word& right);
  void erase(const Word& w) { terms_.erase(w); }

  NcPoly reversed() const;
  /// Same polynomial over another alphabet with letters renumbered by `map`.
  NcPoly relabeled(const AlphabetPtr& alphabet, const std::vector<Letter>& map) const;

  NcPoly operator-() const;
  NcPoly& operator+=(const NcPoly& other);
  NcPoly& operator-=(const NcPoly& other);
  NcPoly& operator*=(const Scalar& s);

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(const Scalar& s, NcPoly a) { return a *= s; }
  friend bool operator==(const NcPoly& a, const NcPoly& b);

  /// Rendering such as "2*z[1,1]*z[2,1] - 1/2".
  std::string str() const;

 private:
  void check_alphabet(const NcPoly& other) const;

  AlphabetPtr alphabet_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const NcPoly& p);

/// Product of the two polynomials; alias of operator* under the operation name.
NcPoly poly_multiply(const NcPoly& f, const NcPoly& g);

std::string format_word(const Alphabet& alphabet, const Word& w);

}  // namespace bigalois
