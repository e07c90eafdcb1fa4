#include "bigalois/freealg.hpp"

#include <algorithm>
#include <ostream>

namespace bigalois {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (Letter i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw PreconditionError("duplicate letter name '" + names_[i] + "'");
    }
  }
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

std::vector<std::string> matrix_letter_names(const std::string& prefix, std::size_t rows,
                                             std::size_t cols) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= rows; ++i)
    for (std::size_t j = 1; j <= cols; ++j)
      out.push_back(prefix + "[" + std::to_string(i) + "," + std::to_string(j) + "]");
  return out;
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

std::strong_ordering compare_words(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() <=> v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return u[i] <=> v[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_words(const Alphabet& alphabet, const Word& u, const Word& v) {
  auto valid = [&](const Word& w) {
    return std::all_of(w.begin(), w.end(), [&](Letter l) { return l < alphabet.size(); });
  };
  if (!valid(u) || !valid(v)) throw AlphabetMismatch("word uses letters outside the alphabet");
  return compare_words(u, v);
}

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word concat(const Word& a, const Word& b, const Word& c) {
  Word w;
  w.reserve(a.size() + b.size() + c.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

std::optional<std::size_t> find_factor(const Word& w, const Word& factor, std::size_t from) {
  if (factor.size() > w.size()) return std::nullopt;
  for (std::size_t p = from; p + factor.size() <= w.size(); ++p) {
    if (std::equal(factor.begin(), factor.end(), w.begin() + static_cast<long>(p))) return p;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- NcPoly

NcPoly::NcPoly(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw PreconditionError("polynomial needs an alphabet");
}

NcPoly NcPoly::constant(AlphabetPtr alphabet, const Scalar& c) {
  return monomial(std::move(alphabet), {}, c);
}

NcPoly NcPoly::letter(AlphabetPtr alphabet, Letter l) {
  if (l >= alphabet->size()) throw AlphabetMismatch("letter index out of range");
  return monomial(std::move(alphabet), {l}, Scalar(1));
}

NcPoly NcPoly::monomial(AlphabetPtr alphabet, Word w, const Scalar& c) {
  NcPoly p(std::move(alphabet));
  p.add_term(w, c);
  return p;
}

int NcPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.size());
}

std::pair<const Word&, const Scalar&> NcPoly::leading_term() const {
  if (terms_.empty()) throw PreconditionError("leading term of the zero polynomial");
  const auto& [w, c] = *terms_.rbegin();
  return {w, c};
}

Scalar NcPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<Scalar> NcPoly::as_constant() const {
  if (terms_.empty()) return Scalar(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

void NcPoly::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void NcPoly::add_scaled(const Scalar& c, const NcPoly& other) {
  check_alphabet(other);
  if (c.is_zero()) return;
  for (const auto& [w, a] : other.terms_) add_term(w, c * a);
}

void NcPoly::add_sandwich(const Scalar& c, const Word& left, const NcPoly& other,
                          const Word& right) {
  check_alphabet(other);
  if (c.is_zero()) return;
  for (const auto& [w, a] : other.terms_) add_term(concat(left, w, right), c * a);
}

NcPoly NcPoly::reversed() const {
  NcPoly r(alphabet_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(bigalois::reversed(w), c);
  return r;
}

NcPoly NcPoly::relabeled(const AlphabetPtr& alphabet, const std::vector<Letter>& map) const {
  NcPoly r(alphabet);
  for (const auto& [w, c] : terms_) {
    Word m;
    m.reserve(w.size());
    for (Letter l : w) m.push_back(map.at(l));
    r.add_term(m, c);
  }
  return r;
}

NcPoly NcPoly::operator-() const {
  NcPoly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

NcPoly& NcPoly::operator+=(const NcPoly& other) {
  check_alphabet(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& other) {
  check_alphabet(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NcPoly& NcPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  a.check_alphabet(b);
  NcPoly r(a.alphabet_);
  for (const auto& [u, c] : a.terms_)
    for (const auto& [v, d] : b.terms_) r.add_term(concat(u, v), c * d);
  return r;
}

bool operator==(const NcPoly& a, const NcPoly& b) {
  if (!same_alphabet(a.alphabet_, b.alphabet_)) return false;
  return a.terms_ == b.terms_;
}

NcPoly poly_multiply(const NcPoly& f, const NcPoly& g) { return f * g; }

void NcPoly::check_alphabet(const NcPoly& other) const {
  if (!same_alphabet(alphabet_, other.alphabet_)) {
    throw AlphabetMismatch("polynomials over different alphabets");
  }
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += alphabet.name(w[i]);
  }
  return out;
}

std::string NcPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    const std::string word = format_word(*alphabet_, w);
    bool negative = false;
    std::string coeff;
    if (auto r = c.as_rational()) {
      negative = sgn(*r) < 0;
      mpq_class mag = abs(*r);
      if (mag != 1 || word.empty()) coeff = mag.get_str();
    } else {
      coeff = "(" + c.str() + ")";
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coeff;
    if (!coeff.empty() && !word.empty()) out += "*";
    out += word;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const NcPoly& p) { return os << p.str(); }

}  // namespace bigalois
