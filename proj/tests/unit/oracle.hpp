#pragma once

// Brute-force reference computations used to cross-check the engines.

#include <map>
#include <vector>

#include "bigalois/fpalg.hpp"

namespace oracle {

using namespace bigalois;

inline std::vector<Word> all_words(std::size_t sigma, int max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (Letter l = 0; l < sigma; ++l) {
        Word x = w;
        x.push_back(l);
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = next;
  }
  return out;
}

/// Rank of a list of polynomials by dense Gauss-Jordan elimination on the
/// coefficient matrix (columns indexed by words as listed).
inline std::size_t dense_rank(const std::vector<NcPoly>& polys) {
  std::map<Word, std::size_t> col;
  for (const auto& p : polys)
    for (const auto& [w, c] : p.terms()) col.emplace(w, col.size());
  std::vector<std::vector<Scalar>> m;
  for (const auto& p : polys) {
    std::vector<Scalar> row(col.size(), Scalar(0));
    for (const auto& [w, c] : p.terms()) row[col[w]] = c;
    m.push_back(row);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < col.size() && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    Scalar inv = m[rank][c].inverse();
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Scalar f = m[r][c] * inv;
      for (std::size_t j = c; j < col.size(); ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// All products u*r*v with total degree <= d.
inline std::vector<NcPoly> ideal_spanning_set(const Presentation& p, int d) {
  std::vector<NcPoly> out;
  const auto words = all_words(p.alphabet()->size(), d);
  for (const auto& r : p.relations())
    for (const auto& u : words)
      for (const auto& v : words) {
        if (static_cast<int>(u.size() + v.size()) + r.degree() > d) continue;
        NcPoly x(p.alphabet());
        x.add_sandwich(Scalar(1), u, r, v);
        out.push_back(x);
      }
  return out;
}

/// Cumulative quotient dimensions computed densely.
inline std::vector<std::uint64_t> dense_quotient_dims(const Presentation& p, int d) {
  std::vector<std::uint64_t> out;
  for (int k = 0; k <= d; ++k) {
    const auto words = all_words(p.alphabet()->size(), k);
    out.push_back(words.size() - dense_rank(ideal_spanning_set(p, k)));
  }
  return out;
}

}  // namespace oracle
