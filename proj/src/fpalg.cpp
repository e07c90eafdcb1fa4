#include "bigalois/fpalg.hpp"

#include <algorithm>
#include <functional>

namespace bigalois {

Presentation::Presentation(std::string name, AlphabetPtr alphabet, std::vector<NcPoly> relations)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), relations_(std::move(relations)) {
  if (!alphabet_) throw PreconditionError("presentation needs an alphabet");
  for (const auto& r : relations_) {
    if (!same_alphabet(r.alphabet(), alphabet_)) {
      throw AlphabetMismatch("relation over a different alphabet");
    }
    if (r.is_zero()) throw PreconditionError("presentation relations must be nonzero");
  }
}

int Presentation::max_relation_degree() const {
  int d = 0;
  for (const auto& r : relations_) d = std::max(d, r.degree());
  return d;
}

PresentationPtr make_presentation(std::string name, AlphabetPtr alphabet,
                                  std::vector<NcPoly> relations) {
  return std::make_shared<const Presentation>(std::move(name), std::move(alphabet),
                                              std::move(relations));
}

PresentationPtr scalar_presentation() {
  static const PresentationPtr k = make_presentation("k", make_alphabet({}), {});
  return k;
}

NcPoly reconstruct(const Presentation& p, const std::vector<WitnessTerm>& witness) {
  NcPoly out(p.alphabet());
  for (const auto& t : witness) {
    out.add_sandwich(t.coefficient, t.left, p.relations().at(t.relation), t.right);
  }
  return out;
}

int witness_degree(const Presentation& p, const std::vector<WitnessTerm>& witness) {
  int d = -1;
  for (const auto& t : witness) {
    d = std::max(d, static_cast<int>(t.left.size() + t.right.size()) +
                        p.relations().at(t.relation).degree());
  }
  return d;
}

namespace {

void for_each_word(std::size_t sigma, std::size_t length,
                   const std::function<void(const Word&)>& fn) {
  Word w(length, 0);
  while (true) {
    fn(w);
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++w[i] < sigma) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > UINT64_MAX / b) return UINT64_MAX;
    r *= b;
  }
  return r;
}

Word shifted(const Word& w, Letter offset) {
  Word out = w;
  for (auto& l : out) l += offset;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- echelon

// Linear algebra runs over the rationals: a relation r over a field K of
// degree D spans the same K-space as the rational span of b_k * r over a basis
// b_k of K, and a column is a pair (word, coordinate).
struct MembershipEngine::Echelon {
  /// Coefficients on echelon rows, per coordinate block of the query.
  struct Combination {
    std::vector<std::pair<Scalar, std::map<std::size_t, mpq_class>>> blocks;
  };

  struct Entry {
    std::uint64_t col;
    mpq_class c;
  };
  using Sparse = std::vector<Entry>;  ///< ascending columns

  struct Generator {
    Word left;
    std::size_t relation;
    Word right;
    std::size_t basis;
  };
  /// row = scale * (generator - sum c_k * rows[j_k])
  struct Row {
    Sparse poly;
    std::size_t generator;
    mpq_class scale;
    std::vector<std::pair<std::size_t, mpq_class>> history;
    int level;
  };

  PresentationPtr p;
  ResourceLimits limits;
  TowerPtr tower = Tower::rationals();
  std::size_t dim = 1;
  std::size_t sigma = 0;
  int built = -1;
  std::vector<std::uint64_t> offset{0, 1};  ///< first code of each word length
  std::vector<Generator> gens;
  std::vector<Row> rows;
  std::vector<std::int64_t> pivot;  ///< row index per column, -1 if none

  void init(PresentationPtr presentation, ResourceLimits l) {
    p = std::move(presentation);
    limits = l;
    sigma = p->alphabet()->size();
    for (const auto& r : p->relations())
      for (const auto& [w, c] : r.terms()) tower = join_towers(tower, c.tower());
    dim = tower->dimension();
  }

  void extend_codes(int k) {
    while (static_cast<int>(offset.size()) < k + 2) {
      const std::uint64_t len = offset.size() - 1;
      const std::uint64_t count = ipow(sigma, static_cast<int>(len));
      if (count == UINT64_MAX || offset.back() > UINT64_MAX / (2 * dim) - count) {
        throw ResourceCapExceeded("word codes overflow for '" + p->name() + "'");
      }
      offset.push_back(offset.back() + count);
    }
  }

  std::uint64_t code(const Word& w) const {
    std::uint64_t c = 0;
    for (Letter l : w) c = c * sigma + l;
    return offset.at(w.size()) + c;
  }

  Word decode(std::uint64_t c) const {
    std::size_t len = 0;
    while (offset[len + 1] <= c) ++len;
    c -= offset[len];
    Word w(len);
    for (std::size_t i = len; i-- > 0;) {
      w[i] = static_cast<Letter>(c % sigma);
      c /= sigma;
    }
    return w;
  }

  /// Coordinates [from, from + dim) of each coefficient of f, which lives in `t`.
  Sparse encode(const NcPoly& f, const TowerPtr& t, std::size_t from) {
    extend_codes(std::max(f.degree(), 0));
    Sparse out;
    out.reserve(f.size() * dim);
    for (const auto& [w, c] : f.terms()) {
      const Scalar x = c.lifted(t);
      const std::uint64_t base = code(w) * dim;
      for (std::size_t k = 0; k < dim; ++k) {
        const mpq_class& v = x.coords()[from + k];
        if (sgn(v) != 0) out.push_back({base + k, v});
      }
    }
    return out;
  }

  NcPoly to_poly(const Sparse& s) const {
    NcPoly out(p->alphabet());
    std::size_t i = 0;
    while (i < s.size()) {
      const std::uint64_t word = s[i].col / dim;
      std::vector<mpq_class> coords(dim);
      for (; i < s.size() && s[i].col / dim == word; ++i) coords[s[i].col % dim] = s[i].c;
      out.add_term(decode(word), Scalar(tower, std::move(coords)).trimmed());
    }
    return out;
  }

  const Row* pivot_row(std::uint64_t col, int bound) const {
    if (col >= pivot.size() || pivot[col] < 0) return nullptr;
    const Row& r = rows[static_cast<std::size_t>(pivot[col])];
    return r.level <= bound ? &r : nullptr;
  }

  Scalar basis(std::size_t k) const {
    std::vector<mpq_class> e(dim);
    e[k] = 1;
    return Scalar(tower, std::move(e));
  }

  void grow_to(int k) {
    while (built < k) {
      const int level = ++built;
      extend_codes(level);
      pivot.resize(offset[static_cast<std::size_t>(level) + 1] * dim, -1);
      std::vector<std::pair<Sparse, std::size_t>> fresh;
      for (std::size_t ri = 0; ri < p->relations().size(); ++ri) {
        const NcPoly& rel = p->relations()[ri];
        const int slack = level - rel.degree();
        if (slack < 0) continue;
        if (gens.size() + dim * static_cast<std::size_t>(slack + 1) * ipow(sigma, slack) >
            limits.max_rows) {
          throw ResourceCapExceeded("bounded ideal for '" + p->name() + "' at degree " +
                                    std::to_string(level) + " exceeds " +
                                    std::to_string(limits.max_rows) + " generators");
        }
        std::vector<NcPoly> scaled;
        for (std::size_t b = 0; b < dim; ++b) {
          scaled.push_back(rel);
          scaled.back() *= basis(b);
        }
        for (int lu = 0; lu <= slack; ++lu) {
          for_each_word(sigma, static_cast<std::size_t>(lu), [&](const Word& u) {
            for_each_word(sigma, static_cast<std::size_t>(slack - lu), [&](const Word& v) {
              for (std::size_t b = 0; b < dim; ++b) {
                gens.push_back({u, ri, v, b});
                NcPoly row(p->alphabet());
                row.add_sandwich(Scalar(1), u, scaled[b], v);
                fresh.push_back({encode(row, tower, 0), gens.size() - 1});
              }
            });
          });
        }
      }
      // Small leading words first keeps the tails short.
      std::stable_sort(fresh.begin(), fresh.end(), [](const auto& a, const auto& b) {
        return a.first.back().col < b.first.back().col;
      });
      for (auto& [row, g] : fresh) insert(std::move(row), g, level);
    }
  }

  /// Adds a generator fully reduced against the current rows.
  void insert(Sparse row, std::size_t generator, int level) {
    std::vector<std::pair<std::size_t, mpq_class>> history;
    row = eliminate(std::move(row), level, true,
                    [&](std::size_t idx, const mpq_class& c) { history.emplace_back(idx, c); });
    if (row.empty()) return;
    mpq_class inv = 1 / row.back().c;
    for (auto& e : row) e.c *= inv;
    pivot[row.back().col] = static_cast<std::int64_t>(rows.size());
    rows.push_back({std::move(row), generator, std::move(inv), std::move(history), level});
  }

  std::vector<mpq_class> work;  ///< dense scratch row, all zero between calls

  /// Subtracts pivot rows of level <= bound from the top down, reporting each
  /// (row, factor). Stops at the first free column unless `full`.
  template <class Report>
  Sparse eliminate(Sparse row, int bound, bool full, Report&& report) {
    if (row.empty()) return row;
    std::uint64_t low = row.front().col;
    const std::uint64_t top = row.back().col;
    if (work.size() <= top) work.resize(std::max<std::size_t>(pivot.size(), top + 1));
    for (auto& e : row) work[e.col].swap(e.c);
    Sparse kept;
    mpq_class t;
    for (std::uint64_t col = top + 1; col-- > low;) {
      mpq_class& x = work[col];
      if (sgn(x) == 0) continue;
      const Row* pr = pivot_row(col, bound);
      if (!pr) {
        kept.push_back({col, 0});
        kept.back().c.swap(x);
        if (!full) break;
        continue;
      }
      const mpq_class c = x;
      for (const auto& e : pr->poly) {
        t = c * e.c;
        work[e.col] -= t;
      }
      low = std::min(low, pr->poly.front().col);
      report(static_cast<std::size_t>(pivot[col]), c);
    }
    if (!full && !kept.empty()) {
      // move back whatever lies below the first free column
      for (std::uint64_t col = kept.back().col; col-- > low;) {
        if (sgn(work[col]) == 0) continue;
        kept.push_back({col, 0});
        kept.back().c.swap(work[col]);
      }
    }
    std::reverse(kept.begin(), kept.end());
    return kept;
  }

  Sparse reduce_sparse(Sparse row, int bound, bool full, std::map<std::size_t, mpq_class>& combo) {
    return eliminate(std::move(row), bound, full,
                     [&](std::size_t idx, const mpq_class& c) { combo[idx] += c; });
  }

  /// Eliminates pivot columns of `f` using rows of level <= bound: only the
  /// leading ones, or all of them when `full`. `combo` receives the rows used,
  /// so f = remainder + (expansion of combo).
  NcPoly reduce(const NcPoly& f, int bound, bool full, Combination& combo) {
    TowerPtr t = tower;
    for (const auto& [w, c] : f.terms()) t = join_towers(t, c.tower());
    NcPoly rest(p->alphabet());
    const std::size_t blocks = t->dimension() / dim;
    for (std::size_t j = 0; j < blocks; ++j) {
      std::vector<mpq_class> m(t->dimension());
      m[j * dim] = 1;
      const Scalar mult = Scalar(t, std::move(m)).trimmed();
      auto& part = combo.blocks.emplace_back(mult, std::map<std::size_t, mpq_class>{}).second;
      Sparse r = reduce_sparse(encode(f, t, j * dim), bound, full, part);
      if (!r.empty()) rest.add_scaled(mult, to_poly(r));
    }
    return rest;
  }

  /// Expands a combination of rows into generators u * r * v.
  std::vector<WitnessTerm> witness(const Combination& combo) const {
    std::map<std::pair<std::size_t, std::size_t>, Scalar> by_generator;
    for (const auto& [mult, part] : combo.blocks) {
      std::map<std::size_t, mpq_class> pending = part;
      std::map<std::size_t, mpq_class> coords;  // generator index -> coefficient
      while (!pending.empty()) {
        auto top = std::prev(pending.end());
        const std::size_t idx = top->first;
        const mpq_class x = top->second;
        pending.erase(top);
        if (sgn(x) == 0) continue;
        const Row& r = rows[idx];
        const mpq_class xs = x * r.scale;
        coords[r.generator] += xs;
        for (const auto& [j, c] : r.history) pending[j] -= xs * c;
      }
      for (const auto& [g, x] : coords) {
        if (sgn(x) == 0) continue;
        const Generator& gen = gens[g];
        const Scalar c = mult * (basis(gen.basis) * Scalar(x));
        const std::size_t key = g - gen.basis;
        auto [it, fresh] = by_generator.try_emplace({key, 0}, c);
        if (!fresh) it->second += c;
      }
    }
    std::vector<WitnessTerm> out;
    for (const auto& [key, c] : by_generator) {
      if (c.is_zero()) continue;
      const Generator& gen = gens[key.first];
      out.push_back({gen.left, gen.relation, gen.right, c.trimmed()});
    }
    return out;
  }
};

MembershipEngine::MembershipEngine(PresentationPtr p, ResourceLimits limits)
    : p_(std::move(p)), limits_(limits), echelon_(std::make_unique<Echelon>()) {
  echelon_->init(p_, limits_);
}

MembershipEngine::~MembershipEngine() = default;

MembershipEngine& MembershipEngine::factor(int side) {
  auto& slot = side == 0 ? left_ : right_;
  if (!slot) {
    slot = std::make_unique<MembershipEngine>(side == 0 ? p_->tensor()->left : p_->tensor()->right,
                                              limits_);
  }
  return *slot;
}

std::vector<std::uint64_t> MembershipEngine::cumulative_dims(int d) {
  if (d < 0) throw PreconditionError("degree bound must be non-negative");
  echelon_->grow_to(d);
  const std::size_t sigma = p_->alphabet()->size();
  std::vector<std::uint64_t> pivots(static_cast<std::size_t>(d) + 1, 0);
  for (const auto& r : echelon_->rows) ++pivots[static_cast<std::size_t>(r.level)];
  for (auto& n : pivots) n /= echelon_->dim;
  std::vector<std::uint64_t> out;
  std::uint64_t words = 0, rank = 0;
  for (int k = 0; k <= d; ++k) {
    words += ipow(sigma, k);
    rank += pivots[static_cast<std::size_t>(k)];
    out.push_back(words - rank);
  }
  return out;
}

MembershipVerdict MembershipEngine::query_direct(const NcPoly& f, int d) {
  for (int k = std::max(f.degree(), 0); k <= d; ++k) {
    echelon_->grow_to(k);
    Echelon::Combination combo;
    NcPoly rest = echelon_->reduce(f, k, false, combo);
    if (rest.is_zero()) return {true, d, echelon_->witness(combo)};
  }
  return MembershipVerdict::unknown(d);
}

std::optional<std::vector<WitnessTerm>> MembershipEngine::query_tensor(const NcPoly& f, int d) {
  const auto& info = *p_->tensor();
  const Letter split = static_cast<Letter>(info.split);
  const std::size_t left_rels = info.left->relations().size();
  auto [shuffled, witness] = shuffle_normal_form(*p_, f);

  // Group by left part a: shuffled = sum_a a * F_a with F_a over the right factor.
  std::map<Word, NcPoly, DegLex> by_left;
  for (const auto& [w, c] : shuffled.terms()) {
    auto cut = std::find_if(w.begin(), w.end(), [&](Letter l) { return l >= split; });
    Word a(w.begin(), cut), b(cut, w.end());
    for (auto& l : b) l -= split;
    auto it = by_left.try_emplace(a, NcPoly(info.right->alphabet())).first;
    it->second.add_term(b, c);
  }

  MembershipEngine& right = factor(1);
  MembershipEngine& left = factor(0);
  std::map<Word, NcPoly, DegLex> by_right;
  for (auto& [a, fa] : by_left) {
    const int bound = d - static_cast<int>(a.size());
    right.echelon_->grow_to(bound);
    Echelon::Combination combo;
    NcPoly rem = right.echelon_->reduce(fa, bound, true, combo);
    for (auto& t : right.echelon_->witness(combo)) {
      witness.push_back({concat(a, shifted(t.left, split)), left_rels + t.relation,
                         shifted(t.right, split), t.coefficient});
    }
    for (const auto& [b, c] : rem.terms()) {
      auto it = by_right.try_emplace(b, NcPoly(info.left->alphabet())).first;
      it->second.add_term(a, c);
    }
  }
  for (const auto& [b, gb] : by_right) {
    if (gb.is_zero()) continue;
    MembershipVerdict v = left.query(gb, d - static_cast<int>(b.size()));
    if (!v.member) return std::nullopt;
    for (auto& t : v.witness) {
      witness.push_back({t.left, t.relation, concat(t.right, shifted(b, split)), t.coefficient});
    }
  }
  return witness;
}

MembershipVerdict MembershipEngine::query(const NcPoly& f, int d) {
  if (!same_alphabet(f.alphabet(), p_->alphabet())) {
    throw AlphabetMismatch("query polynomial is not over the presentation's alphabet");
  }
  if (f.degree() > d) throw PreconditionError("query degree exceeds the bound");
  if (f.is_zero()) return {true, d, {}};
  MembershipVerdict out = MembershipVerdict::unknown(d);
  if (p_->tensor()) {
    if (auto w = query_tensor(f, d)) out = {true, d, std::move(*w)};
  }
  if (!out.member) {
    try {
      out = query_direct(f, d);
    } catch (const ResourceCapExceeded&) {
      if (!p_->tensor()) throw;
    }
  }
  if (out.member && !(reconstruct(*p_, out.witness) == f)) {
    throw Error("internal error: membership witness does not reconstruct the query");
  }
  return out;
}

std::vector<std::uint64_t> quotient_dim_bounded(const PresentationPtr& p, int d,
                                                const ResourceLimits& limits) {
  return MembershipEngine(p, limits).cumulative_dims(d);
}

MembershipVerdict ideal_membership_bounded(const PresentationPtr& p, const NcPoly& f, int d,
                                           const ResourceLimits& limits) {
  return MembershipEngine(p, limits).query(f, d);
}

// ---------------------------------------------------------------- constructors

PresentationPtr tensor_presentation(const PresentationPtr& left, const PresentationPtr& right) {
  std::vector<std::string> names = left->alphabet()->names();
  for (std::string n : right->alphabet()->names()) {
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "'";
    names.push_back(std::move(n));
  }
  auto alphabet = make_alphabet(std::move(names));
  const Letter split = static_cast<Letter>(left->alphabet()->size());
  std::vector<Letter> lmap(split), rmap(right->alphabet()->size());
  for (Letter i = 0; i < lmap.size(); ++i) lmap[i] = i;
  for (Letter i = 0; i < rmap.size(); ++i) rmap[i] = split + i;

  std::vector<NcPoly> rels;
  for (const auto& r : left->relations()) rels.push_back(r.relabeled(alphabet, lmap));
  for (const auto& r : right->relations()) rels.push_back(r.relabeled(alphabet, rmap));
  for (Letter x = 0; x < lmap.size(); ++x) {
    for (Letter y : rmap) {
      NcPoly c(alphabet);
      c.add_term({x, y}, Scalar(1));
      c.add_term({y, x}, Scalar(-1));
      rels.push_back(std::move(c));
    }
  }
  auto p = std::make_shared<Presentation>(left->name() + " (x) " + right->name(), alphabet,
                                          std::move(rels));
  p->tensor_ = Presentation::TensorInfo{left, right, split};
  return p;
}

PresentationPtr opposite_presentation(const PresentationPtr& p) {
  std::vector<NcPoly> rels;
  for (const auto& r : p->relations()) rels.push_back(r.reversed());
  return make_presentation(p->name() + "^op", p->alphabet(), std::move(rels));
}

// ---------------------------------------------------------------- morphisms

NcPoly apply_morphism(const MorphismSpec& m, const NcPoly& f) {
  if (!same_alphabet(f.alphabet(), m.source->alphabet())) {
    throw AlphabetMismatch("polynomial is not over the morphism's source alphabet");
  }
  if (m.images.size() != m.source->alphabet()->size()) {
    throw PreconditionError("morphism '" + m.name + "' must give one image per source letter");
  }
  NcPoly out(m.target->alphabet());
  for (const auto& [w, c] : f.terms()) {
    NcPoly term = NcPoly::constant(m.target->alphabet(), c);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Letter l = m.variance == Variance::Morphism ? w[i] : w[w.size() - 1 - i];
      term = term * m.images[l];
    }
    out += term;
  }
  return out;
}

MorphismCertificate certify_morphism(const MorphismSpec& m, int bound,
                                     const ResourceLimits& limits) {
  if (bound < m.source->max_relation_degree()) {
    throw PreconditionError("bound is below the source relation degree");
  }
  MembershipEngine engine(m.target, limits);
  MorphismCertificate cert{m.name, true, bound, {}};
  for (std::size_t i = 0; i < m.source->relations().size(); ++i) {
    NcPoly image = apply_morphism(m, m.source->relations()[i]);
    MembershipVerdict v = image.degree() > bound ? MembershipVerdict::unknown(bound)
                                                 : engine.query(image, bound);
    cert.certified = cert.certified && v.member;
    cert.relations.push_back({i, std::move(image), std::move(v)});
  }
  return cert;
}

MorphismSpec compose(const MorphismSpec& f, const MorphismSpec& g, std::string name) {
  if (f.target != g.source && !same_alphabet(f.target->alphabet(), g.source->alphabet())) {
    throw AlphabetMismatch("morphisms do not compose");
  }
  MorphismSpec out;
  out.name = name.empty() ? g.name + " o " + f.name : std::move(name);
  out.source = f.source;
  out.target = g.target;
  for (const auto& img : f.images) out.images.push_back(apply_morphism(g, img));
  out.variance = f.variance == g.variance ? Variance::Morphism : Variance::AntiMorphism;
  return out;
}

ShuffleResult shuffle_normal_form(const Presentation& tensor, const NcPoly& f) {
  if (!tensor.tensor()) throw PreconditionError("not a tensor presentation");
  const auto& info = *tensor.tensor();
  const Letter split = static_cast<Letter>(info.split);
  const std::size_t right_size = info.right->alphabet()->size();
  const std::size_t base = info.left->relations().size() + info.right->relations().size();
  ShuffleResult out{NcPoly(tensor.alphabet()), {}};
  for (const auto& [w0, c] : f.terms()) {
    Word w = w0;
    // Bubble each left letter past the right letters preceding it:
    // u*y*x*v = u*x*y*v - u*(x*y - y*x)*v.
    for (std::size_t i = 1; i < w.size(); ++i) {
      for (std::size_t j = i; j > 0 && w[j] < split && w[j - 1] >= split; --j) {
        const Letter x = w[j], y = w[j - 1];
        const std::size_t rel = base + x * right_size + (y - split);
        out.witness.push_back({Word(w.begin(), w.begin() + static_cast<long>(j - 1)), rel,
                               Word(w.begin() + static_cast<long>(j + 1), w.end()), -c});
        std::swap(w[j], w[j - 1]);
      }
    }
    out.shuffled.add_term(w, c);
  }
  return out;
}

}  // namespace bigalois
