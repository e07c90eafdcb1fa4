#include "bigalois/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace bigalois {

RewriteSystem::RewriteSystem(AlphabetPtr alphabet, std::vector<Rule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  if (!alphabet_) throw PreconditionError("rewrite system needs an alphabet");
  by_first_letter_.resize(alphabet_->size());
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    const Rule& r = rules_[k];
    if (r.lhs.empty()) throw PreconditionError("rule " + std::to_string(k) + " has an empty lhs");
    for (Letter l : r.lhs) {
      if (l >= alphabet_->size()) throw AlphabetMismatch("rule lhs outside the alphabet");
    }
    if (!same_alphabet(r.rhs.alphabet(), alphabet_)) {
      throw AlphabetMismatch("rule rhs over a different alphabet");
    }
    for (const auto& [w, c] : r.rhs.terms()) {
      if (compare_words(w, r.lhs) >= 0) {
        throw PreconditionError("rule " + rule_str(k) + " is not decreasing");
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (rules_[j].lhs == r.lhs) {
        throw PreconditionError("rules " + std::to_string(j) + " and " + std::to_string(k) +
                                " share a left-hand side");
      }
    }
    by_first_letter_[r.lhs.front()].push_back(k);
    max_lhs_ = std::max(max_lhs_, r.lhs.size());
  }
}

std::optional<Match> RewriteSystem::match(const Word& w) const {
  for (std::size_t p = 0; p < w.size(); ++p) {
    for (std::size_t k : by_first_letter_[w[p]]) {
      const Word& lhs = rules_[k].lhs;
      if (p + lhs.size() <= w.size() &&
          std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(p))) {
        return Match{p, k};
      }
    }
  }
  return std::nullopt;
}

std::vector<Match> RewriteSystem::matches(const Word& w) const {
  std::vector<Match> out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    std::vector<std::size_t> ks = by_first_letter_[w[p]];
    std::sort(ks.begin(), ks.end());
    for (std::size_t k : ks) {
      const Word& lhs = rules_[k].lhs;
      if (p + lhs.size() <= w.size() &&
          std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(p))) {
        out.push_back({p, k});
      }
    }
  }
  return out;
}

void RewriteSystem::apply(NcPoly& f, const Word& w, const Match& m) const {
  const Rule& r = rules_.at(m.rule);
  const Scalar c = f.coefficient(w);
  if (c.is_zero()) return;
  Word left(w.begin(), w.begin() + static_cast<long>(m.position));
  Word right(w.begin() + static_cast<long>(m.position + r.lhs.size()), w.end());
  f.erase(w);
  f.add_sandwich(c, left, r.rhs, right);
}

std::string RewriteSystem::rule_str(std::size_t index) const {
  const Rule& r = rules_.at(index);
  return format_word(*alphabet_, r.lhs) + " -> " + r.rhs.str();
}

Reduction reduce(const NcPoly& f, const RewriteSystem& system, bool record_trace) {
  if (!same_alphabet(f.alphabet(), system.alphabet())) {
    throw AlphabetMismatch("polynomial and rewrite system use different alphabets");
  }
  Reduction out{f, 0, {}};
  NcPoly& g = out.normal_form;
  // Every word above `bound` is irreducible; rule applications only create
  // words below the reduced one, so the scan moves strictly downwards.
  std::optional<Word> bound;
  while (true) {
    const auto& terms = g.terms();
    auto it = bound ? terms.lower_bound(*bound) : terms.end();
    std::optional<std::pair<Word, Match>> found;
    while (it != terms.begin()) {
      --it;
      if (auto m = system.match(it->first)) {
        found.emplace(it->first, *m);
        break;
      }
    }
    if (!found) break;
    auto [w, m] = std::move(*found);
    if (record_trace) out.trace.push_back({m.rule, m.position, w});
    system.apply(g, w, m);
    ++out.steps;
    bound = std::move(w);
  }
  return out;
}

std::vector<Ambiguity> find_ambiguities(const RewriteSystem& system) {
  std::vector<Ambiguity> out;
  const auto& rules = system.rules();
  for (std::size_t a = 0; a < rules.size(); ++a) {
    const Word& la = rules[a].lhs;
    for (std::size_t b = 0; b < rules.size(); ++b) {
      const Word& lb = rules[b].lhs;
      // suffix of la of length k equals prefix of lb of length k
      for (std::size_t start = 1; start < la.size(); ++start) {
        const std::size_t k = la.size() - start;
        if (k >= lb.size()) continue;
        if (!std::equal(la.begin() + static_cast<long>(start), la.end(), lb.begin())) continue;
        Word witness = la;
        witness.insert(witness.end(), lb.begin() + static_cast<long>(k), lb.end());
        out.push_back({AmbiguityKind::Overlap, a, b, std::move(witness), 0, start});
      }
    }
  }
  for (std::size_t a = 0; a < rules.size(); ++a) {
    const Word& la = rules[a].lhs;
    for (std::size_t b = 0; b < rules.size(); ++b) {
      if (a == b) continue;
      std::size_t from = 0;
      while (auto p = find_factor(la, rules[b].lhs, from)) {
        out.push_back({AmbiguityKind::Inclusion, a, b, la, 0, *p});
        from = *p + 1;
      }
    }
  }
  return out;
}

std::size_t ConfluenceCertificate::overlaps() const {
  return static_cast<std::size_t>(
      std::count_if(resolutions.begin(), resolutions.end(), [](const AmbiguityResolution& r) {
        return r.ambiguity.kind == AmbiguityKind::Overlap;
      }));
}

std::size_t ConfluenceCertificate::inclusions() const {
  return resolutions.size() - overlaps();
}

namespace {

Reduction route(const RewriteSystem& system, const Word& witness, std::size_t rule,
                std::size_t position) {
  NcPoly f = NcPoly::monomial(system.alphabet(), witness);
  system.apply(f, witness, Match{position, rule});
  Reduction r = reduce(f, system, true);
  r.trace.insert(r.trace.begin(), RewriteStep{rule, position, witness});
  ++r.steps;
  return r;
}

}  // namespace

ConfluenceCertificate certify_confluence(const RewriteSystem& system) {
  ConfluenceCertificate cert;
  for (Ambiguity& amb : find_ambiguities(system)) {
    Reduction ra = route(system, amb.witness, amb.rule_a, amb.position_a);
    Reduction rb = route(system, amb.witness, amb.rule_b, amb.position_b);
    const bool resolved = ra.normal_form == rb.normal_form;
    AmbiguityResolution res{std::move(amb), std::move(ra), std::move(rb), resolved};
    if (!res.resolved && cert.confluent) {
      cert.confluent = false;
      cert.counterexample = cert.resolutions.size();
    }
    cert.resolutions.push_back(std::move(res));
  }
  return cert;
}

namespace {

/// Aho-Corasick automaton over the rule left-hand sides; `dead` marks states
/// whose read text ends with some lhs.
struct FactorAutomaton {
  std::vector<std::vector<std::size_t>> next;
  std::vector<bool> dead;

  explicit FactorAutomaton(const RewriteSystem& system) {
    const std::size_t sigma = system.alphabet()->size();
    next.emplace_back(sigma, kNone);
    dead.push_back(false);
    for (const Rule& r : system.rules()) {
      std::size_t s = 0;
      for (Letter l : r.lhs) {
        if (next[s][l] == kNone) {
          next[s][l] = next.size();
          next.emplace_back(sigma, kNone);
          dead.push_back(false);
        }
        s = next[s][l];
      }
      dead[s] = true;
    }
    std::vector<std::size_t> fail(next.size(), 0);
    std::deque<std::size_t> queue;
    for (std::size_t l = 0; l < sigma; ++l) {
      if (next[0][l] == kNone) {
        next[0][l] = 0;
      } else {
        fail[next[0][l]] = 0;
        queue.push_back(next[0][l]);
      }
    }
    while (!queue.empty()) {
      std::size_t s = queue.front();
      queue.pop_front();
      if (dead[fail[s]]) dead[s] = true;
      for (std::size_t l = 0; l < sigma; ++l) {
        std::size_t t = next[s][l];
        if (t == kNone) {
          next[s][l] = next[fail[s]][l];
        } else {
          fail[t] = next[fail[s]][l];
          queue.push_back(t);
        }
      }
    }
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
};

}  // namespace

std::vector<std::uint64_t> count_irreducible(const RewriteSystem& system, int d) {
  if (d < 0) throw PreconditionError("degree bound must be non-negative");
  FactorAutomaton fa(system);
  const std::size_t sigma = system.alphabet()->size();
  std::vector<std::uint64_t> counts, layer(fa.next.size(), 0);
  layer[0] = 1;
  counts.push_back(1);
  for (int len = 1; len <= d; ++len) {
    std::vector<std::uint64_t> nxt(fa.next.size(), 0);
    for (std::size_t s = 0; s < layer.size(); ++s) {
      if (layer[s] == 0) continue;
      for (std::size_t l = 0; l < sigma; ++l) {
        std::size_t t = fa.next[s][l];
        if (fa.dead[t]) continue;
        if (__builtin_add_overflow(nxt[t], layer[s], &nxt[t])) {
          throw ResourceCapExceeded("irreducible word count overflows 64 bits");
        }
      }
    }
    layer = std::move(nxt);
    std::uint64_t total = 0;
    for (auto v : layer) {
      if (__builtin_add_overflow(total, v, &total)) {
        throw ResourceCapExceeded("irreducible word count overflows 64 bits");
      }
    }
    counts.push_back(total);
  }
  return counts;
}

std::vector<std::vector<Word>> irreducible_words(const RewriteSystem& system, int d,
                                                 std::size_t cap) {
  if (d < 0) throw PreconditionError("degree bound must be non-negative");
  FactorAutomaton fa(system);
  const std::size_t sigma = system.alphabet()->size();
  std::vector<std::vector<Word>> out(1, std::vector<Word>{Word{}});
  std::vector<std::size_t> states{0};
  std::size_t total = 1;
  for (int len = 1; len <= d; ++len) {
    std::vector<Word> words;
    std::vector<std::size_t> next_states;
    // Extending deglex-sorted words letter by letter keeps the layer sorted.
    for (std::size_t i = 0; i < out.back().size(); ++i) {
      for (std::size_t l = 0; l < sigma; ++l) {
        std::size_t t = fa.next[states[i]][l];
        if (fa.dead[t]) continue;
        if (++total > cap) throw ResourceCapExceeded("irreducible word enumeration cap exceeded");
        Word w = out.back()[i];
        w.push_back(static_cast<Letter>(l));
        words.push_back(std::move(w));
        next_states.push_back(t);
      }
    }
    out.push_back(std::move(words));
    states = std::move(next_states);
  }
  return out;
}

}  // namespace bigalois
