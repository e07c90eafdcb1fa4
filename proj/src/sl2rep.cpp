#include "bigalois/sl2rep.hpp"

#include <algorithm>

namespace bigalois {

int n0_of(int n) {
  if (n < 3) throw PreconditionError("root of unity order must be at least 3");
  return n % 2 ? n : n / 2;
}

FusionContext::FusionContext(int order) : order_(order) {
  if (order != 0) n0_ = n0_of(order);
}

FusionContext FusionContext::root_of_unity(int order) { return FusionContext(order); }

std::string FusionContext::str() const {
  if (is_generic()) return "generic";
  return "root of unity N=" + std::to_string(order_) + " N0=" + std::to_string(n0_);
}

std::uint64_t SimpleLabel::dim() const {
  return static_cast<std::uint64_t>(v + 1) * static_cast<std::uint64_t>(u + 1);
}

std::string SimpleLabel::str() const {
  if (v == 0) return "U" + std::to_string(u);
  if (u == 0) return "V" + std::to_string(v);
  return "V" + std::to_string(v) + "U" + std::to_string(u);
}

void validate_label(const SimpleLabel& x, const FusionContext& ctx) {
  if (x.v < 0 || x.u < 0) throw PreconditionError("negative label " + x.str());
  if (ctx.is_generic()) {
    if (x.v != 0) throw PreconditionError("V-labels only exist at a root of unity");
  } else if (x.u > ctx.n0() - 1) {
    throw PreconditionError(x.str() + " does not exist for " + ctx.str());
  }
}

RepElement::RepElement(SimpleLabel x, std::uint64_t multiplicity) {
  if (multiplicity) terms_.emplace(x, multiplicity);
}

std::uint64_t RepElement::multiplicity(const SimpleLabel& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? 0 : it->second;
}

std::uint64_t RepElement::count() const {
  std::uint64_t n = 0;
  for (const auto& [x, m] : terms_) n += m;
  return n;
}

RepElement& RepElement::operator+=(const RepElement& other) {
  for (const auto& [x, m] : other.terms_) terms_[x] += m;
  return *this;
}

std::string RepElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [x, m] : terms_) {
    if (!out.empty()) out += " + ";
    if (m != 1) out += std::to_string(m) + "*";
    out += x.str();
  }
  return out;
}

std::string FiltrationReport::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ", ";
    out += factors[i].str();
  }
  return out + "]";
}

namespace {

/// |k - l|, |k - l| + 2, ..., k + l
std::vector<int> ladder(int k, int l) {
  std::vector<int> out;
  for (int n = std::abs(k - l); n <= k + l; n += 2) out.push_back(n);
  return out;
}

}  // namespace

FusionResult tensor_decompose(const SimpleLabel& x, const SimpleLabel& y,
                              const FusionContext& ctx) {
  validate_label(x, ctx);
  validate_label(y, ctx);
  RepElement out;
  if (ctx.is_generic()) {
    for (int n : ladder(x.u, y.u)) out += SimpleLabel::U(n);
    return out;
  }
  const int n0 = ctx.n0();
  std::vector<int> us;
  if (x.u + y.u <= n0 - 1) {
    us = ladder(x.u, y.u);
  } else if (std::min(x.u, y.u) == 1 && std::max(x.u, y.u) == n0 - 1) {
    if (x.v != 0 || y.v != 0) {
      throw OutOfSpecifiedRange("product " + x.str() + " (x) " + y.str() +
                                " is not determined for " + ctx.str());
    }
    return FiltrationReport{{SimpleLabel::U(n0 - 2), SimpleLabel::V(1), SimpleLabel::U(n0 - 2)}};
  } else {
    throw OutOfSpecifiedRange("product " + x.str() + " (x) " + y.str() +
                              " is not determined for " + ctx.str());
  }
  for (int v : ladder(x.v, y.v))
    for (int u : us) out += SimpleLabel{v, u};
  return out;
}

RepElement tensor(const RepElement& a, const RepElement& b, const FusionContext& ctx) {
  RepElement out;
  for (const auto& [x, m] : a.terms()) {
    for (const auto& [y, n] : b.terms()) {
      FusionResult r = tensor_decompose(x, y, ctx);
      const auto* sum = std::get_if<RepElement>(&r);
      if (!sum) {
        throw OutOfSpecifiedRange(x.str() + " (x) " + y.str() + " is not semisimple for " +
                                  ctx.str());
      }
      for (const auto& [z, k] : sum->terms()) out += RepElement(z, k * m * n);
    }
  }
  return out;
}

std::uint64_t dim_of(const RepElement& x) {
  std::uint64_t d = 0;
  for (const auto& [l, m] : x.terms()) d += m * l.dim();
  return d;
}

std::uint64_t dim_of(const FusionResult& x) {
  if (const auto* sum = std::get_if<RepElement>(&x)) return dim_of(*sum);
  std::uint64_t d = 0;
  for (const auto& l : std::get<FiltrationReport>(x).factors) d += l.dim();
  return d;
}

std::string fusion_str(const FusionResult& x) {
  if (const auto* sum = std::get_if<RepElement>(&x)) return sum->str();
  return "non-semisimple " + std::get<FiltrationReport>(x).str();
}

ContradictionReport fusion_contradiction_check(int order) {
  ContradictionReport r;
  r.order = order;
  r.n0 = n0_of(order);
  for (int n : ladder(r.n0 - 1, 1)) r.ladder.push_back(SimpleLabel::U(n));
  const auto filtration = tensor_decompose(SimpleLabel::U(r.n0 - 1), SimpleLabel::U(1),
                                           FusionContext::root_of_unity(order));
  r.factors = std::get<FiltrationReport>(filtration).factors;
  for (const auto& l : r.ladder) r.ladder_dim += l.dim();
  for (const auto& l : r.factors) r.factor_dim += l.dim();
  auto a = r.ladder, b = r.factors;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  r.multisets_differ = a != b;
  return r;
}

}  // namespace bigalois
