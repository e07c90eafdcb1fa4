#include "bigalois/galois.hpp"

#include <algorithm>
#include <functional>

namespace bigalois {

namespace {

Scalar kron(std::size_t i, std::size_t j) { return Scalar(i == j ? 1 : 0); }

NcPoly letter(const AlphabetPtr& a, Letter l) { return NcPoly::letter(a, l); }

NcPoly constant(const AlphabetPtr& a, const Scalar& c) { return NcPoly::constant(a, c); }

/// Substitutes polynomials over `target` for the letters of `f`.
NcPoly substitute(const NcPoly& f, const std::vector<NcPoly>& images, const AlphabetPtr& target) {
  NcPoly out(target);
  for (const auto& [w, c] : f.terms()) {
    NcPoly term = constant(target, c);
    for (Letter l : w) term = term * images.at(l);
    out += term;
  }
  return out;
}

PresentationPtr free_on(const AlphabetPtr& a) { return make_presentation("free", a, {}); }

/// Moves letters of lower tensor factors to the front of each word, keeping
/// the order within each factor: the canonical form in a tensor product of
/// free algebras.
NcPoly factor_sorted(const NcPoly& f, const std::function<int(Letter)>& factor) {
  NcPoly out(f.alphabet());
  for (const auto& [w, c] : f.terms()) {
    Word s = w;
    std::stable_sort(s.begin(), s.end(),
                     [&](Letter x, Letter y) { return factor(x) < factor(y); });
    out.add_term(s, c);
  }
  return out;
}

std::function<int(Letter)> factor_by_offsets(std::vector<std::size_t> offsets) {
  return [offsets = std::move(offsets)](Letter l) {
    int k = 0;
    for (std::size_t i = 1; i < offsets.size(); ++i)
      if (l >= offsets[i]) k = static_cast<int>(i);
    return k;
  };
}

void require_size(const FormMatrix& m, const char* what) {
  if (m.size() < 2) throw PreconditionError(std::string(what) + " must have size at least 2");
}

IdentityCheck membership_check(std::string name, MembershipEngine& engine,
                               const std::vector<NcPoly>& polys, int bound) {
  IdentityCheck out{std::move(name), true, false, bound, 0};
  for (const auto& f : polys) {
    ++out.queries;
    if (f.degree() > bound || !engine.query(f, bound).member) {
      out.holds = false;
      break;
    }
  }
  return out;
}

IdentityCheck exact_check(std::string name, const std::vector<NcPoly>& lhs,
                          const std::vector<NcPoly>& rhs) {
  IdentityCheck out{std::move(name), true, true, 0, 0};
  for (std::size_t i = 0; i < lhs.size(); ++i) out.holds = out.holds && lhs[i] == rhs[i];
  return out;
}

}  // namespace

// ---------------------------------------------------------------- constructors

PresentationPtr build_BEF(const FormMatrix& e, const FormMatrix& f, const std::string& prefix) {
  require_size(e, "E");
  require_size(f, "F");
  const std::size_t m = e.size(), n = f.size();
  auto a = make_alphabet(matrix_letter_names(prefix, m, n));
  const Matrix& finv = f.inverse();
  auto z = [&](std::size_t i, std::size_t j) { return matrix_letter(i, j, n); };
  std::vector<NcPoly> rels;
  // (F^{-1} z^t E z)_{jl} = sum_{p,i,k} Finv_jp z_ip E_ik z_kl
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      NcPoly r = constant(a, -kron(j, l));
      for (std::size_t p = 0; p < n; ++p) {
        if (finv(j, p).is_zero()) continue;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t k = 0; k < m; ++k)
            r.add_term({z(i, p), z(k, l)}, finv(j, p) * e(i, k));
      }
      rels.push_back(std::move(r));
    }
  // (z F^{-1} z^t E)_{ik} = sum_{j,l,p} z_ij Finv_jl z_pl E_pk
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      NcPoly r = constant(a, -kron(i, k));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          if (finv(j, l).is_zero()) continue;
          for (std::size_t p = 0; p < m; ++p) r.add_term({z(i, j), z(p, l)}, finv(j, l) * e(p, k));
        }
      rels.push_back(std::move(r));
    }
  return make_presentation("B(" + std::string(prefix) + ")", a, std::move(rels));
}

PresentationPtr build_BE(const FormMatrix& e, const std::string& prefix) {
  return build_BEF(e, e, prefix);
}

// ---------------------------------------------------------------- Hopf data

bool HopfData::certified() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const MorphismCertificate& c) { return c.certified; }) &&
         std::all_of(identities.begin(), identities.end(),
                     [](const IdentityCheck& c) { return c.holds; });
}

HopfData hopf_data(const FormMatrix& e, int bound, const ResourceLimits& limits) {
  const std::size_t m = e.size();
  const std::size_t mm = m * m;
  auto b = build_BE(e, "a");
  const auto& A = b->alphabet();
  auto bb = tensor_presentation(b, b);
  const auto& AA = bb->alphabet();
  const Matrix& einv = e.inverse();
  auto idx = [&](std::size_t i, std::size_t j) { return matrix_letter(i, j, m); };

  HopfData h{b, {}, {}, {}, {}, {}};
  h.coproduct = {"Delta", b, bb, {}, Variance::Morphism};
  h.counit = {"epsilon", b, scalar_presentation(), {}, Variance::Morphism};
  h.antipode = {"S", b, b, {}, Variance::AntiMorphism};
  auto k = scalar_presentation()->alphabet();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      NcPoly d(AA), s(A);
      for (std::size_t l = 0; l < m; ++l) d.add_term({idx(i, l), static_cast<Letter>(mm + idx(l, j))}, Scalar(1));
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) s.add_term({idx(q, p)}, einv(i, p) * e(q, j));
      h.coproduct.images.push_back(std::move(d));
      h.counit.images.push_back(constant(k, kron(i, j)));
      h.antipode.images.push_back(std::move(s));
    }
  for (const MorphismSpec* spec : {&h.coproduct, &h.counit, &h.antipode}) {
    h.certificates.push_back(certify_morphism(*spec, bound, limits));
  }

  // Coassociativity and counit on generators, exactly in free tensor products.
  auto triple = tensor_presentation(bb, b);
  const auto& T = triple->alphabet();
  auto tri_factor = factor_by_offsets({0, mm, 2 * mm});
  std::vector<NcPoly> delta_first(2 * mm, NcPoly(T)), delta_second(2 * mm, NcPoly(T));
  for (std::size_t l = 0; l < mm; ++l) {
    delta_first[l] = h.coproduct.images[l].relabeled(T, [&] {
      std::vector<Letter> map(2 * mm);
      for (Letter x = 0; x < 2 * mm; ++x) map[x] = x;
      return map;
    }());
    delta_first[mm + l] = letter(T, static_cast<Letter>(2 * mm + l));
    delta_second[l] = letter(T, static_cast<Letter>(l));
    std::vector<Letter> shift(2 * mm);
    for (Letter x = 0; x < 2 * mm; ++x) shift[x] = static_cast<Letter>(x + mm);
    delta_second[mm + l] = h.coproduct.images[l].relabeled(T, shift);
  }
  std::vector<NcPoly> lhs, rhs, left_unit, right_unit, gens;
  std::vector<NcPoly> eps_left(2 * mm, NcPoly(A)), eps_right(2 * mm, NcPoly(A));
  for (std::size_t l = 0; l < mm; ++l) {
    const Scalar de = kron(l / m, l % m);
    eps_left[l] = constant(A, de);
    eps_left[mm + l] = letter(A, static_cast<Letter>(l));
    eps_right[l] = letter(A, static_cast<Letter>(l));
    eps_right[mm + l] = constant(A, de);
  }
  for (std::size_t l = 0; l < mm; ++l) {
    const NcPoly& img = h.coproduct.images[l];
    lhs.push_back(factor_sorted(substitute(img, delta_first, T), tri_factor));
    rhs.push_back(factor_sorted(substitute(img, delta_second, T), tri_factor));
    left_unit.push_back(substitute(img, eps_left, A));
    right_unit.push_back(substitute(img, eps_right, A));
    gens.push_back(letter(A, static_cast<Letter>(l)));
  }
  h.identities.push_back(exact_check("coassociativity", lhs, rhs));
  h.identities.push_back(exact_check("left counit", left_unit, gens));
  h.identities.push_back(exact_check("right counit", right_unit, gens));

  MembershipEngine engine(b, limits);
  std::vector<NcPoly> antipode_left, antipode_right, form;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      NcPoly l = constant(A, -kron(i, j)), r = constant(A, -kron(i, j)), f = constant(A, -e(i, j));
      for (std::size_t t = 0; t < m; ++t) {
        l += h.antipode.images[idx(i, t)] * letter(A, idx(t, j));
        r += letter(A, idx(i, t)) * h.antipode.images[idx(t, j)];
        for (std::size_t u = 0; u < m; ++u) f.add_term({idx(t, i), idx(u, j)}, e(t, u));
      }
      antipode_left.push_back(std::move(l));
      antipode_right.push_back(std::move(r));
      form.push_back(std::move(f));
    }
  h.identities.push_back(membership_check("antipode S(a)a = I", engine, antipode_left, bound));
  h.identities.push_back(membership_check("antipode aS(a) = I", engine, antipode_right, bound));
  h.identities.push_back(membership_check("invariant form a^t E a = E", engine, form, bound));
  return h;
}

// ---------------------------------------------------------------- form normalization

Normalization normalize_form(const FormMatrix& f, TowerPtr tower) {
  require_size(f, "F");
  const std::size_t n = f.size();
  const Matrix& m = f.inverse();
  tower = tower ? join_towers(tower, f.tower()) : f.tower();
  Matrix p = Matrix::identity(n);
  std::string method = "identity";
  std::optional<Scalar> lambda;
  if (!m(n - 1, n - 1).is_zero()) {
    if (m(0, 0).is_zero()) {
      method = "antidiagonal";
      p = Matrix(n, n);
      for (std::size_t i = 0; i < n; ++i) p(n - 1 - i, i) = Scalar(1);
    } else {
      method = "lambda";
      // lambda^2 M_nn + (M_n1 + M_1n) lambda + M_11 = 0
      const Scalar inv = m(n - 1, n - 1).inverse();
      auto root = extend_with_root(tower, (m(n - 1, 0) + m(0, n - 1)) * inv, m(0, 0) * inv, "l");
      tower = root.tower;
      lambda = root.root;
      p(n - 1, n - 1) = *lambda;
      p(0, n - 1) = p(0, n - 1) + Scalar(1);
    }
  }
  FormMatrix pf(p);
  const Matrix pinv_t = pf.inverse().transpose();
  FormMatrix normalized(pf.inverse() * f.entries() * pinv_t);
  if (!normalized.inverse()(n - 1, n - 1).is_zero()) {
    throw Error("internal error: normalization left a nonzero corner");
  }
  return {std::move(pf), std::move(normalized), std::move(method), std::move(lambda), tower};
}

// ---------------------------------------------------------------- the SL_q(2) system

std::pair<std::size_t, std::size_t> sl2_pivot(const FormMatrix& f) {
  const std::size_t n = f.size();
  const Matrix& beta = f.inverse();
  for (std::size_t u = n; u-- > 0;)
    for (std::size_t v = n; v-- > 0;) {
      if (beta(u, v).is_zero()) continue;
      if (u != n - 1 || v == n - 1) {
        throw PreconditionError("the largest nonzero entry of F^{-1} must lie in its last row, "
                                "left of the diagonal (normalize F first)");
      }
      return {u, v};
    }
  throw SingularMatrix("F^{-1} is zero");
}

RewriteSystem build_sl2_rewrite_system(const Scalar& q, const FormMatrix& f) {
  require_size(f, "F");
  const std::size_t n = f.size();
  const Scalar c = trace_invariant(f);
  if (!(q * q + c * q + Scalar(1)).is_zero()) {
    throw PreconditionError("q does not solve q^2 + tr(F F^-t) q + 1 = 0");
  }
  const auto [un, v] = sl2_pivot(f);
  const Matrix& alpha = f.entries();
  const Matrix& beta = f.inverse();
  auto a = make_alphabet(matrix_letter_names("z", 2, n));
  auto z1 = [&](std::size_t i) { return static_cast<Letter>(i); };
  auto z2 = [&](std::size_t i) { return static_cast<Letter>(n + i); };
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      NcPoly rhs(a);
      rhs.add_term({z1(i), z2(j)}, q);
      rhs.add_term({}, -q * alpha(i, j));
      rules.push_back({{z2(i), z1(j)}, std::move(rhs)});
    }
  const Scalar scale = beta(un, v).inverse();
  auto tail = [&](auto first, auto second, const Scalar& constant_term) {
    NcPoly rhs = NcPoly::constant(a, scale * constant_term);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if ((i == un && j == v) || beta(i, j).is_zero()) continue;
        rhs.add_term({first(i), second(j)}, -scale * beta(i, j));
      }
    return rhs;
  };
  rules.push_back({{z1(un), z1(v)}, tail(z1, z1, Scalar(0))});
  rules.push_back({{z1(un), z2(v)}, tail(z1, z2, -q)});
  rules.push_back({{z2(un), z2(v)}, tail(z2, z2, Scalar(0))});
  return RewriteSystem(a, std::move(rules));
}

NcPoly sl2_redundant_relation(const FormMatrix& f, const AlphabetPtr& alphabet) {
  const std::size_t n = f.size();
  const Matrix& beta = f.inverse();
  NcPoly r = NcPoly::constant(alphabet, Scalar(-1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r.add_term({static_cast<Letter>(n + i), static_cast<Letter>(j)}, beta(i, j));
  return r;
}

// ---------------------------------------------------------------- structure maps

bool GaloisMaps::certified() const {
  return std::all_of(maps.begin(), maps.end(),
                     [](const MorphismCertificate& c) { return c.certified; }) &&
         std::all_of(identities.begin(), identities.end(),
                     [](const IdentityCheck& c) { return c.holds; });
}

MorphismSpec transport_morphism(const FormMatrix& e, const FormMatrix& f, const Matrix& p,
                                const Matrix& q) {
  const std::size_t m = e.size(), n = f.size();
  auto source = build_BEF(e, f, "z");
  FormMatrix e2(p.transpose() * e.entries() * p), f2(q.transpose() * f.entries() * q);
  auto target = build_BEF(e2, f2, "y");
  auto qinv = q.inverse();
  if (!qinv) throw SingularMatrix("Q is singular");
  MorphismSpec psi{"psi", source, target, {}, Variance::Morphism};
  const auto& Y = target->alphabet();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      NcPoly img(Y);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < n; ++l)
          img.add_term({matrix_letter(k, l, n)}, p(i, k) * (*qinv)(l, j));
      psi.images.push_back(std::move(img));
    }
  return psi;
}

MorphismSpec delta_morphism(const FormMatrix& e, const FormMatrix& f, const Scalar& q) {
  const std::size_t m = e.size(), n = f.size();
  FormMatrix eq = sl2_form(q);
  auto bv = build_BEF(e, eq, "v");
  auto bw = build_BEF(eq, f, "w");
  auto t_vw = tensor_presentation(bv, bw);
  MorphismSpec delta{"delta", build_BEF(e, f, "z"), t_vw, {}, Variance::Morphism};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      NcPoly img(t_vw->alphabet());
      for (std::size_t k = 0; k < 2; ++k)
        img.add_term({matrix_letter(i, k, 2), static_cast<Letter>(2 * m + matrix_letter(k, j, n))},
                     Scalar(1));
      delta.images.push_back(std::move(img));
    }
  return delta;
}

GaloisMaps structure_maps(const FormMatrix& e, const FormMatrix& f, int bound,
                          const std::optional<CongruenceData>& congruence,
                          const ResourceLimits& limits) {
  const std::size_t m = e.size(), n = f.size();
  auto be = build_BE(e, "a");
  auto bf = build_BE(f, "b");
  auto bef = build_BEF(e, f, "z");
  auto bfe = build_BEF(f, e, "y");
  const auto& Z = bef->alphabet();
  const Matrix& finv = f.inverse();
  auto za = [&](std::size_t i, std::size_t j) { return matrix_letter(i, j, n); };
  auto ya = [&](std::size_t i, std::size_t j) { return matrix_letter(i, j, m); };
  GaloisMaps out;

  // alpha : B(E,F) -> B(E) (x) B(E,F)
  auto t_alpha = tensor_presentation(be, bef);
  MorphismSpec alpha{"alpha", bef, t_alpha, {}, Variance::Morphism};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      NcPoly img(t_alpha->alphabet());
      for (std::size_t k = 0; k < m; ++k)
        img.add_term({ya(i, k), static_cast<Letter>(m * m + za(k, j))}, Scalar(1));
      alpha.images.push_back(std::move(img));
    }
  // beta : B(E,F) -> B(E,F) (x) B(F)
  auto t_beta = tensor_presentation(bef, bf);
  MorphismSpec beta{"beta", bef, t_beta, {}, Variance::Morphism};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      NcPoly img(t_beta->alphabet());
      for (std::size_t k = 0; k < n; ++k)
        img.add_term({za(i, k), static_cast<Letter>(m * n + matrix_letter(k, j, n))}, Scalar(1));
      beta.images.push_back(std::move(img));
    }
  // phi : B(F,E) -> B(E,F)^op, y -> F^{-1} z^t E
  MorphismSpec phi{"phi", bfe, bef, {}, Variance::AntiMorphism};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      NcPoly img(Z);
      for (std::size_t p = 0; p < n; ++p) {
        if (finv(i, p).is_zero()) continue;
        for (std::size_t q = 0; q < m; ++q) img.add_term({za(q, p)}, finv(i, p) * e(q, j));
      }
      phi.images.push_back(std::move(img));
    }
  // gamma1 : B(E) -> B(E,F) (x) B(F,E);  gamma2 : B(F) -> B(F,E) (x) B(E,F)
  auto t_zy = tensor_presentation(bef, bfe);
  MorphismSpec gamma1{"gamma1", be, t_zy, {}, Variance::Morphism};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      NcPoly img(t_zy->alphabet());
      for (std::size_t k = 0; k < n; ++k)
        img.add_term({za(i, k), static_cast<Letter>(m * n + ya(k, j))}, Scalar(1));
      gamma1.images.push_back(std::move(img));
    }
  auto t_yz = tensor_presentation(bfe, bef);
  MorphismSpec gamma2{"gamma2", bf, t_yz, {}, Variance::Morphism};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      NcPoly img(t_yz->alphabet());
      for (std::size_t k = 0; k < m; ++k)
        img.add_term({ya(i, k), static_cast<Letter>(n * m + za(k, j))}, Scalar(1));
      gamma2.images.push_back(std::move(img));
    }
  for (const MorphismSpec* spec : {&alpha, &beta, &phi, &gamma1, &gamma2}) {
    out.maps.push_back(certify_morphism(*spec, bound, limits));
  }

  if (congruence) {
    MorphismSpec psi = transport_morphism(e, f, congruence->p.entries(), congruence->q.entries());
    out.maps.push_back(certify_morphism(psi, bound, limits));
    // psi^{-1}(y) = P^{-1} z Q
    MorphismSpec psi_inv{"psi_inverse", psi.target, psi.source, {}, Variance::Morphism};
    const Matrix& pinv = congruence->p.inverse();
    const Matrix& q = congruence->q.entries();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        NcPoly img(Z);
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < n; ++l) img.add_term({za(k, l)}, pinv(i, k) * q(l, j));
        psi_inv.images.push_back(std::move(img));
      }
    out.maps.push_back(certify_morphism(psi_inv, bound, limits));
    std::vector<NcPoly> gens;
    for (Letter l = 0; l < Z->size(); ++l) gens.push_back(letter(Z, l));
    out.identities.push_back(
        exact_check("psi_inverse o psi = id on generators", compose(psi, psi_inv).images, gens));
  } else {
    out.skipped.push_back("psi: no congruence data supplied");
  }

  if (trace_invariant(e) == trace_invariant(f)) {
    auto sl2 = solve_sl2_parameter(trace_invariant(e), join_towers(e.tower(), f.tower()));
    out.maps.push_back(certify_morphism(delta_morphism(e, f, sl2.q), bound, limits));
  } else {
    out.skipped.push_back("delta: tr(E E^-t) != tr(F F^-t)");
  }

  // Kernel identities: sum_k phi(y_lk) z_kj = delta_lj and sum_k z_lk phi(y_kj) = delta_lj.
  {
    MembershipEngine engine(bef, limits);
    std::vector<NcPoly> left, right;
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t j = 0; j < n; ++j) {
        NcPoly x = constant(Z, -kron(l, j));
        for (std::size_t k = 0; k < m; ++k) x += phi.images[ya(l, k)] * letter(Z, za(k, j));
        left.push_back(std::move(x));
      }
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t j = 0; j < m; ++j) {
        NcPoly x = constant(Z, -kron(l, j));
        for (std::size_t k = 0; k < n; ++k) x += letter(Z, za(l, k)) * phi.images[ya(k, j)];
        right.push_back(std::move(x));
      }
    const int kb = std::min(bound, 2);
    out.identities.push_back(membership_check("sum_k phi(y_lk) z_kj = delta_lj", engine, left, kb));
    out.identities.push_back(membership_check("sum_k z_lk phi(y_kj) = delta_lj", engine, right, kb));
  }

  // Generator-level inversions of the canonical maps kappa_l, kappa_r.
  if (bound >= 3) {
    auto t_zz = tensor_presentation(bef, bef);
    const auto& ZZ = t_zz->alphabet();
    const Letter off = static_cast<Letter>(m * n);
    std::vector<Letter> to_second(m * n);
    for (Letter l = 0; l < to_second.size(); ++l) to_second[l] = off + l;
    std::vector<Letter> to_first(m * n);
    for (Letter l = 0; l < to_first.size(); ++l) to_first[l] = l;
    MembershipEngine zz(t_zz, limits);
    std::vector<NcPoly> eta_kappa_l, eta_kappa_r;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // sum_{k,p} z_ip (x) phi(y_pk) z_kj - z_ij (x) 1
        NcPoly x = -letter(ZZ, za(i, j));
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t k = 0; k < m; ++k)
            x += letter(ZZ, za(i, p)) *
                 (phi.images[ya(p, k)] * letter(Z, za(k, j))).relabeled(ZZ, to_second);
        eta_kappa_l.push_back(std::move(x));
        // sum_{k,p} z_ik phi(y_kp) (x) z_pj - 1 (x) z_ij
        NcPoly y = -letter(ZZ, off + za(i, j));
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t p = 0; p < m; ++p)
            y += (letter(Z, za(i, k)) * phi.images[ya(k, p)]).relabeled(ZZ, to_first) *
                 letter(ZZ, off + za(p, j));
        eta_kappa_r.push_back(std::move(y));
      }
    out.identities.push_back(
        membership_check("eta_l o kappa_l (z_ij (x) 1) = z_ij (x) 1", zz, eta_kappa_l, bound));
    out.identities.push_back(
        membership_check("eta_r o kappa_r (1 (x) z_ij) = 1 (x) z_ij", zz, eta_kappa_r, bound));

    const auto& AZ = t_alpha->alphabet();
    const Letter az_off = static_cast<Letter>(m * m);
    std::vector<Letter> z_in_az(m * n);
    for (Letter l = 0; l < z_in_az.size(); ++l) z_in_az[l] = az_off + l;
    MembershipEngine az(t_alpha, limits);
    std::vector<NcPoly> kappa_eta_l;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        // sum_{p,r} a_ir (x) z_rp phi(y_pk) - a_ik (x) 1
        NcPoly x = -letter(AZ, ya(i, k));
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t p = 0; p < n; ++p)
            x += letter(AZ, ya(i, r)) *
                 (letter(Z, za(r, p)) * phi.images[ya(p, k)]).relabeled(AZ, z_in_az);
        kappa_eta_l.push_back(std::move(x));
      }
    out.identities.push_back(
        membership_check("kappa_l o eta_l (a_ik (x) 1) = a_ik (x) 1", az, kappa_eta_l, bound));

    const auto& ZB = t_beta->alphabet();
    const Letter zb_off = static_cast<Letter>(m * n);
    std::vector<Letter> z_in_zb(m * n);
    for (Letter l = 0; l < z_in_zb.size(); ++l) z_in_zb[l] = l;
    MembershipEngine zb(t_beta, limits);
    std::vector<NcPoly> kappa_eta_r;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        // sum_{p,k} phi(y_jp) z_pk (x) b_kl - 1 (x) b_jl
        NcPoly x = -letter(ZB, zb_off + matrix_letter(j, l, n));
        for (std::size_t p = 0; p < m; ++p)
          for (std::size_t k = 0; k < n; ++k)
            x += (phi.images[ya(j, p)] * letter(Z, za(p, k))).relabeled(ZB, z_in_zb) *
                 letter(ZB, zb_off + matrix_letter(k, l, n));
        kappa_eta_r.push_back(std::move(x));
      }
    out.identities.push_back(
        membership_check("kappa_r o eta_r (1 (x) b_jl) = 1 (x) b_jl", zb, kappa_eta_r, bound));
  } else {
    out.skipped.push_back("eta/kappa inversions: bound below 3");
  }

  // Coaction laws on generators, exactly in free tensor products.
  {
    const std::size_t mm = m * m, nn = n * n, mn = m * n;
    // alpha: (Delta (x) id) alpha = (id (x) alpha) alpha on B(E) (x) B(E) (x) B(E,F)
    auto T = tensor_presentation(tensor_presentation(free_on(be->alphabet()), free_on(be->alphabet())),
                                 free_on(Z))
                 ->alphabet();
    auto tf3 = factor_by_offsets({0, mm, 2 * mm});
    std::vector<NcPoly> first(mm + mn, NcPoly(T)), second(mm + mn, NcPoly(T));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        NcPoly d(T);
        for (std::size_t k = 0; k < m; ++k)
          d.add_term({ya(i, k), static_cast<Letter>(mm + ya(k, j))}, Scalar(1));
        first[ya(i, j)] = d;
        second[ya(i, j)] = letter(T, ya(i, j));
      }
    std::vector<Letter> shift_alpha(mm + mn);
    for (Letter l = 0; l < shift_alpha.size(); ++l) shift_alpha[l] = static_cast<Letter>(l + mm);
    for (std::size_t l = 0; l < mn; ++l) {
      first[mm + l] = letter(T, static_cast<Letter>(2 * mm + l));
      second[mm + l] = alpha.images[l].relabeled(T, shift_alpha);
    }
    std::vector<NcPoly> lhs, rhs, counit, gens;
    const auto& AZ = t_alpha->alphabet();
    std::vector<NcPoly> eps(mm + mn, NcPoly(Z));
    for (std::size_t l = 0; l < mm; ++l) eps[l] = constant(Z, kron(l / m, l % m));
    for (std::size_t l = 0; l < mn; ++l) eps[mm + l] = letter(Z, static_cast<Letter>(l));
    for (std::size_t l = 0; l < mn; ++l) {
      lhs.push_back(factor_sorted(substitute(alpha.images[l], first, T), tf3));
      rhs.push_back(factor_sorted(substitute(alpha.images[l], second, T), tf3));
      counit.push_back(substitute(alpha.images[l], eps, Z));
      gens.push_back(letter(Z, static_cast<Letter>(l)));
    }
    (void)AZ;
    out.identities.push_back(exact_check("alpha coassociativity", lhs, rhs));
    out.identities.push_back(exact_check("alpha counit", counit, gens));

    // beta: (beta (x) id) beta = (id (x) Delta_F) beta on B(E,F) (x) B(F) (x) B(F)
    auto U = tensor_presentation(tensor_presentation(free_on(Z), free_on(bf->alphabet())),
                                 free_on(bf->alphabet()))
                 ->alphabet();
    auto uf3 = factor_by_offsets({0, mn, mn + nn});
    std::vector<NcPoly> bfirst(mn + nn, NcPoly(U)), bsecond(mn + nn, NcPoly(U));
    std::vector<Letter> beta_in_u(mn + nn);
    for (Letter l = 0; l < beta_in_u.size(); ++l) beta_in_u[l] = l;
    for (std::size_t l = 0; l < mn; ++l) {
      bfirst[l] = beta.images[l].relabeled(U, beta_in_u);
      bsecond[l] = letter(U, static_cast<Letter>(l));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t b = matrix_letter(i, j, n);
        bfirst[mn + b] = letter(U, static_cast<Letter>(mn + nn + b));
        NcPoly d(U);
        for (std::size_t k = 0; k < n; ++k)
          d.add_term({static_cast<Letter>(mn + matrix_letter(i, k, n)),
                      static_cast<Letter>(mn + nn + matrix_letter(k, j, n))},
                     Scalar(1));
        bsecond[mn + b] = d;
      }
    std::vector<NcPoly> blhs, brhs, bcounit;
    std::vector<NcPoly> beps(mn + nn, NcPoly(Z));
    for (std::size_t l = 0; l < mn; ++l) beps[l] = letter(Z, static_cast<Letter>(l));
    for (std::size_t l = 0; l < nn; ++l) beps[mn + l] = constant(Z, kron(l / n, l % n));
    for (std::size_t l = 0; l < mn; ++l) {
      blhs.push_back(factor_sorted(substitute(beta.images[l], bfirst, U), uf3));
      brhs.push_back(factor_sorted(substitute(beta.images[l], bsecond, U), uf3));
      bcounit.push_back(substitute(beta.images[l], beps, Z));
    }
    out.identities.push_back(exact_check("beta coassociativity", blhs, brhs));
    out.identities.push_back(exact_check("beta counit", bcounit, gens));
  }
  return out;
}

// ---------------------------------------------------------------- certificate

bool BigaloisCertificate::passed() const {
  return failures.empty() && nonvanishing == Nonvanishing::Positive && confluence.confluent &&
         pinching_holds && redundant_reduces && redundant_membership.member &&
         transport.certified && maps.certified() && trace_condition &&
         delta_route == "Certified";
}

namespace {

struct SideResult {
  bool positive = false;
  std::size_t ambiguities = 0;
};

/// Normalizes F, builds the SL_q(2) system for (E_q, F') and reports whether
/// the diamond lemma certifies all single letters as independent.
SideResult nonvanishing_for(const Scalar& q, const FormMatrix& f, const TowerPtr& tower) {
  Normalization norm = normalize_form(f, tower);
  RewriteSystem s = build_sl2_rewrite_system(q, norm.normalized);
  auto cert = certify_confluence(s);
  auto counts = count_irreducible(s, 1);
  return {cert.confluent && counts[1] == 2 * f.size(), cert.resolutions.size()};
}

}  // namespace

BigaloisCertificate bigalois_certificate(const FormMatrix& e, const FormMatrix& f,
                                         const CertificateOptions& options) {
  BigaloisCertificate c;
  auto stage = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
      return true;
    } catch (const std::exception& ex) {
      c.failures.push_back(name + ": " + ex.what());
      return false;
    }
  };

  c.tower = join_towers(e.tower(), f.tower());
  c.trace = trace_invariant(f);
  c.trace_e = trace_invariant(e);
  if (!stage("parameter", [&] {
        auto sl2 = solve_sl2_parameter(c.trace, c.tower);
        c.q = sl2.q;
        c.q_inv = sl2.q_inv;
        c.tower = join_towers(c.tower, c.q.tower());
        c.genericity = classify_genericity(c.q);
      })) {
    return c;
  }
  const FormMatrix eq = sl2_form(c.q);
  if (!stage("normalization", [&] {
        c.normalization = normalize_form(f, c.tower);
        c.tower = c.normalization->tower;
      })) {
    return c;
  }
  const FormMatrix& fn = c.normalization->normalized;
  const std::size_t n = f.size();

  stage("transport", [&] {
    auto psi = transport_morphism(eq, f, Matrix::identity(2),
                                  c.normalization->p.inverse().transpose());
    c.transport = certify_morphism(psi, options.bound, options.limits);
  });

  if (!stage("rewrite system", [&] { c.system = build_sl2_rewrite_system(c.q, fn); })) return c;
  const RewriteSystem& s = *c.system;
  const bool confluence_ok = stage("confluence", [&] { c.confluence = certify_confluence(s); });
  stage("basis counts", [&] { c.basis_counts = count_irreducible(s, options.degree); });
  const bool letters_irreducible = c.basis_counts.size() > 1 && c.basis_counts[1] == 2 * n;
  c.nonvanishing = confluence_ok && c.confluence.confluent && letters_irreducible
                       ? Nonvanishing::Positive
                       : Nonvanishing::Unknown;

  auto presentation = build_BEF(eq, fn, "z");
  stage("pinching", [&] {
    c.pinching_degree = std::min(options.degree, 3);
    c.bounded_dims = quotient_dim_bounded(presentation, c.pinching_degree, options.limits);
    std::vector<std::uint64_t> cumulative;
    std::uint64_t total = 0;
    for (int k = 0; k <= c.pinching_degree; ++k) {
      total += c.basis_counts.at(static_cast<std::size_t>(k));
      cumulative.push_back(total);
    }
    c.pinching_holds = cumulative == c.bounded_dims;
  });
  stage("redundant relation", [&] {
    NcPoly r = sl2_redundant_relation(fn, s.alphabet());
    c.redundant_reduces = reduce(r, s).normal_form.is_zero();
    c.redundant_membership =
        ideal_membership_bounded(presentation, r, options.bound, options.limits);
  });
  if (options.structure_maps) {
    stage("structure maps", [&] {
      c.maps = structure_maps(eq, fn, options.bound, std::nullopt, options.limits);
    });
  }

  c.trace_condition = c.trace_e == c.trace;
  c.e_is_eq = e.size() == 2 && e == eq;
  if (!c.trace_condition) {
    c.delta_route = "NotApplicable";
    c.delta_notes.push_back("tr(E E^-t) differs from tr(F F^-t)");
  } else if (c.e_is_eq) {
    c.delta_route = "Certified";
    c.delta_notes.push_back("E equals E_q: B(E,F) = B(E_q,F) directly");
  } else {
    c.delta_route = "Unknown";
    stage("delta route", [&] {
      c.delta = certify_morphism(delta_morphism(e, f, c.q), options.bound, options.limits);
      const bool delta_ok = c.delta->certified;
      c.delta_notes.push_back(std::string("delta morphism ") +
                              (delta_ok ? "certified" : "not certified"));
      SideResult side_e = nonvanishing_for(c.q, e, c.tower);
      c.delta_notes.push_back(std::string("B(E_q,E) generators ") +
                              (side_e.positive ? "independent" : "not certified"));
      if (delta_ok && side_e.positive && c.nonvanishing == Nonvanishing::Positive) {
        c.delta_route = "Certified";
      }
    });
  }
  return c;
}

}  // namespace bigalois
