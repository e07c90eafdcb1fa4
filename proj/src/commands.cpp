#include "bigalois/commands.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "bigalois/galois.hpp"
#include "bigalois/sl2rep.hpp"
#include "bigalois/structure.hpp"
#include "bigalois/textio.hpp"

namespace bigalois {

namespace {

constexpr const char* kTool = "bigalois 0.1.0";

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).trimmed().str());
    rows.push_back(row);
  }
  return rows;
}

Json genericity_json(const Genericity& g) {
  Json j;
  j["generic"] = g.generic;
  if (!g.generic) j["root_of_unity_order"] = g.order;
  return j;
}

Json morphism_json(const MorphismCertificate& m) {
  std::size_t unknown = 0;
  for (const auto& r : m.relations) unknown += r.verdict.member ? 0 : 1;
  Json j;
  j["name"] = m.name;
  j["certified"] = m.certified;
  j["bound"] = m.bound;
  j["relations"] = m.relations.size();
  j["unknown"] = unknown;
  return j;
}

Json identity_json(const IdentityCheck& c) {
  Json j;
  j["name"] = c.name;
  j["holds"] = c.holds;
  j["method"] = c.exact ? "exact" : "membership";
  if (!c.exact) j["bound"] = c.bound;
  return j;
}

Json counts_json(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Report input_error(Json data, const std::string& what) {
  data["error"] = what;
  return {std::move(data), kInputError};
}

Json header(const std::string& command) {
  Json j;
  j["tool"] = kTool;
  j["command"] = command;
  return j;
}

Json labels(const std::vector<InputFile>& files) {
  Json a = Json::array();
  for (const auto& f : files) a.push_back(f.label);
  return a;
}

/// Runs `body`, mapping parse and precondition errors to exit code 4 and
/// adding elapsed time when requested.
Report run(Json data, bool timing, const std::function<void(Report&)>& body) {
  Report r{std::move(data), kSuccess};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const ParseError& e) {
    return input_error(std::move(r.data), e.what());
  } catch (const PreconditionError& e) {
    return input_error(std::move(r.data), e.what());
  } catch (const SingularMatrix& e) {
    return input_error(std::move(r.data), e.what());
  } catch (const Error& e) {
    r.data["error"] = e.what();
    r.exit_code = kUndetermined;
  }
  if (timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               start)
                        .count();
    r.data["elapsed_ms"] = static_cast<std::int64_t>(ms);
  }
  return r;
}

TowerPtr base_tower(const CommandOptions& o) { return Tower::rationals_with_cap(o.tower_cap); }

FormMatrix read_form(const InputFile& f, const CommandOptions& o) {
  try {
    return parse_form_file(f.text, base_tower(o));
  } catch (const ParseError& e) {
    throw ParseError(f.label + ": " + e.what());
  }
}

Matrix read_matrix(const InputFile& f, const CommandOptions& o) {
  try {
    return parse_matrix_file(f.text, base_tower(o)).matrix;
  } catch (const ParseError& e) {
    throw ParseError(f.label + ": " + e.what());
  }
}

void render(std::ostringstream& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  auto is_flat = [](const Json& a) {
    return std::all_of(a.begin(), a.end(), [](const Json& x) {
      return x.is_primitive() && (!x.is_string() || x.get<std::string>().find(',') == std::string::npos);
    });
  };
  for (const auto& [key, x] : v.items()) {
    if (x.is_object()) {
      out << pad << key << ":\n";
      render(out, x, indent + 1);
    } else if (x.is_array() && x.empty()) {
      out << pad << key << ": []\n";
    } else if (x.is_array() && is_flat(x)) {
      out << pad << key << ": ";
      for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << scalar(x[i]);
      out << "\n";
    } else if (x.is_array()) {
      out << pad << key << ":\n";
      for (const auto& item : x) {
        if (item.is_object()) {
          std::ostringstream sub;
          render(sub, item, indent + 2);
          std::string s = sub.str();
          s.replace(static_cast<std::size_t>(indent) * 2 + 2, 2, "- ");
          out << s;
        } else if (item.is_array() && is_flat(item)) {
          out << pad << "  - ";
          for (std::size_t i = 0; i < item.size(); ++i) out << (i ? " " : "") << scalar(item[i]);
          out << "\n";
        } else {
          out << pad << "  - " << scalar(item) << "\n";
        }
      }
    } else {
      out << pad << key << ": " << scalar(x) << "\n";
    }
  }
}

SimpleLabel parse_label(const std::string& s) {
  auto number = [&](std::size_t& i) {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || i - start > 6) throw PreconditionError("invalid label '" + s + "'");
    return std::stoi(s.substr(start, i - start));
  };
  SimpleLabel x;
  std::size_t i = 0;
  if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    x.u = number(i);
  } else {
    if (i < s.size() && s[i] == 'V') {
      ++i;
      x.v = number(i);
    }
    if (i < s.size() && s[i] == 'U') {
      ++i;
      x.u = number(i);
    }
  }
  if (i != s.size() || s.empty()) throw PreconditionError("invalid label '" + s + "'");
  return x;
}

FusionContext parse_regime(const std::string& regime) {
  if (regime == "generic") return FusionContext::generic();
  if (regime.rfind("root", 0) == 0 && regime.size() > 4 && regime.size() < 10 &&
      std::all_of(regime.begin() + 4, regime.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return FusionContext::root_of_unity(std::stoi(regime.substr(4)));
  }
  throw PreconditionError("regime must be 'generic' or 'rootN', got '" + regime + "'");
}

}  // namespace

std::string render_text(const Json& data) {
  std::ostringstream out;
  render(out, data, 0);
  return out.str();
}

std::string Report::text() const { return render_text(data); }

std::string Report::json() const { return data.dump(2) + "\n"; }

Report cmd_present(const InputFile& e_file, const CommandOptions& options) {
  Json data = header("present");
  data["input"] = e_file.label;
  return run(std::move(data), options.timing, [&](Report& r) {
    const FormMatrix e = read_form(e_file, options);
    auto p = build_BE(e, "a");
    Json pres;
    pres["name"] = "B(E)";
    pres["generators"] = p->alphabet()->names();
    Json rels = Json::array();
    for (const auto& rel : p->relations()) rels.push_back(rel.str());
    pres["relations"] = rels;
    r.data["matrix"] = matrix_json(e.entries());
    r.data["presentation"] = pres;
    const Scalar c = trace_invariant(e).trimmed();
    r.data["trace"] = c.str();
    r.data["quadratic"] = "q^2 + (" + c.str() + ")*q + 1";
    auto sl2 = solve_sl2_parameter(c, e.tower());
    Json roots = Json::array();
    bool all_generic = true;
    for (const Scalar& q : {sl2.q, sl2.q_inv}) {
      Json root;
      root["q"] = q.trimmed().str();
      const Genericity g = classify_genericity(q);
      root["genericity"] = genericity_json(g);
      all_generic = all_generic && g.generic;
      roots.push_back(root);
    }
    r.data["tower"] = join_towers(e.tower(), sl2.q.tower())->describe();
    r.data["roots"] = roots;
    r.data["cosemisimple"] = all_generic;
  });
}

Report cmd_bigalois(const InputFile& e_file, const InputFile& f_file,
                    const CommandOptions& options) {
  Json data = header("bigalois");
  data["inputs"] = labels({e_file, f_file});
  data["degree"] = options.degree;
  data["bound"] = options.bound;
  return run(std::move(data), options.timing, [&](Report& r) {
    if (options.degree < 1 || options.bound < 2) {
      throw PreconditionError("--degree must be at least 1 and --bound at least 2");
    }
    const FormMatrix e = read_form(e_file, options);
    const FormMatrix f = read_form(f_file, options);
    CertificateOptions co;
    co.degree = options.degree;
    co.bound = options.bound;
    const BigaloisCertificate c = bigalois_certificate(e, f, co);

    Json params;
    params["trace_f"] = c.trace.trimmed().str();
    params["q"] = c.q.trimmed().str();
    params["q_inv"] = c.q_inv.trimmed().str();
    params["tower"] = c.tower->describe();
    params["genericity"] = genericity_json(c.genericity);
    r.data["parameters"] = params;
    if (c.normalization) {
      Json nj;
      nj["method"] = c.normalization->method;
      if (c.normalization->lambda) nj["lambda"] = c.normalization->lambda->trimmed().str();
      nj["p"] = matrix_json(c.normalization->p.entries());
      nj["normalized_f"] = matrix_json(c.normalization->normalized.entries());
      nj["transport"] = morphism_json(c.transport);
      r.data["normalization"] = nj;
    }
    if (c.system) {
      Json sj;
      Json rules = Json::array();
      for (std::size_t i = 0; i < c.system->size(); ++i) rules.push_back(c.system->rule_str(i));
      sj["rules"] = rules;
      Json cj;
      cj["confluent"] = c.confluence.confluent;
      cj["ambiguities"] = c.confluence.resolutions.size();
      cj["overlaps"] = c.confluence.overlaps();
      cj["inclusions"] = c.confluence.inclusions();
      if (c.confluence.counterexample) cj["counterexample"] = *c.confluence.counterexample;
      sj["confluence"] = cj;
      sj["basis_counts"] = counts_json(c.basis_counts);
      r.data["rewrite_system"] = sj;
    }
    Json pj;
    pj["degree"] = c.pinching_degree;
    pj["bounded_dims"] = counts_json(c.bounded_dims);
    pj["holds"] = c.pinching_holds;
    r.data["pinching"] = pj;
    Json rj;
    rj["reduces_to_zero"] = c.redundant_reduces;
    rj["member"] = c.redundant_membership.member;
    rj["bound"] = c.redundant_membership.bound;
    rj["witness_terms"] = c.redundant_membership.witness.size();
    r.data["redundant_relation"] = rj;
    r.data["nonvanishing"] = c.nonvanishing == Nonvanishing::Positive ? "Positive" : "Unknown";
    Json mj;
    Json maps = Json::array();
    for (const auto& m : c.maps.maps) maps.push_back(morphism_json(m));
    mj["maps"] = maps;
    Json ids = Json::array();
    for (const auto& i : c.maps.identities) ids.push_back(identity_json(i));
    mj["identities"] = ids;
    if (!c.maps.skipped.empty()) mj["skipped"] = c.maps.skipped;
    r.data["structure_maps"] = mj;
    Json ej;
    ej["trace_e"] = c.trace_e.trimmed().str();
    ej["trace_condition"] = c.trace_condition;
    ej["e_is_eq"] = c.e_is_eq;
    ej["delta_route"] = c.delta_route;
    if (c.delta) ej["delta"] = morphism_json(*c.delta);
    ej["notes"] = c.delta_notes;
    r.data["e_side"] = ej;
    r.data["failures"] = c.failures;
    const bool passed = c.passed();
    r.data["verdict"] = passed ? "certified" : !c.trace_condition ? "trace mismatch" : "undetermined";
    r.exit_code = passed ? kSuccess : !c.trace_condition ? kVerifiedNegative : kUndetermined;
  });
}

Report cmd_fusion(const std::string& regime, const std::string& k, const std::string& l) {
  Json data = header("fusion");
  data["regime"] = regime;
  return run(std::move(data), false, [&](Report& r) {
    const FusionContext ctx = parse_regime(regime);
    const SimpleLabel x = parse_label(k), y = parse_label(l);
    r.data["context"] = ctx.str();
    r.data["product"] = x.str() + " (x) " + y.str();
    FusionResult result;
    try {
      result = tensor_decompose(x, y, ctx);
    } catch (const OutOfSpecifiedRange& e) {
      r.data["error"] = e.what();
      r.exit_code = kUndetermined;
      return;
    }
    if (const auto* sum = std::get_if<RepElement>(&result)) {
      r.data["semisimple"] = true;
      r.data["decomposition"] = sum->str();
    } else {
      r.data["semisimple"] = false;
      r.data["filtration"] = std::get<FiltrationReport>(result).str();
    }
    Json dims;
    dims["factors"] = x.dim() * y.dim();
    dims["result"] = dim_of(result);
    dims["holds"] = x.dim() * y.dim() == dim_of(result);
    r.data["dimensions"] = dims;
    if (!ctx.is_generic() && std::holds_alternative<FiltrationReport>(result)) {
      auto c = fusion_contradiction_check(ctx.order());
      Json cj;
      std::string ladder;
      for (const auto& s : c.ladder) ladder += (ladder.empty() ? "" : " + ") + s.str();
      cj["semisimple_ladder"] = ladder;
      cj["composition_factors"] = std::get<FiltrationReport>(result).str();
      cj["factor_multisets_differ"] = c.multisets_differ;
      r.data["ladder_comparison"] = cj;
    }
  });
}

Report cmd_verify(const std::string& kind, const std::vector<InputFile>& files,
                  const CommandOptions& options) {
  Json data = header("verify");
  data["kind"] = kind;
  data["inputs"] = labels(files);
  return run(std::move(data), options.timing, [&](Report& r) {
    auto need = [&](std::size_t lo, std::size_t hi, const std::string& usage) {
      if (files.size() < lo || files.size() > hi) {
        throw PreconditionError("verify " + kind + " expects " + usage);
      }
    };
    if (kind == "congruence") {
      need(2, 3, "E F [M]");
      const FormMatrix e = read_form(files[0], options), f = read_form(files[1], options);
      std::optional<Matrix> m;
      if (files.size() == 3) {
        m = read_matrix(files[2], options);
        if (m->rows() != e.size() || e.size() != f.size()) {
          throw PreconditionError("witness size does not match the forms");
        }
        r.data["witness_verified"] = congruence_verify(e, f, *m);
      }
      const CongruenceReport c = congruence_invariants(e, f, m);
      r.data["sizes_match"] = c.sizes_match;
      if (c.sizes_match) {
        r.data["trace_e"] = trace_invariant(e).trimmed().str();
        r.data["trace_f"] = trace_invariant(f).trimmed().str();
        r.data["trace_equal"] = c.trace_equal;
        Json fe = Json::array(), ff = Json::array();
        for (const auto& p : c.factors_e) fe.push_back(p.str());
        for (const auto& p : c.factors_f) ff.push_back(p.str());
        r.data["invariant_factors_e"] = fe;
        r.data["invariant_factors_f"] = ff;
        r.data["asymmetry_similar"] = c.asymmetry_similar;
      }
      r.data["verdict"] = to_string(c.verdict);
      r.exit_code = c.verdict == CongruenceVerdict::CongruentWithWitness ? kSuccess
                    : c.verdict == CongruenceVerdict::NotCongruent       ? kVerifiedNegative
                                                                         : kUndetermined;
    } else if (kind == "automorphism") {
      need(2, 2, "E P");
      const FormMatrix e = read_form(files[0], options);
      const Matrix p = read_matrix(files[1], options);
      const AutomorphismVerdict v = automorphism_check(e, p);
      r.data["verdict"] = to_string(v);
      r.exit_code = v == AutomorphismVerdict::No ? kVerifiedNegative : kSuccess;
    } else if (kind == "star" || kind == "cqg") {
      need(2, 2, "E M");
      const FormMatrix e = read_form(files[0], options);
      const Matrix m = read_matrix(files[1], options);
      const StarReport s = kind == "star" ? star_structure_verify(e, m) : cqg_verify(e, m);
      Json sj;
      sj["first_equation"] = s.first_equation;
      sj["second_equation"] = s.second_equation;
      if (s.lambda) sj["lambda"] = s.lambda->str();
      sj["holds"] = s.star_holds();
      r.data["star"] = sj;
      if (kind == "cqg") {
        Json cj;
        cj["verdict"] = to_string(s.cqg);
        if (s.mu) cj["mu"] = s.mu->str();
        if (s.h) cj["h"] = matrix_json(*s.h);
        if (!s.minors.empty()) {
          Json mi = Json::array();
          for (const auto& x : s.minors) mi.push_back(x.str());
          cj["leading_minors"] = mi;
        }
        r.data["cqg"] = cj;
      }
      if (!s.reason.empty()) r.data["reason"] = s.reason;
      if (kind == "star") {
        r.data["verdict"] = s.star_holds() ? "StarStructure" : "NotStarStructure";
        r.exit_code = s.star_holds() ? kSuccess : kVerifiedNegative;
      } else {
        r.data["verdict"] = to_string(s.cqg);
        r.exit_code = s.cqg == CqgVerdict::Cqg            ? kSuccess
                      : s.cqg == CqgVerdict::Undetermined ? kUndetermined
                                                          : kVerifiedNegative;
      }
    } else {
      throw PreconditionError("unknown verify kind '" + kind +
                              "' (congruence, automorphism, star, cqg)");
    }
  });
}

}  // namespace bigalois
