#pragma once

// Job layer shared by the CLI and the test suites: JSON job parsing,
// cross-validation, command execution, and JSON/text result rendering.
//
// Job schema (all exact numeric values are strings):
//   source (exactly one):
//     "presentation": {"generators": ["a","b"], "relators": ["a b a b^-1 a^-1 b^-1"],
//                      "meridians": ["a"]?}
//     "pd":    [[1,4,2,5],[3,6,4,1],[5,2,6,3]]      ([] = unknot)
//     "braid": {"strands": 2, "word": [1,1,1]}
//   "phi"?:   {"a": ["1"], "b": ["1"]}               (per-generator Z^n images)
//   "rho"?:   {"dim": 2, "images": {"a": [["1","1"],["0","1"]], ...}}
//   "cover"?: {"invariant_factors": [2,2], "pi_bar": [[1,0],[0,1]]}
//   "conductor"?: 12
//   "delta"?: "t^2 - t + 1", "q"?: 2                 (branched / homology-order)

#include "polytor/polytor.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polytor {

using nlohmann::json;

struct JobSpec {
  Presentation presentation;
  AbelMap phi;
  MatRep rho;
  std::optional<CoverSpec> cover;
  CycloFieldPtr field;
  std::optional<LaurentPoly> delta;  // explicit branched/homology-order input
  long q = 0;
};

struct JobResult {
  int exit_code = 0;
  json machine;
  std::string human;
};

namespace jobdetail {

inline long to_long(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) {
    try {
      return std::stol(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("expected an integer for " + what);
}

inline Presentation parse_source(const json& job) {
  int sources = job.count("presentation") + job.count("pd") + job.count("braid");
  if (sources != 1)
    throw ValidationError("job needs exactly one of presentation | pd | braid");

  if (job.contains("presentation")) {
    const json& p = job.at("presentation");
    Presentation out;
    for (const auto& g : p.at("generators")) out.generator_names.push_back(g.get<std::string>());
    if (p.contains("relators"))
      for (const auto& r : p.at("relators"))
        out.relators.push_back(parse_word(r.get<std::string>(), out.generator_names));
    if (p.contains("meridians")) {
      std::vector<int> ms;
      for (const auto& m : p.at("meridians")) {
        std::string name = m.get<std::string>();
        auto it = std::find(out.generator_names.begin(), out.generator_names.end(), name);
        if (it == out.generator_names.end())
          throw ValidationError("unknown meridian generator '" + name + "'");
        ms.push_back(static_cast<int>(it - out.generator_names.begin()));
      }
      out.meridian_indices = ms;
    }
    out.validate();
    return out;
  }
  if (job.contains("pd")) {
    std::vector<PDCrossing> pd;
    for (const auto& x : job.at("pd")) {
      if (!x.is_array() || x.size() != 4)
        throw ValidationError("each PD crossing needs exactly 4 edge labels");
      pd.push_back({to_long(x[0], "pd"), to_long(x[1], "pd"), to_long(x[2], "pd"),
                    to_long(x[3], "pd")});
    }
    return wirtinger_from_pd(pd);
  }
  const json& b = job.at("braid");
  std::vector<int> word;
  for (const auto& s : b.at("word")) word.push_back(static_cast<int>(to_long(s, "braid word")));
  return presentation_from_braid(word, static_cast<int>(to_long(b.at("strands"), "strands")));
}

inline std::optional<CoverSpec> parse_cover(const json& job) {
  if (!job.contains("cover")) return std::nullopt;
  const json& c = job.at("cover");
  CoverSpec spec;
  for (const auto& q : c.at("invariant_factors"))
    spec.group.invariant_factors.push_back(to_long(q, "invariant factor"));
  spec.group.validate();
  for (const auto& row : c.at("pi_bar")) {
    std::vector<long> r;
    for (const auto& v : row) r.push_back(to_long(v, "pi_bar entry"));
    spec.pi_bar.matrix.push_back(std::move(r));
  }
  spec.pi_bar.group = spec.group;
  return spec;
}

}  // namespace jobdetail

inline JobSpec parse_job(const json& job) {
  JobSpec spec;
  spec.presentation = jobdetail::parse_source(job);
  spec.cover = jobdetail::parse_cover(job);

  // Conductor: explicit override, else the exponent of the deck group,
  // widened by q for the branched/homology-order evaluations.
  long conductor = 1;
  if (spec.cover) conductor = spec.cover->group.exponent();
  if (job.contains("q")) {
    long q = jobdetail::to_long(job.at("q"), "q");
    if (q >= 1) conductor = lcm_long(conductor, q);
  }
  if (job.contains("conductor")) {
    long requested = jobdetail::to_long(job.at("conductor"), "conductor");
    if (requested < 1) throw ValidationError("conductor must be >= 1");
    if (requested % conductor != 0)
      throw ConductorError("conductor " + std::to_string(requested) +
                           " does not absorb the deck group exponent " +
                           std::to_string(conductor));
    conductor = requested;
  }
  spec.field = CycloField::make(conductor);

  // phi: explicit override or the abelianization's free part.
  if (job.contains("phi")) {
    const json& ph = job.at("phi");
    long n = -1;
    spec.phi.images.assign(spec.presentation.num_generators(), {});
    for (std::size_t g = 0; g < spec.presentation.num_generators(); ++g) {
      const std::string& name = spec.presentation.generator_names[g];
      if (!ph.contains(name))
        throw ValidationError("phi override is missing generator '" + name + "'");
      ExpVec img;
      for (const auto& v : ph.at(name)) img.push_back(jobdetail::to_long(v, "phi entry"));
      if (n < 0) n = static_cast<long>(img.size());
      spec.phi.images[g] = std::move(img);
    }
    spec.phi.num_vars = n;
  } else {
    spec.phi = default_phi(spec.presentation);
  }
  spec.phi.validate(spec.presentation);

  // rho: explicit images or the trivial one-dimensional representation.
  if (job.contains("rho")) {
    const json& rh = job.at("rho");
    spec.rho.dim = jobdetail::to_long(rh.at("dim"), "rho dim");
    const json& images = rh.at("images");
    for (std::size_t g = 0; g < spec.presentation.num_generators(); ++g) {
      const std::string& name = spec.presentation.generator_names[g];
      if (!images.contains(name))
        throw ValidationError("rho is missing generator '" + name + "'");
      const json& rows = images.at(name);
      Matrix<CycloNum> m(static_cast<std::size_t>(spec.rho.dim),
                         static_cast<std::size_t>(spec.rho.dim), CycloNum::zero(spec.field));
      if (rows.size() != static_cast<std::size_t>(spec.rho.dim))
        throw ValidationError("rho(" + name + ") has the wrong number of rows");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != static_cast<std::size_t>(spec.rho.dim))
          throw ValidationError("rho(" + name + ") has the wrong number of columns");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
          m.at(i, j) = parse_cyclo(rows[i][j].get<std::string>(), spec.field);
      }
      spec.rho.images.push_back(std::move(m));
    }
  } else {
    spec.rho = MatRep::trivial(spec.presentation, spec.field);
  }
  spec.rho.validate(spec.presentation, spec.field);

  if (spec.cover) {
    spec.cover->pi_bar.validate(spec.phi.num_vars);
  }

  if (job.contains("delta"))
    spec.delta = parse_laurent(job.at("delta").get<std::string>(), 1, spec.field);
  if (job.contains("q")) spec.q = jobdetail::to_long(job.at("q"), "q");
  return spec;
}

// --- Result rendering --------------------------------------------------------

inline json unit_group_json(const UnitGroup& u) {
  json lattice = json::array();
  const Matrix<BigInt>& g = u.monomial_lattice.generators();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(g.at(i, j).str());
    lattice.push_back(row);
  }
  return json{{"sign", u.allow_sign}, {"root_order", u.root_order}, {"lattice", lattice}};
}

// Canonical display normalization; multiplies the value by a unit only:
// numerator shifted to minimum exponent zero and scaled by -zeta^b when its
// lex-greatest coefficient is minus a root of unity times a positive
// rational. The denominator normalization is value-preserving.
inline TorsionValue display_normalized(const TorsionValue& t) {
  TorsionValue out = t;
  if (out.value.is_zero()) return out;
  LaurentPoly num = out.value.num().monomial_normalized();
  CycloNum lead = num.lex_greatest().second;
  for (long b = 0; b < t.value.field()->conductor(); ++b) {
    CycloNum zinv = CycloNum::zeta_pow(t.value.field(), -b);
    CycloNum unscaled = lead * zinv;
    if (unscaled.is_rational()) {
      // lead = r * zeta^b: strip the root, flip a negative r.
      num = num.scaled(unscaled.rational_value() < 0 ? -zinv : zinv);
      break;
    }
  }
  out.value = RatFunc(num, out.value.den());
  return out;
}

inline json torsion_json(const TorsionValue& t) {
  TorsionValue n = display_normalized(t);
  return json{{"num", laurent_to_string(n.value.num())},
              {"den", laurent_to_string(n.value.den())},
              {"unit_group", unit_group_json(n.units)}};
}

inline std::string torsion_text(const TorsionValue& t) {
  return ratfunc_to_string(display_normalized(t).value);
}

inline json witness_json(const UnitWitness& w) {
  json mono = json::array();
  for (long e : w.monomial) mono.push_back(e);
  return json{{"sign", w.sign}, {"zeta_power", w.zeta_power}, {"monomial", mono}};
}

// "-z^3*t1^2" style rendering of a unit sign * zeta^b * t^a.
inline std::string witness_text(const UnitWitness& w) {
  std::string out = w.sign < 0 ? "-" : "";
  std::string parts;
  if (w.zeta_power != 0) parts = "z" + (w.zeta_power == 1 ? "" : "^" + std::to_string(w.zeta_power));
  std::string mono = monomial_to_string(static_cast<long>(w.monomial.size()), w.monomial);
  if (!mono.empty()) parts += (parts.empty() ? "" : "*") + mono;
  if (parts.empty()) parts = "1";
  return out + parts;
}

// --- Commands ----------------------------------------------------------------

inline JobResult cmd_compute(const JobSpec& spec) {
  TensorRep rep = TensorRep::make(spec.phi, spec.rho, spec.field);
  rep.validate_relators(spec.presentation);
  TorsionValue t = wada_torsion(spec.presentation, rep);
  JobResult r;
  r.machine = json{{"command", "compute"}, {"torsion", torsion_json(t)}};
  r.human = "torsion = " + torsion_text(t) + "\n";
  return r;
}

inline JobResult cmd_verify_cover(const JobSpec& spec) {
  if (!spec.cover) throw ValidationError("verify-cover needs a cover spec");
  CoverReport rep = verify_cover(spec.presentation, spec.phi, spec.rho, *spec.cover, spec.field);
  JobResult r;
  json factors = json::array();
  std::ostringstream hu;
  for (std::size_t i = 0; i < rep.factors.size(); ++i) {
    factors.push_back(
        json{{"character", rep.factor_labels[i]}, {"torsion", torsion_json(rep.factors[i])}});
    hu << "factor xi=" << rep.factor_labels[i] << " : " << torsion_text(rep.factors[i]) << "\n";
  }
  r.machine = json{{"command", "verify-cover"},
                   {"rhs", torsion_json(rep.rhs)},
                   {"factors", factors},
                   {"equal", rep.equal},
                   {"timings_ms", json{{"lhs", rep.lhs_ms}, {"rhs", rep.rhs_ms}}}};
  hu << "rhs = " << torsion_text(rep.rhs) << "\n";
  if (rep.lhs) {
    r.machine["lhs"] = torsion_json(*rep.lhs);
    hu << "lhs = " << torsion_text(*rep.lhs) << "\n";
  } else {
    r.machine["lhs_unavailable"] = rep.lhs_unavailable_reason;
    hu << "lhs unavailable: " << rep.lhs_unavailable_reason << "\n";
  }
  if (rep.witness) {
    r.machine["witness_unit"] = witness_json(*rep.witness);
    hu << "witness unit = " << witness_text(*rep.witness) << "\n";
  }
  hu << "equal = " << (rep.equal ? "true" : "false") << "\n";
  r.human = hu.str();
  r.exit_code = rep.equal ? 0 : 1;
  return r;
}

// The single-variable Alexander polynomial: torsion * (t - 1), normalized.
inline LaurentPoly alexander_from_torsion(const JobSpec& spec) {
  TensorRep rep = TensorRep::make(spec.phi, spec.rho, spec.field);
  if (spec.phi.num_vars != 1)
    throw ValidationError("branched/homology-order commands need a single variable");
  TorsionValue t = wada_torsion(spec.presentation, rep);
  RatFunc delta = t.value * RatFunc(LaurentPoly::variable(1, 0, spec.field) -
                                    LaurentPoly::one(1, spec.field));
  if (!(delta.den() == LaurentPoly::one(1, spec.field)))
    throw ValidationError("torsion * (t-1) is not a polynomial; cannot form the Alexander polynomial");
  LaurentPoly num = delta.num().monomial_normalized();
  const CycloNum& low = num.lex_least().second;
  if (low.is_rational() && low.rational_value() < 0) num = -num;
  return num;
}

inline JobResult cmd_branched(const JobSpec& spec) {
  if (spec.q < 1) throw ValidationError("branched command needs q >= 1");
  LaurentPoly delta = spec.delta ? *spec.delta : alexander_from_torsion(spec);
  LaurentPoly prod = branched_product(delta, spec.q);
  JobResult r;
  r.machine = json{{"command", "branched"},
                   {"delta", laurent_to_string(delta)},
                   {"q", spec.q},
                   {"product", laurent_to_string(prod)}};
  r.human = "delta = " + laurent_to_string(delta) + "\nbranched product = " +
            laurent_to_string(prod) + "\n";
  return r;
}

inline JobResult cmd_homology_order(const JobSpec& spec) {
  if (spec.q < 2) throw ValidationError("homology-order command needs q >= 2");
  LaurentPoly delta = spec.delta ? *spec.delta : alexander_from_torsion(spec);
  std::optional<BigInt> order = homology_order(delta, spec.q);
  JobResult r;
  r.machine = json{{"command", "homology-order"},
                   {"delta", laurent_to_string(delta)},
                   {"q", spec.q},
                   {"order", order ? json(order->str()) : json("infinite")}};
  r.human = "homology order = " + (order ? order->str() : std::string("infinite")) + "\n";
  return r;
}

inline JobResult cmd_characters(const JobSpec& spec) {
  if (!spec.cover) throw ValidationError("characters command needs a cover spec");
  JobResult r;
  json list = json::array();
  std::ostringstream hu;
  for (const auto& xi : characters(spec.cover->group)) {
    std::vector<CycloNum> bar = pullback_character(xi, spec.cover->pi_bar, spec.phi.num_vars, spec.field);
    json values = json::array();
    hu << "xi=" << xi.label() << " :";
    for (const auto& v : bar) {
      values.push_back(cyclo_to_string(v));
      hu << " " << cyclo_to_string(v);
    }
    list.push_back(json{{"character", xi.label()}, {"xi_bar", values}});
    hu << "\n";
  }
  r.machine = json{{"command", "characters"}, {"characters", list}};
  r.human = hu.str();
  return r;
}

inline JobResult cmd_rs(const JobSpec& spec) {
  if (!spec.cover) throw ValidationError("rs command needs a cover spec");
  SubgroupData sub =
      reidemeister_schreier(spec.presentation, spec.phi.images, spec.phi.num_vars,
                            spec.cover->pi_bar);
  JobResult r;
  json gens = json::array(), rels = json::array(), incl = json::object(), reps = json::array();
  for (const auto& n : sub.presentation.generator_names) gens.push_back(n);
  for (const auto& rel : sub.presentation.relators)
    rels.push_back(word_to_string(rel, sub.presentation.generator_names));
  for (std::size_t i = 0; i < sub.inclusion.size(); ++i)
    incl[sub.presentation.generator_names[i]] =
        word_to_string(sub.inclusion[i], spec.presentation.generator_names);
  for (const auto& w : sub.coset_reps)
    reps.push_back(word_to_string(w, spec.presentation.generator_names));
  r.machine = json{{"command", "rs"},
                   {"index", sub.index},
                   {"presentation", json{{"generators", gens}, {"relators", rels}}},
                   {"inclusion", incl},
                   {"coset_reps", reps}};
  std::ostringstream hu;
  hu << "index = " << sub.index << "\ngenerators:";
  for (const auto& n : sub.presentation.generator_names) hu << " " << n;
  hu << "\nrelators:\n";
  for (const auto& rel : sub.presentation.relators)
    hu << "  " << word_to_string(rel, sub.presentation.generator_names) << "\n";
  r.human = hu.str();
  return r;
}

inline JobResult run_job(const json& job, const std::string& command) {
  JobSpec spec = parse_job(job);
  if (command == "compute") return cmd_compute(spec);
  if (command == "verify-cover") return cmd_verify_cover(spec);
  if (command == "branched") return cmd_branched(spec);
  if (command == "homology-order") return cmd_homology_order(spec);
  if (command == "characters") return cmd_characters(spec);
  if (command == "rs") return cmd_rs(spec);
  throw ValidationError("unknown command '" + command + "'");
}

// Exception -> exit-code mapping shared by the CLI and tests.
inline JobResult run_job_checked(const json& job, const std::string& command) {
  try {
    return run_job(job, command);
  } catch (const NonAcyclicError& e) {
    JobResult r;
    r.exit_code = 3;
    r.machine = json{{"error", e.what()}};
    if (!e.offending_character.empty()) r.machine["character"] = e.offending_character;
    r.human = std::string("error: ") + e.what() +
              (e.offending_character.empty() ? "" : " [character " + e.offending_character + "]") +
              "\n";
    return r;
  } catch (const UnsupportedError& e) {
    JobResult r;
    r.exit_code = 4;
    r.machine = json{{"error", e.what()}};
    r.human = std::string("error: ") + e.what() + "\n";
    return r;
  } catch (const ValidationError& e) {
    JobResult r;
    r.exit_code = 2;
    r.machine = json{{"error", e.what()}};
    r.human = std::string("error: ") + e.what() + "\n";
    return r;
  } catch (const json::exception& e) {
    JobResult r;
    r.exit_code = 2;
    r.machine = json{{"error", std::string("malformed job: ") + e.what()}};
    r.human = std::string("error: malformed job: ") + e.what() + "\n";
    return r;
  }
}

}  // namespace polytor
