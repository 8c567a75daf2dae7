#include "skraw/cli.hpp"

#include "skraw/glaction.hpp"
#include "skraw/krawtchouk.hpp"
#include "skraw/spherical.hpp"
#include "skraw/superpoly.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace skraw::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string index_list(const std::vector<int>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json subset_json(Bits b) { return IndexSubset(b).members(); }

struct Loaded {
  EvenParams even;
  OddParams odd;
};

Loaded load_tuples(const RunConfig& cfg) {
  if (cfg.params_path && cfg.gen) throw UsageError("--params and --gen are mutually exclusive");
  if (cfg.gen) {
    if (cfg.gen->m < 0 || cfg.gen->n < 0 || cfg.gen->m >= static_cast<int>(kMaxDim) || cfg.gen->n >= 31)
      throw UsageError("--gen sizes out of range");
    const ParamSet ps = generated_params(*cfg.gen);
    return {ps.even, ps.odd};
  }
  if (!cfg.params_path) throw UsageError("one of --params FILE or --gen m n seed is required");
  try {
    auto [even, odd] = tuples_from_json(read_json_file(*cfg.params_path));
    return {std::move(even), std::move(odd)};
  } catch (const ParamFormatError& e) {
    throw UsageError(e.what());
  } catch (const DimensionError& e) {
    throw UsageError(e.what());
  }
}

struct SuiteResult {
  std::string name;
  Residual residual;
  bool skipped = false;
  std::string note;
};

/// Emits the report either as one JSON document or as CSV rows.
class Report {
 public:
  explicit Report(Format f) : format_(f) {}

  json doc = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  void write(std::ostream& os) const {
    if (format_ == Format::json) {
      os << doc.dump(2) << '\n';
      return;
    }
    const auto line = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << '\n';
    };
    line(csv_header);
    for (const auto& r : csv_rows) line(r);
  }

 private:
  Format format_;
};

int cmd_validate(const RunConfig& cfg, Report& rep) {
  const Loaded t = load_tuples(cfg);
  ValidationReport vr = validate(t.even, "even", cfg.tol);
  const ValidationReport vo = validate(t.odd, "odd", cfg.tol);
  vr.entries.insert(vr.entries.end(), vo.entries.begin(), vo.entries.end());
  vr.pass = vr.pass && vo.pass;
  if (vr.pass) {
    try {
      const ValidationReport full = validate(ParamSet::make(t.even, t.odd), cfg.tol);
      vr = full;
    } catch (const DegeneracyError&) {
      vr.entries.push_back({"normalizers", std::numeric_limits<double>::infinity(), false});
      vr.pass = false;
    }
  }
  rep.doc["pass"] = vr.pass;
  rep.doc["tolerance"] = cfg.tol;
  rep.doc["entries"] = json::array();
  rep.csv_header = {"name", "residual", "pass"};
  for (const auto& e : vr.entries) {
    rep.doc["entries"].push_back({{"name", e.name}, {"residual", e.residual}, {"pass", e.pass}});
    rep.csv_rows.push_back({e.name, num(e.residual), e.pass ? "true" : "false"});
  }
  return vr.pass ? kExitOk : kExitVerificationFailure;
}

/// Loads parameters and refuses to go on with an inadmissible set.
ParamSet admissible_params(const RunConfig& cfg, std::ostream& err) {
  const Loaded t = load_tuples(cfg);
  ParamSet ps;
  try {
    ps = ParamSet::make(t.even, t.odd);
  } catch (const DegeneracyError& e) {
    err << "parameters are degenerate: " << e.what() << '\n';
    throw;
  }
  const ValidationReport vr = validate(ps, std::max(cfg.tol, kDefaultValidationTol));
  if (!vr.pass) {
    for (const auto& e : vr.entries)
      if (!e.pass) err << "validation failed: " << e.name << " residual " << e.residual << '\n';
    throw DegeneracyError("parameters fail validation");
  }
  return ps;
}

int odd_degree_range(const RunConfig& cfg, const ParamSet& ps, int& lo, int& hi) {
  const int top = std::min(cfg.degree, ps.n() + 1);
  if (cfg.odd_degree) {
    if (*cfg.odd_degree < 0 || *cfg.odd_degree > top) throw UsageError("--odd-degree out of range");
    lo = hi = *cfg.odd_degree;
  } else {
    lo = 0;
    hi = top;
  }
  return hi - lo + 1;
}

int cmd_eval(const RunConfig& cfg, const ParamSet& ps, Report& rep) {
  int lo = 0;
  int hi = 0;
  odd_degree_range(cfg, ps, lo, hi);
  rep.csv_header = {"alpha", "eps", "alpha_tilde", "eps_tilde", "value_re", "value_im"};
  rep.doc["degree"] = cfg.degree;
  rep.doc["values"] = json::array();
  for (int d = lo; d <= hi; ++d) {
    const SuperBasis basis = SuperBasis::slice(ps.m(), ps.n(), cfg.degree, d);
    for (const auto& plain : basis.monomials())
      for (const auto& tilde : basis.monomials()) {
        const Scalar v = eval_p(plain, tilde, ps);
        const auto eps = IndexSubset(plain.eps).members();
        const auto eps_t = IndexSubset(tilde.eps).members();
        rep.doc["values"].push_back({{"alpha", plain.alpha},
                                     {"eps", eps},
                                     {"alpha_tilde", tilde.alpha},
                                     {"eps_tilde", eps_t},
                                     {"value", json::array({v.real(), v.imag()})}});
        rep.csv_rows.push_back({index_list(plain.alpha), index_list(eps), index_list(tilde.alpha),
                                index_list(eps_t), num(v.real()), num(v.imag())});
      }
  }
  return kExitOk;
}

json matrix_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    a.push_back(row);
  }
  return a;
}

int cmd_transition(const RunConfig& cfg, const ParamSet& ps, Report& rep) {
  const TransitionMatrix a = transition_matrix(Direction::tilde_to_plain, ps, cfg.degree);
  const TransitionMatrix b = transition_matrix(Direction::plain_to_tilde, ps, cfg.degree);
  const double round_trip = transition_round_trip_residual(ps, cfg.degree);
  json basis = json::array();
  for (const auto& mono : a.basis.monomials())
    basis.push_back({{"alpha", mono.alpha}, {"eps", subset_json(mono.eps)}});
  rep.doc["degree"] = cfg.degree;
  rep.doc["basis"] = basis;
  rep.doc["tilde_to_plain"] = matrix_json(a.entries);
  rep.doc["plain_to_tilde"] = matrix_json(b.entries);
  rep.doc["round_trip_residual"] = round_trip;
  rep.doc["pass"] = round_trip <= cfg.tol;
  rep.csv_header = {"direction", "row", "col", "value_re", "value_im"};
  for (const auto* t : {&a, &b}) {
    const std::string dir = t->direction == Direction::tilde_to_plain ? "tilde_to_plain" : "plain_to_tilde";
    for (std::size_t i = 0; i < t->entries.rows(); ++i)
      for (std::size_t j = 0; j < t->entries.cols(); ++j)
        rep.csv_rows.push_back({dir, std::to_string(i), std::to_string(j), num(t->entries(i, j).real()),
                                num(t->entries(i, j).imag())});
  }
  rep.csv_rows.push_back({"round_trip_residual", "", "", num(round_trip), "0"});
  return round_trip <= cfg.tol ? kExitOk : kExitVerificationFailure;
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg, const ParamSet& ps) {
  SuiteResult out{name, {}, false, ""};
  const int top = std::min(cfg.degree, ps.n() + 1);
  const auto merge = [&](const Residual& r, const std::string& prefix) {
    Residual tagged = r;
    tagged.witness = prefix + ": " + r.witness;
    out.residual.merge(tagged);
  };
  if (name == "orthogonality") {
    for (int d = 0; d <= top; ++d) merge(orthogonality_residual(ps, cfg.degree, d), "d=" + std::to_string(d));
  } else if (name == "recurrence") {
    merge(recurrence_sweep(ps.odd), "recurrence");
    Residual taut;
    const int k = static_cast<int>(ps.odd.size());
    for (int d = 0; d <= k; ++d)
      for (const auto& e : enumerate_subsets(k, d))
        for (const auto& et : enumerate_subsets(k, d))
          taut.update(recurrence_tautology_residual(e.mask(), et.mask(), ps.odd),
                      [&] { return "eps=" + e.to_string() + " eps~=" + et.to_string(); });
    merge(taut, "tautology");
  } else if (name == "contravariance") {
    merge(contravariance_sweep(ps, cfg.degree), "contravariance");
  } else if (name == "cartan-swap") {
    merge(cartan_swap_sweep(ps, cfg.degree), "cartan-swap");
  } else if (name == "duality") {
    for (int d = 0; d <= top; ++d) merge(duality_residual(ps, cfg.degree, d), "d=" + std::to_string(d));
    merge(pairing_residual(ps, cfg.degree), "pairing");
  } else if (name == "tform") {
    merge(tilde_gram_residual(ps, cfg.degree), "tilde gram");
    for (int d = 0; d <= ps.n() + 1; ++d) merge(cauchy_binet_residual(ps, d), "d=" + std::to_string(d));
  } else if (name == "krzonal") {
    try {
      const OrthogonalFrame f = build_g(ps.odd);
      merge(krzonal_sweep(ps.odd, f), "krzonal");
    } catch (const DomainError& e) {
      out.skipped = true;
      out.note = e.what();
    }
  } else {
    throw UsageError("unknown suite " + name);
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, const ParamSet& ps, Report& rep) {
  std::vector<std::string> names;
  if (cfg.suite == "all") {
    for (const auto& s : suite_names())
      if (s != "all") names.push_back(s);
  } else {
    names.push_back(cfg.suite);
  }
  bool pass = true;
  double worst = 0.0;
  rep.doc["degree"] = cfg.degree;
  rep.doc["tolerance"] = cfg.tol;
  rep.doc["suites"] = json::array();
  rep.csv_header = {"suite", "max_residual", "pass", "skipped", "witness"};
  for (const auto& n : names) {
    const SuiteResult r = run_suite(n, cfg, ps);
    if (r.skipped && cfg.suite != "all") throw UsageError(n + " needs positive real odd weights and real V: " + r.note);
    const bool ok = r.skipped || r.residual.within(cfg.tol);
    pass = pass && ok;
    if (!r.skipped) worst = std::max(worst, r.residual.value);
    json j = {{"suite", n}, {"max_residual", r.residual.value}, {"pass", ok}, {"skipped", r.skipped}};
    if (!r.residual.witness.empty()) j["witness"] = r.residual.witness;
    if (r.skipped) j["note"] = r.note;
    rep.doc["suites"].push_back(j);
    rep.csv_rows.push_back({n, num(r.residual.value), ok ? "true" : "false", r.skipped ? "true" : "false",
                            r.skipped ? r.note : r.residual.witness});
  }
  rep.doc["max_residual"] = worst;
  rep.doc["pass"] = pass;
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_fock(const RunConfig& cfg, const ParamSet& ps, Report& rep) {
  if (!cfg.odd_degree) throw UsageError("fock needs --odd-degree");
  const int d = *cfg.odd_degree;
  const int k = static_cast<int>(ps.odd.size());
  if (d < 0 || d > k) throw UsageError("--odd-degree out of range for fock");
  bool pass = true;
  rep.doc["odd_degree"] = d;
  rep.doc["samples"] = cfg.samples;
  rep.doc["seed"] = cfg.seed;
  rep.doc["table"] = json::array();
  rep.csv_header = {"J", "I", "probability", "count"};
  std::uint64_t seed = cfg.seed;
  for (const auto& source : enumerate_subsets(k, d)) {
    const OccupationDistribution dist = occupation_probs(ps.odd, source, seed++);
    std::vector<std::size_t> freq(dist.subsets.size(), 0);
    if (cfg.samples > 0) freq = occupation_frequencies(dist, cfg.samples);
    double total = 0.0;
    for (std::size_t i = 0; i < dist.subsets.size(); ++i) {
      total += dist.probs[i];
      json row = {{"J", source.members()}, {"I", dist.subsets[i].members()}, {"probability", dist.probs[i]}};
      if (cfg.samples > 0) row["count"] = freq[i];
      rep.doc["table"].push_back(row);
      rep.csv_rows.push_back({index_list(source.members()), index_list(dist.subsets[i].members()),
                              num(dist.probs[i]), cfg.samples > 0 ? std::to_string(freq[i]) : ""});
    }
    pass = pass && std::abs(total - 1.0) <= cfg.tol;
  }
  rep.doc["pass"] = pass;
  return pass ? kExitOk : kExitVerificationFailure;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  static const std::vector<std::pair<std::string, Command>> kNames = {
      {"validate", Command::validate}, {"gen-params", Command::gen_params}, {"eval", Command::eval},
      {"transition", Command::transition}, {"verify", Command::verify}, {"fock", Command::fock}};
  for (const auto& [n, c] : kNames)
    if (n == name) return c;
  return std::nullopt;
}

std::optional<Format> parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> kSuites = {"orthogonality", "recurrence", "contravariance", "cartan-swap",
                                                   "duality",       "tform",      "krzonal",        "all"};
  return kSuites;
}

ParamSet generated_params(const GenSpec& spec) {
  return ParamSet::make(random_admissible(spec.m, spec.seed), random_admissible(spec.n, spec.seed + 1));
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep(cfg.format);
  int code = kExitOk;
  try {
    if (cfg.degree < 0) throw UsageError("--degree must be non-negative");
    if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
    if (cfg.command != Command::verify && cfg.suite != "all")
      throw UsageError("--suite only applies to verify");
    if (cfg.command == Command::verify &&
        std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end())
      throw UsageError("unknown suite " + cfg.suite);

    switch (cfg.command) {
      case Command::validate:
        code = cmd_validate(cfg, rep);
        break;
      case Command::gen_params: {
        if (!cfg.gen) throw UsageError("gen-params needs --gen m n seed");
        const Loaded t = load_tuples(cfg);
        rep.doc = params_to_json(ParamSet::make(t.even, t.odd));
        if (cfg.format == Format::csv) throw UsageError("gen-params writes JSON only");
        break;
      }
      case Command::eval:
        code = cmd_eval(cfg, admissible_params(cfg, err), rep);
        break;
      case Command::transition:
        code = cmd_transition(cfg, admissible_params(cfg, err), rep);
        break;
      case Command::verify:
        code = cmd_verify(cfg, admissible_params(cfg, err), rep);
        break;
      case Command::fock:
        code = cmd_fock(cfg, admissible_params(cfg, err), rep);
        break;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegeneracyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.out_path) {
    std::ofstream f(*cfg.out_path);
    if (!f) {
      err << "usage error: cannot write " << *cfg.out_path << '\n';
      return kExitUsage;
    }
    rep.write(f);
  } else {
    rep.write(out);
  }
  return code;
}

}  // namespace skraw::cli
