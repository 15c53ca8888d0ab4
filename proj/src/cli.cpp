#include "symseq/cli.hpp"

#include "symseq/kothe.hpp"
#include "symseq/opnorm.hpp"
#include "symseq/schur.hpp"
#include "symseq/tensor.hpp"
#include "symseq/triangle.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace symseq {

// ---------------------------------------------------------------------------
// Space grammar

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  bool eat(const std::string& lit) {
    if (s.compare(pos, lit.size(), lit) == 0) {
      pos += lit.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& lit, const char* what) {
    if (!eat(lit)) throw SpaceParseError(std::string("expected '") + lit + "' (" + what + ")", pos);
  }
  double number(const char* what) {
    if (eat("inf")) return kInf;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc())
      throw SpaceParseError(std::string("expected a number (") + what + ")", pos);
    pos = static_cast<size_t>(ptr - s.data());
    return v;
  }
  int integer(const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc())
      throw SpaceParseError(std::string("expected an integer (") + what + ")", pos);
    pos = static_cast<size_t>(ptr - s.data());
    return v;
  }
};

SpaceSpec parse_space_at(Cursor& c) {
  size_t start = c.pos;
  if (c.eat("lp:")) {
    double p = c.number("lp exponent");
    if (std::isnan(p) || p < 1.0)
      throw SpaceParseError("lp exponent must be >= 1", start + 3);
    return SpaceSpec::lp(p);
  }
  if (c.eat("lorentz:")) {
    c.expect("G=pow", "Orlicz function");
    size_t kpos = c.pos;
    double k = c.number("power exponent");
    if (k < 1.0) throw SpaceParseError("Orlicz power exponent must be >= 1", kpos);
    c.expect(",w=", "weight family");
    int n = 0;
    std::optional<WeightSeq> w;
    if (c.eat("harmonic")) {
      c.expect(",n=", "dimension");
      n = c.integer("dimension");
      if (n < 1) throw SpaceParseError("dimension must be >= 1", c.pos);
      w = WeightSeq::harmonic(n);
    } else if (c.eat("ones")) {
      c.expect(",n=", "dimension");
      n = c.integer("dimension");
      if (n < 1) throw SpaceParseError("dimension must be >= 1", c.pos);
      w = WeightSeq::ones(n);
    } else if (c.eat("geom(")) {
      size_t rpos = c.pos;
      double r = c.number("geometric ratio");
      if (!(r > 0.0 && r <= 1.0)) throw SpaceParseError("geometric ratio must be in (0, 1]", rpos);
      c.expect(")", "geom");
      c.expect(",n=", "dimension");
      n = c.integer("dimension");
      if (n < 1) throw SpaceParseError("dimension must be >= 1", c.pos);
      w = WeightSeq::geometric(r, n);
    } else {
      throw SpaceParseError("unknown weight family (harmonic|ones|geom(r))", c.pos);
    }
    return SpaceSpec::orlicz_lorentz(OrliczFn::power(k), *w);
  }
  if (c.eat("dual(")) {
    SpaceSpec base = parse_space_at(c);
    c.expect(")", "dual");
    return SpaceSpec::kothe_dual(base);
  }
  if (c.eat("convexify(")) {
    SpaceSpec base = parse_space_at(c);
    c.expect(",p=", "convexification exponent");
    size_t ppos = c.pos;
    double p = c.number("convexification exponent");
    if (std::isnan(p) || p < 1.0)
      throw SpaceParseError("convexification exponent must be >= 1", ppos);
    c.expect(")", "convexify");
    return SpaceSpec::convexify(base, p);
  }
  throw SpaceParseError("unknown space kind (lp:|lorentz:|dual(|convexify()", c.pos);
}

}  // namespace

SpaceSpec parse_space(const std::string& text) {
  if (text.empty()) throw SpaceParseError("empty space spec", 0);
  Cursor c{text};
  SpaceSpec s = parse_space_at(c);
  if (c.pos != text.size()) throw SpaceParseError("trailing input after space spec", c.pos);
  return s;
}

std::pair<SpaceSpec, SpaceSpec> parse_space_pair(const std::string& text) {
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != ',') continue;
    try {
      SpaceSpec a = parse_space(text.substr(0, i));
      SpaceSpec b = parse_space(text.substr(i + 1));
      return {a, b};
    } catch (const SpaceParseError&) {
      continue;
    }
  }
  throw SpaceParseError("expected 'E,F' with two parseable space specs", 0);
}

// ---------------------------------------------------------------------------
// RunConfig <-> JSON

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  c.command = j.value("command", "");
  c.space = j.value("space", "");
  c.space2 = j.value("space2", "");
  c.vec_text = j.value("vec", "");
  c.matrix_text = j.value("matrix", "");
  c.matrix_path = j.value("matrix_path", "");
  c.mode = j.value("mode", "");
  c.sizes_text = j.value("sizes", "");
  c.p = j.value("p", 2.0);
  c.q = j.value("q", 2.0);
  c.eps = j.value("eps", 0.05);
  c.trials = j.value("trials", 20);
  c.budget_starts = j.value("starts", 32);
  c.budget_iters = j.value("iters", 500);
  c.seed = j.value("seed", static_cast<std::uint64_t>(0));
  std::string fmt = j.value("format", "");
  if (fmt == "json") {
    c.format = OutputFormat::Json;
    c.format_explicit = true;
  } else if (fmt == "csv") {
    c.format = OutputFormat::Csv;
    c.format_explicit = true;
  }
  c.output_path = j.value("out", "");
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (!c.space.empty()) j["space"] = c.space;
  if (!c.space2.empty()) j["space2"] = c.space2;
  if (!c.vec_text.empty()) j["vec"] = c.vec_text;
  if (!c.matrix_text.empty()) j["matrix"] = c.matrix_text;
  if (!c.matrix_path.empty()) j["matrix_path"] = c.matrix_path;
  if (!c.mode.empty()) j["mode"] = c.mode;
  if (!c.sizes_text.empty()) j["sizes"] = c.sizes_text;
  j["p"] = c.p;
  j["q"] = c.q;
  j["eps"] = c.eps;
  j["trials"] = c.trials;
  j["starts"] = c.budget_starts;
  j["iters"] = c.budget_iters;
  j["seed"] = c.seed;
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  if (!c.output_path.empty()) j["out"] = c.output_path;
  return j;
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

Mat config_matrix(const RunConfig& c) {
  if (!c.matrix_path.empty()) return read_matrix_file(c.matrix_path);
  if (!c.matrix_text.empty()) return parse_mat(c.matrix_text);
  throw std::invalid_argument(c.command + ": requires --matrix (inline or file)");
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (tok.find_first_not_of(" \t") != std::string::npos) sizes.push_back(std::stoi(tok));
  if (sizes.empty()) throw std::invalid_argument("triangle-growth: requires --sizes n1,n2,...");
  return sizes;
}

Json base_document(const RunConfig& c) {
  Json doc;
  doc["schema"] = 1;
  doc["command"] = c.command;
  doc["seed"] = c.seed;
  doc["budget"] = Json{{"starts", c.budget_starts}, {"iters", c.budget_iters},
                       {"trials", c.trials}};
  return doc;
}

int exit_for_bounds(const NormBounds& nb) { return nb.converged ? 0 : 2; }

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult res;
  try {
    Json doc = base_document(config);
    OutputFormat fmt = config.format;
    std::string plain;  // plain scalar output when applicable

    if (config.command == "norm") {
      SpaceSpec S = parse_space(config.space);
      Vec x = parse_vec(config.vec_text);
      double v = norm(S, x);
      doc["space"] = config.space;
      doc["vec"] = to_json(x);
      doc["value"] = v;
      plain = format_double(v);
    } else if (config.command == "dualnorm") {
      SpaceSpec S = parse_space(config.space);
      Vec x = parse_vec(config.vec_text);
      DualNormOptions opt;
      opt.starts = config.budget_starts;
      opt.iters = config.budget_iters;
      opt.seed = config.seed;
      NormBounds nb = kothe_dual_norm(S, x, opt);
      doc["space"] = config.space;
      doc["vec"] = to_json(x);
      doc["bounds"] = to_json(nb);
      plain = format_double(nb.lower);
      res.exit_code = exit_for_bounds(nb);
    } else if (config.command == "gendualnorm") {
      DualNormQuery q;
      q.E = parse_space(config.space);
      q.F = parse_space(config.space2);
      q.x = parse_vec(config.vec_text);
      q.starts = config.budget_starts;
      q.iters = config.budget_iters;
      q.seed = config.seed;
      NormBounds nb = generalized_dual_norm(q);
      doc["space"] = config.space;
      doc["space2"] = config.space2;
      doc["vec"] = to_json(q.x);
      doc["bounds"] = to_json(nb);
      plain = format_double(nb.lower);
      res.exit_code = exit_for_bounds(nb);
    } else if (config.command == "opnorm") {
      Mat A = config_matrix(config);
      SpaceSpec E = parse_space(config.space);
      SpaceSpec F = parse_space(config.space2);
      OpNormBudget b;
      b.starts = config.budget_starts;
      b.iters = config.budget_iters;
      b.seed = config.seed;
      NormBounds nb = opnorm_estimate(A, E, F, b);
      doc["space"] = config.space;
      doc["space2"] = config.space2;
      doc["bounds"] = to_json(nb);
      plain = "[" + format_double(nb.lower) + "," + format_double(nb.upper) + "]";
      res.exit_code = exit_for_bounds(nb);
    } else if (config.command == "multnorm") {
      Mat M = config_matrix(config);
      auto [E, F] = parse_space_pair(config.space.empty() ? config.space2 : config.space);
      SpaceSpec Es = E.simplified(), Fs = F.simplified();
      MultiplierReport rep;
      if (Es.is_lp() && Es.lp_exponent() == 2.0 && Fs.is_lp() && Fs.lp_exponent() == 2.0) {
        Gamma2Budget gb;
        gb.seed = config.seed;
        gb.max_rounds = config.budget_iters;
        gb.lower_iters = config.budget_iters;
        rep = gamma2_norm(M, gb);
      } else {
        rep = multiplier_lower_bound(M, E, F, config.trials, config.seed);
      }
      doc["pair"] = config.space.empty() ? config.space2 : config.space;
      doc["extreme"] = multiplier_norm_extreme(M);
      doc["report"] = to_json(rep);
      plain = "[" + format_double(rep.bounds.lower) + "," + format_double(rep.bounds.upper) + "]";
      res.exit_code = exit_for_bounds(rep.bounds);
    } else if (config.command == "gamma2") {
      Mat M = config_matrix(config);
      Gamma2Budget gb;
      gb.seed = config.seed;
      gb.max_rounds = config.budget_iters;
      gb.lower_iters = config.budget_iters;
      MultiplierReport rep = gamma2_norm(M, gb);
      doc["report"] = to_json(rep);
      plain = "[" + format_double(rep.bounds.lower) + "," + format_double(rep.bounds.upper) + "]";
      res.exit_code = exit_for_bounds(rep.bounds);
    } else if (config.command == "factorize") {
      SpaceSpec E = parse_space(config.space);
      Vec u = parse_vec(config.vec_text);
      FactorizationCert cert = config.mode == "lp"
                                   ? lp_factorize(E, config.p, u, config.eps, config.seed)
                                   : lozanovskii_factorize(E, u, config.eps, config.seed);
      doc["space"] = config.space;
      doc["mode"] = config.mode == "lp" ? "lp" : "lozanovskii";
      if (config.mode == "lp") doc["p"] = config.p;
      doc["eps"] = config.eps;
      doc["certificate"] = to_json(cert);
      plain = format_double(cert.norm_product);
    } else if (config.command == "triangle-growth") {
      GrowthOptions opt;
      opt.mode = config.mode == "ratio" ? GrowthMode::RatioPQ : GrowthMode::Gamma2_22;
      opt.p = config.p;
      opt.q = config.q;
      opt.seed = config.seed;
      opt.gamma2.seed = config.seed;
      GrowthCurve curve = growth_experiment(parse_sizes(config.sizes_text), opt);
      doc["mode"] = opt.mode == GrowthMode::RatioPQ ? "ratio" : "gamma2";
      doc["curve"] = to_json(curve);
      if (!config.format_explicit) fmt = OutputFormat::Csv;
      if (fmt == OutputFormat::Csv) res.output = growth_csv(curve);
      for (bool f : curve.flagged)
        if (f) res.exit_code = 2;
    } else if (config.command == "tensor-norm") {
      TensorElem u;
      u.coeffs = config_matrix(config);
      u.E = parse_space(config.space);
      u.F = parse_space(config.space2);
      TensorBudget tb;
      tb.seed = config.seed;
      doc["space"] = config.space;
      doc["space2"] = config.space2;
      if (config.mode == "pi") {
        NormBounds nb = projective_norm_bounds(u, tb);
        doc["which"] = "projective";
        doc["bounds"] = to_json(nb);
        plain = "[" + format_double(nb.lower) + "," + format_double(nb.upper) + "]";
      } else if (config.mode == "gamma2star") {
        double v = gamma2_star_upper(u, tb);
        doc["which"] = "gamma2star-upper";
        doc["value"] = v;
        plain = format_double(v);
      } else {
        NormBounds nb = injective_norm(u, tb);
        doc["which"] = "injective";
        doc["bounds"] = to_json(nb);
        plain = "[" + format_double(nb.lower) + "," + format_double(nb.upper) + "]";
      }
    } else if (config.command == "audit") {
      if (config.mode == "embedding") {
        Mat M = config_matrix(config);
        SpaceSpec E = parse_space(config.space);
        SpaceSpec F = parse_space(config.space2);
        EmbeddingAuditRecord rec =
            embedding_audit(M, E, F, config.p, config.q, config.trials, config.seed);
        doc["mode"] = "embedding";
        doc["record"] = to_json(rec);
        if (rec.flagged) res.exit_code = 2;
      } else {
        SpaceSpec E = parse_space(config.space);
        SpaceSpec F = parse_space(config.space2);
        TensorNormId which = config.mode == "projective" ? TensorNormId::ProjectiveUpper
                                                         : TensorNormId::Injective;
        AxiomAuditRecord rec = matrix_norm_axiom_audit(which, E, F, config.trials, config.seed);
        doc["mode"] = config.mode == "projective" ? "axioms-projective" : "axioms-injective";
        doc["record"] = to_json(rec);
        if (!rec.all_pass) res.exit_code = 2;
      }
    } else {
      throw std::invalid_argument("unknown command '" + config.command + "'");
    }

    res.document = doc;
    if (res.output.empty()) {
      // Scalar commands print the bare value unless a format was asked for.
      bool want_plain = (fmt == OutputFormat::Plain) ||
                        (!config.format_explicit && !plain.empty());
      res.output = want_plain && !plain.empty() ? plain + "\n" : doc.dump(2) + "\n";
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    Json err;
    err["schema"] = 1;
    err["command"] = config.command;
    err["error"] = e.what();
    res.document = err;
    res.output = err.dump(2) + "\n";
  }

  if (!config.output_path.empty() && res.exit_code != 1) {
    // Atomic per-entry write: temp file then rename.
    std::string tmp = config.output_path + ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    out << res.output;
    out.close();
    std::rename(tmp.c_str(), config.output_path.c_str());
  }
  return res;
}

RunResult experiment_manifest(const std::string& path) {
  RunResult batch;
  Json summary;
  summary["schema"] = 1;
  summary["command"] = "manifest";
  Json entries = Json::array();
  try {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open manifest '" + path + "'");
    Json manifest = Json::parse(in);
    const Json& jobs = manifest.contains("jobs") ? manifest["jobs"] : manifest;
    if (!jobs.is_array()) throw std::invalid_argument("manifest must be a JSON array or {\"jobs\": [...]}");
    for (const Json& job : jobs) {
      RunConfig c = config_from_json(job);
      c.format = OutputFormat::Json;  // structured entries in the summary
      c.format_explicit = true;
      RunResult r = run(c);
      Json entry;
      entry["config"] = config_to_json(c);
      entry["exit"] = r.exit_code;
      entry["result"] = r.document;
      entries.push_back(entry);
      batch.exit_code = std::max(batch.exit_code, r.exit_code);
    }
  } catch (const std::exception& e) {
    summary["error"] = e.what();
    batch.exit_code = 1;
  }
  summary["entries"] = entries;
  summary["exit"] = batch.exit_code;
  batch.document = summary;
  batch.output = summary.dump(2) + "\n";
  return batch;
}

}  // namespace symseq
