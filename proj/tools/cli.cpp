#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "krieger/classifier.hpp"
#include "krieger/cocycle.hpp"
#include "krieger/error.hpp"
#include "krieger/sampling.hpp"
#include "krieger/spec_io.hpp"
#include "report.hpp"

namespace krieger::cli {

namespace {

using report::Json;

struct Config {
  std::string spec_path;
  std::string format = "text";
  std::string mode;
  std::string C = "1";
  // witness
  std::string target;
  std::string eps;
  std::int64_t start = 0;
  bool start_given = false;
  std::size_t max_block = 12;
  std::string delta = "1e-6";
  std::uint64_t state_cap = 100'000'000;
  bool zero_or_one = false;
  // sampling
  std::size_t samples = 10'000;
  std::size_t window = 20;
  std::string seed;
  unsigned threads = 1;
  double tol = kDefaultLatticeTolerance;
  std::string export_path;
  // oracle
  std::vector<std::string> targets;
  std::size_t length = 3;
  std::uint64_t pair_cap = 10'000'000;
  // convert
  std::string from = "auto";
  std::string output;
};

/// Input problems detected by the front end itself.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_tolerance(const std::string& text, const char* name) {
  const Rational v = parse_rational(text);
  if (v <= 0 || v >= 1) throw InputError(std::string(name) + " must lie in (0, 1), got " + text);
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty()) return kDefaultSeed;
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    throw InputError("invalid seed '" + text + "'");
  }
  if (used != text.size() || text.front() == '-') throw InputError("invalid seed '" + text + "'");
  return v;
}

SchemeSpec load(const Config& cfg) {
  SchemeSpec spec = load_scheme(cfg.spec_path);
  if (cfg.mode == "rational") spec.mode = ArithmeticMode::Exact;
  if (cfg.mode == "float") spec.mode = ArithmeticMode::Float;
  return spec;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
  return s;
}

void print_verdict(std::ostream& out, const TypeVerdict& v) {
  out << to_string(v.label);
  if (v.lambda) out << " lambda=" << v.lambda->str();
  out << '\n';
  out << "fired: " << join(v.certificate.fired) << '\n';
  if (!v.certificate.warnings.empty()) out << "warnings: " << join(v.certificate.warnings) << '\n';
  for (const auto& e : v.certificate.evidence.errors) out << "error: " << e << '\n';
}

int cmd_classify(const Config& cfg, std::ostream& out) {
  const SchemeSpec spec = load(cfg);
  const ValidatedScheme scheme = prepare(spec);
  const TypeVerdict v = classify(scheme, parse_rational(cfg.C));
  if (cfg.format == "json") {
    Json j;
    j["command"] = "classify";
    j["spec"] = cfg.spec_path;
    j.update(report::to_json(v));
    emit(out, j);
  } else {
    print_verdict(out, v);
  }
  return v.label == TypeLabel::Inconclusive ? kInconclusive : kDefinite;
}

int cmd_witness(const Config& cfg, std::ostream& out) {
  const ValidatedScheme scheme = validate(load(cfg));
  WitnessQuery q;
  if (cfg.zero_or_one) {
    q.mode = SearchMode::ZeroOrOne;
  } else {
    if (cfg.target.empty()) throw InputError("--target is required unless --zero-or-one is given");
    q.target = Real(parse_rational(cfg.target));
  }
  if (cfg.eps.empty()) throw InputError("--eps is required");
  q.eps = Real(parse_rational(cfg.eps));
  q.start = cfg.start;
  q.max_block = cfg.max_block;
  q.delta = parse_tolerance(cfg.delta, "--delta");
  q.state_cap = cfg.state_cap;
  WitnessSearchResult r;
  try {
    r = witness_search(scheme, q);
  } catch (const Error& e) {
    if (e.code() != Errc::SearchBudgetExceeded) throw;
    r.scope = e.what();
  }
  if (cfg.format == "json") {
    Json j;
    j["command"] = "witness";
    j["spec"] = cfg.spec_path;
    j.update(report::to_json(r));
    emit(out, j);
  } else if (r.witness) {
    const Witness& w = *r.witness;
    out << "witness K=" << w.length << " start=" << w.start << " x=" << report::word_string(w.x)
        << " y=" << report::word_string(w.y) << " D=" << w.ratio.str() << " target=" << w.target.str()
        << " distance=" << w.distance().str() << '\n';
  } else {
    out << "none-in-scope (" << r.scope << ")";
    if (r.closest_distance) out << " closest distance=" << r.closest_distance->str();
    out << '\n';
  }
  return r.witness ? kDefinite : kInconclusive;
}

int cmd_sample(const Config& cfg, std::ostream& out) {
  const ValidatedScheme scheme = validate(load(cfg));
  SampleParams p;
  p.seed = parse_seed(cfg.seed);
  p.samples = cfg.samples;
  p.window = cfg.window;
  p.start = cfg.start;
  p.delta = parse_tolerance(cfg.delta, "--delta");
  p.threads = cfg.threads;
  const CocycleSampleSet set = mc_sample_cocycle(scheme, p);
  if (!cfg.export_path.empty()) {
    std::ofstream file(cfg.export_path);
    if (!file) throw InputError("cannot write " + cfg.export_path);
    write_samples(file, set);
  }
  std::optional<LatticeResult> lattice;
  std::string problem;
  try {
    lattice = lattice_detect(set.logs(), cfg.tol);
  } catch (const Error& e) {
    if (e.code() != Errc::InsufficientSamples) throw;
    problem = e.what();
  }
  const bool exact = !set.samples.empty() && set.samples.front().ratio.has_value();
  if (cfg.format == "json") {
    Json j;
    j["command"] = "sample";
    j["spec"] = cfg.spec_path;
    j["seed"] = set.seed;
    j["samples"] = set.samples.size();
    j["window"] = set.window;
    j["start"] = set.start;
    j["delta"] = to_string(set.delta);
    j["exact"] = exact;
    j["moves"] = set.moves;
    j["lattice"] = lattice ? report::to_json(*lattice) : Json(nullptr);
    j["error"] = problem.empty() ? Json(nullptr) : Json(problem);
    emit(out, j);
  } else if (lattice) {
    out << to_string(lattice->kind);
    if (lattice->kind == LatticeResult::Kind::Lattice) {
      char buf[96];
      std::snprintf(buf, sizeof buf, " period=%.17g lambda=%.17g", lattice->period, std::exp(-lattice->period));
      out << buf;
    }
    out << " nonzero=" << lattice->nonzero << " samples=" << set.samples.size() << '\n';
  } else {
    out << "undetermined: " << problem << '\n';
  }
  return lattice ? kDefinite : kInconclusive;
}

int cmd_oracle(const Config& cfg, std::ostream& out) {
  const ValidatedScheme scheme = validate(load(cfg));
  if (cfg.targets.empty()) throw InputError("--targets needs at least one value");
  std::vector<Real> targets;
  for (const auto& t : cfg.targets) targets.emplace_back(parse_rational(t));
  const Block block = make_block(scheme, cfg.start, cfg.length, parse_tolerance(cfg.delta, "--delta"));
  const auto hits = brute_force_block(block, targets, cfg.pair_cap);
  if (cfg.format == "json") {
    Json j;
    j["command"] = "oracle";
    j["spec"] = cfg.spec_path;
    j["start"] = block.start;
    j["length"] = block.length;
    j["pairs"] = block.pair_count();
    Json list = Json::array();
    for (const auto& h : hits) list.push_back(report::to_json(h));
    j["hits"] = std::move(list);
    emit(out, j);
  } else {
    for (const auto& h : hits) {
      out << "target=" << h.target.str() << " distance=" << h.distance.str() << " D=" << h.ratio.str()
          << " x=" << report::word_string(h.x) << " y=" << report::word_string(h.y) << '\n';
    }
  }
  return kDefinite;
}

int cmd_report(const Config& cfg, std::ostream& out) {
  const SchemeSpec spec = load(cfg);
  const ValidatedScheme scheme = prepare(spec);
  const TypeVerdict analytic = classify(scheme, parse_rational(cfg.C));
  EstimateParams p;
  p.seed = parse_seed(cfg.seed);
  p.samples = cfg.samples;
  p.window = cfg.window;
  if (cfg.start_given) p.start = cfg.start;
  p.delta = parse_tolerance(cfg.delta, "--delta");
  p.tol = cfg.tol;
  p.threads = cfg.threads;
  const RatioSetEstimate empirical = estimate_ratio_set(scheme, p);
  const bool agree = labels_agree(analytic, empirical);
  if (cfg.format == "json") {
    Json j;
    j["command"] = "report";
    j["spec"] = cfg.spec_path;
    j["seed"] = p.seed;
    j["analytic"] = report::to_json(analytic);
    j["empirical"] = report::to_json(empirical);
    j["agreement"] = agree;
    emit(out, j);
  } else {
    out << "analytic " << to_string(analytic.label);
    if (analytic.lambda) out << " lambda=" << analytic.lambda->str();
    out << '\n' << "empirical " << to_string(empirical.label);
    if (empirical.lambda) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " lambda=%.17g", *empirical.lambda);
      out << buf;
    }
    out << " (" << empirical.evidence << ")\n";
    out << "agreement=" << (agree ? "true" : "false") << '\n';
  }
  return agree ? kDefinite : kInconclusive;
}

int cmd_convert(const Config& cfg, std::ostream& out) {
  const SpecDocument doc = load_document(cfg.spec_path);
  const bool is_factor = std::holds_alternative<FactorSpec>(doc);
  if (cfg.from == "factor" && !is_factor) throw InputError(cfg.spec_path + " is not a factor file");
  if (cfg.from == "scheme" && is_factor) throw InputError(cfg.spec_path + " is not a scheme file");
  SpecDocument converted;
  if (is_factor) {
    converted = factor_to_scheme(std::get<FactorSpec>(doc));
  } else {
    const auto& spec = std::get<SchemeSpec>(doc);
    validate(spec);
    converted = scheme_to_factor(spec);
  }
  const std::string text = emit_document(converted);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output);
    if (!file) throw InputError("cannot write " + cfg.output);
    file << text;
  }
  return kDefinite;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Krieger type classification of Bernoulli schemes and ITPFI factors", "krieger"};
  app.require_subcommand(1);

  auto spec_arg = [&](CLI::App* sub) {
    sub->add_option("spec", cfg.spec_path, "Spec file (YAML)")->required();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto mode_arg = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "Arithmetic override")->check(CLI::IsMember({"rational", "float"}));
  };
  auto sampling_args = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "Number of Monte Carlo samples")->check(CLI::PositiveNumber);
    sub->add_option("--window", cfg.window, "Block length K")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "64-bit seed (decimal or 0x hex)");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "Lattice tolerance")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--delta", cfg.delta, "Alphabet truncation budget");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify a scheme into its Krieger type");
  spec_arg(classify_cmd);
  mode_arg(classify_cmd);
  classify_cmd->add_option("--C", cfg.C, "Cap in the type III series");

  auto* witness_cmd = app.add_subcommand("witness", "Search for a finite-block cocycle witness");
  spec_arg(witness_cmd);
  mode_arg(witness_cmd);
  witness_cmd->add_option("--target", cfg.target, "Target ratio r");
  witness_cmd->add_option("--eps", cfg.eps, "Tolerance");
  witness_cmd->add_option("--start", cfg.start, "Coordinates before the block")->check(CLI::NonNegativeNumber);
  witness_cmd->add_option("--max-block", cfg.max_block, "Largest block length")->check(CLI::PositiveNumber);
  witness_cmd->add_option("--delta", cfg.delta, "Alphabet truncation budget");
  witness_cmd->add_option("--state-cap", cfg.state_cap, "Enumerated state budget")->check(CLI::PositiveNumber);
  witness_cmd->add_flag("--zero-or-one", cfg.zero_or_one, "Look for D near 0 or near 1 instead");

  auto* sample_cmd = app.add_subcommand("sample", "Sample log-cocycle values and detect a lattice");
  spec_arg(sample_cmd);
  mode_arg(sample_cmd);
  sampling_args(sample_cmd);
  sample_cmd->add_option("--start", cfg.start, "Coordinates before the window")->check(CLI::NonNegativeNumber);
  sample_cmd->add_option("--export", cfg.export_path, "Write sample records to this file");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive closest-value search on one block");
  spec_arg(oracle_cmd);
  mode_arg(oracle_cmd);
  oracle_cmd->add_option("--targets", cfg.targets, "Target ratios")->delimiter(',');
  oracle_cmd->add_option("--start", cfg.start, "Coordinates before the block")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--length", cfg.length, "Block length")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--delta", cfg.delta, "Alphabet truncation budget");
  oracle_cmd->add_option("--pair-cap", cfg.pair_cap, "Largest number of word pairs")->check(CLI::PositiveNumber);

  auto* report_cmd = app.add_subcommand("report", "Analytic verdict next to the empirical estimate");
  spec_arg(report_cmd);
  mode_arg(report_cmd);
  sampling_args(report_cmd);
  report_cmd->add_option("--start", cfg.start, "Coordinates skipped before sampling")
      ->check(CLI::NonNegativeNumber)
      ->each([&](const std::string&) { cfg.start_given = true; });
  report_cmd->add_option("--C", cfg.C, "Cap in the type III series");

  auto* convert_cmd = app.add_subcommand("convert", "Convert between factor and scheme files");
  convert_cmd->add_option("file", cfg.spec_path, "Input file")->required();
  convert_cmd->add_option("--from", cfg.from, "Input kind")->check(CLI::IsMember({"auto", "factor", "scheme"}));
  convert_cmd->add_option("--output", cfg.output, "Output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(cfg, out);
    if (witness_cmd->parsed()) return cmd_witness(cfg, out);
    if (sample_cmd->parsed()) return cmd_sample(cfg, out);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, out);
    if (report_cmd->parsed()) return cmd_report(cfg, out);
    if (convert_cmd->parsed()) return cmd_convert(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << cfg.spec_path << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace krieger::cli
