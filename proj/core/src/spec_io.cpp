#include "krieger/spec_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "krieger/error.hpp"

namespace krieger {
namespace {

[[noreturn]] void parse_fail(const YAML::Node& node, const std::string& what) {
  const YAML::Mark m = node.Mark();
  if (m.is_null()) throw Error(Errc::ParseError, what);
  throw Error(Errc::ParseError, "line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ": " + what);
}

void expect_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!node.IsMap()) parse_fail(node, where + " must be a mapping");
  for (const auto& kv : node) {
    auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      parse_fail(kv.first, "unknown key '" + key + "' in " + where);
    }
  }
}

YAML::Node required(const YAML::Node& node, const char* key, const std::string& where) {
  YAML::Node child = node[key];
  if (!child) parse_fail(node, where + " is missing '" + key + "'");
  return child;
}

Rational rational(const YAML::Node& node) {
  if (!node.IsScalar()) parse_fail(node, "expected a number");
  try {
    return parse_rational(node.Scalar());
  } catch (const Error& e) {
    parse_fail(node, e.what());
  }
}

std::int64_t integer(const YAML::Node& node) {
  Rational q = rational(node);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) parse_fail(node, "expected an integer");
  return q.get_num().get_si();
}

std::vector<Rational> rationals(const YAML::Node& node) {
  if (!node.IsSequence()) parse_fail(node, "expected a list of numbers");
  std::vector<Rational> out;
  for (const auto& x : node) out.push_back(rational(x));
  return out;
}

std::string word(const YAML::Node& node) {
  if (!node.IsScalar()) parse_fail(node, "expected a name");
  return node.Scalar();
}

Deviation read_deviation(const YAML::Node& node) {
  if (!node) return Deviation::zero();
  expect_keys(node, {"kind", "rho", "scale", "exponent", "values"}, "deviation");
  std::string kind = word(required(node, "kind", "deviation"));
  Rational scale = node["scale"] ? rational(node["scale"]) : Rational(1);
  if (kind == "zero") return Deviation::zero();
  if (kind == "geometric") return Deviation::geometric(rational(required(node, "rho", "geometric deviation")), scale);
  if (kind == "power") return Deviation::power(rational(required(node, "exponent", "power deviation")), scale);
  if (kind == "list") return Deviation::list(rationals(required(node, "values", "list deviation")));
  parse_fail(node["kind"], "unknown deviation kind '" + kind + "'");
}

WeightTemplate read_template(const YAML::Node& node) {
  expect_keys(node, {"kind", "params", "relabel"}, "template");
  std::string kind = word(required(node, "kind", "template"));
  YAML::Node params = required(node, "params", "template");
  WeightTemplate t;
  if (kind == "explicit") {
    expect_keys(params, {"weights"}, "explicit params");
    t.law = ExplicitWeights{rationals(required(params, "weights", "explicit params"))};
  } else if (kind == "geometric") {
    expect_keys(params, {"base", "q"}, "geometric params");
    t.law = GeometricTail{params["base"] ? rationals(params["base"]) : std::vector<Rational>{},
                          rational(required(params, "q", "geometric params"))};
  } else if (kind == "two_point") {
    expect_keys(params, {"lambda", "deviation"}, "two_point params");
    t.law = TwoPoint{rational(required(params, "lambda", "two_point params")), read_deviation(params["deviation"])};
  } else if (kind == "perturbed") {
    expect_keys(params, {"limit", "direction", "deviation"}, "perturbed params");
    auto limit = rationals(required(params, "limit", "perturbed params"));
    auto direction = params["direction"] ? rationals(params["direction"]) : std::vector<Rational>(limit.size(), Rational(0));
    t.law = PerturbedVector{limit, direction, read_deviation(params["deviation"])};
  } else if (kind == "growing") {
    expect_keys(params, {"ratios", "slope", "offset"}, "growing params");
    t.law = GrowingAlphabet{rationals(required(params, "ratios", "growing params")),
                            params["slope"] ? integer(params["slope"]) : 1,
                            params["offset"] ? integer(params["offset"]) : 0};
  } else {
    parse_fail(node["kind"], "unknown template kind '" + kind + "'");
  }
  if (YAML::Node r = node["relabel"]) {
    if (!r.IsSequence()) parse_fail(r, "relabel must be a list");
    for (const auto& x : r) {
      std::int64_t s = integer(x);
      if (s < 0) parse_fail(x, "symbols are non-negative");
      t.relabel.push_back(static_cast<std::size_t>(s));
    }
  }
  return t;
}

IndexSet read_indices(const YAML::Node& node) {
  expect_keys(node, {"start", "step", "list"}, "indices");
  if (YAML::Node l = node["list"]) {
    if (node["start"] || node["step"]) parse_fail(node, "indices take either start/step or list");
    if (!l.IsSequence()) parse_fail(l, "index list must be a sequence");
    IndexList out;
    for (const auto& x : l) out.members.push_back(integer(x));
    return out;
  }
  return Progression{integer(required(node, "start", "indices")), node["step"] ? integer(node["step"]) : 1};
}

std::vector<IndexClass> read_classes(const YAML::Node& node) {
  std::vector<IndexClass> out;
  if (!node) return out;
  if (!node.IsSequence()) parse_fail(node, "classes must be a list");
  for (const auto& c : node) {
    expect_keys(c, {"indices", "template"}, "class");
    out.push_back(IndexClass{read_indices(required(c, "indices", "class")), read_template(required(c, "template", "class"))});
  }
  return out;
}

std::vector<std::vector<Rational>> read_vectors(const YAML::Node& node) {
  std::vector<std::vector<Rational>> out;
  if (!node) return out;
  if (!node.IsSequence()) parse_fail(node, "expected a list of weight vectors");
  for (const auto& v : node) out.push_back(rationals(v));
  return out;
}

SpecDocument read_document(const YAML::Node& root) {
  if (!root.IsMap()) parse_fail(root, "spec file must be a mapping");
  std::string type = root["type"] ? word(root["type"]) : "scheme";
  if (type == "factor") {
    expect_keys(root, {"type", "spectra", "classes"}, "factor file");
    return FactorSpec{read_vectors(root["spectra"]), read_classes(root["classes"])};
  }
  if (type != "scheme") parse_fail(root["type"], "type must be 'scheme' or 'factor'");
  expect_keys(root, {"type", "mode", "prefix", "classes"}, "scheme file");
  SchemeSpec s;
  if (YAML::Node m = root["mode"]) {
    std::string mode = word(m);
    if (mode == "rational") {
      s.mode = ArithmeticMode::Exact;
    } else if (mode == "float") {
      s.mode = ArithmeticMode::Float;
    } else {
      parse_fail(m, "mode must be 'rational' or 'float'");
    }
  }
  s.prefix = read_vectors(root["prefix"]);
  s.classes = read_classes(root["classes"]);
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------------ emitting

void emit_rational(YAML::Emitter& out, const Rational& q) { out << YAML::DoubleQuoted << to_string(q); }

void emit_vector(YAML::Emitter& out, const std::vector<Rational>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& q : v) emit_rational(out, q);
  out << YAML::EndSeq;
}

void emit_deviation(YAML::Emitter& out, const Deviation& d) {
  out << YAML::Flow << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << std::string(to_string(d.kind));
  switch (d.kind) {
    case Deviation::Kind::Zero: break;
    case Deviation::Kind::Geometric:
      out << YAML::Key << "rho" << YAML::Value;
      emit_rational(out, d.rho);
      out << YAML::Key << "scale" << YAML::Value;
      emit_rational(out, d.scale);
      break;
    case Deviation::Kind::Power:
      out << YAML::Key << "exponent" << YAML::Value;
      emit_rational(out, d.exponent);
      out << YAML::Key << "scale" << YAML::Value;
      emit_rational(out, d.scale);
      break;
    case Deviation::Kind::List:
      out << YAML::Key << "values" << YAML::Value;
      emit_vector(out, d.values);
      break;
  }
  out << YAML::EndMap;
}

void emit_params(YAML::Emitter& out, const TemplateLaw& law) {
  out << YAML::BeginMap;
  if (const auto* e = std::get_if<ExplicitWeights>(&law)) {
    out << YAML::Key << "weights" << YAML::Value;
    emit_vector(out, e->weights);
  } else if (const auto* g = std::get_if<GeometricTail>(&law)) {
    out << YAML::Key << "base" << YAML::Value;
    emit_vector(out, g->base);
    out << YAML::Key << "q" << YAML::Value;
    emit_rational(out, g->q);
  } else if (const auto* t = std::get_if<TwoPoint>(&law)) {
    out << YAML::Key << "lambda" << YAML::Value;
    emit_rational(out, t->lambda);
    out << YAML::Key << "deviation" << YAML::Value;
    emit_deviation(out, t->deviation);
  } else if (const auto* p = std::get_if<PerturbedVector>(&law)) {
    out << YAML::Key << "limit" << YAML::Value;
    emit_vector(out, p->limit);
    out << YAML::Key << "direction" << YAML::Value;
    emit_vector(out, p->direction);
    out << YAML::Key << "deviation" << YAML::Value;
    emit_deviation(out, p->deviation);
  } else {
    const auto& gr = std::get<GrowingAlphabet>(law);
    out << YAML::Key << "ratios" << YAML::Value;
    emit_vector(out, gr.ratios);
    out << YAML::Key << "slope" << YAML::Value << gr.slope;
    out << YAML::Key << "offset" << YAML::Value << gr.offset;
  }
  out << YAML::EndMap;
}

void emit_classes(YAML::Emitter& out, const std::vector<IndexClass>& classes) {
  out << YAML::Key << "classes" << YAML::Value << YAML::BeginSeq;
  for (const auto& c : classes) {
    out << YAML::BeginMap << YAML::Key << "indices" << YAML::Value << YAML::Flow << YAML::BeginMap;
    if (const auto* p = c.indices.progression()) {
      out << YAML::Key << "start" << YAML::Value << p->start << YAML::Key << "step" << YAML::Value << p->step;
    } else {
      out << YAML::Key << "list" << YAML::Value << YAML::Flow << c.indices.list()->members;
    }
    out << YAML::EndMap;
    out << YAML::Key << "template" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << std::string(kind_name(c.weights.law));
    out << YAML::Key << "params" << YAML::Value;
    emit_params(out, c.weights.law);
    if (!c.weights.relabel.empty()) out << YAML::Key << "relabel" << YAML::Value << YAML::Flow << c.weights.relabel;
    out << YAML::EndMap << YAML::EndMap;
  }
  out << YAML::EndSeq;
}

void emit_vectors(YAML::Emitter& out, const char* key, const std::vector<std::vector<Rational>>& vs) {
  out << YAML::Key << key << YAML::Value << YAML::BeginSeq;
  for (const auto& v : vs) emit_vector(out, v);
  out << YAML::EndSeq;
}

}  // namespace

SpecDocument parse_document(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw Error(Errc::ParseError, "line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  try {
    return read_document(root);
  } catch (const YAML::Exception& e) {
    throw Error(Errc::ParseError, "line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
}

SpecDocument load_document(const std::filesystem::path& path) { return parse_document(read_file(path)); }

SchemeSpec parse_scheme(std::string_view text) {
  SpecDocument doc = parse_document(text);
  if (auto* f = std::get_if<FactorSpec>(&doc)) return factor_to_scheme(*f);
  return std::get<SchemeSpec>(std::move(doc));
}

SchemeSpec load_scheme(const std::filesystem::path& path) { return parse_scheme(read_file(path)); }

std::string emit_document(const SpecDocument& doc) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (const auto* s = std::get_if<SchemeSpec>(&doc)) {
    out << YAML::Key << "type" << YAML::Value << "scheme";
    if (s->mode) out << YAML::Key << "mode" << YAML::Value << std::string(to_string(*s->mode));
    if (!s->prefix.empty()) emit_vectors(out, "prefix", s->prefix);
    emit_classes(out, s->classes);
  } else {
    const auto& f = std::get<FactorSpec>(doc);
    out << YAML::Key << "type" << YAML::Value << "factor";
    if (!f.spectra.empty()) emit_vectors(out, "spectra", f.spectra);
    emit_classes(out, f.classes);
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace krieger
