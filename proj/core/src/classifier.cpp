#include "krieger/classifier.hpp"

#include <algorithm>

#include "krieger/error.hpp"

namespace krieger {

std::string_view to_string(TypeLabel label) {
  switch (label) {
    case TypeLabel::I: return "I_inf";
    case TypeLabel::II1: return "II_1";
    case TypeLabel::IIinf: return "II_inf";
    case TypeLabel::III0: return "III_0";
    case TypeLabel::IIIlambda: return "III_lambda";
    case TypeLabel::III1: return "III_1";
    case TypeLabel::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::Unbounded: return "unbounded";
    case Branch::TwoPoint: return "two-point";
    case Branch::BoundedMulti: return "bounded-multi";
  }
  return "bounded-multi";
}

SummabilityVerdict test_type_I(const ValidatedScheme& scheme) { return summability(type_i_series(scheme)); }

SummabilityVerdict test_type_II1(const ValidatedScheme& scheme) {
  auto series = type_ii1_series(scheme);
  if (!series) {
    SummabilityVerdict v;
    v.kind = SummabilityVerdict::Kind::NotApplicable;
    v.rule = "infinite-alphabet";
    v.evidence = "some alphabet is infinite, so the II_1 criterion does not apply";
    return v;
  }
  return summability(*series);
}

SummabilityVerdict test_type_III(const ValidatedScheme& scheme, const Rational& C) {
  return summability(type_iii_series(scheme, C));
}

namespace {

Branch branch_of(const ValidatedScheme& scheme) {
  if (scheme.unbounded_alphabets()) return Branch::Unbounded;
  const auto& info = scheme.info();
  bool two = std::all_of(info.begin(), info.end(), [](const ClassInfo& i) {
    return !i.infinite || (i.alphabet_size && *i.alphabet_size == 2);
  });
  return two ? Branch::TwoPoint : Branch::BoundedMulti;
}

void gather_unbounded(const ValidatedScheme& scheme, Evidence& e) {
  e.branch = Branch::Unbounded;
  e.recurring_clusters = recurring_ratio_clusters(scheme);
  e.inf_liminf = inf_liminf(scheme);
  if (!e.recurring_clusters->contains_zero && !e.inf_liminf->is_zero()) {
    e.group = mult_group(e.recurring_clusters->values());
  }
}

void gather_two_point(const ValidatedScheme& scheme, Evidence& e) {
  e.branch = Branch::TwoPoint;
  LambdaReport report = lambda_clusters(scheme);
  e.lambda_set = report.clusters;
  std::vector<Real> nonzero;
  for (const auto& g : report.groups) {
    e.deviations.push_back(DeviationEvidence{g.limit, g.classes, summability(g.deviations)});
    if (!g.limit.is_zero()) nonzero.push_back(g.limit);
  }
  if (!nonzero.empty()) e.group = mult_group(nonzero);
}

Evidence gather(const ValidatedScheme& scheme, const Rational& C) {
  Evidence e;
  e.mode = scheme.mode();
  e.C = C;
  e.type_i = test_type_I(scheme);
  e.type_ii1 = test_type_II1(scheme);
  e.type_iii = test_type_III(scheme, C);
  e.finite_clusters = finite_symbol_clusters(scheme);
  if (e.type_iii.divergent()) {
    switch (branch_of(scheme)) {
      case Branch::Unbounded: gather_unbounded(scheme, e); break;
      case Branch::TwoPoint: gather_two_point(scheme, e); break;
      case Branch::BoundedMulti: e.branch = Branch::BoundedMulti; break;
    }
  }
  return e;
}

struct Decision {
  TypeVerdict& v;

  void fire(std::string id) { v.certificate.fired.push_back(std::move(id)); }
  void warn(std::string id) { v.certificate.warnings.push_back(std::move(id)); }
  void set(TypeLabel label, std::string id) {
    v.label = label;
    fire(std::move(id));
  }
};

void decide_unbounded(const Evidence& e, Decision& d) {
  d.fire("branch:unbounded-alphabets");
  d.warn("ratio-sets-exclude-symbol-0");
  if (!e.recurring_clusters || !e.inf_liminf) {
    d.set(TypeLabel::Inconclusive, "unbounded:missing-evidence");
    return;
  }
  if (e.recurring_clusters->contains_zero) {
    d.set(TypeLabel::III1, "unbounded:zero-cluster-point");
    return;
  }
  if (e.inf_liminf->is_zero()) {
    d.set(TypeLabel::III1, "unbounded:liminf-zero");
    return;
  }
  if (!e.group) {
    d.set(TypeLabel::Inconclusive, "unbounded:missing-group");
    return;
  }
  switch (e.group->kind) {
    case GroupStructure::Kind::Dense: d.set(TypeLabel::III1, "unbounded:dense-group"); break;
    case GroupStructure::Kind::Cyclic:
      d.set(TypeLabel::IIIlambda, "unbounded:cyclic-group");
      d.v.lambda = e.group->generator;
      break;
    case GroupStructure::Kind::Trivial: d.set(TypeLabel::III0, "unbounded:trivial-group"); break;
  }
}

const DeviationEvidence* deviation_at(const Evidence& e, const Real& limit) {
  for (const auto& dev : e.deviations) {
    if (dev.limit == limit) return &dev;
  }
  return nullptr;
}

void decide_two_point(const Evidence& e, Decision& d) {
  d.fire("branch:two-point");
  if (!e.lambda_set) {
    d.set(TypeLabel::Inconclusive, "two-point:missing-evidence");
    return;
  }
  const std::vector<Real> lambda = e.lambda_set->values();
  const bool has_zero = std::any_of(lambda.begin(), lambda.end(), [](const Real& x) { return x.is_zero(); });
  const bool has_one = std::any_of(lambda.begin(), lambda.end(), [](const Real& x) { return x.is_one(); });
  const DeviationEvidence* at_one = deviation_at(e, Real(1));
  const DeviationEvidence* at_zero = deviation_at(e, Real(0));

  if (lambda.size() == 2 && has_zero && has_one) {
    d.set(TypeLabel::III0, "two-point:lambda-set-zero-one");
    if (at_one && at_one->verdict.divergent()) d.warn("precedence:lambda-set-zero-one-over-divergent-deviation");
    return;
  }
  bool inconclusive = false;
  for (const auto& dev : e.deviations) {
    if (dev.limit.is_zero()) continue;
    if (dev.verdict.divergent()) {
      d.set(TypeLabel::III1, "two-point:deviation-divergent");
      if (dev.limit.is_one()) d.warn("deviation-summability-interpretation");
      return;
    }
    inconclusive = inconclusive || dev.verdict.inconclusive();
  }
  if (inconclusive) {
    d.set(TypeLabel::Inconclusive, "two-point:deviation-inconclusive");
    return;
  }
  if (lambda.size() == 1 && has_zero) {
    d.warn("lambda-set-only-zero");
    d.set(TypeLabel::Inconclusive, "two-point:no-criterion-for-lambda-set-zero");
    return;
  }
  if (!e.group) {
    d.set(TypeLabel::Inconclusive, "two-point:missing-group");
    return;
  }
  if (has_zero) d.warn("ambiguous-zero");
  switch (e.group->kind) {
    case GroupStructure::Kind::Dense: d.set(TypeLabel::III1, "two-point:dense-group"); break;
    case GroupStructure::Kind::Cyclic:
      if (has_zero && at_zero && at_zero->verdict.divergent()) {
        d.warn("iii-0-by-elimination");
        d.set(TypeLabel::III0, "two-point:elimination-iii-0");
      } else if (has_zero && at_zero && at_zero->verdict.inconclusive()) {
        d.set(TypeLabel::Inconclusive, "two-point:deviation-inconclusive");
      } else {
        d.set(TypeLabel::IIIlambda, "two-point:cyclic-group");
        d.v.lambda = e.group->generator;
      }
      break;
    case GroupStructure::Kind::Trivial:
      d.warn("trivial-group-contradiction");
      d.set(TypeLabel::Inconclusive, "two-point:trivial-group");
      break;
  }
}

}  // namespace

TypeVerdict decide(const Evidence& e) {
  TypeVerdict v;
  v.certificate.evidence = e;
  Decision d{v};
  if (!e.errors.empty()) {
    d.set(TypeLabel::Inconclusive, "error");
    return v;
  }

  if (e.type_i.summable()) {
    d.set(TypeLabel::I, "type-i-series-summable");
    return v;
  }
  if (e.type_i.inconclusive()) {
    d.set(TypeLabel::Inconclusive, "type-i-series-inconclusive");
    return v;
  }
  d.fire("type-i-series-divergent");

  switch (e.type_ii1.kind) {
    case SummabilityVerdict::Kind::Summable: d.set(TypeLabel::II1, "type-ii1-series-summable"); return v;
    case SummabilityVerdict::Kind::Inconclusive: d.set(TypeLabel::Inconclusive, "type-ii1-series-inconclusive"); return v;
    case SummabilityVerdict::Kind::NotApplicable: d.fire("type-ii1-not-applicable:infinite-alphabet"); break;
    case SummabilityVerdict::Kind::Divergent: d.fire("type-ii1-series-divergent"); break;
  }

  if (e.type_iii.summable()) {
    d.fire("type-iii-series-summable");
    d.set(TypeLabel::IIinf, "elimination:ii-infinity");
    return v;
  }
  if (!e.type_iii.divergent()) {
    d.set(TypeLabel::Inconclusive, "type-iii-series-inconclusive");
    return v;
  }
  d.fire("type-iii-series-divergent");

  if (!e.branch) {
    d.set(TypeLabel::Inconclusive, "missing-branch");
    return v;
  }
  switch (*e.branch) {
    case Branch::Unbounded: decide_unbounded(e, d); break;
    case Branch::TwoPoint: decide_two_point(e, d); break;
    case Branch::BoundedMulti:
      d.warn("bounded-alphabets-above-two");
      d.set(TypeLabel::Inconclusive, "branch:bounded-multi-symbol");
      break;
  }
  return v;
}

TypeVerdict classify_III_unbounded(const ValidatedScheme& scheme) {
  if (!scheme.unbounded_alphabets()) throw Error(Errc::BranchError, "alphabet sizes stay bounded; use the two-point branch");
  Evidence e;
  e.mode = scheme.mode();
  gather_unbounded(scheme, e);
  TypeVerdict v;
  v.certificate.evidence = e;
  Decision d{v};
  decide_unbounded(e, d);
  return v;
}

TypeVerdict classify_III_two_point(const ValidatedScheme& scheme) {
  Evidence e;
  e.mode = scheme.mode();
  gather_two_point(scheme, e);
  TypeVerdict v;
  v.certificate.evidence = e;
  Decision d{v};
  decide_two_point(e, d);
  if (v.label == TypeLabel::Inconclusive && v.certificate.fired.back() == "two-point:deviation-inconclusive") {
    throw Error(Errc::InconclusiveEvidence, "a deviation family has no summability verdict");
  }
  return v;
}

TypeVerdict classify(const ValidatedScheme& scheme, const Rational& C) {
  try {
    if (!scheme.normalized()) return classify(scheme.spec(), C);
    return decide(gather(scheme, C));
  } catch (const Error& err) {
    Evidence e;
    e.mode = scheme.mode();
    e.C = C;
    e.errors.push_back(err.what());
    return decide(e);
  }
}

TypeVerdict classify(const SchemeSpec& spec, const Rational& C) {
  try {
    ValidatedScheme scheme = prepare(spec);
    return decide(gather(scheme, C));
  } catch (const Error& err) {
    Evidence e;
    e.mode = spec.mode.value_or(ArithmeticMode::Exact);
    e.C = C;
    e.errors.push_back(err.what());
    return decide(e);
  }
}

}  // namespace krieger
