#include "krieger/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "krieger/error.hpp"
#include "template_eval.hpp"

namespace krieger {

std::string_view to_string(SeriesTerm::Shape shape) {
  switch (shape) {
    case SeriesTerm::Shape::Zero: return "zero";
    case SeriesTerm::Shape::ConstantPositive: return "constant-positive";
    case SeriesTerm::Shape::Deviation: return "deviation";
    case SeriesTerm::Shape::Harmonic: return "harmonic";
    case SeriesTerm::Shape::Opaque: return "opaque";
  }
  return "opaque";
}

std::string_view to_string(SummabilityVerdict::Kind kind) {
  switch (kind) {
    case SummabilityVerdict::Kind::Summable: return "summable";
    case SummabilityVerdict::Kind::Divergent: return "divergent";
    case SummabilityVerdict::Kind::Inconclusive: return "inconclusive";
    case SummabilityVerdict::Kind::NotApplicable: return "not-applicable";
  }
  return "inconclusive";
}

std::vector<Real> ClusterReport::values(bool asymptotic_only) const {
  std::vector<Real> out;
  for (const auto& p : points) {
    if (!asymptotic_only || p.source == ClusterSource::Asymptotic) out.push_back(p.value);
  }
  return out;
}

namespace {

constexpr double kFloatClusterTolerance = 1e-9;
constexpr std::size_t kListedTailRatios = 16;

// ------------------------------------------------------------ limit profiles

/// Limits of mu_n(i)/mu_n(0) along one infinite class of a normalized scheme.
struct LimitProfile {
  std::vector<Rational> ratios;  // symbols 1..ratios.size()
  bool geometric_tail = false;   // infinitely many further ratios tending to 0
  bool plateau = false;          // the last ratio repeats for every later symbol
};

Rational first_weight(const GeometricTail& g) {
  if (!g.base.empty()) return g.base.front();
  return 1 - g.q;
}

LimitProfile limit_profile(const TemplateLaw& law) {
  LimitProfile p;
  if (const auto* e = std::get_if<ExplicitWeights>(&law)) {
    for (std::size_t i = 1; i < e->weights.size(); ++i) p.ratios.emplace_back(e->weights[i] / e->weights[0]);
  } else if (const auto* g = std::get_if<GeometricTail>(&law)) {
    Rational w0 = first_weight(*g);
    Rational tail = 1;
    for (const auto& b : g->base) tail -= b;
    for (std::size_t i = 1; i < g->base.size(); ++i) p.ratios.emplace_back(g->base[i] / w0);
    Rational next = tail * (1 - g->q);
    if (g->base.empty()) next *= g->q;
    for (std::size_t j = 0; j < kListedTailRatios; ++j) {
      p.ratios.emplace_back(next / w0);
      next *= g->q;
    }
    p.geometric_tail = true;
  } else if (const auto* t = std::get_if<TwoPoint>(&law)) {
    p.ratios.push_back(t->lambda);
  } else if (const auto* v = std::get_if<PerturbedVector>(&law)) {
    for (std::size_t i = 1; i < v->limit.size(); ++i) p.ratios.emplace_back(v->limit[i] / v->limit[0]);
  } else {
    const auto& gr = std::get<GrowingAlphabet>(law);
    std::size_t count = gr.slope > 0 ? gr.ratios.size() : static_cast<std::size_t>(gr.offset);
    for (std::size_t i = 1; i < count; ++i) p.ratios.emplace_back(gr.ratios[std::min(i, gr.ratios.size() - 1)] / gr.ratios[0]);
    if (gr.slope > 0) {
      if (gr.ratios.size() == 1) p.ratios.emplace_back(1);
      p.plateau = true;
    }
  }
  return p;
}

bool has_symbol(const LimitProfile& p, std::size_t i) {
  return p.geometric_tail || p.plateau || i <= p.ratios.size();
}

std::optional<Rational> ratio_of(const LimitProfile& p, std::size_t i) {
  if (i <= p.ratios.size()) return p.ratios[i - 1];
  if (p.plateau) return p.ratios.back();
  return std::nullopt;  // deep inside a geometric tail
}

void add_point(ClusterReport& r, const Real& value, std::size_t cls, ClusterSource source) {
  for (auto& p : r.points) {
    bool same = source == ClusterSource::FiniteData && !(value.is_exact() && p.value.is_exact())
                    ? std::abs(p.value.value() - value.value()) <= kFloatClusterTolerance
                    : p.value == value;
    if (same && p.source == source) {
      if (std::find(p.classes.begin(), p.classes.end(), cls) == p.classes.end()) p.classes.push_back(cls);
      return;
    }
  }
  r.points.push_back(ClusterPoint{value, {cls}, source});
}

void finish(ClusterReport& r) {
  std::sort(r.points.begin(), r.points.end(), [](const ClusterPoint& a, const ClusterPoint& b) { return a.value < b.value; });
  for (auto& p : r.points) std::sort(p.classes.begin(), p.classes.end());
  if (!r.points.empty()) {
    r.liminf = r.points.front().value;
    if (r.points.front().value.value() <= kFloatClusterTolerance) r.contains_zero = true;
  }
  if (r.unbounded) {
    r.contains_zero = true;
    r.liminf = Real(0);
  }
}

}  // namespace

std::optional<std::size_t> recurring_symbol_count(const ValidatedScheme& scheme) {
  std::size_t count = 0;
  for (std::size_t c = 0; c < scheme.spec().classes.size(); ++c) {
    const ClassInfo& info = scheme.info()[c];
    if (!info.infinite) continue;
    if (info.unbounded_alphabet || !info.alphabet_size) return std::nullopt;
    count = std::max(count, *info.alphabet_size);
  }
  return count;
}

ClusterReport ratio_clusters(const ValidatedScheme& scheme, std::size_t symbol) {
  if (symbol == 0) throw Error(Errc::DomainError, "symbol 0 has constant ratio 1 and is excluded");
  ClusterReport r;
  const auto& classes = scheme.spec().classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!scheme.info()[c].infinite) continue;
    LimitProfile p = limit_profile(classes[c].weights.law);
    if (!has_symbol(p, symbol)) continue;
    if (auto v = ratio_of(p, symbol)) {
      add_point(r, Real(*v), c, ClusterSource::Asymptotic);
    } else {
      // symbol deep in a geometric tail: ratio is w0^-1 * tail(1-q) q^j
      const auto& g = std::get<GeometricTail>(classes[c].weights.law);
      Rational tail = 1;
      for (const auto& b : g.base) tail -= b;
      std::size_t j = symbol - g.base.size();
      add_point(r, Real(Rational(tail * (1 - g.q) * power(g.q, static_cast<std::int64_t>(j)) / first_weight(g))), c,
                ClusterSource::Asymptotic);
    }
  }
  if (r.points.empty()) {
    throw Error(Errc::SymbolFinite, "symbol " + std::to_string(symbol) + " occurs at finitely many coordinates");
  }
  finish(r);
  return r;
}

ClusterReport recurring_ratio_clusters(const ValidatedScheme& scheme) {
  ClusterReport r;
  const auto& classes = scheme.spec().classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!scheme.info()[c].infinite) continue;
    LimitProfile p = limit_profile(classes[c].weights.law);
    for (const auto& v : p.ratios) add_point(r, Real(v), c, ClusterSource::Asymptotic);
    if (p.geometric_tail) {
      r.unbounded = true;
      r.notes.push_back("class " + std::to_string(c) + " has an infinite alphabet; only the first ratios are listed");
    }
  }
  finish(r);
  return r;
}

ClusterReport finite_symbol_clusters(const ValidatedScheme& scheme) {
  ClusterReport r;
  auto recurring = recurring_symbol_count(scheme);
  if (!recurring) return r;
  const std::size_t first = std::max<std::size_t>(*recurring, 1);
  const auto& spec = scheme.spec();
  auto visit = [&](std::int64_t n, std::size_t owner) {
    CoordinateLaw law = scheme.law(n);
    auto size = law.alphabet_size();
    const Real w0 = law.weight(0);
    std::size_t limit = size ? *size : law.head().size() + kListedTailRatios;
    for (std::size_t i = first; i < limit; ++i) add_point(r, law.weight(i) / w0, owner, ClusterSource::FiniteData);
    if (!size) {
      r.unbounded = true;
      r.notes.push_back("coordinate " + std::to_string(n) + " has an infinite alphabet");
    }
  };
  const std::size_t prefix_owner = spec.classes.size();  // marks prefix coordinates
  for (std::int64_t n = 1; n <= scheme.prefix_length(); ++n) visit(n, prefix_owner);
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    if (scheme.info()[c].infinite) continue;
    for (std::int64_t n : spec.classes[c].indices.list()->members) visit(n, c);
  }
  if (!r.points.empty()) r.notes.push_back("owner index " + std::to_string(prefix_owner) + " denotes the explicit prefix");
  finish(r);
  return r;
}

Real inf_liminf(const ValidatedScheme& scheme) {
  ClusterReport r = recurring_ratio_clusters(scheme);
  if (r.unbounded || r.points.empty()) return Real(0);
  return r.liminf;
}

// ----------------------------------------------------------------- summands

namespace {

/// Distinct weights of a coordinate with multiplicities; infinite tails are
/// cut once the remaining mass is negligible.
struct WeightGroups {
  std::vector<std::pair<Real, double>> groups;
  bool exact = true;
};

WeightGroups weight_groups(const CoordinateLaw& law) {
  WeightGroups out;
  for (const auto& w : law.head()) out.groups.emplace_back(w, 1.0);
  if (const auto& p = law.plateau()) out.groups.emplace_back(p->weight, static_cast<double>(p->count));
  if (const auto& t = law.tail()) {
    out.exact = false;
    double mass = t->mass.value();
    const double q = t->q.get_d();
    double w = mass * (1 - q);
    while (mass > 1e-16 && w > 0) {
      out.groups.emplace_back(Real::approximate(w), 1.0);
      mass -= w;
      w *= q;
    }
  }
  for (const auto& [w, m] : out.groups) {
    if (!w.is_exact()) out.exact = false;
  }
  return out;
}

}  // namespace

Real type_i_summand(const CoordinateLaw& law) {
  Real best(0);
  for (const auto& w : law.head()) best = max(best, w);
  if (law.plateau()) best = max(best, law.plateau()->weight);
  if (law.tail()) best = max(best, law.tail()->mass * Real(Rational(1 - law.tail()->q)));
  return Real(1) - best;
}

Real type_ii1_summand(const CoordinateLaw& law) {
  auto size = law.alphabet_size();
  if (!size) throw Error(Errc::DomainError, "the II_1 summand needs a finite alphabet");
  const Real N(static_cast<long>(*size));
  bool all_uniform = true;
  double total = 0;
  auto add = [&](const Real& w, double count) {
    Real x = w * N;
    if (x.is_exact() && x.is_one()) return;
    all_uniform = false;
    double d = 1.0 - std::sqrt(x.value());
    total += count * d * d;
  };
  for (const auto& w : law.head()) add(w, 1.0);
  if (law.plateau()) add(law.plateau()->weight, static_cast<double>(law.plateau()->count));
  if (all_uniform) return Real(0);
  return Real::approximate(total / static_cast<double>(*size));
}

Real type_iii_summand(const CoordinateLaw& law, const Rational& C) {
  WeightGroups g = weight_groups(law);
  if (g.exact) {
    Rational total = 0;
    for (const auto& [wi, mi] : g.groups) {
      for (const auto& [wj, mj] : g.groups) {
        const Rational& a = wi.exact();
        const Rational& b = wj.exact();
        Rational d = a / b - 1;
        Rational sq = d * d;
        total += Rational(static_cast<long>(mi)) * Rational(static_cast<long>(mj)) * a * b * (sq < C ? sq : C);
      }
    }
    return Real(total);
  }
  const double c = C.get_d();
  double total = 0;
  for (const auto& [wi, mi] : g.groups) {
    for (const auto& [wj, mj] : g.groups) {
      double d = wi.value() / wj.value() - 1;
      total += mi * mj * wi.value() * wj.value() * std::min(d * d, c);
    }
  }
  return Real::approximate(total);
}

// ------------------------------------------------------------------- series

namespace {

using Shape = SeriesTerm::Shape;

bool uniform(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [&](const Rational& x) { return x == v.front(); });
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

SeriesTerm make(Shape shape, std::string description) {
  SeriesTerm t;
  t.shape = shape;
  t.description = std::move(description);
  return t;
}

SeriesTerm constant(Real c, std::string description) {
  SeriesTerm t = make(Shape::ConstantPositive, std::move(description));
  t.constant = std::move(c);
  return t;
}

SeriesTerm deviation(const Deviation& d, int power, std::optional<Rational> coefficient, std::string description) {
  if (d.is_zero()) return make(Shape::Zero, description + " (deviation vanishes)");
  SeriesTerm t = make(Shape::Deviation, std::move(description));
  t.family = d;
  t.power = power;
  t.coefficient = std::move(coefficient);
  return t;
}

CoordinateLaw limit_law(const TemplateLaw& law) {
  WeightTemplate t{law, {}};
  if (auto* tp = std::get_if<TwoPoint>(&t.law)) tp->deviation = Deviation::zero();
  if (auto* p = std::get_if<PerturbedVector>(&t.law)) {
    std::vector<Real> head;
    for (const auto& v : p->limit) {
      if (v > 0) head.emplace_back(v);
    }
    std::vector<double> logs;
    for (const auto& h : head) logs.push_back(h.log());
    return CoordinateLaw(head, logs, std::nullopt, std::nullopt);
  }
  return evaluate(t, 1, 0, ArithmeticMode::Exact);
}

SeriesTerm type_i_shape(const TemplateLaw& law, const Progression& idx) {
  if (const auto* t = std::get_if<TwoPoint>(&law)) {
    if (t->lambda > 0) return constant(Real(Rational(t->lambda / (1 + t->lambda))), "two-point terms tend to lambda/(1+lambda)");
    return deviation(t->deviation, 1, std::nullopt, "two-point terms ~ eps_n as lambda_n -> 0");
  }
  if (const auto* p = std::get_if<PerturbedVector>(&law)) {
    if (p->limit[0] < 1) return constant(Real(Rational(1 - p->limit[0])), "perturbed terms tend to 1 - v_0");
    return deviation(p->deviation, 1, Rational(-p->direction[0]), "perturbed terms equal -w_0 eps_n");
  }
  if (const auto* g = std::get_if<GrowingAlphabet>(&law)) {
    CoordinateLaw first = evaluate(WeightTemplate{*g, {}}, idx.start, 0);
    return constant(type_i_summand(first), g->slope > 0 ? "growing alphabet: terms increase towards 1" : "constant terms");
  }
  return constant(type_i_summand(evaluate(WeightTemplate{law, {}}, idx.start, 0)), "constant terms");
}

SeriesTerm type_ii1_shape(const TemplateLaw& law) {
  if (const auto* e = std::get_if<ExplicitWeights>(&law)) {
    if (uniform(e->weights)) return make(Shape::Zero, "uniform weights");
    return constant(type_ii1_summand(limit_law(law)), "constant terms");
  }
  if (const auto* t = std::get_if<TwoPoint>(&law)) {
    if (t->lambda == 1) return deviation(t->deviation, 2, std::nullopt, "terms ~ eps_n^2 / 16 around the uniform pair");
    return constant(type_ii1_summand(limit_law(law)), "terms tend to the non-uniform limit value");
  }
  if (const auto* p = std::get_if<PerturbedVector>(&law)) {
    if (uniform(p->limit)) {
      if (all_zero(p->direction)) return make(Shape::Zero, "uniform weights");
      return deviation(p->deviation, 2, std::nullopt, "terms ~ k |w|^2 eps_n^2 / 4 around the uniform limit");
    }
    const double k = static_cast<double>(p->limit.size());
    double limit_value = 0;
    for (const auto& v : p->limit) limit_value += std::pow(1.0 - std::sqrt(v.get_d() * k), 2) / k;
    return constant(Real::approximate(limit_value), "terms tend to the non-uniform limit value");
  }
  const auto& g = std::get<GrowingAlphabet>(law);
  if (uniform(g.ratios)) return make(Shape::Zero, "uniform weights");
  if (g.slope > 0) return make(Shape::Harmonic, "growing alphabet: non-plateau symbols contribute ~ c/n");
  return constant(type_ii1_summand(limit_law(law)), "constant terms");
}

SeriesTerm type_iii_shape(const TemplateLaw& law, const Rational& C) {
  if (const auto* e = std::get_if<ExplicitWeights>(&law)) {
    if (uniform(e->weights)) return make(Shape::Zero, "uniform weights");
    return constant(type_iii_summand(limit_law(law), C), "constant terms");
  }
  if (std::holds_alternative<GeometricTail>(law)) {
    return constant(type_iii_summand(limit_law(law), C), "constant terms (infinite alphabet truncated at mass 1e-16)");
  }
  if (const auto* t = std::get_if<TwoPoint>(&law)) {
    if (t->lambda == 1) return deviation(t->deviation, 2, std::nullopt, "terms ~ eps_n^2 / 2 around the uniform pair");
    if (t->lambda == 0) return deviation(t->deviation, 1, std::nullopt, "terms ~ (C + min(1, C)) eps_n as lambda_n -> 0");
    return constant(type_iii_summand(limit_law(law), C), "terms tend to the limit value");
  }
  if (const auto* p = std::get_if<PerturbedVector>(&law)) {
    std::vector<Rational> positive;
    bool zeros = false;
    for (const auto& v : p->limit) {
      if (v > 0) {
        if (std::find(positive.begin(), positive.end(), v) == positive.end()) positive.push_back(v);
      } else {
        zeros = true;
      }
    }
    if (positive.size() >= 2) return constant(type_iii_summand(limit_law(law), C), "terms tend to the limit value");
    if (zeros) return deviation(p->deviation, 1, std::nullopt, "vanishing limit weights: terms ~ c eps_n");
    if (all_zero(p->direction)) return make(Shape::Zero, "uniform weights");
    return deviation(p->deviation, 2, std::nullopt, "terms ~ c eps_n^2 around the uniform limit");
  }
  const auto& g = std::get<GrowingAlphabet>(law);
  if (uniform(g.ratios)) return make(Shape::Zero, "uniform weights");
  if (g.slope > 0) return make(Shape::Harmonic, "growing alphabet: head/plateau pairs contribute ~ c/n");
  return constant(type_iii_summand(limit_law(law), C), "constant terms");
}

template <class Summand, class Shaper>
SeriesDescriptor build_series(const ValidatedScheme& scheme, std::string name, Summand summand, Shaper shaper) {
  auto shared = std::make_shared<const ValidatedScheme>(scheme);
  SeriesDescriptor s;
  s.name = std::move(name);
  const auto& spec = scheme.spec();
  for (std::int64_t n = 1; n <= scheme.prefix_length(); ++n) s.finite_part = s.finite_part + summand(scheme.law(n));
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    const IndexClass& cls = spec.classes[c];
    if (!scheme.info()[c].infinite) {
      for (std::int64_t n : cls.indices.list()->members) s.finite_part = s.finite_part + summand(scheme.law(n));
      continue;
    }
    SeriesTerm t = shaper(cls.weights.law, *cls.indices.progression());
    t.indices = *cls.indices.progression();
    t.description = "class " + std::to_string(c) + ": " + t.description;
    t.term = [shared, summand](std::int64_t n) { return summand(shared->float_law(n)).value(); };
    s.tails.push_back(std::move(t));
  }
  return s;
}

// Closed-form sums of |coefficient| * |eps_n|^m along a progression.
std::optional<Rational> exact_tail_sum(const SeriesTerm& t) {
  if (!t.coefficient) return std::nullopt;
  const Rational coef = abs(*t.coefficient);
  const Deviation& d = t.family;
  if (d.kind == Deviation::Kind::Geometric) {
    Rational s = power(Rational(abs(d.scale)), t.power);
    Rational first = power(d.rho, static_cast<std::int64_t>(t.power) * t.indices.start);
    Rational ratio = power(d.rho, static_cast<std::int64_t>(t.power) * t.indices.step);
    return Rational(coef * s * first / (1 - ratio));
  }
  if (d.kind == Deviation::Kind::List) {
    Rational total = 0;
    for (const auto& v : d.values) total += power(Rational(abs(v)), t.power);
    return Rational(coef * total);
  }
  return std::nullopt;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

SeriesDescriptor type_i_series(const ValidatedScheme& scheme) {
  return build_series(scheme, "type-i", [](const CoordinateLaw& l) { return type_i_summand(l); },
                      [](const TemplateLaw& law, const Progression& idx) { return type_i_shape(law, idx); });
}

std::optional<SeriesDescriptor> type_ii1_series(const ValidatedScheme& scheme) {
  const auto& classes = scheme.spec().classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (std::holds_alternative<GeometricTail>(classes[c].weights.law)) return std::nullopt;
  }
  return build_series(scheme, "type-ii1", [](const CoordinateLaw& l) { return type_ii1_summand(l); },
                      [](const TemplateLaw& law, const Progression&) { return type_ii1_shape(law); });
}

SeriesDescriptor type_iii_series(const ValidatedScheme& scheme, const Rational& C) {
  if (C <= 0) throw Error(Errc::DomainError, "the type III criterion needs C > 0");
  return build_series(scheme, "type-iii", [C](const CoordinateLaw& l) { return type_iii_summand(l, C); },
                      [C](const TemplateLaw& law, const Progression&) { return type_iii_shape(law, C); });
}

SummabilityVerdict summability(const SeriesDescriptor& series) {
  using Kind = SummabilityVerdict::Kind;
  SummabilityVerdict v;
  std::vector<std::string> divergent, inconclusive, summable;
  std::optional<Real> sum = series.finite_part;
  std::optional<double> bound = series.finite_part.value();
  std::string first_divergent_rule;

  for (const auto& t : series.tails) {
    auto diverge = [&](const std::string& rule, const std::string& why) {
      if (first_divergent_rule.empty()) first_divergent_rule = rule;
      divergent.push_back(t.description + " -> " + why);
    };
    auto converge = [&](std::optional<Rational> exact, std::optional<double> b, const std::string& why) {
      if (exact) {
        if (sum) sum = *sum + Real(*exact);
        if (bound) *bound += exact->get_d();
      } else {
        sum.reset();
        if (b && bound) {
          *bound += *b;
        } else {
          bound.reset();
        }
      }
      summable.push_back(t.description + " -> " + why);
    };
    switch (t.shape) {
      case Shape::Zero: converge(Rational(0), std::nullopt, "zero terms"); break;
      case Shape::ConstantPositive: diverge("constant-positive-terms", "terms stay near " + t.constant.str() + " > 0"); break;
      case Shape::Harmonic: diverge("harmonic-comparison", "terms ~ c/n, harmonic comparison"); break;
      case Shape::Deviation: {
        const Deviation& d = t.family;
        const int m = t.power;
        if (d.is_zero()) {
          converge(Rational(0), std::nullopt, "deviation vanishes");
        } else if (d.kind == Deviation::Kind::Geometric) {
          converge(exact_tail_sum(t), std::nullopt, "geometric rho=" + to_string(d.rho) + " to power " + std::to_string(m));
        } else if (d.kind == Deviation::Kind::List) {
          converge(exact_tail_sum(t), std::nullopt, "finitely many nonzero terms");
        } else {
          const double mp = m * d.exponent.get_d();
          const Rational mp_exact = Rational(m) * d.exponent;
          if (mp_exact > 1) {
            std::optional<double> b;
            if (t.coefficient) {
              const double a = static_cast<double>(t.indices.start);
              const double step = static_cast<double>(t.indices.step);
              b = std::abs(t.coefficient->get_d()) * std::pow(std::abs(d.scale.get_d()), m) *
                  (std::pow(a, -mp) + std::pow(a, 1 - mp) / (step * (mp - 1)));
            }
            converge(std::nullopt, b, "p-series with exponent " + to_string(mp_exact) + " > 1");
          } else {
            diverge("p-series-comparison", "p-series with exponent " + to_string(mp_exact) + " <= 1");
          }
        }
        break;
      }
      case Shape::Opaque: {
        double partial = 0;
        for (std::int64_t k = 0; k < kPartialSumTerms; ++k) partial += t.term(t.indices.start + k * t.indices.step);
        v.partial_sum = v.partial_sum.value_or(0.0) + partial;
        v.partial_terms += kPartialSumTerms;
        inconclusive.push_back(t.description + " -> no rule; partial sum " + std::to_string(partial));
        break;
      }
    }
  }

  if (!divergent.empty()) {
    v.kind = Kind::Divergent;
    v.rule = first_divergent_rule;
    v.evidence = join(divergent);
  } else if (!inconclusive.empty()) {
    v.kind = Kind::Inconclusive;
    v.rule = "partial-sums";
    v.evidence = join(inconclusive);
  } else {
    v.kind = Kind::Summable;
    v.sum = sum;
    v.bound = bound;
    v.rule = series.tails.empty() ? "finite-series" : "comparison";
    std::ostringstream ev;
    ev << "finite part " << series.finite_part.str();
    if (!summable.empty()) ev << "; " << join(summable);
    v.evidence = ev.str();
  }
  return v;
}

// --------------------------------------------------------------- two-point

LambdaReport lambda_clusters(const ValidatedScheme& scheme) {
  const auto& classes = scheme.spec().classes;
  auto shared = std::make_shared<const ValidatedScheme>(scheme);
  std::map<Rational, LambdaGroup> groups;
  LambdaReport out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const ClassInfo& info = scheme.info()[c];
    if (!info.infinite) continue;
    if (!info.alphabet_size || *info.alphabet_size != 2) {
      throw Error(Errc::NotTwoPoint, "class " + std::to_string(c) + " is not a two-symbol class");
    }
    const TemplateLaw& law = classes[c].weights.law;
    Rational limit = limit_profile(law).ratios.front();
    SeriesTerm t = make(Shape::Zero, "constant ratio");
    if (const auto* tp = std::get_if<TwoPoint>(&law)) {
      t = deviation(tp->deviation, 1, Rational(1), "eps_n of the two-point template");
    } else if (const auto* p = std::get_if<PerturbedVector>(&law)) {
      if (p->direction[0] != 0) t = deviation(p->deviation, 1, std::nullopt, "eps_n ~ c * perturbation");
    }
    t.indices = *classes[c].indices.progression();
    t.description = "class " + std::to_string(c) + ": " + t.description;
    const bool zero_limit = limit == 0;
    const double log_limit = zero_limit ? 0.0 : log_of(limit);
    t.term = [shared, zero_limit, log_limit](std::int64_t n) {
      CoordinateLaw l = shared->float_law(n);
      double log_ratio = l.log_weight(1) - l.log_weight(0);
      return zero_limit ? std::abs(-std::log1p(-std::exp(log_ratio))) : std::abs(log_limit - log_ratio);
    };
    LambdaGroup& g = groups[limit];
    g.limit = Real(limit);
    g.classes.push_back(c);
    g.deviations.name = "eps on N(" + to_string(limit) + ")";
    g.deviations.tails.push_back(std::move(t));
    add_point(out.clusters, Real(limit), c, ClusterSource::Asymptotic);
  }
  finish(out.clusters);
  for (auto& [k, g] : groups) out.groups.push_back(std::move(g));
  return out;
}

}  // namespace krieger
