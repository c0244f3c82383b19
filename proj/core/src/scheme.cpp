#include "krieger/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "krieger/error.hpp"
#include "template_eval.hpp"

namespace krieger {

std::string_view to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::Exact ? "rational" : "float";
}

std::string_view to_string(Deviation::Kind kind) {
  switch (kind) {
    case Deviation::Kind::Zero: return "zero";
    case Deviation::Kind::Geometric: return "geometric";
    case Deviation::Kind::Power: return "power";
    case Deviation::Kind::List: return "list";
  }
  return "zero";
}

std::string_view kind_name(const TemplateLaw& law) {
  switch (law.index()) {
    case 0: return "explicit";
    case 1: return "geometric";
    case 2: return "two_point";
    case 3: return "perturbed";
    default: return "growing";
  }
}

// ---------------------------------------------------------------- Deviation

Deviation Deviation::geometric(Rational rho, Rational scale) {
  Deviation d;
  d.kind = Kind::Geometric;
  d.rho = std::move(rho);
  d.scale = std::move(scale);
  return d;
}

Deviation Deviation::power(Rational exponent, Rational scale) {
  Deviation d;
  d.kind = Kind::Power;
  d.exponent = std::move(exponent);
  d.scale = std::move(scale);
  return d;
}

Deviation Deviation::list(std::vector<Rational> values) {
  Deviation d;
  d.kind = Kind::List;
  d.values = std::move(values);
  return d;
}

bool Deviation::is_zero() const {
  switch (kind) {
    case Kind::Zero: return true;
    case Kind::Geometric:
    case Kind::Power: return scale == 0;
    case Kind::List: return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == 0; });
  }
  return true;
}

bool Deviation::is_exact() const { return kind != Kind::Power || exponent.get_den() == 1; }

Real Deviation::at(std::int64_t n, std::size_t member) const {
  switch (kind) {
    case Kind::Zero: return Real(0);
    case Kind::Geometric: return Real(Rational(scale * krieger::power(rho, n)));
    case Kind::Power:
      if (is_exact()) return Real(Rational(scale / krieger::power(Rational(n), exponent.get_num().get_si())));
      return Real::approximate(value_at(n, member));
    case Kind::List: return member < values.size() ? Real(values[member]) : Real(0);
  }
  return Real(0);
}

double Deviation::value_at(std::int64_t n, std::size_t member) const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Geometric: return scale.get_d() * std::exp(static_cast<double>(n) * log_of(rho));
    case Kind::Power: return scale.get_d() * std::exp(-exponent.get_d() * std::log(static_cast<double>(n)));
    case Kind::List: return member < values.size() ? values[member].get_d() : 0.0;
  }
  return 0.0;
}

// ----------------------------------------------------------------- IndexSet

bool IndexSet::contains(std::int64_t n) const { return position(n).has_value(); }

std::optional<std::size_t> IndexSet::position(std::int64_t n) const {
  if (const auto* p = progression()) {
    if (n < p->start || (n - p->start) % p->step != 0) return std::nullopt;
    return static_cast<std::size_t>((n - p->start) / p->step);
  }
  const auto& m = list()->members;
  auto it = std::lower_bound(m.begin(), m.end(), n);
  if (it == m.end() || *it != n) return std::nullopt;
  return static_cast<std::size_t>(it - m.begin());
}

std::int64_t IndexSet::member(std::size_t k) const {
  if (const auto* p = progression()) return p->start + static_cast<std::int64_t>(k) * p->step;
  const auto& m = list()->members;
  if (k >= m.size()) throw Error(Errc::DomainError, "index class has no member " + std::to_string(k));
  return m[k];
}

std::optional<std::size_t> IndexSet::size() const {
  if (progression()) return std::nullopt;
  return list()->members.size();
}

// ------------------------------------------------------------ evaluation

namespace detail {

TwoPointValue two_point_value(const TwoPoint& t, std::int64_t n, std::size_t member) {
  TwoPointValue v;
  const Deviation& d = t.deviation;
  const bool eps_zero =
      d.is_zero() || (d.kind == Deviation::Kind::List && (member >= d.values.size() || d.values[member] == 0));
  const double eps = eps_zero ? 0.0 : d.value_at(n, member);
  if (t.lambda > 0) {
    if (eps_zero) v.exact = t.lambda;
    v.log_lambda = log_of(t.lambda) - eps;
    v.lambda = std::exp(v.log_lambda);
  } else {
    v.lambda = -std::expm1(-eps);
    v.log_lambda = std::log(v.lambda);
  }
  return v;
}

std::int64_t growing_size(const GrowingAlphabet& g, std::int64_t n) { return g.slope * n + g.offset; }

std::vector<Real> finite_weights(const TemplateLaw& law, std::int64_t n, std::size_t member, bool exact) {
  std::vector<Real> out;
  if (const auto* e = std::get_if<ExplicitWeights>(&law)) {
    for (const auto& w : e->weights) out.emplace_back(w);
  } else if (const auto* t = std::get_if<TwoPoint>(&law)) {
    TwoPointValue v = two_point_value(*t, n, member);
    if (v.exact) {
      Rational lam = *v.exact;
      out = {Real(Rational(1 / (1 + lam))), Real(Rational(lam / (1 + lam)))};
    } else {
      out = {Real::approximate(1.0 / (1.0 + v.lambda)), Real::approximate(v.lambda / (1.0 + v.lambda))};
    }
  } else if (const auto* p = std::get_if<PerturbedVector>(&law)) {
    Real eps = p->deviation.at(n, member);
    for (std::size_t i = 0; i < p->limit.size(); ++i) out.push_back(Real(p->limit[i]) + eps * Real(p->direction[i]));
  } else if (const auto* g = std::get_if<GrowingAlphabet>(&law)) {
    auto size = static_cast<std::size_t>(std::max<std::int64_t>(growing_size(*g, n), 0));
    Rational total = 0;
    for (std::size_t i = 0; i < size; ++i) total += g->ratios[std::min(i, g->ratios.size() - 1)];
    for (std::size_t i = 0; i < size; ++i) out.emplace_back(Rational(g->ratios[std::min(i, g->ratios.size() - 1)] / total));
  } else {
    throw Error(Errc::DomainError, "geometric tails have no finite weight list");
  }
  if (!exact) {
    for (auto& w : out) w = Real::approximate(w.value());
  }
  return out;
}

std::vector<std::size_t> descending_order(const std::vector<Real>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

}  // namespace detail

bool is_transcendental(const WeightTemplate& weights) {
  if (const auto* t = std::get_if<TwoPoint>(&weights.law)) return !t->deviation.is_zero();
  if (const auto* p = std::get_if<PerturbedVector>(&weights.law)) return !p->deviation.is_exact();
  return false;
}

namespace {

Real as_mode(const Real& r, bool exact) { return exact ? r : Real::approximate(r.value()); }

std::vector<double> logs_of(const std::vector<Real>& w) {
  std::vector<double> out;
  out.reserve(w.size());
  for (const auto& x : w) out.push_back(x.log());
  return out;
}

}  // namespace

CoordinateLaw evaluate(const WeightTemplate& weights, std::int64_t n, std::size_t member, ArithmeticMode mode) {
  const bool exact = mode == ArithmeticMode::Exact;
  const auto& law = weights.law;
  if (const auto* g = std::get_if<GeometricTail>(&law)) {
    std::vector<Real> head;
    Rational base_sum = 0;
    for (const auto& b : g->base) {
      head.push_back(as_mode(Real(b), exact));
      base_sum += b;
    }
    CoordinateLaw::Tail tail{as_mode(Real(Rational(1 - base_sum)), exact), g->q};
    return CoordinateLaw(head, logs_of(head), std::nullopt, tail, weights.relabel);
  }
  if (const auto* t = std::get_if<TwoPoint>(&law)) {
    detail::TwoPointValue v = detail::two_point_value(*t, n, member);
    if (v.exact && exact) {
      auto head = detail::finite_weights(law, n, member, true);
      return CoordinateLaw(head, logs_of(head), std::nullopt, std::nullopt, weights.relabel);
    }
    double l1p = std::log1p(v.lambda);
    std::vector<Real> head{Real::approximate(1.0 / (1.0 + v.lambda)), Real::approximate(v.lambda / (1.0 + v.lambda))};
    return CoordinateLaw(head, {-l1p, v.log_lambda - l1p}, std::nullopt, std::nullopt, weights.relabel);
  }
  if (const auto* g = std::get_if<GrowingAlphabet>(&law)) {
    auto size = static_cast<std::size_t>(detail::growing_size(*g, n));
    const std::size_t L = g->ratios.size();
    const std::size_t explicit_count = std::min(size, L);
    Rational total = 0;
    for (std::size_t i = 0; i < explicit_count; ++i) total += g->ratios[i];
    if (size > L) total += g->ratios.back() * static_cast<long>(size - L);
    std::vector<Real> head;
    for (std::size_t i = 0; i < explicit_count; ++i) head.push_back(as_mode(Real(Rational(g->ratios[i] / total)), exact));
    std::optional<CoordinateLaw::Plateau> plateau;
    if (size > L) {
      Real w = as_mode(Real(Rational(g->ratios.back() / total)), exact);
      plateau = CoordinateLaw::Plateau{w, w.log(), size - L};
    }
    return CoordinateLaw(head, logs_of(head), plateau, std::nullopt, weights.relabel);
  }
  auto head = detail::finite_weights(law, n, member, exact);
  return CoordinateLaw(head, logs_of(head), std::nullopt, std::nullopt, weights.relabel);
}

// ------------------------------------------------------------ CoordinateLaw

CoordinateLaw::CoordinateLaw(std::vector<Real> head, std::vector<double> head_log, std::optional<Plateau> plateau,
                             std::optional<Tail> tail, std::vector<std::size_t> relabel)
    : head_(std::move(head)),
      head_log_(std::move(head_log)),
      plateau_(std::move(plateau)),
      tail_(std::move(tail)),
      relabel_(std::move(relabel)) {
  inverse_.resize(relabel_.size());
  for (std::size_t i = 0; i < relabel_.size(); ++i) inverse_[relabel_[i]] = i;
}

std::optional<std::size_t> CoordinateLaw::alphabet_size() const {
  if (tail_) return std::nullopt;
  return head_.size() + (plateau_ ? plateau_->count : 0);
}

bool CoordinateLaw::is_exact() const {
  for (const auto& w : head_) {
    if (!w.is_exact()) return false;
  }
  if (plateau_ && !plateau_->weight.is_exact()) return false;
  if (tail_ && !tail_->mass.is_exact()) return false;
  return true;
}

std::size_t CoordinateLaw::canonical(std::size_t symbol) const {
  if (auto size = alphabet_size(); size && symbol >= *size) {
    throw Error(Errc::SymbolOutOfRange,
                "symbol " + std::to_string(symbol) + " outside alphabet of size " + std::to_string(*size));
  }
  return symbol < inverse_.size() ? inverse_[symbol] : symbol;
}

Real CoordinateLaw::canonical_weight(std::size_t index) const {
  if (index < head_.size()) return head_[index];
  index -= head_.size();
  if (plateau_) {
    if (index < plateau_->count) return plateau_->weight;
    index -= plateau_->count;
  }
  const Tail& t = *tail_;
  if (t.mass.is_exact()) {
    return Real(Rational(t.mass.exact() * (1 - t.q) * power(t.q, static_cast<std::int64_t>(index))));
  }
  return Real::approximate(std::exp(canonical_log_weight(index + head_.size() + (plateau_ ? plateau_->count : 0))));
}

double CoordinateLaw::canonical_log_weight(std::size_t index) const {
  if (index < head_.size()) return head_log_[index];
  index -= head_.size();
  if (plateau_) {
    if (index < plateau_->count) return plateau_->log_weight;
    index -= plateau_->count;
  }
  const Tail& t = *tail_;
  return t.mass.log() + log_of(Rational(1 - t.q)) + static_cast<double>(index) * log_of(t.q);
}

Real CoordinateLaw::weight(std::size_t symbol) const { return canonical_weight(canonical(symbol)); }

double CoordinateLaw::log_weight(std::size_t symbol) const { return canonical_log_weight(canonical(symbol)); }

Real CoordinateLaw::ratio(std::size_t symbol) const { return weight(symbol) / weight(0); }

// ---------------------------------------------------------------- validate

namespace {

constexpr double kFloatSumTolerance = 1e-12;
constexpr std::int64_t kMaxCoveragePeriod = 10'000'000;

[[noreturn]] void fail(Errc code, const std::string& where, const std::string& what) {
  throw Error(code, where + ": " + what);
}

void check_vector(const std::vector<Rational>& w, ArithmeticMode mode, const std::string& where) {
  if (w.size() < 2) fail(Errc::InvalidTemplate, where, "alphabet needs at least 2 symbols");
  Rational sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0) fail(Errc::NonPositiveWeight, where, "weight of symbol " + std::to_string(i) + " is " + to_string(w[i]));
    sum += w[i];
  }
  bool ok = mode == ArithmeticMode::Exact ? sum == 1 : std::abs(sum.get_d() - 1.0) <= kFloatSumTolerance;
  if (!ok) fail(Errc::NotNormalized, where, "weights sum to " + to_string(sum));
}

void check_real_weights(const std::vector<Real>& w, const std::string& where) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].sign() <= 0) fail(Errc::NonPositiveWeight, where, "weight of symbol " + std::to_string(i) + " is " + w[i].str());
  }
}

void check_deviation(const Deviation& d, const std::string& where) {
  if (d.kind == Deviation::Kind::Geometric && (d.rho <= 0 || d.rho >= 1)) {
    fail(Errc::InvalidTemplate, where, "geometric deviation needs rho in (0,1)");
  }
  if (d.kind == Deviation::Kind::Power && d.exponent <= 0) {
    fail(Errc::InvalidTemplate, where, "power deviation needs a positive exponent");
  }
}

// Members worth checking for positivity: the first one (largest |eps| for
// monotone families), every listed value, and a zero-deviation member.
std::vector<std::size_t> probe_members(const Deviation& d, const IndexSet& indices) {
  std::vector<std::size_t> out{0};
  auto size = indices.size();
  if (d.kind == Deviation::Kind::List) {
    for (std::size_t k = 1; k < d.values.size() && (!size || k < *size); ++k) out.push_back(k);
    if (!size || *size > d.values.size()) out.push_back(d.values.size());
  }
  return out;
}

ClassInfo check_class(const IndexClass& cls, ArithmeticMode mode, const std::string& where) {
  ClassInfo info;
  const IndexSet& idx = cls.indices;
  if (const auto* p = idx.progression()) {
    if (p->start < 1 || p->step < 1) fail(Errc::InvalidTemplate, where, "progression needs start >= 1 and step >= 1");
    info.infinite = true;
  } else {
    const auto& m = idx.list()->members;
    if (m.empty()) fail(Errc::InvalidTemplate, where, "index list is empty");
    if (m.front() < 1) fail(Errc::InvalidTemplate, where, "coordinates are 1-indexed");
    for (std::size_t i = 1; i < m.size(); ++i) {
      if (m[i] <= m[i - 1]) fail(Errc::InvalidTemplate, where, "index list must be strictly increasing");
    }
  }
  const std::int64_t first = idx.first();
  const auto& law = cls.weights.law;
  std::optional<std::size_t> min_size;

  if (const auto* e = std::get_if<ExplicitWeights>(&law)) {
    check_vector(e->weights, mode, where);
    info.alphabet_size = e->weights.size();
  } else if (const auto* g = std::get_if<GeometricTail>(&law)) {
    if (g->q <= 0 || g->q >= 1) fail(Errc::InvalidTemplate, where, "geometric tail needs q in (0,1)");
    Rational sum = 0;
    for (std::size_t i = 0; i < g->base.size(); ++i) {
      if (g->base[i] <= 0) fail(Errc::NonPositiveWeight, where, "base weight " + std::to_string(i) + " is not positive");
      sum += g->base[i];
    }
    if (sum > 1) fail(Errc::NotNormalized, where, "base weights sum to " + to_string(sum));
    if (sum == 1) fail(Errc::NonPositiveWeight, where, "base weights leave no mass for the tail");
    info.unbounded_alphabet = info.infinite;
  } else if (const auto* t = std::get_if<TwoPoint>(&law)) {
    check_deviation(t->deviation, where);
    if (t->lambda < 0) fail(Errc::InvalidTemplate, where, "two-point lambda must be non-negative");
    if (t->lambda == 0) {
      for (std::size_t k : probe_members(t->deviation, idx)) {
        if (t->deviation.at(idx.member(k), k).sign() <= 0) {
          fail(Errc::NonPositiveWeight, where, "lambda = 0 needs eps_n > 0 at every coordinate");
        }
      }
    }
    info.alphabet_size = 2;
    info.exact = t->deviation.is_zero();
  } else if (const auto* p = std::get_if<PerturbedVector>(&law)) {
    check_deviation(p->deviation, where);
    if (p->limit.size() < 2) fail(Errc::InvalidTemplate, where, "alphabet needs at least 2 symbols");
    if (p->direction.size() != p->limit.size()) fail(Errc::InvalidTemplate, where, "direction and limit differ in length");
    Rational vs = 0, ws = 0;
    for (std::size_t i = 0; i < p->limit.size(); ++i) {
      if (p->limit[i] < 0) fail(Errc::NonPositiveWeight, where, "limit weight " + std::to_string(i) + " is negative");
      vs += p->limit[i];
      ws += p->direction[i];
    }
    if (vs != 1) fail(Errc::NotNormalized, where, "limit vector sums to " + to_string(vs));
    if (ws != 0) fail(Errc::InvalidTemplate, where, "direction must sum to zero");
    for (std::size_t k : probe_members(p->deviation, idx)) {
      check_real_weights(detail::finite_weights(law, idx.member(k), k, p->deviation.is_exact()),
                         where + " at coordinate " + std::to_string(idx.member(k)));
    }
    info.alphabet_size = p->limit.size();
    info.exact = p->deviation.is_exact();
  } else if (const auto* g = std::get_if<GrowingAlphabet>(&law)) {
    if (g->ratios.empty()) fail(Errc::InvalidTemplate, where, "growing alphabet needs at least one ratio");
    for (const auto& r : g->ratios) {
      if (r <= 0) fail(Errc::NonPositiveWeight, where, "ratios must be positive");
    }
    if (*std::min_element(g->ratios.begin(), g->ratios.end()) != g->ratios.back()) {
      fail(Errc::InvalidTemplate, where, "the last (plateau) ratio must be the smallest");
    }
    if (g->slope < 0) fail(Errc::InvalidTemplate, where, "growing alphabet slope must be non-negative");
    std::int64_t size = detail::growing_size(*g, first);
    if (size < 2) fail(Errc::InvalidTemplate, where, "alphabet needs at least 2 symbols at coordinate " + std::to_string(first));
    min_size = static_cast<std::size_t>(size);
    if (g->slope == 0) {
      info.alphabet_size = static_cast<std::size_t>(size);
    } else {
      info.unbounded_alphabet = info.infinite;
      if (!info.infinite) {
        info.alphabet_size = static_cast<std::size_t>(detail::growing_size(*g, idx.list()->members.back()));
      }
    }
  }
  if (!min_size) min_size = info.alphabet_size;

  const auto& relabel = cls.weights.relabel;
  if (!relabel.empty()) {
    std::vector<bool> seen(relabel.size(), false);
    for (std::size_t s : relabel) {
      if (s >= relabel.size() || seen[s]) fail(Errc::InvalidTemplate, where, "relabel must be a permutation of 0..k-1");
      seen[s] = true;
    }
    if (min_size && relabel.size() > *min_size) fail(Errc::InvalidTemplate, where, "relabel longer than the alphabet");
  }
  if (mode == ArithmeticMode::Exact && !info.exact) {
    fail(Errc::InvalidTemplate, where, "rational mode requested but the template has irrational weights");
  }
  return info;
}

void check_coverage(const SchemeSpec& spec) {
  const auto P = static_cast<std::int64_t>(spec.prefix.size());
  std::int64_t period = 1;
  std::int64_t horizon = P;
  for (const auto& cls : spec.classes) {
    if (cls.indices.first() <= P) {
      throw Error(Errc::Overlap, "coordinate " + std::to_string(cls.indices.first()) + " is in the prefix and in a class");
    }
    if (const auto* p = cls.indices.progression()) {
      period = std::lcm(period, p->step);
      if (period > kMaxCoveragePeriod) throw Error(Errc::InvalidTemplate, "progression steps have too large a common period");
      horizon = std::max(horizon, p->start);
    } else {
      horizon = std::max(horizon, cls.indices.list()->members.back());
    }
  }
  const std::int64_t upper = horizon + period;
  for (std::int64_t n = P + 1; n <= upper; ++n) {
    int owners = 0;
    for (const auto& cls : spec.classes) owners += cls.indices.contains(n) ? 1 : 0;
    if (owners == 0) throw Error(Errc::CoverageGap, "coordinate " + std::to_string(n) + " is not covered");
    if (owners > 1) throw Error(Errc::Overlap, "coordinate " + std::to_string(n) + " is covered by " + std::to_string(owners) + " classes");
  }
}

}  // namespace

ValidatedScheme validate(const SchemeSpec& spec) {
  ValidatedScheme out;
  out.spec_ = spec;
  bool transcendental = std::any_of(spec.classes.begin(), spec.classes.end(),
                                    [](const IndexClass& c) { return is_transcendental(c.weights); });
  out.mode_ = spec.mode.value_or(transcendental ? ArithmeticMode::Float : ArithmeticMode::Exact);
  for (std::size_t k = 0; k < spec.prefix.size(); ++k) {
    check_vector(spec.prefix[k], out.mode_, "prefix coordinate " + std::to_string(k + 1));
  }
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    out.info_.push_back(check_class(spec.classes[c], out.mode_, "class " + std::to_string(c)));
  }
  check_coverage(spec);
  out.normalized_ = normalize(spec).spec == spec;
  return out;
}

ValidatedScheme prepare(const SchemeSpec& spec) { return validate(normalize(spec).spec); }

std::optional<std::pair<std::size_t, std::size_t>> ValidatedScheme::locate(std::int64_t n) const {
  if (n < 1) throw Error(Errc::DomainError, "coordinates are 1-indexed");
  if (n <= prefix_length()) return std::nullopt;
  for (std::size_t c = 0; c < spec_.classes.size(); ++c) {
    if (auto pos = spec_.classes[c].indices.position(n)) return std::make_pair(c, *pos);
  }
  throw Error(Errc::CoverageGap, "coordinate " + std::to_string(n) + " is not covered");
}

namespace {

CoordinateLaw law_at(const ValidatedScheme& s, std::int64_t n, ArithmeticMode mode) {
  auto where = s.locate(n);
  if (!where) {
    std::vector<Real> head;
    for (const auto& w : s.spec().prefix[static_cast<std::size_t>(n - 1)]) head.push_back(as_mode(Real(w), mode == ArithmeticMode::Exact));
    return CoordinateLaw(head, logs_of(head), std::nullopt, std::nullopt);
  }
  return evaluate(s.spec().classes[where->first].weights, n, where->second, mode);
}

}  // namespace

CoordinateLaw ValidatedScheme::law(std::int64_t n) const { return law_at(*this, n, mode_); }

CoordinateLaw ValidatedScheme::float_law(std::int64_t n) const { return law_at(*this, n, ArithmeticMode::Float); }

bool ValidatedScheme::unbounded_alphabets() const {
  return std::any_of(info_.begin(), info_.end(), [](const ClassInfo& i) { return i.unbounded_alphabet; });
}

// -------------------------------------------------------------- conversions

FactorSpec scheme_to_factor(const SchemeSpec& spec) {
  FactorSpec f;
  f.spectra = spec.prefix;
  f.classes = spec.classes;
  return f;
}

SchemeSpec factor_to_scheme(const FactorSpec& factor) {
  auto drop_zeros = [](const std::vector<Rational>& v, const std::string& where) {
    std::vector<Rational> out;
    for (const auto& x : v) {
      if (x < 0) throw Error(Errc::NonPositiveWeight, where + ": negative eigenvalue " + to_string(x));
      if (x > 0) out.push_back(x);
    }
    if (out.empty()) throw Error(Errc::NonPositiveWeight, where + ": no positive eigenvalue");
    return out;
  };
  SchemeSpec s;
  for (std::size_t k = 0; k < factor.spectra.size(); ++k) {
    s.prefix.push_back(drop_zeros(factor.spectra[k], "spectrum of coordinate " + std::to_string(k + 1)));
  }
  s.classes = factor.classes;
  for (std::size_t c = 0; c < s.classes.size(); ++c) {
    if (auto* e = std::get_if<ExplicitWeights>(&s.classes[c].weights.law)) {
      if (!s.classes[c].weights.relabel.empty()) {
        throw Error(Errc::InvalidTemplate, "class " + std::to_string(c) + ": factor spectra carry no relabel");
      }
      e->weights = drop_zeros(e->weights, "class " + std::to_string(c));
    }
  }
  return normalize(s).spec;
}

// ---------------------------------------------------------------- truncation

Truncation truncate_alphabet(const CoordinateLaw& law, const Real& delta) {
  if (!(delta > Real(0)) || delta > Real(Rational(1, 2))) {
    throw Error(Errc::DomainError, "truncation budget must lie in (0, 1/2], got " + delta.str());
  }
  Truncation t;
  if (auto size = law.alphabet_size()) {
    t.symbols = *size;
    for (const auto& w : law.head()) t.retained_mass = t.retained_mass + w;
    if (law.plateau()) t.retained_mass = t.retained_mass + law.plateau()->weight * Real(static_cast<long>(law.plateau()->count));
    return t;
  }
  const Real goal = Real(1) - delta;
  for (const auto& w : law.head()) {
    if (t.retained_mass >= goal) return t;
    t.retained_mass = t.retained_mass + w;
    ++t.symbols;
  }
  const auto& tail = *law.tail();
  const Real keep = Real(1) - Real(tail.q);
  Real next = tail.mass * keep;
  constexpr std::size_t kMaxTailSymbols = 10'000'000;
  for (std::size_t j = 0; t.retained_mass < goal; ++j) {
    if (j >= kMaxTailSymbols) throw Error(Errc::BudgetUnreachable, "tail too heavy to reach the mass budget");
    t.retained_mass = t.retained_mass + next;
    next = next * Real(tail.q);
    ++t.symbols;
  }
  return t;
}

}  // namespace krieger
