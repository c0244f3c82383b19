#include <algorithm>
#include <cmath>

#include "krieger/error.hpp"
#include "krieger/scheme.hpp"
#include "template_eval.hpp"

namespace krieger {
namespace {

using detail::descending_order;
using detail::to_observed;

constexpr std::size_t kMaxCrossoverScan = 1'000'000;

struct Emitter {
  NormalizedScheme& out;
  std::size_t source;

  void operator()(IndexSet indices, TemplateLaw law, std::vector<std::size_t> perm) {
    out.spec.classes.push_back(IndexClass{std::move(indices), WeightTemplate{std::move(law), {}}});
    out.class_permutations.push_back(ClassPermutation{source, std::move(perm)});
  }
};

std::vector<Rational> rescale(const std::vector<Rational>& v) {
  Rational sum = 0;
  for (const auto& x : v) sum += x;
  if (sum <= 0 || sum == 1) return v;
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x / sum);
  return out;
}

std::vector<Real> as_reals(const std::vector<Rational>& v) { return {v.begin(), v.end()}; }

template <class T>
std::vector<T> permuted(const std::vector<T>& v, const std::vector<std::size_t>& order) {
  std::vector<T> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(v[i]);
  return out;
}

std::pair<std::vector<Rational>, std::vector<std::size_t>> sort_weights(const std::vector<Rational>& canonical,
                                                                          const std::vector<std::size_t>& relabel) {
  auto observed = to_observed(canonical, relabel);
  auto order = descending_order(as_reals(observed));
  return {permuted(observed, order), order};
}

/// Members of the class from position k onward.
IndexSet drop_members(const IndexSet& s, std::size_t k) {
  if (const auto* p = s.progression()) return Progression{p->start + static_cast<std::int64_t>(k) * p->step, p->step};
  const auto& m = s.list()->members;
  return IndexList{{m.begin() + static_cast<std::ptrdiff_t>(k), m.end()}};
}

Deviation drop_deviation(const Deviation& d, std::size_t k) {
  if (d.kind != Deviation::Kind::List) return d;
  Deviation out = d;
  out.values.erase(out.values.begin(), out.values.begin() + static_cast<std::ptrdiff_t>(std::min(k, d.values.size())));
  return out;
}

/// The deviation seen by a single-member class cut out at position k.
Deviation single_deviation(const Deviation& d, std::size_t k) {
  if (d.kind != Deviation::Kind::List) return d;
  return Deviation::list({k < d.values.size() ? d.values[k] : Rational(0)});
}

Deviation negated(Deviation d) {
  d.scale = -d.scale;
  for (auto& v : d.values) v = -v;
  return d;
}

int eventual_sign(const Deviation& d) {
  if (d.kind == Deviation::Kind::Geometric || d.kind == Deviation::Kind::Power) return sgn(d.scale);
  return 0;
}

bool is_singleton(const IndexSet& s) { return s.size() && *s.size() == 1; }

/// Number of leading members to scan for ordering crossovers. Geometric and
/// power families shrink monotonically, so the first ordered member ends the
/// scan; list families are scanned in full.
template <class Offending>
std::size_t crossover_count(const Deviation& d, const IndexSet& idx, Offending offending) {
  auto size = idx.size();
  auto in_class = [&](std::size_t k) { return !size || k < *size; };
  if (d.is_zero()) return 0;
  if (d.kind == Deviation::Kind::List) {
    std::size_t k0 = 0;
    for (std::size_t k = 0; k < d.values.size() && in_class(k); ++k) {
      if (offending(k)) k0 = k + 1;
    }
    return k0;
  }
  std::size_t k = 0;
  while (in_class(k) && offending(k)) {
    if (++k > kMaxCrossoverScan) {
      throw Error(Errc::InvalidTemplate, "symbol ordering does not settle within " + std::to_string(kMaxCrossoverScan) + " coordinates");
    }
  }
  return k;
}

void normalize_two_point(const IndexClass& cls, const TwoPoint& t, Emitter& emit) {
  const auto& idx = cls.indices;
  std::vector<std::size_t> observed{0, 1};
  if (cls.weights.relabel.size() == 2) observed = cls.weights.relabel;
  const std::vector<std::size_t> swapped{observed[1], observed[0]};

  auto inverted = [](const TwoPoint& x) { return TwoPoint{Rational(1 / x.lambda), negated(x.deviation)}; };
  auto exceeds_one = [](const TwoPoint& x, std::int64_t n, std::size_t k) {
    if (x.lambda == 0) return false;
    if (x.lambda == 1) return x.deviation.value_at(n, k) < 0;
    return detail::two_point_value(x, n, k).log_lambda > 0;
  };

  if (is_singleton(idx)) {
    if (exceeds_one(t, idx.first(), 0)) {
      emit(idx, inverted(t), swapped);
    } else {
      emit(idx, t, observed);
    }
    return;
  }

  bool flip = t.lambda > 1 || (t.lambda == 1 && eventual_sign(t.deviation) < 0);
  TwoPoint base = flip ? inverted(t) : t;
  const auto& perm = flip ? swapped : observed;
  std::size_t k0 = crossover_count(base.deviation, idx, [&](std::size_t k) { return exceeds_one(base, idx.member(k), k); });
  auto size = idx.size();
  if (!size || k0 < *size) emit(drop_members(idx, k0), TwoPoint{base.lambda, drop_deviation(base.deviation, k0)}, perm);
  for (std::size_t k = 0; k < k0; ++k) {
    TwoPoint one{base.lambda, single_deviation(base.deviation, k)};
    IndexSet single = IndexList{{idx.member(k)}};
    if (exceeds_one(one, idx.member(k), 0)) {
      emit(single, inverted(one), std::vector<std::size_t>{perm[1], perm[0]});
    } else {
      emit(single, one, perm);
    }
  }
}

void normalize_perturbed(const IndexClass& cls, const PerturbedVector& p, Emitter& emit) {
  const auto& idx = cls.indices;
  const auto& relabel = cls.weights.relabel;
  auto ov = to_observed(p.limit, relabel);
  auto ow = to_observed(p.direction, relabel);
  PerturbedVector observed{ov, ow, p.deviation};

  auto local_order = [&](const PerturbedVector& x, std::size_t k) {
    return descending_order(detail::finite_weights(x, idx.member(k), k, x.deviation.is_exact()));
  };

  if (is_singleton(idx)) {
    auto order = local_order(observed, 0);
    emit(idx, PerturbedVector{permuted(ov, order), permuted(ow, order), p.deviation}, order);
    return;
  }

  const int s = eventual_sign(p.deviation);
  std::vector<std::size_t> order(ov.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ov[a] != ov[b]) return ov[a] > ov[b];
    return s * ow[a] > s * ow[b];
  });
  PerturbedVector base{permuted(ov, order), permuted(ow, order), p.deviation};
  std::size_t k0 =
      crossover_count(p.deviation, idx, [&](std::size_t k) { return !detail::is_identity(local_order(base, k)); });
  auto size = idx.size();
  if (!size || k0 < *size) {
    emit(drop_members(idx, k0), PerturbedVector{base.limit, base.direction, drop_deviation(p.deviation, k0)}, order);
  }
  for (std::size_t k = 0; k < k0; ++k) {
    IndexSet single = IndexList{{idx.member(k)}};
    auto local = local_order(observed, k);
    if (p.deviation.is_exact()) {
      auto w = detail::finite_weights(observed, idx.member(k), k, true);
      std::vector<Rational> sorted;
      for (std::size_t i : local) sorted.push_back(w[i].exact());
      emit(single, ExplicitWeights{sorted}, local);
    } else {
      emit(single, PerturbedVector{permuted(ov, local), permuted(ow, local), single_deviation(p.deviation, k)}, local);
    }
  }
}

void normalize_growing(const IndexClass& cls, const GrowingAlphabet& g, Emitter& emit) {
  const auto& idx = cls.indices;
  const auto& relabel = cls.weights.relabel;
  const std::size_t L = g.ratios.size();
  const std::size_t K = std::max(L, relabel.size());
  std::vector<Rational> canonical;
  for (std::size_t i = 0; i < K; ++i) canonical.push_back(g.ratios[std::min(i, L - 1)]);
  auto [sorted, order] = sort_weights(canonical, relabel);
  if (K == L && detail::is_identity(order)) {
    emit(idx, g, order);
    return;
  }
  auto explicit_at = [&](std::size_t k) {
    auto w = detail::finite_weights(g, idx.member(k), k, true);
    std::vector<Rational> exact;
    for (const auto& x : w) exact.push_back(x.exact());
    return sort_weights(exact, relabel);
  };
  auto too_short = [&](std::size_t k) { return detail::growing_size(g, idx.member(k)) < static_cast<std::int64_t>(K); };
  auto size = idx.size();
  if (g.slope == 0 && too_short(0)) {
    auto [w, perm] = explicit_at(0);
    emit(idx, ExplicitWeights{w}, perm);
    return;
  }
  std::size_t k0 = 0;
  while ((!size || k0 < *size) && too_short(k0)) ++k0;
  if (!size || k0 < *size) emit(drop_members(idx, k0), GrowingAlphabet{sorted, g.slope, g.offset}, order);
  for (std::size_t k = 0; k < k0; ++k) {
    auto [w, perm] = explicit_at(k);
    emit(IndexList{{idx.member(k)}}, ExplicitWeights{w}, perm);
  }
}

void normalize_geometric(const IndexClass& cls, const GeometricTail& g, Emitter& emit) {
  const auto& relabel = cls.weights.relabel;
  const std::size_t m = g.base.size();
  Rational tail_mass = 1;
  for (const auto& b : g.base) tail_mass -= b;
  std::size_t J = 0;
  if (m > 0) {
    const Rational min_base = *std::min_element(g.base.begin(), g.base.end());
    Rational next = tail_mass * (1 - g.q);
    while (next > min_base) {
      next *= g.q;
      ++J;
    }
  }
  const std::size_t K = std::max(m + J, relabel.size());
  std::vector<Rational> canonical = g.base;
  Rational next = tail_mass * (1 - g.q);
  for (std::size_t i = m; i < K; ++i) {
    canonical.push_back(next);
    next *= g.q;
  }
  auto [sorted, order] = sort_weights(canonical, relabel);
  emit(cls.indices, GeometricTail{sorted, g.q}, order);
}

void normalize_class(const IndexClass& cls, Emitter& emit) {
  const auto& law = cls.weights.law;
  if (const auto* e = std::get_if<ExplicitWeights>(&law)) {
    auto [w, perm] = sort_weights(rescale(e->weights), cls.weights.relabel);
    emit(cls.indices, ExplicitWeights{w}, perm);
  } else if (const auto* g = std::get_if<GeometricTail>(&law)) {
    normalize_geometric(cls, *g, emit);
  } else if (const auto* t = std::get_if<TwoPoint>(&law)) {
    normalize_two_point(cls, *t, emit);
  } else if (const auto* p = std::get_if<PerturbedVector>(&law)) {
    normalize_perturbed(cls, *p, emit);
  } else {
    normalize_growing(cls, std::get<GrowingAlphabet>(law), emit);
  }
}

}  // namespace

NormalizedScheme normalize(const SchemeSpec& spec) {
  NormalizedScheme out;
  out.spec.mode = spec.mode;
  for (const auto& v : spec.prefix) {
    auto [w, perm] = sort_weights(rescale(v), {});
    out.spec.prefix.push_back(std::move(w));
    out.prefix_permutations.push_back(std::move(perm));
  }
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    Emitter emit{out, c};
    normalize_class(spec.classes[c], emit);
  }
  return out;
}

}  // namespace krieger
