#include "krieger/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "krieger/error.hpp"

namespace krieger {

std::uint64_t Block::pair_count() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (const auto& c : coordinates) {
    const std::uint64_t s = c.symbols.size();
    const std::uint64_t pairs = s * s;
    if (total > kMax / pairs) return kMax;
    total *= pairs;
  }
  return total;
}

Block make_block(const ValidatedScheme& scheme, std::int64_t start, std::size_t length, const Rational& delta) {
  if (length == 0) throw Error(Errc::DomainError, "block length must be positive");
  if (start < 0) throw Error(Errc::DomainError, "block start must be non-negative");
  Block block;
  block.start = start;
  block.length = length;
  block.delta = delta;
  block.coordinates.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    BlockCoordinate c;
    c.n = start + static_cast<std::int64_t>(k) + 1;
    c.law = scheme.law(c.n);
    const Truncation t = truncate_alphabet(c.law, Real(delta));
    c.retained_mass = t.retained_mass;
    const auto& relabel = c.law.relabel();
    for (std::size_t i = 0; i < t.symbols; ++i) {
      const std::size_t symbol = i < relabel.size() ? relabel[i] : i;
      c.symbols.push_back(symbol);
      c.weights.push_back(c.law.weight(symbol));
      c.log_weights.push_back(c.law.log_weight(symbol));
      block.exact = block.exact && c.weights.back().is_exact();
    }
    block.coordinates.push_back(std::move(c));
  }
  return block;
}

namespace {

CocycleValue accumulate(const Word& x, const Word& y, const auto& law_at) {
  if (x.size() != y.size()) {
    throw Error(Errc::WordLengthMismatch,
                "words have lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  CocycleValue v{Real(1), 0.0};
  for (std::size_t k = 0; k < x.size(); ++k) {
    const CoordinateLaw& law = law_at(k);
    if (x[k] == y[k]) {
      law.weight(x[k]);  // range check
      continue;
    }
    v.ratio = v.ratio * (law.weight(y[k]) / law.weight(x[k]));
    v.log += law.log_weight(y[k]) - law.log_weight(x[k]);
  }
  return v;
}

}  // namespace

CocycleValue log_cocycle(const ValidatedScheme& scheme, std::int64_t start, const Word& x, const Word& y) {
  CoordinateLaw law;
  return accumulate(x, y, [&](std::size_t k) -> const CoordinateLaw& {
    law = scheme.law(start + static_cast<std::int64_t>(k) + 1);
    return law;
  });
}

CocycleValue log_cocycle(const ValidatedScheme&, const Block& block, const Word& x, const Word& y) {
  if (x.size() != block.length) {
    throw Error(Errc::WordLengthMismatch,
                "word of length " + std::to_string(x.size()) + " on a block of length " + std::to_string(block.length));
  }
  return accumulate(x, y, [&](std::size_t k) -> const CoordinateLaw& { return block.coordinates[k].law; });
}

bool replay(const ValidatedScheme& scheme, const Witness& witness) {
  const CocycleValue v = log_cocycle(scheme, witness.start, witness.x, witness.y);
  return (v.ratio - witness.target).abs() < witness.tolerance;
}

// ------------------------------------------------------------ witness search

namespace {

constexpr double kMergeTolerance = 1e-12;

/// One achievable value of a partial product, with a back pointer.
struct State {
  double log = 0;
  std::optional<Rational> exact;
  bool changed = false;
  std::uint32_t parent = 0;
  std::uint32_t option = 0;
};

struct Option {
  double log = 0;
  std::optional<Rational> exact;
  bool changed = false;
  std::size_t x = 0;
  std::size_t y = 0;
};

/// Representative choice among equal values: lowest symbols first.
bool prefer(const Option& a, const Option& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); }
bool prefer(const State&, const State&) { return false; }

/// Sorts by log and merges entries whose values coincide: exactly when both
/// are exact, within kMergeTolerance otherwise. Entries with and without a
/// changed coordinate are kept apart.
template <typename T>
void collapse(std::vector<T>& items) {
  std::stable_sort(items.begin(), items.end(), [](const T& a, const T& b) { return a.log < b.log; });
  std::vector<T> out;
  out.reserve(items.size());
  std::size_t group_begin = 0;
  for (auto& item : items) {
    if (group_begin < out.size() && item.log - out[group_begin].log > kMergeTolerance) group_begin = out.size();
    bool merged = false;
    for (std::size_t k = group_begin; k < out.size() && !merged; ++k) {
      const T& kept = out[k];
      if (kept.changed != item.changed) continue;
      if (kept.exact && item.exact) {
        merged = *kept.exact == *item.exact;
      } else {
        merged = !kept.exact && !item.exact;
      }
      if (merged && prefer(item, kept)) out[k] = std::move(item);
    }
    if (!merged) out.push_back(std::move(item));
  }
  items = std::move(out);
}

std::vector<Option> coordinate_options(const BlockCoordinate& c, std::optional<std::size_t> anchor) {
  std::vector<Option> options;
  auto add = [&](std::size_t sx, const Real& wx, double lx, std::size_t sy, const Real& wy, double ly) {
    Option o;
    o.x = sx;
    o.y = sy;
    o.changed = sx != sy;
    if (o.changed) {
      o.log = ly - lx;
      if (wx.is_exact() && wy.is_exact()) o.exact = wy.exact() / wx.exact();
    } else {
      o.exact = Rational(1);
    }
    options.push_back(std::move(o));
  };
  if (anchor) {
    const Real wx = c.law.weight(*anchor);
    const double lx = c.law.log_weight(*anchor);
    add(*anchor, wx, lx, *anchor, wx, lx);
    for (std::size_t j = 0; j < c.symbols.size(); ++j) {
      if (c.symbols[j] != *anchor) add(*anchor, wx, lx, c.symbols[j], c.weights[j], c.log_weights[j]);
    }
  } else {
    for (std::size_t i = 0; i < c.symbols.size(); ++i) {
      for (std::size_t j = 0; j < c.symbols.size(); ++j) {
        add(c.symbols[i], c.weights[i], c.log_weights[i], c.symbols[j], c.weights[j], c.log_weights[j]);
      }
    }
  }
  collapse(options);
  return options;
}

class HalfEnumeration {
 public:
  HalfEnumeration(const std::vector<std::vector<Option>>& options, std::size_t begin, std::size_t end,
                  std::uint64_t& states, std::uint64_t cap)
      : options_(options), begin_(begin) {
    layers_.push_back({State{0.0, Rational(1), false, 0, 0}});
    for (std::size_t k = begin; k < end; ++k) {
      const auto& prev = layers_.back();
      const auto& opts = options[k];
      states += static_cast<std::uint64_t>(prev.size()) * opts.size();
      if (states > cap) {
        throw Error(Errc::SearchBudgetExceeded, "enumerated more than " + std::to_string(cap) + " states");
      }
      std::vector<State> next;
      next.reserve(prev.size() * opts.size());
      for (std::size_t p = 0; p < prev.size(); ++p) {
        for (std::size_t o = 0; o < opts.size(); ++o) {
          State s;
          s.log = prev[p].log + opts[o].log;
          if (prev[p].exact && opts[o].exact) s.exact = *prev[p].exact * *opts[o].exact;
          s.changed = prev[p].changed || opts[o].changed;
          s.parent = static_cast<std::uint32_t>(p);
          s.option = static_cast<std::uint32_t>(o);
          next.push_back(std::move(s));
        }
      }
      collapse(next);
      layers_.push_back(std::move(next));
    }
  }

  const std::vector<State>& values() const { return layers_.back(); }

  void words(std::size_t index, Word& x, Word& y) const {
    for (std::size_t layer = layers_.size() - 1; layer > 0; --layer) {
      const State& s = layers_[layer][index];
      const Option& o = options_[begin_ + layer - 1][s.option];
      x[begin_ + layer - 1] = o.x;
      y[begin_ + layer - 1] = o.y;
      index = s.parent;
    }
  }

 private:
  const std::vector<std::vector<Option>>& options_;
  std::size_t begin_;
  std::vector<std::vector<State>> layers_;
};

Real combined_value(const State& a, const State& b) {
  if (a.exact && b.exact) return Real(*a.exact * *b.exact);
  return Real::approximate(std::exp(a.log + b.log));
}

struct Candidate {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = std::numeric_limits<double>::infinity();
  double target = 0;
};

/// Closest sum to `goal` in log space, scored by |exp(sum) - target|.
Candidate closest(const std::vector<State>& left, const std::vector<State>& right, double target, double goal,
                  bool require_change) {
  Candidate best;
  best.target = target;
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double want = goal - left[i].log;
    auto it = std::lower_bound(right.begin(), right.end(), want,
                               [](const State& s, double v) { return s.log < v; });
    const auto mid = static_cast<std::size_t>(it - right.begin());
    const std::size_t lo = mid >= 2 ? mid - 2 : 0;
    const std::size_t hi = std::min(right.size(), mid + 2);
    for (std::size_t j = lo; j < hi; ++j) {
      if (require_change && !left[i].changed && !right[j].changed) continue;
      const double d = std::abs(std::exp(left[i].log + right[j].log) - target);
      if (d < best.distance) best = Candidate{i, j, d, target};
    }
  }
  return best;
}

}  // namespace

WitnessSearchResult witness_search(const ValidatedScheme& scheme, const WitnessQuery& query) {
  if (query.max_block == 0) throw Error(Errc::DomainError, "max block must be positive");
  if (query.start < 0) throw Error(Errc::DomainError, "start must be non-negative");
  if (query.mode == SearchMode::Ratio) {
    if (!(query.target > Real(0))) throw Error(Errc::DomainError, "target must be positive");
    if (!(query.eps > Real(0)) || !(query.eps < query.target)) {
      throw Error(Errc::DomainError, "eps must lie in (0, target)");
    }
  } else if (!(query.eps > Real(0)) || !(query.eps < Real(1))) {
    throw Error(Errc::DomainError, "eps must lie in (0, 1)");
  }
  if (query.anchor && query.anchor->size() < query.max_block) {
    throw Error(Errc::DomainError, "anchor word shorter than the largest block");
  }

  const Block block = make_block(scheme, query.start, query.max_block, query.delta);
  std::vector<std::vector<Option>> options;
  options.reserve(block.length);
  for (std::size_t k = 0; k < block.length; ++k) {
    std::optional<std::size_t> anchor;
    if (query.anchor) anchor = (*query.anchor)[k];
    options.push_back(coordinate_options(block.coordinates[k], anchor));
  }

  WitnessSearchResult result;
  result.scope = "K<=" + std::to_string(query.max_block) + ", delta=" + to_string(query.delta) +
                 ", state cap " + std::to_string(query.state_cap) + (query.anchor ? ", anchored x" : "");

  for (std::size_t K = 1; K <= query.max_block; ++K) {
    result.blocks_searched = K;
    const std::size_t half = (K + 1) / 2;
    HalfEnumeration left(options, 0, half, result.states, query.state_cap);
    HalfEnumeration right(options, half, K, result.states, query.state_cap);
    const auto& lv = left.values();
    const auto& rv = right.values();

    Candidate best;
    if (query.mode == SearchMode::Ratio) {
      best = closest(lv, rv, query.target.value(), query.target.log(), false);
    } else {
      Candidate one = closest(lv, rv, 1.0, 0.0, true);
      Candidate zero{0, 0, std::exp(lv.front().log + rv.front().log), 0.0};
      if (!lv.front().changed && !rv.front().changed) zero.distance = std::numeric_limits<double>::infinity();
      best = zero.distance < one.distance ? zero : one;
    }
    if (!std::isfinite(best.distance)) continue;

    Witness w;
    w.start = query.start;
    w.length = K;
    w.x.assign(K, 0);
    w.y.assign(K, 0);
    left.words(best.left, w.x, w.y);
    right.words(best.right, w.x, w.y);
    w.ratio = combined_value(lv[best.left], rv[best.right]);
    w.log = lv[best.left].log + rv[best.right].log;
    w.target = query.mode == SearchMode::Ratio ? query.target : Real(static_cast<long>(best.target));
    w.tolerance = query.eps;
    result.closest_distance = w.distance();
    if (w.distance() < w.tolerance) {
      result.witness = std::move(w);
      return result;
    }
  }
  return result;
}

// ------------------------------------------------------------- brute force

std::vector<OracleHit> brute_force_block(const Block& block, const std::vector<Real>& targets,
                                         std::uint64_t pair_cap) {
  const std::uint64_t pairs = block.pair_count();
  if (pairs > pair_cap) {
    throw Error(Errc::BlockTooLarge,
                "block has " + std::to_string(pairs) + " word pairs, cap is " + std::to_string(pair_cap));
  }
  const std::size_t K = block.length;
  // ratio[k][a * s + b] = mu(b) / mu(a)
  std::vector<std::vector<long double>> ratio(K);
  std::vector<std::size_t> radix(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& w = block.coordinates[k].weights;
    const std::size_t s = w.size();
    radix[k] = s * s;
    ratio[k].resize(s * s);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        ratio[k][a * s + b] = static_cast<long double>(w[b].value()) / static_cast<long double>(w[a].value());
      }
    }
  }

  std::vector<long double> goal;
  for (const auto& t : targets) goal.push_back(static_cast<long double>(t.value()));
  std::vector<long double> best(targets.size(), std::numeric_limits<long double>::infinity());
  std::vector<std::vector<std::size_t>> best_digits(targets.size());

  std::vector<std::size_t> digit(K, 0);
  std::vector<long double> prod(K + 1, 1.0L);
  for (std::size_t k = 0; k < K; ++k) prod[k + 1] = prod[k] * ratio[k][0];
  while (true) {
    const long double d = prod[K];
    for (std::size_t t = 0; t < goal.size(); ++t) {
      const long double dist = std::fabs(d - goal[t]);
      if (dist < best[t]) {
        best[t] = dist;
        best_digits[t] = digit;
      }
    }
    std::size_t k = K;
    while (k > 0 && digit[k - 1] + 1 == radix[k - 1]) {
      digit[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
    ++digit[k - 1];
    for (std::size_t j = k - 1; j < K; ++j) prod[j + 1] = prod[j] * ratio[j][digit[j]];
  }

  std::vector<OracleHit> hits;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    OracleHit hit;
    hit.target = targets[t];
    hit.x.resize(K);
    hit.y.resize(K);
    Real value(1);
    for (std::size_t k = 0; k < K; ++k) {
      const auto& c = block.coordinates[k];
      const std::size_t s = c.symbols.size();
      const std::size_t a = best_digits[t][k] / s;
      const std::size_t b = best_digits[t][k] % s;
      hit.x[k] = c.symbols[a];
      hit.y[k] = c.symbols[b];
      if (a != b) value = value * (c.weights[b] / c.weights[a]);
    }
    hit.ratio = value;
    hit.distance = (value - targets[t]).abs();
    hits.push_back(std::move(hit));
  }
  return hits;
}

// ------------------------------------------------------------- composition

Witness compose_witnesses(const Witness& first, const Witness& second) {
  const std::int64_t end1 = first.start + static_cast<std::int64_t>(first.length);
  const std::int64_t end2 = second.start + static_cast<std::int64_t>(second.length);
  if (first.start < end2 && second.start < end1) {
    throw Error(Errc::OverlappingBlocks, "blocks (" + std::to_string(first.start) + ", " + std::to_string(end1) +
                                             "] and (" + std::to_string(second.start) + ", " +
                                             std::to_string(end2) + "] overlap");
  }
  Witness w;
  w.start = std::min(first.start, second.start);
  w.length = static_cast<std::size_t>(std::max(end1, end2) - w.start);
  w.x.assign(w.length, 0);
  w.y.assign(w.length, 0);
  for (const Witness* part : {&first, &second}) {
    const auto offset = static_cast<std::size_t>(part->start - w.start);
    std::copy(part->x.begin(), part->x.end(), w.x.begin() + static_cast<std::ptrdiff_t>(offset));
    std::copy(part->y.begin(), part->y.end(), w.y.begin() + static_cast<std::ptrdiff_t>(offset));
  }
  w.ratio = first.ratio * second.ratio;
  w.log = first.log + second.log;
  w.target = first.target * second.target;
  w.tolerance = first.tolerance * second.target.abs() + second.tolerance * first.target.abs() +
                first.tolerance * second.tolerance;
  return w;
}

}  // namespace krieger
