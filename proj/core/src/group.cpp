#include "krieger/group.hpp"

#include <algorithm>
#include <cmath>

#include "krieger/error.hpp"

namespace krieger {

std::string_view to_string(Confidence c) { return c == Confidence::Exact ? "exact" : "bounded-denominator"; }

std::string_view to_string(GroupStructure::Kind kind) {
  switch (kind) {
    case GroupStructure::Kind::Trivial: return "trivial";
    case GroupStructure::Kind::Cyclic: return "cyclic";
    case GroupStructure::Kind::Dense: return "dense";
  }
  return "trivial";
}

namespace {

// |q log a - p log b| for float inputs, relative to max(|log a|, |log b|)
constexpr double kFloatRelation = 1e-9;
constexpr int kMaxConvergents = 64;

bool in_unit_interval(const Real& x) { return x > Real(0) && x < Real(1); }

bool verify(const Real& a, const Real& b, std::int64_t p, std::int64_t q) {
  if (a.is_exact() && b.is_exact()) {
    const Rational& ea = a.exact();
    const Rational& eb = b.exact();
    // a = c^p forces den(a) >= 2^p
    if (static_cast<std::size_t>(p) > mpz_sizeinbase(ea.get_den_mpz_t(), 2)) return false;
    if (static_cast<std::size_t>(q) > mpz_sizeinbase(eb.get_den_mpz_t(), 2)) return false;
    auto c = exact_root(ea, static_cast<unsigned long>(p));
    return c && power(*c, q) == eb;
  }
  const double la = a.log();
  const double lb = b.log();
  const double residual = std::abs(static_cast<double>(q) * la - static_cast<double>(p) * lb);
  return residual <= kFloatRelation * std::max(std::abs(la), std::abs(lb));
}

}  // namespace

CommensurabilityResult commensurability(const Real& a, const Real& b, std::int64_t bound) {
  if (!in_unit_interval(a) || !in_unit_interval(b)) {
    throw Error(Errc::DomainError, "commensurability needs a, b in (0,1), got " + a.str() + ", " + b.str());
  }
  CommensurabilityResult out;
  out.bound = bound;
  if (a.is_exact() && b.is_exact()) {
    std::size_t need = std::max(mpz_sizeinbase(a.exact().get_den_mpz_t(), 2), mpz_sizeinbase(b.exact().get_den_mpz_t(), 2));
    if (static_cast<std::int64_t>(need) <= bound) out.confidence = Confidence::Exact;
  }

  double x = a.log() / b.log();
  // convergents h/k of x
  std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
  std::int64_t k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int i = 0; i < kMaxConvergents; ++i) {
    if (h > bound || k > bound) break;
    if (h > 0) {
      ++out.convergents_checked;
      if (verify(a, b, h, k)) {
        out.relation = Commensurability{h, k};
        return out;
      }
    }
    if (frac < 1e-15) break;
    x = 1.0 / frac;
    const double digit = std::floor(x);
    frac = x - digit;
    if (digit > static_cast<double>(bound)) break;
    const auto ai = static_cast<std::int64_t>(digit);
    const std::int64_t h_next = ai * h + h_prev;
    const std::int64_t k_next = ai * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return out;
}

std::optional<Commensurability> commensurable(const Real& a, const Real& b, std::int64_t bound) {
  return commensurability(a, b, bound).relation;
}

GroupStructure mult_group(const std::vector<Real>& points, std::int64_t bound) {
  GroupStructure g;
  g.bound = bound;
  std::vector<Real> work;
  for (const auto& x : points) {
    if (x.is_zero()) throw Error(Errc::ZeroInSet, "0 must be handled before forming the group");
    if (x.sign() < 0 || x > Real(1)) throw Error(Errc::DomainError, "group generators must lie in (0,1], got " + x.str());
    if (x.is_one()) continue;
    if (std::none_of(work.begin(), work.end(), [&](const Real& y) { return y == x; })) work.push_back(x);
  }
  if (work.empty()) return g;

  Real gen = work.front();
  for (std::size_t i = 1; i < work.size(); ++i) {
    CommensurabilityResult r = commensurability(gen, work[i], bound);
    g.evidence.push_back(PairEvidence{gen, work[i], r.relation});
    if (r.confidence != Confidence::Exact) g.confidence = Confidence::BoundedDenominator;
    if (!r.relation) {
      g.kind = GroupStructure::Kind::Dense;
      return g;
    }
    // gen = c^p and work[i] = c^q with gcd(p, q) = 1, so c generates both
    const auto p = static_cast<unsigned long>(r.relation->p);
    if (gen.is_exact() && work[i].is_exact()) {
      gen = Real(*exact_root(gen.exact(), p));
    } else {
      gen = Real::approximate(std::exp(gen.log() / static_cast<double>(p)));
    }
  }
  if (!gen.is_exact()) g.confidence = Confidence::BoundedDenominator;
  g.kind = GroupStructure::Kind::Cyclic;
  g.generator = gen;
  return g;
}

}  // namespace krieger
