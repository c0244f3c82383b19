#pragma once

// Evaluation helpers shared by validation and normalization.

#include <cstdint>
#include <optional>
#include <vector>

#include "krieger/scheme.hpp"

namespace krieger::detail {

/// lambda_n of a two-point template together with its log.
struct TwoPointValue {
  double lambda = 0;
  double log_lambda = 0;
  std::optional<Rational> exact;  // set when eps_n is exactly zero and lambda > 0
};

TwoPointValue two_point_value(const TwoPoint& t, std::int64_t n, std::size_t member);

/// Alphabet size of a growing template at coordinate n.
std::int64_t growing_size(const GrowingAlphabet& g, std::int64_t n);

/// Canonical-order weights of a finite-alphabet coordinate (no relabel).
/// Not usable for GeometricTail. Growing alphabets are expanded in full.
std::vector<Real> finite_weights(const TemplateLaw& law, std::int64_t n, std::size_t member, bool exact);

/// observed[relabel[i]] = canonical[i]; symbols past the relabel stay put.
template <class T>
std::vector<T> to_observed(const std::vector<T>& canonical, const std::vector<std::size_t>& relabel) {
  std::vector<T> out = canonical;
  for (std::size_t i = 0; i < relabel.size() && i < canonical.size(); ++i) out[relabel[i]] = canonical[i];
  return out;
}

/// Stable descending order of the values: result[j] is the index of the
/// j-th largest value, ties broken by index.
std::vector<std::size_t> descending_order(const std::vector<Real>& values);

bool is_identity(const std::vector<std::size_t>& perm);

}  // namespace krieger::detail
