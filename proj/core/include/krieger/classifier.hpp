#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krieger/asymptotics.hpp"
#include "krieger/group.hpp"
#include "krieger/scheme.hpp"

namespace krieger {

enum class TypeLabel { I, II1, IIinf, III0, IIIlambda, III1, Inconclusive };

/// "I_inf", "II_1", "II_inf", "III_0", "III_lambda", "III_1", "Inconclusive".
std::string_view to_string(TypeLabel label);

/// Which type III decision procedure applies.
enum class Branch { Unbounded, TwoPoint, BoundedMulti };

std::string_view to_string(Branch branch);

struct DeviationEvidence {
  Real limit;
  std::vector<std::size_t> classes;
  SummabilityVerdict verdict;
};

/// Everything the decision procedure looks at. Stored in certificates and
/// replayed by decide().
struct Evidence {
  ArithmeticMode mode = ArithmeticMode::Exact;
  Rational C = 1;
  SummabilityVerdict type_i;
  SummabilityVerdict type_ii1;
  SummabilityVerdict type_iii;

  std::optional<Branch> branch;
  // unbounded branch
  std::optional<ClusterReport> recurring_clusters;
  std::optional<Real> inf_liminf;
  // two-point branch
  std::optional<ClusterReport> lambda_set;
  std::vector<DeviationEvidence> deviations;
  // both branches
  std::optional<GroupStructure> group;
  std::optional<ClusterReport> finite_clusters;  // reported, never decisive
  std::vector<std::string> errors;               // failures absorbed into Inconclusive
};

struct Certificate {
  std::vector<std::string> fired;
  std::vector<std::string> warnings;
  Evidence evidence;
};

struct TypeVerdict {
  TypeLabel label = TypeLabel::Inconclusive;
  std::optional<Real> lambda;  // III_lambda only
  Certificate certificate;
};

/// Pure decision procedure over stored evidence.
TypeVerdict decide(const Evidence& evidence);

/// Summability verdicts of the three criteria on a normalized scheme.
SummabilityVerdict test_type_I(const ValidatedScheme& scheme);
SummabilityVerdict test_type_II1(const ValidatedScheme& scheme);
SummabilityVerdict test_type_III(const ValidatedScheme& scheme, const Rational& C = 1);

/// Type III subtype when the alphabets are unbounded. Error BranchError when
/// alphabet sizes stay bounded, InconclusiveEvidence when a needed verdict
/// is inconclusive.
TypeVerdict classify_III_unbounded(const ValidatedScheme& scheme);

/// Type III subtype for two-symbol schemes. Error NotTwoPoint or
/// InconclusiveEvidence.
TypeVerdict classify_III_two_point(const ValidatedScheme& scheme);

/// Normalizes, validates and runs the whole pipeline. Never throws for
/// library errors: they surface as an Inconclusive verdict.
TypeVerdict classify(const SchemeSpec& spec, const Rational& C = 1);
TypeVerdict classify(const ValidatedScheme& scheme, const Rational& C = 1);

}  // namespace krieger
