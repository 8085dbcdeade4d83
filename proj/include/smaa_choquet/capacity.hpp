#pragma once

// Capacities in Möbius form and the closed-form quantities built on them:
// Choquet integral (sorted and Möbius forms), Shapley importance, pairwise
// interaction, and conversion between a capacity and its Möbius transform.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace smaa_choquet {

inline constexpr double kConstraintTolerance = 1e-9;
inline constexpr double kAlgebraicTolerance = 1e-12;

/// Largest criterion count for which subset-indexed structures are built.
inline constexpr std::size_t kMaxSubsetCriteria = 20;

struct CriterionId {
  std::size_t index = 0;
  std::string label;
};

struct AlternativeId {
  std::size_t index = 0;
  std::string label;
};

/// Subset of criteria as a bitmask; bit i stands for criterion i.
using CriterionSet = std::uint32_t;

constexpr CriterionSet full_set(std::size_t n) {
  return n >= 32 ? ~CriterionSet{0} : ((CriterionSet{1} << n) - 1);
}

/// Number of unordered pairs {i,j} over n criteria.
constexpr std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Position of pair {i,j} (i != j) in lexicographic order (0,1),(0,2),...,(1,2),...
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);

/// A 1- or 2-additive capacity stored by its Möbius coefficients.
///
/// Coordinates are laid out as [m({0}),...,m({n-1}), m({i,j}) in
/// lexicographic pair order]. The object is immutable once built; the
/// constructor only checks shape, use validate() for normalization and monotonicity.
class MobiusCapacity {
 public:
  MobiusCapacity(std::size_t n, std::vector<double> singles,
                 std::vector<double> pairs, int additivity = 2);

  /// Builds from a flat coordinate vector of length dimension(n).
  static MobiusCapacity from_coordinates(std::size_t n,
                                         std::span<const double> coords,
                                         int additivity = 2);
  static MobiusCapacity uniform_additive(std::size_t n);

  static std::size_t dimension(std::size_t n) { return n + pair_count(n); }

  std::size_t criteria() const { return n_; }
  int additivity() const { return additivity_; }
  double single(std::size_t i) const;
  double pair(std::size_t i, std::size_t j) const;
  const std::vector<double>& singles() const { return singles_; }
  const std::vector<double>& pairs() const { return pairs_; }
  std::vector<double> coordinates() const;

 private:
  std::size_t n_;
  std::vector<double> singles_;
  std::vector<double> pairs_;
  int additivity_;
};

/// A capacity given by its value on every subset, indexed by CriterionSet.
class CapacityView {
 public:
  CapacityView(std::size_t n, std::vector<double> values);

  std::size_t criteria() const { return n_; }
  double operator()(CriterionSet s) const { return values_.at(s); }
  const std::vector<double>& values() const { return values_; }

  /// Human-readable descriptions of violated boundary/monotonicity
  /// conditions; empty when the set function is a capacity.
  std::vector<std::string> violations(double tol = kConstraintTolerance) const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

enum class ViolationKind { kNormalization, kNonnegativity, kMonotonicity, kAdditivity };

struct CapacityViolation {
  ViolationKind kind;
  std::size_t criterion = 0;   // i for nonnegativity / monotonicity
  CriterionSet subset = 0;     // T for monotonicity, the pair for additivity
  double margin = 0.0;         // signed amount by which the constraint fails
  std::string describe() const;
};

/// Checks normalization, nonnegativity, monotonicity and the additivity restriction. Monotonicity is tested on
/// T* = {j : m({i,j}) < 0}, the most binding subset for each i.
std::vector<CapacityViolation> validate(const MobiusCapacity& m,
                                        double tol = kConstraintTolerance);

/// Same checks as validate() but enumerating every nonempty T ⊆ G\{i}.
std::vector<CapacityViolation> validate_exhaustive(const MobiusCapacity& m,
                                                   double tol = kConstraintTolerance);

double mu_from_mobius(const MobiusCapacity& m, CriterionSet s);

/// Full-order Möbius transform m(S) = Σ_{T⊆S} (-1)^{|S\T|} μ(T), indexed by subset.
std::vector<double> mobius_from_capacity(const CapacityView& v);

/// Inverse of mobius_from_capacity: μ(S) = Σ_{T⊆S} m(T).
double mu_from_general_mobius(std::span<const double> mobius, CriterionSet s);

CapacityView to_capacity_view(const MobiusCapacity& m);

/// Choquet integral by sorting: Σ_i [x_(i) - x_(i-1)] μ(N_i), x_(0) = 0.
double choquet_capacity(std::span<const double> x, const CapacityView& v);

/// Choquet integral of a 2-additive capacity: Σ m_i x_i + Σ m_ij min(x_i, x_j).
double choquet_mobius(std::span<const double> x, const MobiusCapacity& m);

/// Same as choquet_mobius on raw coordinates, without argument checks.
double choquet_coordinates(std::span<const double> x, std::span<const double> coords);

double shapley(const MobiusCapacity& m, std::size_t i);
double interaction(const MobiusCapacity& m, std::size_t i, std::size_t j);

}  // namespace smaa_choquet
