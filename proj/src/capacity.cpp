#include "smaa_choquet/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace smaa_choquet {

namespace {

void check_criterion(std::size_t n, std::size_t i) {
  if (i >= n) {
    throw std::out_of_range("criterion index " + std::to_string(i) +
                            " out of range for " + std::to_string(n) + " criteria");
  }
}

std::string set_to_string(CriterionSet s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1) {
    if (s & 1u) {
      os << (first ? "" : ",") << (i + 1);
      first = false;
    }
  }
  os << '}';
  return os.str();
}

void check_subset_size(std::size_t n) {
  if (n == 0 || n > kMaxSubsetCriteria) {
    throw std::invalid_argument("subset enumeration needs 1.." +
                                std::to_string(kMaxSubsetCriteria) + " criteria");
  }
}

}  // namespace

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  check_criterion(n, i);
  check_criterion(n, j);
  if (i == j) throw std::invalid_argument("pair needs two distinct criteria");
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

MobiusCapacity::MobiusCapacity(std::size_t n, std::vector<double> singles,
                               std::vector<double> pairs, int additivity)
    : n_(n), singles_(std::move(singles)), pairs_(std::move(pairs)), additivity_(additivity) {
  if (n_ == 0) throw std::invalid_argument("capacity needs at least one criterion");
  if (additivity_ != 1 && additivity_ != 2) {
    throw std::invalid_argument("only 1- and 2-additive capacities are supported");
  }
  if (singles_.size() != n_ || pairs_.size() != pair_count(n_)) {
    throw std::invalid_argument("Möbius coefficient count does not match criterion count");
  }
}

MobiusCapacity MobiusCapacity::from_coordinates(std::size_t n, std::span<const double> coords,
                                                int additivity) {
  if (coords.size() != dimension(n)) {
    throw std::invalid_argument("coordinate vector has length " + std::to_string(coords.size()) +
                                ", expected " + std::to_string(dimension(n)));
  }
  return MobiusCapacity(n, {coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(n)},
                        {coords.begin() + static_cast<std::ptrdiff_t>(n), coords.end()},
                        additivity);
}

MobiusCapacity MobiusCapacity::uniform_additive(std::size_t n) {
  return MobiusCapacity(n, std::vector<double>(n, 1.0 / static_cast<double>(n)),
                        std::vector<double>(pair_count(n), 0.0), 1);
}

double MobiusCapacity::single(std::size_t i) const {
  check_criterion(n_, i);
  return singles_[i];
}

double MobiusCapacity::pair(std::size_t i, std::size_t j) const {
  return pairs_[pair_index(n_, i, j)];
}

std::vector<double> MobiusCapacity::coordinates() const {
  std::vector<double> out(singles_);
  out.insert(out.end(), pairs_.begin(), pairs_.end());
  return out;
}

CapacityView::CapacityView(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  check_subset_size(n_);
  if (values_.size() != (std::size_t{1} << n_)) {
    throw std::invalid_argument("capacity needs a value for each of the 2^n subsets");
  }
}

std::vector<std::string> CapacityView::violations(double tol) const {
  std::vector<std::string> out;
  const CriterionSet all = full_set(n_);
  if (std::abs(values_[0]) > tol) out.push_back("mu(empty) != 0");
  if (std::abs(values_[all] - 1.0) > tol) out.push_back("mu(G) != 1");
  for (CriterionSet s = 0; s <= all; ++s) {
    for (std::size_t i = 0; i < n_; ++i) {
      const CriterionSet bit = CriterionSet{1} << i;
      if ((s & bit) == 0 && values_[s] > values_[s | bit] + tol) {
        out.push_back("mu" + set_to_string(s) + " > mu" + set_to_string(s | bit));
      }
    }
  }
  return out;
}

std::string CapacityViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ViolationKind::kNormalization:
      os << "normalization: sum of Möbius coefficients differs from 1 by " << margin;
      break;
    case ViolationKind::kNonnegativity:
      os << "nonnegativity: m({" << criterion + 1 << "}) = " << margin;
      break;
    case ViolationKind::kMonotonicity:
      os << "monotonicity: i=" << criterion + 1 << ", T=" << set_to_string(subset)
         << ", m({i}) + sum m({i,j}) = " << margin;
      break;
    case ViolationKind::kAdditivity:
      os << "additivity: pair " << set_to_string(subset) << " is " << margin
         << " in a 1-additive capacity";
      break;
  }
  return os.str();
}

namespace {

void common_checks(const MobiusCapacity& m, double tol, std::vector<CapacityViolation>& out) {
  const std::size_t n = m.criteria();
  const auto& s = m.singles();
  const auto& p = m.pairs();
  const double total = std::accumulate(s.begin(), s.end(), 0.0) +
                       std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > tol) {
    out.push_back({ViolationKind::kNormalization, 0, 0, total - 1.0});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] < -tol) out.push_back({ViolationKind::kNonnegativity, i, 0, s[i]});
  }
  if (m.additivity() == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = m.pair(i, j);
        if (v != 0.0) {
          out.push_back({ViolationKind::kAdditivity, 0,
                         (CriterionSet{1} << i) | (CriterionSet{1} << j), v});
        }
      }
    }
  }
}

}  // namespace

std::vector<CapacityViolation> validate(const MobiusCapacity& m, double tol) {
  std::vector<CapacityViolation> out;
  common_checks(m, tol, out);
  const std::size_t n = m.criteria();
  for (std::size_t i = 0; i < n; ++i) {
    CriterionSet worst = 0;
    double value = m.single(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = m.pair(i, j);
      if (v < 0.0) {
        worst |= CriterionSet{1} << j;
        value += v;
      }
    }
    if (worst != 0 && value < -tol) {
      out.push_back({ViolationKind::kMonotonicity, i, worst, value});
    }
  }
  return out;
}

std::vector<CapacityViolation> validate_exhaustive(const MobiusCapacity& m, double tol) {
  std::vector<CapacityViolation> out;
  common_checks(m, tol, out);
  const std::size_t n = m.criteria();
  check_subset_size(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CriterionSet others = full_set(n) & ~(CriterionSet{1} << i);
    // Enumerate nonempty submasks of `others`.
    for (CriterionSet t = others; t != 0; t = (t - 1) & others) {
      double value = m.single(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (t & (CriterionSet{1} << j)) value += m.pair(i, j);
      }
      if (value < -tol) out.push_back({ViolationKind::kMonotonicity, i, t, value});
    }
  }
  return out;
}

double mu_from_mobius(const MobiusCapacity& m, CriterionSet s) {
  const std::size_t n = m.criteria();
  if (n < 32 && (s & ~full_set(n)) != 0) {
    throw std::out_of_range("subset refers to criteria beyond " + std::to_string(n));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((s & (CriterionSet{1} << i)) == 0) continue;
    total += m.single(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s & (CriterionSet{1} << j)) total += m.pair(i, j);
    }
  }
  return total;
}

std::vector<double> mobius_from_capacity(const CapacityView& v) {
  if (auto bad = v.violations(); !bad.empty()) {
    throw std::invalid_argument("not a capacity: " + bad.front());
  }
  const CriterionSet all = full_set(v.criteria());
  std::vector<double> out(std::size_t{all} + 1, 0.0);
  for (CriterionSet s = 0; s <= all; ++s) {
    double acc = 0.0;
    // Iterate all submasks of s, including the empty set.
    for (CriterionSet t = s;; t = (t - 1) & s) {
      const int parity = std::popcount(s & ~t) & 1;
      acc += parity ? -v(t) : v(t);
      if (t == 0) break;
    }
    out[s] = acc;
  }
  return out;
}

double mu_from_general_mobius(std::span<const double> mobius, CriterionSet s) {
  if (s >= mobius.size()) throw std::out_of_range("subset outside Möbius table");
  double acc = 0.0;
  for (CriterionSet t = s;; t = (t - 1) & s) {
    acc += mobius[t];
    if (t == 0) break;
  }
  return acc;
}

CapacityView to_capacity_view(const MobiusCapacity& m) {
  const std::size_t n = m.criteria();
  check_subset_size(n);
  std::vector<double> values(std::size_t{1} << n);
  for (CriterionSet s = 0; s < values.size(); ++s) values[s] = mu_from_mobius(m, s);
  return CapacityView(n, std::move(values));
}

namespace {

void check_evaluations(std::span<const double> x, std::size_t n) {
  if (x.size() != n) {
    throw std::invalid_argument("evaluation vector has " + std::to_string(x.size()) +
                                " entries for " + std::to_string(n) + " criteria");
  }
}

}  // namespace

double choquet_capacity(std::span<const double> x, const CapacityView& v) {
  const std::size_t n = v.criteria();
  check_evaluations(x, n);
  for (double value : x) {
    if (value < 0.0) throw std::domain_error("Choquet integral needs nonnegative evaluations");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  CriterionSet remaining = full_set(n);
  double previous = 0.0;
  double total = 0.0;
  for (std::size_t k : order) {
    total += (x[k] - previous) * v(remaining);
    previous = x[k];
    remaining &= ~(CriterionSet{1} << k);
  }
  return total;
}

double choquet_coordinates(std::span<const double> x, std::span<const double> coords) {
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += coords[i] * x[i];
  std::size_t p = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) total += coords[p] * std::min(x[i], x[j]);
  }
  return total;
}

double choquet_mobius(std::span<const double> x, const MobiusCapacity& m) {
  check_evaluations(x, m.criteria());
  const auto coords = m.coordinates();
  return choquet_coordinates(x, coords);
}

double shapley(const MobiusCapacity& m, std::size_t i) {
  double value = m.single(i);
  for (std::size_t j = 0; j < m.criteria(); ++j) {
    if (j != i) value += m.pair(i, j) / 2.0;
  }
  return value;
}

double interaction(const MobiusCapacity& m, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("interaction needs two distinct criteria");
  return m.pair(i, j);
}

}  // namespace smaa_choquet
