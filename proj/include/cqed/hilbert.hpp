#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Squared-norm tolerance for states that claim to be normalized.
inline constexpr double kNormTolerance = 1e-12;
/// Outcome probabilities below this are treated as impossible.
inline constexpr double kZeroProbability = 1e-14;
/// Max-norm bound on U^dagger U - I accepted by apply_on_factors.
inline constexpr double kUnitarityTolerance = 1e-10;

// Canonical factor labels. Atom basis: index 0 = excited, 1 = ground.
inline constexpr std::string_view kAtom1 = "atom1";
inline constexpr std::string_view kAtom2 = "atom2";
inline constexpr std::string_view kCavity1 = "cav1";
inline constexpr std::string_view kCavity2 = "cav2";
inline constexpr std::size_t kExcited = 0;
inline constexpr std::size_t kGround = 1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroProbabilityError : public Error {
 public:
  ZeroProbabilityError() : Error("measurement outcome has zero probability") {}
};

struct Factor {
  std::string label;
  std::size_t dim = 1;

  bool operator==(const Factor&) const = default;
};

/// Ordered list of tensor factors. Flat indices are row-major in factor
/// order, so the last factor varies fastest.
class SpaceLayout {
 public:
  SpaceLayout() = default;
  explicit SpaceLayout(std::vector<Factor> factors);

  /// [atom1:2, atom2:2, cav1:cutoff+1, cav2:cutoff+1]
  static SpaceLayout canonical(std::size_t cutoff);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t dim(std::size_t pos) const { return factors_.at(pos).dim; }
  std::size_t stride(std::size_t pos) const { return strides_.at(pos); }

  bool contains(std::string_view label) const;
  /// Position of a factor by label; throws Error if absent.
  std::size_t position(std::string_view label) const;

  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> multi) const;
  /// Digit of one factor inside a flat index.
  std::size_t digit(std::size_t flat, std::size_t pos) const {
    return (flat / strides_[pos]) % factors_[pos].dim;
  }

  SpaceLayout concat(const SpaceLayout& other) const;

  bool operator==(const SpaceLayout& other) const { return factors_ == other.factors_; }

 private:
  std::vector<Factor> factors_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

/// Dense amplitude vector tied to a layout. Values are immutable once built;
/// every operation returns a new vector.
class StateVector {
 public:
  StateVector(SpaceLayout layout, Amplitudes amplitudes);

  static StateVector zero(SpaceLayout layout);
  static StateVector basis(SpaceLayout layout, std::span<const std::size_t> index);
  static StateVector basis(SpaceLayout layout, std::initializer_list<std::size_t> index) {
    return basis(std::move(layout), std::span<const std::size_t>(index.begin(), index.size()));
  }

  const SpaceLayout& layout() const { return layout_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }

  Complex operator[](std::size_t flat) const { return amplitudes_[static_cast<Eigen::Index>(flat)]; }
  Complex at(std::initializer_list<std::size_t> index) const;

  double squared_norm() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(double tol = kNormTolerance) const;
  StateVector normalized() const;

  /// Same amplitudes with factors reordered to `order` (a permutation of labels).
  StateVector permuted(std::span<const std::string> order) const;

  friend StateVector operator+(const StateVector& a, const StateVector& b);
  friend StateVector operator-(const StateVector& a, const StateVector& b);
  friend StateVector operator*(Complex c, const StateVector& a);

 private:
  SpaceLayout layout_;
  Amplitudes amplitudes_;
};

struct Projector {
  std::string factor_label;
  std::size_t basis_index = 0;
};

struct ProjectionResult {
  double probability = 0.0;
  StateVector collapsed;
};

StateVector tensor(const StateVector& a, const StateVector& b);

/// <a|b>, antilinear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

/// Projective measurement of the listed factors. `collapsed` keeps the full
/// layout with the measured factors pinned at their outcomes.
ProjectionResult project(const StateVector& state, std::span<const Projector> projectors);

/// Unnormalized component of `state` for the given outcomes, with the
/// measured factors removed from the layout.
StateVector slice(const StateVector& state, std::span<const Projector> projectors);

/// Population of one basis level of one factor.
double factor_population(const StateVector& state, std::string_view label, std::size_t index);

/// Apply `unitary` to the listed factors (row-major over them in the given
/// order), identity elsewhere.
StateVector apply_on_factors(const StateVector& state, std::span<const std::string> labels,
                             const Matrix& unitary);
StateVector apply_on_factors(const StateVector& state, std::initializer_list<std::string_view> labels,
                             const Matrix& unitary);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const Matrix& unitary);

double max_abs_diff(const StateVector& a, const StateVector& b);

}  // namespace cqed
