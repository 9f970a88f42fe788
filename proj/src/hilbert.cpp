#include "cqed/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace cqed {

namespace {

bool is_atom_label(std::string_view label) { return label.starts_with("atom"); }

void require_same_layout(const StateVector& a, const StateVector& b, const char* what) {
  if (!(a.layout() == b.layout())) {
    throw Error(std::string(what) + ": layout mismatch");
  }
}

// Positions of the named factors, checked for presence and distinctness.
std::vector<std::size_t> factor_positions(const SpaceLayout& layout,
                                          std::span<const std::string> labels) {
  std::vector<std::size_t> positions;
  positions.reserve(labels.size());
  for (const auto& label : labels) {
    const std::size_t pos = layout.position(label);
    if (std::find(positions.begin(), positions.end(), pos) != positions.end()) {
      throw Error("factor '" + label + "' listed twice");
    }
    positions.push_back(pos);
  }
  return positions;
}

}  // namespace

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string_view> seen;
  for (const auto& f : factors_) {
    if (f.dim == 0) throw Error("factor '" + f.label + "' has zero dimension");
    if (is_atom_label(f.label) && f.dim != 2) {
      throw Error("atom factor '" + f.label + "' must have dimension 2");
    }
    if (!seen.insert(f.label).second) throw Error("duplicate factor label '" + f.label + "'");
  }
  strides_.assign(factors_.size(), 1);
  total_dim_ = 1;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    strides_[k] = total_dim_;
    total_dim_ *= factors_[k].dim;
  }
}

SpaceLayout SpaceLayout::canonical(std::size_t cutoff) {
  return SpaceLayout({{std::string(kAtom1), 2},
                      {std::string(kAtom2), 2},
                      {std::string(kCavity1), cutoff + 1},
                      {std::string(kCavity2), cutoff + 1}});
}

bool SpaceLayout::contains(std::string_view label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t SpaceLayout::position(std::string_view label) const {
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factors_[k].label == label) return k;
  }
  throw Error("no factor labelled '" + std::string(label) + "'");
}

std::vector<std::size_t> SpaceLayout::unflatten(std::size_t flat) const {
  if (flat >= total_dim_) throw Error("flat index out of range");
  std::vector<std::size_t> multi(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) multi[k] = digit(flat, k);
  return multi;
}

std::size_t SpaceLayout::flatten(std::span<const std::size_t> multi) const {
  if (multi.size() != factors_.size()) throw Error("multi-index has wrong arity");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (multi[k] >= factors_[k].dim) throw Error("multi-index digit out of range");
    flat += multi[k] * strides_[k];
  }
  return flat;
}

SpaceLayout SpaceLayout::concat(const SpaceLayout& other) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return SpaceLayout(std::move(all));
}

StateVector::StateVector(SpaceLayout layout, Amplitudes amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw Error("amplitude count does not match layout dimension");
  }
}

StateVector StateVector::zero(SpaceLayout layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  return StateVector(std::move(layout), Amplitudes::Zero(n));
}

StateVector StateVector::basis(SpaceLayout layout, std::span<const std::size_t> index) {
  const std::size_t flat = layout.flatten(index);
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  amps[static_cast<Eigen::Index>(flat)] = 1.0;
  return StateVector(std::move(layout), std::move(amps));
}

Complex StateVector::at(std::initializer_list<std::size_t> index) const {
  return (*this)[layout_.flatten(std::span<const std::size_t>(index.begin(), index.size()))];
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(squared_norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n2 = squared_norm();
  if (n2 < kZeroProbability) throw Error("cannot normalize a null vector");
  return StateVector(layout_, amplitudes_ / std::sqrt(n2));
}

StateVector StateVector::permuted(std::span<const std::string> order) const {
  if (order.size() != layout_.num_factors()) throw Error("permutation has wrong arity");
  const auto src_pos = factor_positions(layout_, order);
  std::vector<Factor> factors;
  for (auto p : src_pos) factors.push_back(layout_.factors()[p]);
  SpaceLayout target(std::move(factors));

  Amplitudes out(amplitudes_.size());
  for (std::size_t flat = 0; flat < layout_.total_dim(); ++flat) {
    std::size_t dst = 0;
    for (std::size_t k = 0; k < src_pos.size(); ++k) {
      dst += layout_.digit(flat, src_pos[k]) * target.stride(k);
    }
    out[static_cast<Eigen::Index>(dst)] = amplitudes_[static_cast<Eigen::Index>(flat)];
  }
  return StateVector(std::move(target), std::move(out));
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  require_same_layout(a, b, "sum");
  return StateVector(a.layout_, a.amplitudes_ + b.amplitudes_);
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  require_same_layout(a, b, "difference");
  return StateVector(a.layout_, a.amplitudes_ - b.amplitudes_);
}

StateVector operator*(Complex c, const StateVector& a) {
  return StateVector(a.layout_, c * a.amplitudes_);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  SpaceLayout layout = a.layout().concat(b.layout());
  const auto nb = b.amplitudes().size();
  Amplitudes amps(a.amplitudes().size() * nb);
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  }
  return StateVector(std::move(layout), std::move(amps));
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_layout(a, b, "inner");
  return a.amplitudes().dot(b.amplitudes());
}

namespace {

struct Pinned {
  std::size_t pos;
  std::size_t index;
};

std::vector<Pinned> pin_projectors(const SpaceLayout& layout, std::span<const Projector> projectors) {
  std::vector<Pinned> pinned;
  for (const auto& p : projectors) {
    const std::size_t pos = layout.position(p.factor_label);
    if (p.basis_index >= layout.dim(pos)) {
      throw Error("projector index out of range for factor '" + p.factor_label + "'");
    }
    for (const auto& q : pinned) {
      if (q.pos == pos) throw Error("factor '" + p.factor_label + "' projected twice");
    }
    pinned.push_back({pos, p.basis_index});
  }
  return pinned;
}

bool matches(const SpaceLayout& layout, std::size_t flat, const std::vector<Pinned>& pinned) {
  return std::all_of(pinned.begin(), pinned.end(),
                     [&](const Pinned& p) { return layout.digit(flat, p.pos) == p.index; });
}

}  // namespace

ProjectionResult project(const StateVector& state, std::span<const Projector> projectors) {
  if (!state.is_normalized()) throw Error("project: input state is not normalized");
  const auto& layout = state.layout();
  const auto pinned = pin_projectors(layout, projectors);

  Amplitudes component = Amplitudes::Zero(state.amplitudes().size());
  for (std::size_t flat = 0; flat < layout.total_dim(); ++flat) {
    if (matches(layout, flat, pinned)) {
      component[static_cast<Eigen::Index>(flat)] = state[flat];
    }
  }
  const double prob = component.squaredNorm();
  if (prob < kZeroProbability) throw ZeroProbabilityError();
  return {std::min(prob, 1.0), StateVector(layout, component / std::sqrt(prob))};
}

StateVector slice(const StateVector& state, std::span<const Projector> projectors) {
  const auto& layout = state.layout();
  const auto pinned = pin_projectors(layout, projectors);

  std::vector<Factor> kept;
  for (std::size_t k = 0; k < layout.num_factors(); ++k) {
    const bool is_pinned = std::any_of(pinned.begin(), pinned.end(),
                                       [k](const Pinned& p) { return p.pos == k; });
    if (!is_pinned) kept.push_back(layout.factors()[k]);
  }
  SpaceLayout reduced(std::move(kept));

  Amplitudes amps(static_cast<Eigen::Index>(reduced.total_dim()));
  Eigen::Index next = 0;
  // Row-major order is preserved by skipping pinned digits.
  for (std::size_t flat = 0; flat < layout.total_dim(); ++flat) {
    if (matches(layout, flat, pinned)) amps[next++] = state[flat];
  }
  return StateVector(std::move(reduced), std::move(amps));
}

double factor_population(const StateVector& state, std::string_view label, std::size_t index) {
  const auto& layout = state.layout();
  const std::size_t pos = layout.position(label);
  if (index >= layout.dim(pos)) throw Error("level index out of range");
  double pop = 0.0;
  for (std::size_t flat = 0; flat < layout.total_dim(); ++flat) {
    if (layout.digit(flat, pos) == index) pop += std::norm(state[flat]);
  }
  return pop;
}

double unitarity_defect(const Matrix& unitary) {
  if (unitary.rows() != unitary.cols()) return std::numeric_limits<double>::infinity();
  const Matrix defect = unitary.adjoint() * unitary - Matrix::Identity(unitary.rows(), unitary.cols());
  return defect.cwiseAbs().maxCoeff();
}

StateVector apply_on_factors(const StateVector& state, std::span<const std::string> labels,
                             const Matrix& unitary) {
  const auto& layout = state.layout();
  const auto positions = factor_positions(layout, labels);

  std::size_t sub_dim = 1;
  for (auto p : positions) sub_dim *= layout.dim(p);
  if (static_cast<std::size_t>(unitary.rows()) != sub_dim ||
      static_cast<std::size_t>(unitary.cols()) != sub_dim) {
    throw Error("apply_on_factors: unitary dimension does not match factors");
  }
  if (unitarity_defect(unitary) >= kUnitarityTolerance) {
    throw Error("apply_on_factors: matrix is not unitary");
  }

  // Flat offset of every sub-index, row-major over the named factors.
  std::vector<std::size_t> offsets(sub_dim, 0);
  for (std::size_t s = 0; s < sub_dim; ++s) {
    std::size_t rem = s;
    for (std::size_t k = positions.size(); k-- > 0;) {
      const std::size_t d = layout.dim(positions[k]);
      offsets[s] += (rem % d) * layout.stride(positions[k]);
      rem /= d;
    }
  }

  Amplitudes out = state.amplitudes();
  Eigen::VectorXcd block(static_cast<Eigen::Index>(sub_dim));
  for (std::size_t base = 0; base < layout.total_dim(); ++base) {
    const bool is_base = std::all_of(positions.begin(), positions.end(),
                                     [&](std::size_t p) { return layout.digit(base, p) == 0; });
    if (!is_base) continue;
    for (std::size_t s = 0; s < sub_dim; ++s) {
      block[static_cast<Eigen::Index>(s)] = state[base + offsets[s]];
    }
    const Eigen::VectorXcd rotated = unitary * block;
    for (std::size_t s = 0; s < sub_dim; ++s) {
      out[static_cast<Eigen::Index>(base + offsets[s])] = rotated[static_cast<Eigen::Index>(s)];
    }
  }
  return StateVector(layout, std::move(out));
}

StateVector apply_on_factors(const StateVector& state, std::initializer_list<std::string_view> labels,
                             const Matrix& unitary) {
  std::vector<std::string> owned(labels.begin(), labels.end());
  return apply_on_factors(state, std::span<const std::string>(owned), unitary);
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  require_same_layout(a, b, "max_abs_diff");
  if (a.size() == 0) return 0.0;
  return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

}  // namespace cqed
