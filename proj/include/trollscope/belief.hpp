#pragma once

// Frames of discernment, basic belief assignments over the power set, the
// classical combination rules and the Jousselme distance.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trollscope {

/// Tolerance on the total mass of user supplied assignments.
inline constexpr double kMassSumTolerance = 1e-9;
/// Tolerance for identities that only suffer from rounding.
inline constexpr double kInternalTolerance = 1e-12;

/// A subset of a frame encoded as a bit mask: bit i is set iff the i-th
/// label of the frame belongs to the subset.
class SubsetId {
 public:
  constexpr SubsetId() = default;
  constexpr explicit SubsetId(std::uint32_t bits) : bits_(bits) {}

  static constexpr SubsetId empty_set() { return SubsetId{}; }
  static constexpr SubsetId singleton(std::size_t index) {
    return SubsetId{std::uint32_t{1} << index};
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int cardinality() const { return std::popcount(bits_); }
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1U; }
  constexpr bool is_subset_of(SubsetId other) const { return (bits_ & ~other.bits_) == 0; }

  friend constexpr SubsetId operator&(SubsetId a, SubsetId b) { return SubsetId{a.bits_ & b.bits_}; }
  friend constexpr SubsetId operator|(SubsetId a, SubsetId b) { return SubsetId{a.bits_ | b.bits_}; }
  friend constexpr auto operator<=>(SubsetId, SubsetId) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Ordered set of named, mutually exclusive hypotheses (1 to 16 of them).
///
/// Frames are cheap handles over shared immutable state, so copies compare
/// equal and share the lazily built Jaccard matrix.
class Frame {
 public:
  static constexpr std::size_t kMaxSize = 16;
  /// Frames up to this size get a dense, cached Jaccard matrix.
  static constexpr std::size_t kMaxDenseJaccard = 10;

  explicit Frame(std::vector<std::string> labels);

  std::size_t size() const;
  std::size_t power_set_size() const { return std::size_t{1} << size(); }
  const std::vector<std::string>& labels() const;
  const std::string& label(std::size_t index) const;
  std::optional<std::size_t> index_of(std::string_view label) const;

  SubsetId universe() const { return SubsetId{static_cast<std::uint32_t>(power_set_size() - 1)}; }
  bool is_valid(SubsetId subset) const { return subset.bits() < power_set_size(); }

  /// Throws kInvalidSubset on unknown or repeated labels.
  SubsetId subset_of(std::span<const std::string> labels) const;
  SubsetId subset_of(std::initializer_list<std::string_view> labels) const;
  std::vector<std::string> labels_of(SubsetId subset) const;
  /// "{a,b}" style rendering; the empty set renders as "{}".
  std::string to_string(SubsetId subset) const;

  /// D(A,B) = |A∩B| / |A∪B|, with D(∅,∅) = 1.
  double jaccard(SubsetId a, SubsetId b) const;
  /// Dense row-major 2^n x 2^n Jaccard matrix, built once per frame.
  /// Only available for frames of at most kMaxDenseJaccard labels.
  std::span<const double> jaccard_matrix() const;

  friend bool operator==(const Frame& a, const Frame& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct FocalElement {
  SubsetId set;
  double mass = 0.0;

  friend bool operator==(const FocalElement&, const FocalElement&) = default;
};

/// A basic belief assignment: masses on subsets of a frame summing to 1.
/// Only focal elements (mass > 0) are stored, ordered by subset bits.
class MassFunction {
 public:
  const Frame& frame() const { return frame_; }
  std::span<const FocalElement> focal_elements() const { return focal_; }
  std::size_t focal_count() const { return focal_.size(); }
  double mass(SubsetId subset) const;
  /// Masses of all 2^n subsets, indexed by subset bits.
  std::vector<double> to_dense() const;

  friend bool operator==(const MassFunction& a, const MassFunction& b) {
    return a.frame_ == b.frame_ && a.focal_ == b.focal_;
  }

 private:
  MassFunction(Frame frame, std::vector<FocalElement> focal)
      : frame_(std::move(frame)), focal_(std::move(focal)) {}

  friend MassFunction make_mass(const Frame&, std::span<const FocalElement>);
  friend MassFunction mass_from_dense(const Frame&, std::span<const double>);

  Frame frame_;
  std::vector<FocalElement> focal_;
};

/// Validates and builds a bba. Zero masses are dropped.
/// Errors: kInvalidSubset, kNegativeMass, kDuplicateSubset, kSumNotOne.
MassFunction make_mass(const Frame& frame, std::span<const FocalElement> assignments);
MassFunction make_mass(const Frame& frame, std::initializer_list<FocalElement> assignments);

/// Builds a bba from a dense vector of 2^n masses (same validation).
MassFunction mass_from_dense(const Frame& frame, std::span<const double> masses);

/// Total ignorance: all mass on the frame itself.
MassFunction vacuous(const Frame& frame);

/// k = sum of m1(Y1) m2(Y2) over pairs with an empty intersection.
double global_conflict(const MassFunction& m1, const MassFunction& m2);

/// Unnormalized conjunctive rule; conflicting mass stays on the empty set.
MassFunction combine_conjunctive(const MassFunction& m1, const MassFunction& m2);

/// Dempster's orthogonal sum. Throws kTotalConflict when k = 1.
MassFunction combine_dempster(const MassFunction& m1, const MassFunction& m2);

MassFunction combine_disjunctive(const MassFunction& m1, const MassFunction& m2);

/// Jaccard similarity of two subsets of `frame`.
double jaccard(const Frame& frame, SubsetId a, SubsetId b);

/// d(m1,m2) = sqrt(0.5 (m1-m2)^T D (m1-m2)), a metric with values in [0,1].
double jousselme_distance(const MassFunction& m1, const MassFunction& m2);

}  // namespace trollscope
