#pragma once

// Inclusion-based conflict measure between two bbas: the Jousselme distance
// scaled by one minus the symmetric degree of inclusion.

#include "trollscope/belief.hpp"

namespace trollscope {

/// A conflict score, guaranteed to lie in [0, 1].
class ConflictValue {
 public:
  explicit ConflictValue(double value);

  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

/// 1 if x ⊆ y, else 0. The empty set is included in everything.
int inclusion_index(SubsetId x, SubsetId y);

/// Fraction of focal pairs (X1 of m1, Y2 of m2) with X1 ⊆ Y2. Not symmetric.
double inclusion_degree(const MassFunction& m1, const MassFunction& m2);

/// max(inclusion_degree(m1,m2), inclusion_degree(m2,m1)).
double sigma_inc(const MassFunction& m1, const MassFunction& m2);

/// Conf(m1,m2) = (1 - sigma_inc(m1,m2)) * d(m1,m2).
ConflictValue conflict(const MassFunction& m1, const MassFunction& m2);

/// Every intermediate quantity of `conflict`, for inspection tools.
struct ConflictBreakdown {
  double inclusion_12 = 0.0;
  double inclusion_21 = 0.0;
  double sigma = 0.0;
  double distance = 0.0;
  double conflict = 0.0;
};

ConflictBreakdown explain_conflict(const MassFunction& m1, const MassFunction& m2);

}  // namespace trollscope
