#include "trollscope/conflict.hpp"

#include <algorithm>

#include "trollscope/error.hpp"

namespace trollscope {

ConflictValue::ConflictValue(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::out_of_range("conflict value " + std::to_string(value) + " outside [0,1]");
  }
}

int inclusion_index(SubsetId x, SubsetId y) { return x.is_subset_of(y) ? 1 : 0; }

double inclusion_degree(const MassFunction& m1, const MassFunction& m2) {
  if (!(m1.frame() == m2.frame())) {
    throw Error(ErrorCode::kFrameMismatch, "bbas are defined on different frames");
  }
  int included = 0;
  for (const auto& x : m1.focal_elements()) {
    for (const auto& y : m2.focal_elements()) included += inclusion_index(x.set, y.set);
  }
  const auto pairs = static_cast<double>(m1.focal_count() * m2.focal_count());
  return included / pairs;
}

double sigma_inc(const MassFunction& m1, const MassFunction& m2) {
  return std::max(inclusion_degree(m1, m2), inclusion_degree(m2, m1));
}

ConflictValue conflict(const MassFunction& m1, const MassFunction& m2) {
  return ConflictValue((1.0 - sigma_inc(m1, m2)) * jousselme_distance(m1, m2));
}

ConflictBreakdown explain_conflict(const MassFunction& m1, const MassFunction& m2) {
  ConflictBreakdown out;
  out.inclusion_12 = inclusion_degree(m1, m2);
  out.inclusion_21 = inclusion_degree(m2, m1);
  out.sigma = std::max(out.inclusion_12, out.inclusion_21);
  out.distance = jousselme_distance(m1, m2);
  out.conflict = conflict(m1, m2);
  return out;
}

}  // namespace trollscope
