#include "trollscope/belief.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "trollscope/error.hpp"

namespace trollscope {

struct Frame::Impl {
  std::vector<std::string> labels;
  mutable std::once_flag jaccard_once;
  mutable std::vector<double> jaccard;
};

namespace {

double jaccard_bits(SubsetId a, SubsetId b) {
  const int union_size = (a | b).cardinality();
  if (union_size == 0) return 1.0;
  return static_cast<double>((a & b).cardinality()) / union_size;
}

void require_same_frame(const MassFunction& m1, const MassFunction& m2) {
  if (!(m1.frame() == m2.frame())) {
    throw Error(ErrorCode::kFrameMismatch, "bbas are defined on different frames");
  }
}

// Sums products of focal masses into the subset produced by `merge`.
template <typename Merge>
std::map<std::uint32_t, double> accumulate_pairs(const MassFunction& m1, const MassFunction& m2,
                                                 Merge merge) {
  std::map<std::uint32_t, double> out;
  for (const auto& f1 : m1.focal_elements()) {
    for (const auto& f2 : m2.focal_elements()) {
      out[merge(f1.set, f2.set).bits()] += f1.mass * f2.mass;
    }
  }
  return out;
}

std::vector<FocalElement> to_focal(const std::map<std::uint32_t, double>& acc, double scale = 1.0) {
  std::vector<FocalElement> focal;
  focal.reserve(acc.size());
  for (const auto& [bits, mass] : acc) {
    if (mass > 0.0) focal.push_back({SubsetId{bits}, mass * scale});
  }
  return focal;
}

}  // namespace

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(std::vector<std::string> labels) {
  if (labels.empty() || labels.size() > kMaxSize) {
    throw Error(ErrorCode::kInvalidFrame,
                "frame must hold between 1 and " + std::to_string(kMaxSize) + " labels");
  }
  std::set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) throw Error(ErrorCode::kInvalidFrame, "empty label");
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::kInvalidFrame, "duplicate label '" + label + "'");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->labels = std::move(labels);
  impl_ = std::move(impl);
}

std::size_t Frame::size() const { return impl_->labels.size(); }

const std::vector<std::string>& Frame::labels() const { return impl_->labels; }

const std::string& Frame::label(std::size_t index) const { return impl_->labels.at(index); }

std::optional<std::size_t> Frame::index_of(std::string_view label) const {
  const auto& labels = impl_->labels;
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

SubsetId Frame::subset_of(std::span<const std::string> labels) const {
  std::uint32_t bits = 0;
  for (const auto& label : labels) {
    auto index = index_of(label);
    if (!index) throw Error(ErrorCode::kInvalidSubset, "unknown label '" + label + "'");
    const std::uint32_t bit = std::uint32_t{1} << *index;
    if (bits & bit) throw Error(ErrorCode::kInvalidSubset, "label '" + label + "' repeated");
    bits |= bit;
  }
  return SubsetId{bits};
}

SubsetId Frame::subset_of(std::initializer_list<std::string_view> labels) const {
  std::vector<std::string> owned(labels.begin(), labels.end());
  return subset_of(owned);
}

std::vector<std::string> Frame::labels_of(SubsetId subset) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (subset.contains(i)) out.push_back(impl_->labels[i]);
  }
  return out;
}

std::string Frame::to_string(SubsetId subset) const {
  std::string out = "{";
  bool first = true;
  for (const auto& label : labels_of(subset)) {
    if (!first) out += ",";
    out += label;
    first = false;
  }
  return out + "}";
}

double Frame::jaccard(SubsetId a, SubsetId b) const {
  if (size() <= kMaxDenseJaccard) {
    return jaccard_matrix()[a.bits() * power_set_size() + b.bits()];
  }
  return jaccard_bits(a, b);
}

std::span<const double> Frame::jaccard_matrix() const {
  if (size() > kMaxDenseJaccard) {
    throw Error(ErrorCode::kInvalidFrame, "dense Jaccard matrix is limited to " +
                                              std::to_string(kMaxDenseJaccard) + " labels");
  }
  std::call_once(impl_->jaccard_once, [this] {
    const std::size_t dim = power_set_size();
    std::vector<double> matrix(dim * dim);
    for (std::uint32_t a = 0; a < dim; ++a) {
      for (std::uint32_t b = 0; b < dim; ++b) {
        matrix[a * dim + b] = jaccard_bits(SubsetId{a}, SubsetId{b});
      }
    }
    impl_->jaccard = std::move(matrix);
  });
  return impl_->jaccard;
}

bool operator==(const Frame& a, const Frame& b) {
  return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
}

// ---------------------------------------------------------------------------
// MassFunction

double MassFunction::mass(SubsetId subset) const {
  auto it = std::lower_bound(focal_.begin(), focal_.end(), subset,
                             [](const FocalElement& f, SubsetId s) { return f.set < s; });
  return (it != focal_.end() && it->set == subset) ? it->mass : 0.0;
}

std::vector<double> MassFunction::to_dense() const {
  std::vector<double> dense(frame_.power_set_size(), 0.0);
  for (const auto& f : focal_) dense[f.set.bits()] = f.mass;
  return dense;
}

MassFunction make_mass(const Frame& frame, std::span<const FocalElement> assignments) {
  std::vector<FocalElement> focal;
  focal.reserve(assignments.size());
  double total = 0.0;
  for (const auto& a : assignments) {
    if (!frame.is_valid(a.set)) {
      throw Error(ErrorCode::kInvalidSubset,
                  "subset mask " + std::to_string(a.set.bits()) + " exceeds the frame");
    }
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
      throw Error(ErrorCode::kNegativeMass,
                  "mass on " + frame.to_string(a.set) + " must be finite and non-negative");
    }
    total += a.mass;
    focal.push_back(a);
  }
  std::sort(focal.begin(), focal.end(),
            [](const FocalElement& x, const FocalElement& y) { return x.set < y.set; });
  auto dup = std::adjacent_find(focal.begin(), focal.end(),
                                [](const auto& x, const auto& y) { return x.set == y.set; });
  if (dup != focal.end()) {
    throw Error(ErrorCode::kDuplicateSubset, "subset " + frame.to_string(dup->set) + " assigned twice");
  }
  if (std::abs(total - 1.0) > kMassSumTolerance) {
    throw Error(ErrorCode::kSumNotOne, "masses sum to " + std::to_string(total));
  }
  std::erase_if(focal, [](const FocalElement& f) { return f.mass == 0.0; });
  return MassFunction(frame, std::move(focal));
}

MassFunction make_mass(const Frame& frame, std::initializer_list<FocalElement> assignments) {
  return make_mass(frame, std::span<const FocalElement>(assignments.begin(), assignments.size()));
}

MassFunction mass_from_dense(const Frame& frame, std::span<const double> masses) {
  if (masses.size() != frame.power_set_size()) {
    throw Error(ErrorCode::kInvalidSubset, "dense vector must have 2^n entries");
  }
  std::vector<FocalElement> assignments;
  for (std::uint32_t bits = 0; bits < masses.size(); ++bits) {
    if (masses[bits] != 0.0) assignments.push_back({SubsetId{bits}, masses[bits]});
  }
  return make_mass(frame, assignments);
}

MassFunction vacuous(const Frame& frame) { return make_mass(frame, {{frame.universe(), 1.0}}); }

// ---------------------------------------------------------------------------
// Combination

double global_conflict(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  double k = 0.0;
  for (const auto& f1 : m1.focal_elements()) {
    for (const auto& f2 : m2.focal_elements()) {
      if ((f1.set & f2.set).empty()) k += f1.mass * f2.mass;
    }
  }
  return k;
}

MassFunction combine_conjunctive(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  auto acc = accumulate_pairs(m1, m2, [](SubsetId a, SubsetId b) { return a & b; });
  return make_mass(m1.frame(), to_focal(acc));
}

MassFunction combine_dempster(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  auto acc = accumulate_pairs(m1, m2, [](SubsetId a, SubsetId b) { return a & b; });
  double k = 0.0;
  if (auto it = acc.find(0); it != acc.end()) {
    k = it->second;
    acc.erase(it);
  }
  if (k >= 1.0 - kInternalTolerance) {
    throw Error(ErrorCode::kTotalConflict, "the two bbas are in total conflict (k = 1)");
  }
  return make_mass(m1.frame(), to_focal(acc, 1.0 / (1.0 - k)));
}

MassFunction combine_disjunctive(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  auto acc = accumulate_pairs(m1, m2, [](SubsetId a, SubsetId b) { return a | b; });
  return make_mass(m1.frame(), to_focal(acc));
}

// ---------------------------------------------------------------------------
// Distance

double jaccard(const Frame& frame, SubsetId a, SubsetId b) {
  if (!frame.is_valid(a) || !frame.is_valid(b)) {
    throw Error(ErrorCode::kInvalidSubset, "subset exceeds the frame");
  }
  return frame.jaccard(a, b);
}

double jousselme_distance(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  // Only subsets where the difference vector is non-zero contribute to the
  // quadratic form, so merge the two sorted focal lists.
  std::vector<FocalElement> diff;
  auto a = m1.focal_elements();
  auto b = m2.focal_elements();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].set < b[j].set)) {
      diff.push_back({a[i].set, a[i].mass});
      ++i;
    } else if (i == a.size() || b[j].set < a[i].set) {
      diff.push_back({b[j].set, -b[j].mass});
      ++j;
    } else {
      if (a[i].mass != b[j].mass) diff.push_back({a[i].set, a[i].mass - b[j].mass});
      ++i;
      ++j;
    }
  }
  const Frame& frame = m1.frame();
  double quad = 0.0;
  for (const auto& x : diff) {
    for (const auto& y : diff) {
      quad += x.mass * y.mass * frame.jaccard(x.set, y.set);
    }
  }
  double radicand = 0.5 * quad;
  if (radicand < 0.0) {
    // D is positive definite; anything beyond rounding noise is a bug.
    if (radicand < -kInternalTolerance) {
      throw std::logic_error("negative Jousselme radicand " + std::to_string(radicand));
    }
    radicand = 0.0;
  }
  return std::min(1.0, std::sqrt(radicand));
}

}  // namespace trollscope
