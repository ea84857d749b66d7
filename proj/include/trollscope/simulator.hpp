#pragma once

// Synthetic discussion threads: each scripted message gets a bba with a
// dominant mass on the singleton of its category and the rest on the whole
// frame.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trollscope/thread.hpp"

namespace trollscope {

/// Identifies the random stream: mt19937_64, one 64-bit draw per scripted
/// message, top 53 bits mapped to [0,1).
inline constexpr std::string_view kGeneratorId = "mt19937_64/u53";

enum class Role { kExpert, kTroll, kVictim, kLearner };

enum class CategoryKind { kRelevant, kOffTopic, kSenseless, kControversy };

struct Category {
  CategoryKind kind = CategoryKind::kRelevant;
  int topic = 0;  // only meaningful for controversy

  static Category relevant() { return {CategoryKind::kRelevant, 0}; }
  static Category off_topic() { return {CategoryKind::kOffTopic, 0}; }
  static Category senseless() { return {CategoryKind::kSenseless, 0}; }
  static Category controversy(int topic) { return {CategoryKind::kControversy, topic}; }

  friend bool operator==(const Category&, const Category&) = default;
};

struct ScenarioUser {
  UserId id;
  Role role = Role::kLearner;
};

struct ScriptEntry {
  UserId author;
  Category category;
};

struct ScenarioSpec {
  int topic_count = 2;
  int relevant_topic = 1;
  std::vector<ScenarioUser> users;
  std::vector<ScriptEntry> script;
  std::uint64_t seed = 0;
  double concentration_lo = 0.75;
  double concentration_hi = 0.98;
  /// rank -> dominant mass used instead of a sampled one.
  std::map<std::size_t, double> pinned;
};

/// Throws kInvalidSpec (or kMassOutOfRange for a bad pinned mass).
void validate(const ScenarioSpec& spec);

/// Returns a copy of `spec` with the given dominant masses pinned.
/// Throws kRankOutOfBounds for ranks outside the script and
/// kMassOutOfRange unless 0 < mass < 1.
ScenarioSpec pin_masses(ScenarioSpec spec, std::span<const std::pair<std::size_t, double>> overrides);

/// Deterministic in (spec, seed). Pinning a rank does not shift the masses
/// drawn for the other ranks.
Thread generate(const ScenarioSpec& spec);

/// Singleton that carries the dominant mass of a category.
SubsetId category_subset(const MessageFrame& frame, const Category& category);

std::string_view to_string(Role role);
Role role_from_string(std::string_view name);
std::string_view to_string(CategoryKind kind);
CategoryKind category_kind_from_string(std::string_view name);

/// Four users, sixteen messages, one troll (U4) posting controversy,
/// senseless, controversy. With `pin_published` the six dominant masses
/// quoted for U3 and U4 are pinned.
ScenarioSpec example1_scenario(std::uint64_t seed, bool pin_published = true);

/// Eight users, thirty-one messages, trolls U4 and U8; U1 and U2 reply to
/// U4 with controversy posts and U3 answers U8 off-topic.
ScenarioSpec example2_scenario(std::uint64_t seed);

}  // namespace trollscope
