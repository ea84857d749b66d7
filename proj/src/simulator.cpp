#include "trollscope/simulator.hpp"

#include <random>
#include <set>
#include <sstream>

#include "trollscope/error.hpp"

namespace trollscope {

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Compact script notation: "<user><category>" tokens, category one of
// r(elevant), o(ff-topic), s(enseless), c(ontroversy on `controversy_topic`).
std::vector<ScriptEntry> parse_script(std::string_view script, int controversy_topic) {
  std::vector<ScriptEntry> out;
  std::istringstream in{std::string(script)};
  std::string token;
  while (in >> token) {
    Category category;
    switch (token.back()) {
      case 'r': category = Category::relevant(); break;
      case 'o': category = Category::off_topic(); break;
      case 's': category = Category::senseless(); break;
      case 'c': category = Category::controversy(controversy_topic); break;
      default: throw std::logic_error("bad script token " + token);
    }
    out.push_back({"U" + token.substr(0, token.size() - 1), category});
  }
  return out;
}

}  // namespace

SubsetId category_subset(const MessageFrame& frame, const Category& category) {
  switch (category.kind) {
    case CategoryKind::kRelevant: return frame.relevant();
    case CategoryKind::kOffTopic: return frame.off_topic();
    case CategoryKind::kSenseless: return frame.senseless();
    case CategoryKind::kControversy: return frame.topic(category.topic);
  }
  throw std::logic_error("unhandled category");
}

void validate(const ScenarioSpec& spec) {
  try {
    MessageFrame frame(spec.topic_count, spec.relevant_topic);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidSpec, e.what());
  }
  if (!(spec.concentration_lo > 0.5 && spec.concentration_lo < spec.concentration_hi &&
        spec.concentration_hi < 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "concentration range must satisfy 0.5 < lo < hi < 1");
  }
  if (spec.users.size() < 2) throw Error(ErrorCode::kInvalidSpec, "need at least two users");
  std::set<UserId> ids;
  for (const auto& u : spec.users) {
    if (u.id.empty() || !ids.insert(u.id).second) {
      throw Error(ErrorCode::kInvalidSpec, "user ids must be non-empty and distinct");
    }
  }
  if (spec.script.empty()) throw Error(ErrorCode::kInvalidSpec, "empty script");
  std::set<UserId> posting;
  for (std::size_t k = 0; k < spec.script.size(); ++k) {
    const auto& entry = spec.script[k];
    if (!ids.contains(entry.author)) {
      throw Error(ErrorCode::kInvalidSpec, "script entry " + std::to_string(k + 1) +
                                               " has unknown author '" + entry.author + "'");
    }
    posting.insert(entry.author);
    if (entry.category.kind == CategoryKind::kControversy) {
      const int j = entry.category.topic;
      if (j < 1 || j > spec.topic_count || j == spec.relevant_topic) {
        throw Error(ErrorCode::kInvalidSpec,
                    "script entry " + std::to_string(k + 1) +
                        ": controversy topic must be a non-relevant topic in [1, topic count]");
      }
    }
  }
  if (posting.size() != ids.size()) {
    throw Error(ErrorCode::kInvalidSpec, "every user must post at least one message");
  }
  for (const auto& [rank, mass] : spec.pinned) {
    if (rank < 1 || rank > spec.script.size()) {
      throw Error(ErrorCode::kInvalidSpec, "pinned rank " + std::to_string(rank) + " not in script");
    }
    if (!(mass > 0.0 && mass < 1.0)) {
      throw Error(ErrorCode::kMassOutOfRange, "pinned mass must lie strictly between 0 and 1");
    }
  }
}

ScenarioSpec pin_masses(ScenarioSpec spec, std::span<const std::pair<std::size_t, double>> overrides) {
  for (const auto& [rank, mass] : overrides) {
    if (rank < 1 || rank > spec.script.size()) {
      throw Error(ErrorCode::kRankOutOfBounds, "no scripted message with rank " + std::to_string(rank));
    }
    if (!(mass > 0.0 && mass < 1.0)) {
      throw Error(ErrorCode::kMassOutOfRange,
                  "dominant mass " + std::to_string(mass) + " must lie strictly between 0 and 1");
    }
    spec.pinned[rank] = mass;
  }
  return spec;
}

Thread generate(const ScenarioSpec& spec) {
  validate(spec);
  MessageFrame frame(spec.topic_count, spec.relevant_topic);
  const SubsetId universe = frame.frame().universe();
  std::mt19937_64 rng(spec.seed);

  std::vector<Message> messages;
  messages.reserve(spec.script.size());
  for (std::size_t k = 0; k < spec.script.size(); ++k) {
    const std::size_t rank = k + 1;
    const double drawn =
        spec.concentration_lo + (spec.concentration_hi - spec.concentration_lo) * unit_draw(rng);
    auto pin = spec.pinned.find(rank);
    const double dominant = pin != spec.pinned.end() ? pin->second : drawn;
    const auto& entry = spec.script[k];
    MassFunction bba = make_mass(frame.frame(), {{category_subset(frame, entry.category), dominant},
                                                 {universe, 1.0 - dominant}});
    messages.push_back({entry.author, rank, std::move(bba)});
  }
  std::vector<UserId> users;
  users.reserve(spec.users.size());
  for (const auto& u : spec.users) users.push_back(u.id);
  return Thread(std::move(frame), std::move(users), std::move(messages));
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kExpert: return "expert";
    case Role::kTroll: return "troll";
    case Role::kVictim: return "victim";
    case Role::kLearner: return "learner";
  }
  return "unknown";
}

Role role_from_string(std::string_view name) {
  for (Role r : {Role::kExpert, Role::kTroll, Role::kVictim, Role::kLearner}) {
    if (to_string(r) == name) return r;
  }
  throw Error(ErrorCode::kInvalidSpec, "unknown role '" + std::string(name) + "'");
}

std::string_view to_string(CategoryKind kind) {
  switch (kind) {
    case CategoryKind::kRelevant: return "relevant";
    case CategoryKind::kOffTopic: return "off_topic";
    case CategoryKind::kSenseless: return "senseless";
    case CategoryKind::kControversy: return "controversy";
  }
  return "unknown";
}

CategoryKind category_kind_from_string(std::string_view name) {
  for (CategoryKind k : {CategoryKind::kRelevant, CategoryKind::kOffTopic, CategoryKind::kSenseless,
                         CategoryKind::kControversy}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidSpec, "unknown category '" + std::string(name) + "'");
}

ScenarioSpec example1_scenario(std::uint64_t seed, bool pin_published) {
  ScenarioSpec spec;
  spec.topic_count = 2;
  spec.relevant_topic = 1;
  spec.seed = seed;
  spec.users = {{"U1", Role::kVictim}, {"U2", Role::kVictim}, {"U3", Role::kExpert}, {"U4", Role::kTroll}};
  // U3 posts at ranks 2, 4, 14; U4 at 6, 11, 15. U1 and U2 answer U4's
  // first post with controversy replies at 7 and 8.
  spec.script = parse_script("1r 3r 2r 3r 1r 4c 1c 2c 2r 1r 4s 2r 1r 3r 4c 2r", 2);
  if (pin_published) {
    const std::pair<std::size_t, double> published[] = {
        {2, 0.9732}, {4, 0.7782}, {14, 0.9632},  // U3, relevant
        {6, 0.9210}, {11, 0.9716}, {15, 0.8387},  // U4, controversy/senseless/controversy
    };
    spec = pin_masses(std::move(spec), published);
  }
  return spec;
}

ScenarioSpec example2_scenario(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.topic_count = 2;
  spec.relevant_topic = 1;
  spec.seed = seed;
  spec.users = {{"U1", Role::kVictim},  {"U2", Role::kVictim},  {"U3", Role::kVictim},
                {"U4", Role::kTroll},   {"U5", Role::kLearner}, {"U6", Role::kExpert},
                {"U7", Role::kLearner}, {"U8", Role::kTroll}};
  // U1: 3 relevant + 2 controversy, U2: 8 relevant + 2 controversy,
  // U3: 4 relevant + 1 off-topic, U4: 2 controversy, U5: 1 relevant,
  // U6: 3 relevant, U7: 2 relevant, U8: 2 off-topic + 1 controversy.
  spec.script = parse_script(
      "2r 1r 6r 2r 3r 5r 7r 2r 6r 1r 3r 2r 7r 2r 4c 1c 4c 2c 2r 8o "
      "3o 8o 6r 1c 2c 3r 1r 8c 2r 3r 2r",
      2);
  return spec;
}

}  // namespace trollscope
