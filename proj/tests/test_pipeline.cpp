#include <cstring>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "trollscope/pipeline.hpp"
#include "trollscope/simulator.hpp"

using namespace trollscope;
using trollscope::testing::code_of;

namespace {

const MessageFrame kFrame(2, 1);

MassFunction certain(SubsetId s) { return make_mass(kFrame.frame(), {{s, 1.0}}); }

MassFunction leaning(SubsetId s, double p) {
  return make_mass(kFrame.frame(), {{s, p}, {kFrame.frame().universe(), 1.0 - p}});
}

Thread make_thread(std::vector<UserId> users, const std::vector<std::pair<UserId, MassFunction>>& posts) {
  std::vector<Message> messages;
  for (std::size_t k = 0; k < posts.size(); ++k) messages.push_back({posts[k].first, k + 1, posts[k].second});
  return Thread(kFrame, std::move(users), std::move(messages));
}

}  // namespace

TEST_CASE("per-user message conflict") {
  const auto t1 = certain(kFrame.topic(1));
  const auto t2 = certain(kFrame.topic(2));

  SUBCASE("identical prior message") {
    auto thread = make_thread({"A", "B"}, {{"B", t1}, {"A", t1}});
    CHECK(conf_msg_per_user(thread, 2, "B") == 0.0);
  }
  SUBCASE("disjoint certain singletons") {
    auto thread = make_thread({"A", "B"}, {{"B", t1}, {"A", t2}});
    CHECK(conf_msg_per_user(thread, 2, "B") == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("mean over two prior messages") {
    auto thread = make_thread({"A", "B"}, {{"B", t2}, {"B", t1}, {"A", t2}});
    CHECK(conf_msg_per_user(thread, 3, "B") == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("errors") {
    auto thread = make_thread({"A", "B", "C"}, {{"B", t1}, {"A", t2}, {"C", t1}});
    CHECK(code_of([&] { conf_msg_per_user(thread, 2, "A"); }) == ErrorCode::kSameUser);
    CHECK(code_of([&] { conf_msg_per_user(thread, 2, "C"); }) == ErrorCode::kNoPriorMessages);
    CHECK(code_of([&] { conf_msg_per_user(thread, 2, "Z"); }) == ErrorCode::kUnknownUser);
    CHECK(code_of([&] { conf_msg_per_user(thread, 9, "B"); }) == ErrorCode::kRankOutOfBounds);
  }
}

TEST_CASE("message conflict is the prior-count weighted mean") {
  const auto t1 = certain(kFrame.topic(1));
  const auto t2 = certain(kFrame.topic(2));
  // A has three earlier posts (two identical to the scored one, one
  // disjoint): mean 1/3. B has one disjoint post: 1. Weights 3/4 and 1/4.
  auto thread = make_thread({"A", "B", "C"}, {{"A", t2}, {"A", t2}, {"B", t1}, {"A", t1}, {"C", t2}});
  CHECK(conf_msg(thread, 1) == 0.0);
  CHECK(conf_msg_per_user(thread, 5, "A") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(conf_msg_per_user(thread, 5, "B") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conf_msg(thread, 5) == doctest::Approx(0.75 / 3.0 + 0.25).epsilon(1e-12));
  CHECK(code_of([&] { conf_msg(thread, 6); }) == ErrorCode::kRankOutOfBounds);

  // The author's own earlier posts never count: rank 2 only has rank 1
  // before it, written by A as well.
  CHECK(conf_msg(thread, 2) == 0.0);
}

TEST_CASE("user conflict") {
  const auto rel = leaning(kFrame.relevant(), 0.9);
  auto calm = make_thread({"A", "B"}, {{"A", rel}, {"B", rel}, {"A", rel}, {"B", rel}});
  CHECK(conf_user(calm, "A") == 0.0);
  CHECK(conf_user(calm, "B") == 0.0);
  CHECK(code_of([&] { conf_user(calm, "Z"); }) == ErrorCode::kUnknownUser);

  SUBCASE("messages without predecessors count in the divisor") {
    const auto t2 = certain(kFrame.topic(2));
    const auto t1 = certain(kFrame.topic(1));
    auto thread = make_thread({"A", "B"}, {{"A", t1}, {"B", t2}, {"A", t2}});
    // A: rank 1 scores 0, rank 3 scores Conf(t2, t2) = 0.
    CHECK(conf_user(thread, "A") == 0.0);
    auto thread2 = make_thread({"A", "B"}, {{"A", t1}, {"B", t1}, {"A", t2}});
    CHECK(conf_user(thread2, "A") == doctest::Approx(0.5).epsilon(1e-12));
    AggregationOptions skip{.count_unpreceded_messages = false};
    CHECK(conf_user(thread2, "A", skip) == doctest::Approx(1.0).epsilon(1e-12));
    auto scores = score_thread(thread2, skip);
    CHECK(scores.per_user[0].message_count == 2);
  }
}

TEST_CASE("score_thread matches the naive transcription") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Thread thread = oracle::random_thread(rng, 5, 5);
    auto naive = oracle::naive_scores(thread);
    auto scores = score_thread(thread);
    for (std::size_t k = 0; k < thread.message_count(); ++k) {
      CHECK(std::abs(scores.per_message[k].conflict - naive.per_message[k]) <= 1e-12);
      CHECK(std::abs(conf_msg(thread, k + 1) - naive.per_message[k]) <= 1e-12);
      const auto& mc = scores.per_message[k];
      if (mc.prior_count > 0) {
        double weights = 0.0;
        for (const auto& s : mc.per_user) weights += static_cast<double>(s.prior_count) / mc.prior_count;
        CHECK(std::abs(weights - 1.0) <= 1e-12);
      }
      CHECK(mc.conflict >= 0.0);
      CHECK(mc.conflict <= 1.0);
    }
    for (const auto& uc : scores.per_user) {
      CHECK(std::abs(uc.conflict - naive.per_user.at(uc.user)) <= 1e-12);
      CHECK(std::abs(conf_user(thread, uc.user) - uc.conflict) <= 1e-12);
      CHECK(uc.conflict >= 0.0);
      CHECK(uc.conflict <= 1.0);
    }
  }
}

TEST_CASE("agreeing with everyone never raises a user's conflict") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    // Everyone but U1 posts the same bba; U1 posts random ones and then
    // one more copy of the shared bba.
    const auto shared = oracle::random_mass(kFrame.frame(), rng, 3);
    std::vector<std::pair<UserId, MassFunction>> posts;
    const std::size_t n = 3 + trial % 6;
    for (std::size_t k = 0; k < n; ++k) {
      if (k % 2 == 0) posts.emplace_back("U1", oracle::random_mass(kFrame.frame(), rng, 3));
      else posts.emplace_back(k % 4 == 1 ? "U2" : "U3", shared);
    }
    std::vector<UserId> users{"U1", "U2"};
    if (n > 3) users.push_back("U3");
    auto before = conf_user(make_thread(users, posts), "U1");
    posts.emplace_back("U1", shared);
    auto after = conf_user(make_thread(users, posts), "U1");
    CHECK(after <= before);
  }
}

TEST_CASE("analyze") {
  SUBCASE("deterministic") {
    Thread thread = generate(example2_scenario(5));
    auto r1 = analyze(thread);
    auto r2 = analyze(thread);
    REQUIRE(r1.per_user.size() == r2.per_user.size());
    for (std::size_t u = 0; u < r1.per_user.size(); ++u) {
      CHECK(std::memcmp(&r1.per_user[u].conflict, &r2.per_user[u].conflict, sizeof(double)) == 0);
    }
    CHECK(r1.trolls == r2.trolls);
  }
  SUBCASE("partition covers the roster") {
    Thread thread = generate(example1_scenario(42));
    auto report = analyze(thread);
    CHECK(report.trolls.size() + report.others.size() == thread.users().size());
    CHECK(report.troll_center >= report.other_center);
    for (const auto& t : report.trolls) {
      CHECK(report.user_conflict(t) >= 0.5 * (report.troll_center + report.other_center));
    }
    CHECK(code_of([&] { report.user_conflict("nobody"); }) == ErrorCode::kUnknownUser);
  }
  SUBCASE("identical posts give no two-cluster structure") {
    const auto rel = leaning(kFrame.relevant(), 0.8);
    auto thread = make_thread({"A", "B", "C"}, {{"A", rel}, {"B", rel}, {"C", rel}, {"A", rel}});
    CHECK(code_of([&] { analyze(thread); }) == ErrorCode::kDegenerate);
  }
}

TEST_CASE("replying to a troll raises a victim's conflict") {
  // Troll T posts controversy after a relevant exchange; victim V answers
  // with `replies` controversy posts; everything else stays the same.
  auto victim_score = [](int replies) {
    const auto rel = leaning(kFrame.relevant(), 0.9);
    const auto con = leaning(kFrame.topic(2), 0.9);
    std::vector<std::pair<UserId, MassFunction>> posts{
        {"E", rel}, {"V", rel}, {"E", rel}, {"V", rel}, {"T", con}, {"E", rel}};
    for (int r = 0; r < replies; ++r) posts.emplace_back("V", con);
    posts.emplace_back("E", rel);
    posts.emplace_back("V", rel);
    return conf_user(make_thread({"E", "V", "T"}, posts), "V");
  };
  double previous = victim_score(0);
  for (int replies = 1; replies <= 5; ++replies) {
    const double current = victim_score(replies);
    CHECK(current > previous);
    previous = current;
  }
}
