#pragma once

// Scores every user of a thread by how much their messages conflict with
// the messages other users posted before them, then splits the users into
// trolls and others with 2-means.

#include <cstddef>
#include <vector>

#include "trollscope/kmeans.hpp"
#include "trollscope/thread.hpp"

namespace trollscope {

struct AggregationOptions {
  /// When true (default), a message with no earlier messages from other
  /// users scores 0 and still counts in its author's average. When false it
  /// is left out of the average; a user with only such messages scores 0.
  bool count_unpreceded_messages = true;
};

/// Mean conflict between the message at `rank` and every earlier message
/// posted by `other`.
/// Throws kRankOutOfBounds, kUnknownUser, kSameUser (other wrote the
/// message) or kNoPriorMessages (other has nothing before `rank`).
double conf_msg_per_user(const Thread& thread, std::size_t rank, const UserId& other);

/// Conflict of the message at `rank` with all earlier messages of the other
/// users: the per-user means weighted by each user's share of those earlier
/// messages. 0 when no other user posted before it.
double conf_msg(const Thread& thread, std::size_t rank);

/// Average of conf_msg over the messages of `user`.
double conf_user(const Thread& thread, const UserId& user, const AggregationOptions& options = {});

struct UserShare {
  UserId user;
  std::size_t prior_count = 0;  // messages of `user` before the scored one
  double conflict = 0.0;        // conf_msg_per_user
};

struct MessageConflict {
  std::size_t rank = 0;
  UserId author;
  std::size_t prior_count = 0;  // earlier messages by other users
  double conflict = 0.0;
  std::vector<UserShare> per_user;  // users with prior_count > 0, roster order
};

struct UserConflict {
  UserId user;
  std::size_t message_count = 0;
  double conflict = 0.0;
};

struct ThreadScores {
  std::vector<MessageConflict> per_message;  // rank order
  std::vector<UserConflict> per_user;        // roster order
};

struct ConflictReport {
  std::vector<MessageConflict> per_message;
  std::vector<UserConflict> per_user;
  std::vector<UserId> trolls;  // roster order
  std::vector<UserId> others;  // roster order
  double troll_center = 0.0;
  double other_center = 0.0;
  std::size_t kmeans_iterations = 0;

  /// Throws kUnknownUser.
  double user_conflict(const UserId& user) const;
  bool is_troll(const UserId& user) const;
};

/// All per-message and per-user conflicts, without clustering.
ThreadScores score_thread(const Thread& thread, const AggregationOptions& options = {});

/// score_thread followed by 2-means on the per-user conflicts; the cluster
/// with the larger center holds the trolls. Propagates kDegenerate.
ConflictReport analyze(const Thread& thread, const AggregationOptions& options = {});

}  // namespace trollscope
