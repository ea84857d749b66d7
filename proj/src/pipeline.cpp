#include "trollscope/pipeline.hpp"

#include <algorithm>

#include "trollscope/conflict.hpp"
#include "trollscope/error.hpp"

namespace trollscope {

namespace {

// Weighted mean of the per-user conflicts, summed in roster order. The
// weights NP_j / NP reduce the per-user means back to totals over NP.
double weighted_conflict(const std::vector<UserShare>& shares, std::size_t prior_count) {
  if (prior_count == 0) return 0.0;
  double total = 0.0;
  for (const auto& share : shares) {
    const double weight = static_cast<double>(share.prior_count) / static_cast<double>(prior_count);
    total += weight * share.conflict;
  }
  return std::clamp(total, 0.0, 1.0);
}

MessageConflict score_message(const Thread& thread, std::size_t rank) {
  const Message& msg = thread.message(rank);
  const auto& authors = thread.author_indices();
  const std::size_t author = authors[rank - 1];
  const std::size_t user_count = thread.users().size();

  // Running per-user sums and counts over the earlier messages.
  std::vector<double> sums(user_count, 0.0);
  std::vector<std::size_t> counts(user_count, 0);
  for (std::size_t s = 1; s < rank; ++s) {
    const std::size_t other = authors[s - 1];
    if (other == author) continue;
    sums[other] += conflict(msg.bba, thread.message(s).bba);
    ++counts[other];
  }

  MessageConflict out;
  out.rank = rank;
  out.author = msg.author;
  for (std::size_t u = 0; u < user_count; ++u) {
    if (counts[u] == 0) continue;
    out.per_user.push_back({thread.users()[u], counts[u], sums[u] / counts[u]});
    out.prior_count += counts[u];
  }
  out.conflict = weighted_conflict(out.per_user, out.prior_count);
  return out;
}

std::vector<UserConflict> average_by_user(const Thread& thread,
                                          const std::vector<MessageConflict>& per_message,
                                          const AggregationOptions& options) {
  const auto& users = thread.users();
  std::vector<double> sums(users.size(), 0.0);
  std::vector<std::size_t> counted(users.size(), 0);
  std::vector<std::size_t> posted(users.size(), 0);
  const auto& authors = thread.author_indices();
  for (const auto& mc : per_message) {
    const std::size_t u = authors[mc.rank - 1];
    ++posted[u];
    if (mc.prior_count == 0 && !options.count_unpreceded_messages) continue;
    sums[u] += mc.conflict;
    ++counted[u];
  }
  std::vector<UserConflict> out;
  out.reserve(users.size());
  for (std::size_t u = 0; u < users.size(); ++u) {
    const double value = counted[u] == 0 ? 0.0 : std::clamp(sums[u] / counted[u], 0.0, 1.0);
    out.push_back({users[u], posted[u], value});
  }
  return out;
}

}  // namespace

double conf_msg_per_user(const Thread& thread, std::size_t rank, const UserId& other) {
  const Message& msg = thread.message(rank);
  const std::size_t other_index = thread.user_index(other);
  if (thread.author_indices()[rank - 1] == other_index) {
    throw Error(ErrorCode::kSameUser, "message " + std::to_string(rank) + " was written by '" +
                                          other + "' itself");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t s = 1; s < rank; ++s) {
    if (thread.author_indices()[s - 1] != other_index) continue;
    sum += conflict(msg.bba, thread.message(s).bba);
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::kNoPriorMessages,
                "'" + other + "' posted nothing before rank " + std::to_string(rank));
  }
  return sum / count;
}

double conf_msg(const Thread& thread, std::size_t rank) { return score_message(thread, rank).conflict; }

double conf_user(const Thread& thread, const UserId& user, const AggregationOptions& options) {
  const std::size_t u = thread.user_index(user);
  std::vector<MessageConflict> mine;
  for (std::size_t k = 1; k <= thread.message_count(); ++k) {
    if (thread.author_indices()[k - 1] == u) mine.push_back(score_message(thread, k));
  }
  return average_by_user(thread, mine, options)[u].conflict;
}

ThreadScores score_thread(const Thread& thread, const AggregationOptions& options) {
  ThreadScores scores;
  scores.per_message.reserve(thread.message_count());
  for (std::size_t k = 1; k <= thread.message_count(); ++k) {
    scores.per_message.push_back(score_message(thread, k));
  }
  scores.per_user = average_by_user(thread, scores.per_message, options);
  return scores;
}

ConflictReport analyze(const Thread& thread, const AggregationOptions& options) {
  ThreadScores scores = score_thread(thread, options);

  std::vector<std::pair<std::string, double>> values;
  values.reserve(scores.per_user.size());
  for (const auto& uc : scores.per_user) values.emplace_back(uc.user, uc.conflict);
  Partition2 partition = kmeans2(values);

  ConflictReport report;
  report.per_message = std::move(scores.per_message);
  report.per_user = std::move(scores.per_user);
  report.trolls = std::move(partition.high);
  report.others = std::move(partition.low);
  report.troll_center = partition.center_high;
  report.other_center = partition.center_low;
  report.kmeans_iterations = partition.iterations;
  return report;
}

double ConflictReport::user_conflict(const UserId& user) const {
  for (const auto& uc : per_user) {
    if (uc.user == user) return uc.conflict;
  }
  throw Error(ErrorCode::kUnknownUser, "unknown user '" + user + "'");
}

bool ConflictReport::is_troll(const UserId& user) const {
  return std::find(trolls.begin(), trolls.end(), user) != trolls.end();
}

}  // namespace trollscope
