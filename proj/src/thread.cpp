#include "trollscope/thread.hpp"

#include <algorithm>
#include <unordered_map>

#include "trollscope/error.hpp"

namespace trollscope {

namespace {

Frame make_message_frame(int topic_count, int relevant_topic) {
  const int max_topics = static_cast<int>(Frame::kMaxSize) - 2;
  if (topic_count < 1 || topic_count > max_topics) {
    throw Error(ErrorCode::kInvalidFrame,
                "topic count must be in [1, " + std::to_string(max_topics) + "]");
  }
  if (relevant_topic < 1 || relevant_topic > topic_count) {
    throw Error(ErrorCode::kInvalidFrame, "relevant topic must be in [1, topic count]");
  }
  std::vector<std::string> labels{MessageFrame::kOffTopic, MessageFrame::kSenseless};
  for (int j = 1; j <= topic_count; ++j) labels.push_back(MessageFrame::topic_label(j));
  return Frame(std::move(labels));
}

}  // namespace

MessageFrame::MessageFrame(int topic_count, int relevant_topic)
    : topic_count_(topic_count),
      relevant_topic_(relevant_topic),
      frame_(make_message_frame(topic_count, relevant_topic)) {}

std::string MessageFrame::topic_label(int topic) { return "Topic_" + std::to_string(topic); }

SubsetId MessageFrame::topic(int j) const {
  if (j < 1 || j > topic_count_) {
    throw Error(ErrorCode::kInvalidSubset, "no topic " + std::to_string(j));
  }
  return SubsetId::singleton(static_cast<std::size_t>(j) + 1);
}

Thread::Thread(MessageFrame frame, std::vector<UserId> users, std::vector<Message> messages)
    : frame_(std::move(frame)), users_(std::move(users)), messages_(std::move(messages)) {
  if (users_.size() < 2) {
    throw Error(ErrorCode::kInvalidThread, "a thread needs at least two users");
  }
  std::unordered_map<UserId, std::size_t> index;
  for (std::size_t u = 0; u < users_.size(); ++u) {
    if (users_[u].empty()) throw Error(ErrorCode::kInvalidThread, "empty user id");
    if (!index.emplace(users_[u], u).second) {
      throw Error(ErrorCode::kInvalidThread, "user '" + users_[u] + "' listed twice");
    }
  }
  if (messages_.empty()) throw Error(ErrorCode::kInvalidThread, "thread has no messages");

  std::stable_sort(messages_.begin(), messages_.end(),
                   [](const Message& a, const Message& b) { return a.rank < b.rank; });
  std::vector<std::size_t> per_user(users_.size(), 0);
  author_index_.reserve(messages_.size());
  for (std::size_t k = 0; k < messages_.size(); ++k) {
    const Message& msg = messages_[k];
    if (msg.rank != k + 1) {
      throw Error(ErrorCode::kInvalidThread,
                  "ranks must be exactly 1.." + std::to_string(messages_.size()) +
                      " (found rank " + std::to_string(msg.rank) + " at position " +
                      std::to_string(k + 1) + ")");
    }
    auto it = index.find(msg.author);
    if (it == index.end()) {
      throw Error(ErrorCode::kInvalidThread,
                  "message " + std::to_string(msg.rank) + " has unknown author '" + msg.author + "'");
    }
    if (!(msg.bba.frame() == frame_.frame())) {
      throw Error(ErrorCode::kFrameMismatch,
                  "message " + std::to_string(msg.rank) + " is not on the message frame");
    }
    ++per_user[it->second];
    author_index_.push_back(it->second);
  }
  for (std::size_t u = 0; u < users_.size(); ++u) {
    if (per_user[u] == 0) {
      throw Error(ErrorCode::kInvalidThread, "user '" + users_[u] + "' has no messages");
    }
  }
}

const Message& Thread::message(std::size_t rank) const {
  if (rank < 1 || rank > messages_.size()) {
    throw Error(ErrorCode::kRankOutOfBounds, "no message with rank " + std::to_string(rank));
  }
  return messages_[rank - 1];
}

bool Thread::has_user(const UserId& user) const {
  return std::find(users_.begin(), users_.end(), user) != users_.end();
}

std::size_t Thread::user_index(const UserId& user) const {
  auto it = std::find(users_.begin(), users_.end(), user);
  if (it == users_.end()) throw Error(ErrorCode::kUnknownUser, "unknown user '" + user + "'");
  return static_cast<std::size_t>(it - users_.begin());
}

}  // namespace trollscope
