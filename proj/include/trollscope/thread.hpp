#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trollscope/belief.hpp"

namespace trollscope {

using UserId = std::string;

/// The frame a message is judged on: {Off-topic, Senseless, Topic_1..Topic_N},
/// where one topic is the relevant one and every other topic is a
/// controversy topic.
///
/// Bit layout of the induced frame: bit 0 is Off-topic, bit 1 Senseless and
/// bit 1+j is Topic_j.
class MessageFrame {
 public:
  static constexpr const char* kOffTopic = "Off-topic";
  static constexpr const char* kSenseless = "Senseless";

  /// Throws kInvalidFrame unless 1 <= relevant_topic <= topic_count <= 14.
  MessageFrame(int topic_count, int relevant_topic);

  int topic_count() const { return topic_count_; }
  int relevant_topic() const { return relevant_topic_; }
  const Frame& frame() const { return frame_; }

  static std::string topic_label(int topic);

  SubsetId off_topic() const { return SubsetId::singleton(0); }
  SubsetId senseless() const { return SubsetId::singleton(1); }
  /// Singleton {Topic_j}; throws kInvalidSubset when j is out of range.
  SubsetId topic(int j) const;
  SubsetId relevant() const { return topic(relevant_topic_); }

 private:
  int topic_count_;
  int relevant_topic_;
  Frame frame_;
};

struct Message {
  UserId author;
  std::size_t rank = 0;  // 1-based position in the thread
  MassFunction bba;
};

/// A validated discussion thread.
///
/// Invariants: at least two distinct users, each with at least one message;
/// message ranks are exactly 1..M; every bba lives on the message frame.
class Thread {
 public:
  /// Messages may be given in any order; they are stored by rank.
  /// Throws kInvalidThread (or kFrameMismatch for a bba on another frame).
  Thread(MessageFrame frame, std::vector<UserId> users, std::vector<Message> messages);

  const MessageFrame& frame() const { return frame_; }
  const std::vector<UserId>& users() const { return users_; }
  const std::vector<Message>& messages() const { return messages_; }
  std::size_t message_count() const { return messages_.size(); }

  /// Throws kRankOutOfBounds.
  const Message& message(std::size_t rank) const;
  bool has_user(const UserId& user) const;
  /// Position of `user` in the roster; throws kUnknownUser.
  std::size_t user_index(const UserId& user) const;
  /// Roster index of each message's author, in rank order.
  const std::vector<std::size_t>& author_indices() const { return author_index_; }

 private:
  MessageFrame frame_;
  std::vector<UserId> users_;
  std::vector<Message> messages_;
  std::vector<std::size_t> author_index_;
};

}  // namespace trollscope
