#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace narrarl {

struct ChatMessage {
  std::string role;  // "system" or "user" (or "assistant" on retries)
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// Connection settings for any OpenAI-compatible chat-completions endpoint.
/// The model identity is configuration, never hardcoded.
struct ChatConfig {
  std::string endpoint;  // base URL, e.g. "http://localhost:8000/v1"
  std::string model;
  double temperature = 0.7;
  double timeout_s = 30.0;
  int max_attempts = 3;
  int max_in_flight = 4;
  double backoff_base_s = 1.0;  // first retry delay; doubles per attempt
};

void validate(const ChatConfig& config);

/// Environment variable holding the bearer credential.
inline constexpr const char* kApiKeyEnv = "NARRARL_API_KEY";

/// Issues one completion request (with the config's retry policy applied to
/// transport failures and HTTP 429/5xx, exponential backoff with jitter) and
/// returns the first choice's message content.
///
/// Throws AuthMissingError, TransportError (retries exhausted),
/// HttpError (non-retryable 4xx), or MalformedBodyError.
std::string chat(const ChatConfig& config, const std::vector<ChatMessage>& messages);

/// Inclusive backoff delay range before retry number `attempt` (0-based).
/// Ranges are disjoint and increasing, so sampled delays are nondecreasing
/// across the attempts of one call.
std::pair<double, double> backoff_range_s(int attempt, double base_s);

/// Abstraction the arbiters call through; lets tests substitute a stub.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string chat(const std::vector<ChatMessage>& messages) = 0;
};

/// Shareable HTTP client that bounds concurrently outstanding requests to
/// config.max_in_flight; each call is otherwise independent.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(ChatConfig config);
  std::string chat(const std::vector<ChatMessage>& messages) override;

 private:
  ChatConfig config_;
  std::mutex mutex_;
  std::condition_variable slot_freed_;
  int in_flight_ = 0;
};

/// One scripted stub behavior: a canned response or an injected failure.
struct StubReply {
  static StubReply respond(std::string text);
  static StubReply fail(std::string message);

  std::string text;
  std::string error;  // non-empty means throw TransportError(error)
  bool is_failure = false;
};

/// Deterministic test double: replays its script in order, records every
/// received message list, and optionally injects a fixed per-call delay.
/// Thread-safe; tracks the peak number of concurrent calls.
class StubChatClient final : public ChatClient {
 public:
  explicit StubChatClient(std::vector<StubReply> script,
                          std::chrono::milliseconds delay = std::chrono::milliseconds(0));

  std::string chat(const std::vector<ChatMessage>& messages) override;

  const std::vector<std::vector<ChatMessage>>& calls() const { return calls_; }
  int call_count() const { return static_cast<int>(calls_.size()); }
  int max_concurrent() const { return max_concurrent_; }

 private:
  std::vector<StubReply> script_;
  std::chrono::milliseconds delay_;
  mutable std::mutex mutex_;
  std::vector<std::vector<ChatMessage>> calls_;
  std::size_t cursor_ = 0;
  int in_flight_ = 0;
  int max_concurrent_ = 0;
};

}  // namespace narrarl
