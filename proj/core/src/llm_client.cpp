#include "narrarl/llm_client.hpp"

#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "narrarl/errors.hpp"
#include <nlohmann/json.hpp>

#include <httplib.h>

namespace narrarl {

namespace {

using nlohmann::json;

struct EndpointParts {
  std::string base;         // scheme://host[:port]
  std::string path_prefix;  // e.g. "/v1", possibly empty
};

EndpointParts split_endpoint(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("chat.endpoint must start with http:// or https://");
  }
  const auto path_begin = endpoint.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) {
    return {endpoint, ""};
  }
  std::string prefix = endpoint.substr(path_begin);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {endpoint.substr(0, path_begin), prefix};
}

bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status <= 599);
}

double jittered_backoff_s(int attempt, double base_s) {
  auto [lo, hi] = backoff_range_s(attempt, base_s);
  thread_local std::mt19937_64 jitter_rng{std::random_device{}()};
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(jitter_rng);
}

std::string extract_content(const std::string& body) {
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::exception& e) {
    throw MalformedBodyError(std::string("chat response is not JSON: ") + e.what());
  }
  if (!parsed.contains("choices") || !parsed["choices"].is_array() ||
      parsed["choices"].empty()) {
    throw MalformedBodyError("chat response lacks choices[0]");
  }
  const auto& message = parsed["choices"][0];
  if (!message.contains("message") || !message["message"].contains("content") ||
      !message["message"]["content"].is_string()) {
    throw MalformedBodyError("chat response lacks choices[0].message.content");
  }
  return message["message"]["content"].get<std::string>();
}

}  // namespace

void validate(const ChatConfig& config) {
  if (config.endpoint.empty()) throw ConfigError("chat.endpoint must be set");
  if (config.model.empty()) throw ConfigError("chat.model must be set");
  if (config.temperature < 0.0) throw ConfigError("chat.temperature must be >= 0");
  if (config.timeout_s <= 0.0) throw ConfigError("chat.timeout_s must be > 0");
  if (config.max_attempts < 1) throw ConfigError("chat.max_attempts must be >= 1");
  if (config.max_in_flight < 1) throw ConfigError("chat.max_in_flight must be >= 1");
}

std::pair<double, double> backoff_range_s(int attempt, double base_s) {
  const double lo = base_s * static_cast<double>(1ull << attempt);
  return {lo, lo + 0.5 * base_s};
}

std::string chat(const ChatConfig& config, const std::vector<ChatMessage>& messages) {
  validate(config);
  if (messages.empty()) throw ContractViolation("chat: messages must be non-empty");

  const char* key = std::getenv(kApiKeyEnv);
  if (key == nullptr || *key == '\0') {
    throw AuthMissingError(std::string("credential not found: set ") + kApiKeyEnv);
  }

  const EndpointParts parts = split_endpoint(config.endpoint);
  json body;
  body["model"] = config.model;
  json msgs = json::array();
  for (const ChatMessage& m : messages) {
    msgs.push_back({{"role", m.role}, {"content", m.content}});
  }
  body["messages"] = std::move(msgs);
  body["temperature"] = config.temperature;
  const std::string payload = body.dump();
  const std::string path = parts.path_prefix + "/chat/completions";

  const auto timeout =
      std::chrono::milliseconds(static_cast<std::int64_t>(config.timeout_s * 1000.0));
  httplib::Client client(parts.base);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_bearer_token_auth(key);

  std::string last_failure;
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(
          jittered_backoff_s(attempt - 1, config.backoff_base_s)));
    }
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      std::ostringstream msg;
      msg << "transport failure on " << parts.base << path << ": "
          << httplib::to_string(res.error());
      last_failure = msg.str();
      continue;
    }
    if (res->status == 200) {
      return extract_content(res->body);
    }
    if (retryable_status(res->status)) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    throw HttpError(res->status,
                    "chat request rejected with HTTP " + std::to_string(res->status));
  }
  throw TransportError("chat failed after " + std::to_string(config.max_attempts) +
                       " attempts: " + last_failure);
}

HttpChatClient::HttpChatClient(ChatConfig config) : config_(std::move(config)) {
  validate(config_);
}

std::string HttpChatClient::chat(const std::vector<ChatMessage>& messages) {
  {
    std::unique_lock lock(mutex_);
    slot_freed_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
    ++in_flight_;
  }
  try {
    std::string out = narrarl::chat(config_, messages);
    {
      std::lock_guard lock(mutex_);
      --in_flight_;
    }
    slot_freed_.notify_one();
    return out;
  } catch (...) {
    {
      std::lock_guard lock(mutex_);
      --in_flight_;
    }
    slot_freed_.notify_one();
    throw;
  }
}

StubReply StubReply::respond(std::string text) {
  StubReply r;
  r.text = std::move(text);
  return r;
}

StubReply StubReply::fail(std::string message) {
  StubReply r;
  r.error = std::move(message);
  r.is_failure = true;
  return r;
}

StubChatClient::StubChatClient(std::vector<StubReply> script,
                               std::chrono::milliseconds delay)
    : script_(std::move(script)), delay_(delay) {
  if (script_.empty()) throw ContractViolation("stub client: script must be non-empty");
}

std::string StubChatClient::chat(const std::vector<ChatMessage>& messages) {
  StubReply reply;
  {
    std::lock_guard lock(mutex_);
    calls_.push_back(messages);
    if (cursor_ >= script_.size()) {
      throw ScriptExhaustedError("stub client called " +
                                 std::to_string(calls_.size()) +
                                 " times on a script of " +
                                 std::to_string(script_.size()));
    }
    reply = script_[cursor_++];
    ++in_flight_;
    if (in_flight_ > max_concurrent_) max_concurrent_ = in_flight_;
  }
  if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
  {
    std::lock_guard lock(mutex_);
    --in_flight_;
  }
  if (reply.is_failure) throw TransportError(reply.error);
  return reply.text;
}

}  // namespace narrarl
