#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "narrarl/env.hpp"
#include "narrarl/rl.hpp"

namespace narrarl {

/// Everything an arbiter gets to see for one decision: the RL suggestion,
/// the local observation, and a short position history.
struct ArbiterRequest {
  int episode = 0;
  int step = 0;
  Observation observation;
  Suggestion suggestion;
  std::optional<std::string> narrative_id;
  std::vector<Position> recent_positions;  // most recent last, length <= window
};

inline constexpr int kDefaultRecentWindow = 5;

/// The arbiter's decision. `followed_suggestion` always equals
/// (action == request.suggestion.action); `fallback` means the LLM output
/// was unusable and the suggestion was substituted (which implies followed).
struct Verdict {
  Action action = Action::Up;
  bool followed_suggestion = true;
  std::string rationale;  // empty for non-LLM arbiters
  bool fallback = false;
  std::int64_t latency_ms = 0;
};

/// Uniform decision interface so the episode loop does not care which
/// arbitration path is configured. Implementations are stateless pure
/// transformations (modulo an external client call) and safe to share.
class Arbiter {
 public:
  virtual ~Arbiter() = default;
  virtual Verdict decide(const ArbiterRequest& request) = 0;
  virtual std::optional<std::string> narrative_id() const { return std::nullopt; }
};

/// The RL-only control path: executes the suggestion unchanged.
Verdict passthrough(const ArbiterRequest& request);

/// Deterministic stand-in for LLM arbitration. Keeps unblocked suggestions;
/// replaces a blocked one with the unblocked action whose resulting goal
/// offset has minimal Manhattan distance (ties in canonical Action order).
/// If every direction is blocked the suggestion is returned unchanged.
Verdict scripted(const ArbiterRequest& request);

/// Scans `text` line by line, last to first, for "ACTION: <word>"
/// (case-insensitive, surrounding whitespace ignored) with word in
/// {up, down, left, right}. Returns nullopt on a malformed response.
std::optional<Action> parse_action(const std::string& text);

class PassthroughArbiter final : public Arbiter {
 public:
  Verdict decide(const ArbiterRequest& request) override {
    return passthrough(request);
  }
};

class ScriptedArbiter final : public Arbiter {
 public:
  Verdict decide(const ArbiterRequest& request) override {
    return scripted(request);
  }
};

}  // namespace narrarl
