#include "narrarl/arbiter.hpp"

#include <chrono>
#include <cmath>
#include <regex>

namespace narrarl {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point from) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - from)
      .count();
}

bool blocked(CellLabel label) {
  return label == CellLabel::Obstacle || label == CellLabel::Wall;
}

}  // namespace

Verdict passthrough(const ArbiterRequest& request) {
  const auto t0 = Clock::now();
  Verdict v;
  v.action = request.suggestion.action;
  v.followed_suggestion = true;
  v.fallback = false;
  v.latency_ms = elapsed_ms(t0);
  return v;
}

Verdict scripted(const ArbiterRequest& request) {
  const auto t0 = Clock::now();
  const Observation& obs = request.observation;
  const Action suggested = request.suggestion.action;

  Verdict v;
  v.action = suggested;
  if (blocked(obs.adjacent[static_cast<int>(suggested)])) {
    int best_dist = -1;
    std::optional<Action> best;
    for (Action a : kActions) {
      if (blocked(obs.adjacent[static_cast<int>(a)])) continue;
      const Position d = action_delta(a);
      const int dist =
          std::abs(obs.goal_dx - d.x) + std::abs(obs.goal_dy - d.y);
      if (!best || dist < best_dist) {
        best = a;
        best_dist = dist;
      }
    }
    if (best) v.action = *best;  // all-blocked cannot happen on generated grids
  }
  v.followed_suggestion = (v.action == suggested);
  v.fallback = false;
  v.latency_ms = elapsed_ms(t0);
  return v;
}

std::optional<Action> parse_action(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*action\s*:\s*(up|down|left|right)\s*$)",
      std::regex::icase | std::regex::optimize);

  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) {
      lines.push_back(text.substr(begin));
      break;
    }
    lines.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }

  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    std::smatch m;
    if (std::regex_match(*it, m, pattern)) {
      return action_from_word(m[1].str());
    }
  }
  return std::nullopt;
}

}  // namespace narrarl
