#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "narrarl/env.hpp"
#include "narrarl/rng.hpp"

namespace narrarl {

/// Q-learning hyperparameters and episode budget.
struct RlParams {
  double alpha = 0.5;    // learning rate, (0, 1]
  double gamma = 0.9;    // discount, [0, 1]
  double epsilon = 0.2;  // exploration rate, [0, 1]; not annealed
  int episodes = 10;
  int max_steps = 0;  // per-episode budget; 0 means "use 4*n*n"

  /// Budget with the 4*n*n default applied for a given grid side.
  int resolved_max_steps(int n) const {
    return max_steps > 0 ? max_steps : 4 * n * n;
  }
};

/// Validates ranges; throws ConfigError naming the offending field.
void validate(const RlParams& params);

/// Tabular action-value estimates: one 4-value row per cell, rows stored
/// row-major, values in canonical Action order. Single-owner mutable while
/// training; safe to share read-only afterwards.
class QTable {
 public:
  QTable(int n, std::uint64_t init_seed,
         std::vector<std::array<double, 4>> values);

  int n() const { return n_; }
  std::uint64_t init_seed() const { return init_seed_; }

  double at(Position pos, Action a) const {
    return values_[index(pos)][static_cast<int>(a)];
  }
  const std::array<double, 4>& row(Position pos) const {
    return values_[index(pos)];
  }
  void set(Position pos, Action a, double value) {
    values_[index(pos)][static_cast<int>(a)] = value;
  }

  const std::vector<std::array<double, 4>>& values() const { return values_; }

  friend bool operator==(const QTable& a, const QTable& b) {
    return a.n_ == b.n_ && a.init_seed_ == b.init_seed_ && a.values_ == b.values_;
  }

 private:
  std::size_t index(Position pos) const {
    return static_cast<std::size_t>(pos.y) * n_ + pos.x;
  }

  int n_ = 0;
  std::uint64_t init_seed_ = 0;
  std::vector<std::array<double, 4>> values_;
};

/// An action proposal from the table: the chosen action, the full 4-value
/// row it was chosen from, and whether the exploration branch fired.
struct Suggestion {
  Action action = Action::Up;
  std::array<double, 4> q_values{};  // canonical Action order
  bool exploratory = false;

  friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

/// Fresh table with every value drawn uniformly from [0, 0.01),
/// deterministically per seed.
QTable init_qtable(int n, std::uint64_t seed);

/// Epsilon-greedy selection: with probability epsilon a uniformly random
/// action (exploratory), otherwise the argmax with ties broken in canonical
/// Action order.
Suggestion suggest(const QTable& table, Position pos, double epsilon, Rng& rng);

/// One temporal-difference update on the (pos, action) entry only.
/// Terminal transitions use target r; non-terminal r + gamma * max_a' Q(next, a').
/// Returns the updated value.
double td_update(QTable& table, Position pos, Action action,
                 const Transition& transition, double alpha, double gamma);

/// Per-episode outcome of a training run.
struct EpisodeStats {
  bool success = false;
  int steps = 0;
  double total_reward = 0.0;
};

/// One executed training step, exposed to observers for cross-checking
/// trajectories against other drivers of the same loop.
struct TrainStep {
  int episode = 0;
  int step = 0;
  Position pos;
  Suggestion suggestion;
  Transition transition;
};

using TrainObserver = std::function<void(const TrainStep&)>;

/// Runs `params.episodes` epsilon-greedy episodes from the grid start,
/// updating the table in place after every executed step. Episodes end at
/// the goal or the step budget. Returns one record per episode.
std::vector<EpisodeStats> train(const GridWorld& grid, const RlParams& params,
                                QTable& table, Rng& rng,
                                const TrainObserver& observer = nullptr);

/// Greedy (epsilon = 0, no learning) rollout from start; returns the episode
/// outcome without touching the table.
EpisodeStats greedy_rollout(const GridWorld& grid, const QTable& table,
                            int max_steps);

std::string qtable_to_json(const QTable& table);
QTable qtable_from_json(const std::string& text);
QTable load_qtable(const std::filesystem::path& path);
void save_qtable(const QTable& table, const std::filesystem::path& path);

}  // namespace narrarl
