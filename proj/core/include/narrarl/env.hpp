#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace narrarl {

/// Grid cell coordinate. Origin is the top-left cell; x grows eastward,
/// y grows southward (matching ASCII rendering order). Ordering is
/// row-major (y, then x), which is also the serialization order.
struct Position {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Position a, Position b) {
    return a.x == b.x && a.y == b.y;
  }
  friend constexpr auto operator<=>(Position a, Position b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

/// The four moves, in canonical order. The order is load-bearing: it is the
/// tie-break order for greedy action selection and the layout of every
/// serialized 4-value row.
enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr std::array<Action, 4> kActions = {Action::Up, Action::Down,
                                                   Action::Left, Action::Right};
inline constexpr int kActionCount = 4;

constexpr Position action_delta(Action a) {
  switch (a) {
    case Action::Up:
      return {0, -1};
    case Action::Down:
      return {0, 1};
    case Action::Left:
      return {-1, 0};
    case Action::Right:
      return {1, 0};
  }
  return {0, 0};
}

constexpr Action opposite(Action a) {
  switch (a) {
    case Action::Up:
      return Action::Down;
    case Action::Down:
      return Action::Up;
    case Action::Left:
      return Action::Right;
    case Action::Right:
      return Action::Left;
  }
  return a;
}

/// Lowercase canonical word: "up", "down", "left", "right".
std::string_view action_word(Action a);
/// Uppercase word for prompts and instructions: "UP", ...
std::string_view action_word_upper(Action a);
/// Parses a canonical action word (case-insensitive); nullopt otherwise.
std::optional<Action> action_from_word(std::string_view word);

/// What occupies a cell adjacent to the agent.
enum class CellLabel : int { Empty = 0, Obstacle = 1, Wall = 2, Goal = 3 };

std::string_view cell_label_word(CellLabel label);
std::optional<CellLabel> cell_label_from_word(std::string_view word);

/// A generated n-by-n gridworld. Immutable after construction and safe to
/// share across threads.
class GridWorld {
 public:
  /// Builds a grid from explicit parts, validating the structural
  /// invariants: bounds, start != goal, start/goal not obstacles, and
  /// |obstacles| == min(round(density*n^2), n^2-2). Reachability is NOT
  /// checked here; generate_grid guarantees it by construction and the
  /// load paths verify it with a BFS.
  static GridWorld from_parts(int n, double density, std::uint64_t seed,
                              Position start, Position goal,
                              std::set<Position> obstacles);

  int n() const { return n_; }
  double density() const { return density_; }
  std::uint64_t seed() const { return seed_; }
  Position start() const { return start_; }
  Position goal() const { return goal_; }
  const std::set<Position>& obstacles() const { return obstacles_; }

  bool in_bounds(Position p) const {
    return p.x >= 0 && p.x < n_ && p.y >= 0 && p.y < n_;
  }
  bool is_obstacle(Position p) const {
    return in_bounds(p) && blocked_[static_cast<std::size_t>(p.y) * n_ + p.x] != 0;
  }

  friend bool operator==(const GridWorld& a, const GridWorld& b) {
    return a.n_ == b.n_ && a.density_ == b.density_ && a.seed_ == b.seed_ &&
           a.start_ == b.start_ && a.goal_ == b.goal_ &&
           a.obstacles_ == b.obstacles_;
  }

 private:
  GridWorld() = default;

  int n_ = 0;
  double density_ = 0.0;
  std::uint64_t seed_ = 0;
  Position start_;
  Position goal_;
  std::set<Position> obstacles_;
  std::vector<std::uint8_t> blocked_;  // flat occupancy cache, row-major
};

/// What the agent can see from a cell: the four adjacent labels plus the
/// signed offset to the goal.
struct Observation {
  std::array<CellLabel, 4> adjacent{};  // indexed by Action
  Position position;
  int goal_dx = 0;
  int goal_dy = 0;

  CellLabel north() const { return adjacent[static_cast<int>(Action::Up)]; }
  CellLabel south() const { return adjacent[static_cast<int>(Action::Down)]; }
  CellLabel west() const { return adjacent[static_cast<int>(Action::Left)]; }
  CellLabel east() const { return adjacent[static_cast<int>(Action::Right)]; }

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Result of executing one move.
struct Transition {
  Position next;
  double reward = 0.0;
  bool terminal = false;
  bool collided = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Reward structure: goal, empty step, blocked move (agent stays put).
inline constexpr double kGoalReward = 1.0;
inline constexpr double kStepReward = -0.01;
inline constexpr double kCollisionReward = -0.1;

/// Generates a solvable grid with round(density*n^2) obstacles sampled
/// uniformly without replacement from the cells excluding start and goal.
/// Start is (0,0) and goal is (n-1,n-1). If a layout is not BFS-solvable
/// the generator retries with derived sub-seeds, up to 1000 attempts.
///
/// Throws UnsatisfiableError when the obstacle count exceeds n^2-2 or no
/// solvable layout is found within the attempt budget.
/// Identical (n, density, seed) yield bit-identical grids.
GridWorld generate_grid(int n, double density, std::uint64_t seed);

/// Adjacent-cell labels and goal offset at `pos`. Precondition: pos is
/// in-bounds, not an obstacle, and not the goal.
Observation observe(const GridWorld& grid, Position pos);

/// Executes one move. Blocked moves (wall or obstacle) leave the agent in
/// place with the collision penalty; reaching the goal is terminal.
/// Precondition: pos in-bounds, not an obstacle, pos != goal.
Transition step(const GridWorld& grid, Position pos, Action action);

/// Length of the shortest 4-connected obstacle-avoiding start->goal path,
/// or nullopt when the goal is unreachable.
std::optional<int> shortest_path_len(const GridWorld& grid);

/// Single JSON object with obstacles sorted (y, then x) for byte-stable
/// output.
std::string grid_to_json(const GridWorld& grid);
/// Parses and fully validates a grid, including BFS reachability.
GridWorld grid_from_json(const std::string& text);

GridWorld load_grid(const std::filesystem::path& path);
void save_grid(const GridWorld& grid, const std::filesystem::path& path);

}  // namespace narrarl
