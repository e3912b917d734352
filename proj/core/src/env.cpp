#include "narrarl/env.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "narrarl/errors.hpp"
#include "narrarl/rng.hpp"
#include <nlohmann/json.hpp>

namespace narrarl {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

/// BFS over non-obstacle cells; returns per-cell distance from start, or -1
/// for unreachable cells.
std::vector<int> bfs_distances(const GridWorld& grid) {
  const int n = grid.n();
  std::vector<int> dist(static_cast<std::size_t>(n) * n, -1);
  std::deque<Position> queue;
  dist[static_cast<std::size_t>(grid.start().y) * n + grid.start().x] = 0;
  queue.push_back(grid.start());
  while (!queue.empty()) {
    Position p = queue.front();
    queue.pop_front();
    int d = dist[static_cast<std::size_t>(p.y) * n + p.x];
    for (Action a : kActions) {
      Position q{p.x + action_delta(a).x, p.y + action_delta(a).y};
      if (!grid.in_bounds(q) || grid.is_obstacle(q)) continue;
      int& dq = dist[static_cast<std::size_t>(q.y) * n + q.x];
      if (dq < 0) {
        dq = d + 1;
        queue.push_back(q);
      }
    }
  }
  return dist;
}

bool solvable(const GridWorld& grid) {
  auto dist = bfs_distances(grid);
  return dist[static_cast<std::size_t>(grid.goal().y) * grid.n() + grid.goal().x] >= 0;
}

}  // namespace

std::string_view action_word(Action a) {
  switch (a) {
    case Action::Up:
      return "up";
    case Action::Down:
      return "down";
    case Action::Left:
      return "left";
    case Action::Right:
      return "right";
  }
  return "?";
}

std::string_view action_word_upper(Action a) {
  switch (a) {
    case Action::Up:
      return "UP";
    case Action::Down:
      return "DOWN";
    case Action::Left:
      return "LEFT";
    case Action::Right:
      return "RIGHT";
  }
  return "?";
}

std::optional<Action> action_from_word(std::string_view word) {
  std::string w = lower(word);
  for (Action a : kActions) {
    if (w == action_word(a)) return a;
  }
  return std::nullopt;
}

std::string_view cell_label_word(CellLabel label) {
  switch (label) {
    case CellLabel::Empty:
      return "empty";
    case CellLabel::Obstacle:
      return "obstacle";
    case CellLabel::Wall:
      return "wall";
    case CellLabel::Goal:
      return "goal";
  }
  return "?";
}

std::optional<CellLabel> cell_label_from_word(std::string_view word) {
  std::string w = lower(word);
  for (CellLabel l : {CellLabel::Empty, CellLabel::Obstacle, CellLabel::Wall,
                      CellLabel::Goal}) {
    if (w == cell_label_word(l)) return l;
  }
  return std::nullopt;
}

GridWorld GridWorld::from_parts(int n, double density, std::uint64_t seed,
                                Position start, Position goal,
                                std::set<Position> obstacles) {
  require(n >= 2 && n <= 64, "grid side must be in [2, 64]");
  require(density >= 0.0 && density <= 1.0, "density must be in [0, 1]");
  GridWorld g;
  g.n_ = n;
  g.density_ = density;
  g.seed_ = seed;
  g.start_ = start;
  g.goal_ = goal;
  g.obstacles_ = std::move(obstacles);

  require(g.in_bounds(start), "start out of bounds");
  require(g.in_bounds(goal), "goal out of bounds");
  require(!(start == goal), "start must differ from goal");
  const int expected =
      std::min(round_half_up(density * n * n), n * n - 2);
  require(static_cast<int>(g.obstacles_.size()) == expected,
          "obstacle count does not match density");
  for (Position p : g.obstacles_) {
    require(g.in_bounds(p), "obstacle out of bounds");
    require(!(p == start) && !(p == goal), "obstacle on start or goal");
  }

  g.blocked_.assign(static_cast<std::size_t>(n) * n, 0);
  for (Position p : g.obstacles_) {
    g.blocked_[static_cast<std::size_t>(p.y) * n + p.x] = 1;
  }
  return g;
}

GridWorld generate_grid(int n, double density, std::uint64_t seed) {
  if (n < 2 || n > 64) throw ContractViolation("generate_grid: n must be in [2, 64]");
  if (density < 0.0 || density > 1.0)
    throw ContractViolation("generate_grid: density must be in [0, 1]");

  const int cells = n * n;
  const int count = round_half_up(density * cells);
  if (count > cells - 2) {
    std::ostringstream msg;
    msg << "unsatisfiable obstacle request: " << count << " > " << (cells - 2)
        << " placeable cells";
    throw UnsatisfiableError(msg.str());
  }

  const Position start{0, 0};
  const Position goal{n - 1, n - 1};

  // Candidate cells in row-major order, excluding start and goal, so the
  // partial shuffle below is a uniform draw without replacement.
  std::vector<Position> candidates;
  candidates.reserve(static_cast<std::size_t>(cells) - 2);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      Position p{x, y};
      if (p == start || p == goal) continue;
      candidates.push_back(p);
    }
  }

  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<Position> pool = candidates;
    for (int i = 0; i < count; ++i) {
      const std::uint32_t j =
          static_cast<std::uint32_t>(i) +
          rng.next_below(static_cast<std::uint32_t>(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    std::set<Position> obstacles(pool.begin(), pool.begin() + count);
    GridWorld grid =
        GridWorld::from_parts(n, density, seed, start, goal, std::move(obstacles));
    if (solvable(grid)) return grid;
  }
  std::ostringstream msg;
  msg << "no solvable " << n << "x" << n << " layout at density " << density
      << " within " << kMaxAttempts << " attempts (seed " << seed << ")";
  throw UnsatisfiableError(msg.str());
}

Observation observe(const GridWorld& grid, Position pos) {
  if (!grid.in_bounds(pos)) throw ContractViolation("observe: position out of bounds");
  if (grid.is_obstacle(pos)) throw ContractViolation("observe: position is an obstacle");
  if (pos == grid.goal()) throw ContractViolation("observe: position is the goal");

  Observation obs;
  obs.position = pos;
  obs.goal_dx = grid.goal().x - pos.x;
  obs.goal_dy = grid.goal().y - pos.y;
  for (Action a : kActions) {
    Position q{pos.x + action_delta(a).x, pos.y + action_delta(a).y};
    CellLabel label;
    if (!grid.in_bounds(q)) {
      label = CellLabel::Wall;
    } else if (q == grid.goal()) {
      label = CellLabel::Goal;
    } else if (grid.is_obstacle(q)) {
      label = CellLabel::Obstacle;
    } else {
      label = CellLabel::Empty;
    }
    obs.adjacent[static_cast<int>(a)] = label;
  }
  return obs;
}

Transition step(const GridWorld& grid, Position pos, Action action) {
  if (!grid.in_bounds(pos)) throw ContractViolation("step: position out of bounds");
  if (grid.is_obstacle(pos)) throw ContractViolation("step: position is an obstacle");
  if (pos == grid.goal()) throw ContractViolation("step: position is the goal");

  const Position target{pos.x + action_delta(action).x,
                        pos.y + action_delta(action).y};
  if (!grid.in_bounds(target) || grid.is_obstacle(target)) {
    return Transition{pos, kCollisionReward, false, true};
  }
  if (target == grid.goal()) {
    return Transition{target, kGoalReward, true, false};
  }
  return Transition{target, kStepReward, false, false};
}

std::optional<int> shortest_path_len(const GridWorld& grid) {
  auto dist = bfs_distances(grid);
  int d = dist[static_cast<std::size_t>(grid.goal().y) * grid.n() + grid.goal().x];
  if (d < 0) return std::nullopt;
  return d;
}

std::string grid_to_json(const GridWorld& grid) {
  ordered_json j;
  j["n"] = grid.n();
  j["density"] = grid.density();
  j["seed"] = grid.seed();
  j["start"] = {grid.start().x, grid.start().y};
  j["goal"] = {grid.goal().x, grid.goal().y};
  ordered_json obstacles = ordered_json::array();
  for (Position p : grid.obstacles()) {  // std::set iterates (y, x) sorted
    obstacles.push_back({p.x, p.y});
  }
  j["obstacles"] = std::move(obstacles);
  return j.dump();
}

GridWorld grid_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("grid: invalid JSON: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    const double density = j.at("density").get<double>();
    const std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    const auto& s = j.at("start");
    const auto& g = j.at("goal");
    std::set<Position> obstacles;
    for (const auto& o : j.at("obstacles")) {
      obstacles.insert(Position{o.at(0).get<int>(), o.at(1).get<int>()});
    }
    GridWorld grid = GridWorld::from_parts(
        n, density, seed, Position{s.at(0).get<int>(), s.at(1).get<int>()},
        Position{g.at(0).get<int>(), g.at(1).get<int>()}, std::move(obstacles));
    if (!solvable(grid)) {
      throw ValidationError("grid: no path from start to goal");
    }
    return grid;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("grid: missing or mistyped field: ") + e.what());
  }
}

GridWorld load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return grid_from_json(buf.str());
}

void save_grid(const GridWorld& grid, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw TraceIoError("cannot open grid file for writing: " + path.string());
  out << grid_to_json(grid) << '\n';
}

}  // namespace narrarl
