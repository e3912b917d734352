#include "narrarl/rl.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "narrarl/errors.hpp"
#include <nlohmann/json.hpp>

namespace narrarl {

namespace {
using ordered_json = nlohmann::ordered_json;
}

void validate(const RlParams& params) {
  if (!(params.alpha > 0.0 && params.alpha <= 1.0))
    throw ConfigError("rl.alpha must be in (0, 1]");
  if (!(params.gamma >= 0.0 && params.gamma <= 1.0))
    throw ConfigError("rl.gamma must be in [0, 1]");
  if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0))
    throw ConfigError("rl.epsilon must be in [0, 1]");
  if (params.episodes < 0) throw ConfigError("rl.episodes must be >= 0");
  if (params.max_steps < 0) throw ConfigError("rl.max_steps must be >= 1 (or 0 for the 4*n*n default)");
}

QTable::QTable(int n, std::uint64_t init_seed,
               std::vector<std::array<double, 4>> values)
    : n_(n), init_seed_(init_seed), values_(std::move(values)) {
  if (n_ < 2) throw ValidationError("qtable: n must be >= 2");
  if (values_.size() != static_cast<std::size_t>(n_) * n_)
    throw ValidationError("qtable: expected one 4-value row per cell");
  for (const auto& row : values_) {
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("qtable: values must be finite");
    }
  }
}

QTable init_qtable(int n, std::uint64_t seed) {
  if (n < 2) throw ContractViolation("init_qtable: n must be >= 2");
  Rng rng(seed);
  std::vector<std::array<double, 4>> values(static_cast<std::size_t>(n) * n);
  for (auto& row : values) {
    for (double& v : row) {
      v = rng.next_unit() * 0.01;
    }
  }
  return QTable(n, seed, std::move(values));
}

Suggestion suggest(const QTable& table, Position pos, double epsilon, Rng& rng) {
  Suggestion s;
  s.q_values = table.row(pos);
  if (rng.next_unit() < epsilon) {
    s.action = kActions[rng.next_below(kActionCount)];
    s.exploratory = true;
    return s;
  }
  int best = 0;
  for (int i = 1; i < kActionCount; ++i) {
    if (s.q_values[i] > s.q_values[best]) best = i;  // ties keep canonical order
  }
  s.action = kActions[best];
  s.exploratory = false;
  return s;
}

double td_update(QTable& table, Position pos, Action action,
                 const Transition& transition, double alpha, double gamma) {
  double target = transition.reward;
  if (!transition.terminal) {
    const auto& next_row = table.row(transition.next);
    double best = next_row[0];
    for (int i = 1; i < kActionCount; ++i) {
      if (next_row[i] > best) best = next_row[i];
    }
    target += gamma * best;
  }
  const double updated =
      table.at(pos, action) + alpha * (target - table.at(pos, action));
  table.set(pos, action, updated);
  return updated;
}

std::vector<EpisodeStats> train(const GridWorld& grid, const RlParams& params,
                                QTable& table, Rng& rng,
                                const TrainObserver& observer) {
  if (table.n() != grid.n())
    throw ContractViolation("train: grid and qtable sides differ");
  const int max_steps = params.resolved_max_steps(grid.n());

  std::vector<EpisodeStats> records;
  records.reserve(static_cast<std::size_t>(params.episodes));
  for (int episode = 0; episode < params.episodes; ++episode) {
    EpisodeStats stats;
    Position pos = grid.start();
    for (int s = 0; s < max_steps; ++s) {
      Suggestion sug = suggest(table, pos, params.epsilon, rng);
      Transition tr = step(grid, pos, sug.action);
      td_update(table, pos, sug.action, tr, params.alpha, params.gamma);
      if (observer) observer(TrainStep{episode, s, pos, sug, tr});
      stats.total_reward += tr.reward;
      ++stats.steps;
      if (tr.terminal) {
        stats.success = true;
        break;
      }
      pos = tr.next;
    }
    records.push_back(stats);
  }
  return records;
}

EpisodeStats greedy_rollout(const GridWorld& grid, const QTable& table,
                            int max_steps) {
  EpisodeStats stats;
  Rng unused(0);  // epsilon = 0 never draws
  Position pos = grid.start();
  for (int s = 0; s < max_steps; ++s) {
    Suggestion sug = suggest(table, pos, 0.0, unused);
    Transition tr = step(grid, pos, sug.action);
    stats.total_reward += tr.reward;
    ++stats.steps;
    if (tr.terminal) {
      stats.success = true;
      break;
    }
    pos = tr.next;
  }
  return stats;
}

std::string qtable_to_json(const QTable& table) {
  ordered_json j;
  j["n"] = table.n();
  j["init_seed"] = table.init_seed();
  ordered_json values = ordered_json::array();
  for (const auto& row : table.values()) {
    values.push_back({row[0], row[1], row[2], row[3]});
  }
  j["values"] = std::move(values);
  return j.dump();
}

QTable qtable_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("qtable: invalid JSON: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    const std::uint64_t seed = j.at("init_seed").get<std::uint64_t>();
    std::vector<std::array<double, 4>> values;
    for (const auto& row : j.at("values")) {
      values.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                        row.at(2).get<double>(), row.at(3).get<double>()});
    }
    return QTable(n, seed, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("qtable: missing or mistyped field: ") + e.what());
  }
}

QTable load_qtable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open qtable file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return qtable_from_json(buf.str());
}

void save_qtable(const QTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw TraceIoError("cannot open qtable file for writing: " + path.string());
  out << qtable_to_json(table) << '\n';
}

}  // namespace narrarl
