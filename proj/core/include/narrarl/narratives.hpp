#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "narrarl/arbiter.hpp"
#include "narrarl/llm_client.hpp"

namespace narrarl {

/// A named prompt pair: a persona preamble (the only part that varies across
/// the built-in frameworks) and a decision template filled per step.
///
/// Recognized placeholders: {position}, {goal_delta}, {north}, {south},
/// {east}, {west}, {suggested_action}, {recent_positions}. Templates must
/// instruct the responder to end with "ACTION: <UP|DOWN|LEFT|RIGHT>".
struct NarrativeFramework {
  std::string id;
  std::string system_preamble;
  std::string decision_template;

  friend bool operator==(const NarrativeFramework&, const NarrativeFramework&) = default;
};

/// Built-in framework ids: "direct" (plain task statement), "theseus",
/// "sherlock", "westworld". All four share the identical decision template
/// so the environmental information given to the model is constant across
/// narratives. Throws UnknownNarrativeError otherwise.
NarrativeFramework builtin_framework(const std::string& id);

bool is_builtin_narrative(const std::string& id);

/// Renders the per-step messages: the system preamble plus the decision
/// template with every placeholder substituted (directions as the words
/// empty/obstacle/wall/goal, goal offset as "dx=…, dy=…"). Pure function;
/// throws TemplateError if an unknown placeholder is present.
std::vector<ChatMessage> render(const NarrativeFramework& framework,
                                const ArbiterRequest& request);

/// Loads a user-defined framework from a JSON file
/// {"id", "system_preamble", "decision_template"} and validates the
/// placeholder set and the ACTION-format instruction.
/// Throws ParseError or ValidationError (naming the offending placeholder).
NarrativeFramework load_framework(const std::filesystem::path& path);

/// Resolves a config-supplied narrative: a built-in id, or a path to a
/// framework JSON file. Throws UnknownNarrativeError when it is neither.
NarrativeFramework resolve_framework(const std::string& id_or_path);

}  // namespace narrarl
