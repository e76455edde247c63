#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "formality/constructions.hpp"
#include "formality/massey.hpp"
#include "formality/models.hpp"

namespace formality {

/// Machine-readable non-formality certificates, schema "cert/1". The model
/// is embedded as DSL text so a certificate replays without the recipe;
/// the recipe is carried as provenance when one exists.
nlohmann::json make_triple_certificate(const DGA& dga, const std::optional<ModelRecipe>& recipe,
                                       const MasseyResult& result,
                                       const std::vector<std::string>& citations,
                                       const std::vector<std::string>& notes);

nlohmann::json make_s_formality_certificate(const DGA& dga,
                                            const std::optional<ModelRecipe>& recipe,
                                            const SFormalityCertificate& certificate,
                                            const std::vector<std::string>& citations,
                                            const std::vector<std::string>& notes);

struct ReplayOutcome {
    bool ok = false;
    std::string detail;
};

/// Re-runs a cert/1 certificate through the engine: rebuilds the model,
/// checks the witness equations d xi = alpha_i alpha_{i+1}, recomputes the
/// value and the quotient verdict, and compares.
ReplayOutcome replay_certificate(const nlohmann::json& certificate);

}  // namespace formality
