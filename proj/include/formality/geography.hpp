#pragma once

#include <array>
#include <optional>
#include <string>

#include "json.hpp"

#include "formality/certificate.hpp"
#include "formality/constructions.hpp"

namespace formality {

enum class Flavor { symplectic, contact };

std::string to_string(Flavor f);

struct GeographyQuery {
    int m = 0;  // dimension >= 1
    int b = 0;  // target first Betti number >= 0
    Flavor flavor = Flavor::symplectic;
};

enum class GeographyStatus { realized, out_of_scope, impossible };

std::string to_string(GeographyStatus s);

/// Betti numbers of the simply-connected non-formal symplectic 8-manifold of
/// Fernandez and Munoz, quoted where the realizer has to defer to it.
inline constexpr std::array<int, 9> kFernandezMunozEightManifoldBetti = {1, 0, 256, 0, 269,
                                                                         0, 256, 0, 1};

struct GeographyVerdict {
    GeographyStatus status = GeographyStatus::impossible;
    GeographyQuery query;
    std::optional<ModelRecipe> recipe;
    std::optional<nlohmann::json> certificate;  // cert/1, present iff realized
    std::string citation;
    int realized_b1 = -1;         // recomputed from the recipe when realized
    int realized_dimension = -1;  // likewise
};

/// Existence frontier for non-formal compact oriented manifolds with the
/// given (dimension, b1): the Fernandez-Munoz characterization.
bool non_formal_pair_exists(int m, int b);

/// Maps a query to a certified recipe, an out-of-scope citation, or
/// impossibility. Never throws on in-range queries; every input gets a
/// verdict.
GeographyVerdict realize(const GeographyQuery& query);

}  // namespace formality
