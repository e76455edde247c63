#include "formality/certificate.hpp"

namespace formality {

using nlohmann::json;

namespace {

json triple_payload(const MasseyResult& result) {
    json out;
    out["kind"] = "triple_massey";
    json classes = json::array();
    for (const auto& cls : result.witness.classes) {
        json coords = json::array();
        for (const auto& c : cls.coordinates)
            coords.push_back(to_string(c));
        classes.push_back({{"degree", cls.degree},
                           {"representative", cls.representative.to_string()},
                           {"coordinates", coords}});
    }
    out["classes"] = classes;
    json xi;
    if (auto it = result.witness.xi.find({1, 2}); it != result.witness.xi.end())
        xi["1,2"] = it->second.to_string();
    if (auto it = result.witness.xi.find({2, 3}); it != result.witness.xi.end())
        xi["2,3"] = it->second.to_string();
    out["xi"] = xi;
    out["value"] = result.value_representative.to_string();
    json indet = json::array();
    for (const auto& e : result.indeterminacy)
        indet.push_back(e.to_string());
    out["indeterminacy"] = indet;
    out["verdict"] = to_string(result.verdict);
    return out;
}

}  // namespace

json make_triple_certificate(const DGA& dga, const std::optional<ModelRecipe>& recipe,
                             const MasseyResult& result, const std::vector<std::string>& citations,
                             const std::vector<std::string>& notes) {
    json cert = triple_payload(result);
    cert["schema"] = "cert/1";
    cert["model"] = serialize_model(dga);
    if (recipe)
        cert["recipe"] = recipe->to_string();
    cert["citations"] = citations;
    cert["notes"] = notes;
    return cert;
}

json make_s_formality_certificate(const DGA& dga, const std::optional<ModelRecipe>& recipe,
                                  const SFormalityCertificate& certificate,
                                  const std::vector<std::string>& citations,
                                  const std::vector<std::string>& notes) {
    json cert = make_triple_certificate(dga, recipe, certificate.result, citations, notes);
    cert["kind"] = "not_s_formal";
    cert["s"] = certificate.s;
    cert["degrees"] = certificate.degrees;
    return cert;
}

ReplayOutcome replay_certificate(const json& certificate) {
    try {
        if (certificate.value("schema", "") != "cert/1")
            return {false, "unsupported schema"};

        DGA dga = parse_model(certificate.at("model").get<std::string>());
        const auto& classes = certificate.at("classes");
        if (classes.size() != 3)
            return {false, "expected three classes"};

        std::vector<CohomologyClass> parsed;
        for (const auto& cls : classes) {
            Element rep = parse_element(dga.algebra(), cls.at("representative").get<std::string>());
            if (!dga.d(rep).is_zero())
                return {false, "class representative is not closed"};
            parsed.push_back(dga.class_of(rep));
        }

        // Witness equations d xi_{j,j+1} = alpha_j alpha_{j+1}.
        Element xi12 = parse_element(dga.algebra(), certificate.at("xi").at("1,2").get<std::string>());
        Element xi23 = parse_element(dga.algebra(), certificate.at("xi").at("2,3").get<std::string>());
        if (dga.d(xi12) != parsed[0].representative * parsed[1].representative)
            return {false, "d xi_{1,2} mismatch"};
        if (dga.d(xi23) != parsed[1].representative * parsed[2].representative)
            return {false, "d xi_{2,3} mismatch"};

        Element claimed_value = parse_element(dga.algebra(), certificate.at("value").get<std::string>());
        Element value = triple_massey_value(parsed[0].representative, parsed[2].representative, xi12,
                                            xi23, parsed[0].degree);
        if (value != claimed_value)
            return {false, "value does not match the witness data"};

        MasseyResult recomputed = triple_massey(dga, parsed[0], parsed[1], parsed[2]);
        std::string claimed_verdict = certificate.at("verdict").get<std::string>();
        if (to_string(recomputed.verdict) != claimed_verdict)
            return {false, "verdict mismatch: recomputed " + to_string(recomputed.verdict)};

        // The two witnesses may differ by primitive choices; their values
        // must agree modulo the recomputed indeterminacy.
        int degree = parsed[0].degree + parsed[1].degree + parsed[2].degree - 1;
        auto space = dga.cohomology(degree);
        SparseEliminator span;
        for (const auto& e : recomputed.indeterminacy) {
            SparseVec row;
            auto coords = space->coordinates_of(e);
            for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                if (!is_zero(coords[c]))
                    row.emplace_back(c, coords[c]);
            span.append(std::move(row));
        }
        Element difference = value - recomputed.value_representative;
        if (!difference.is_zero()) {
            auto coords = space->coordinates_of(difference);
            SparseVec row;
            for (int c = 0; c < static_cast<int>(coords.size()); ++c)
                if (!is_zero(coords[c]))
                    row.emplace_back(c, coords[c]);
            if (!span.in_span(row))
                return {false, "witness value differs from the recomputed coset"};
        }
        return {true, "replayed: " + claimed_verdict};
    } catch (const std::exception& e) {
        return {false, std::string("replay error: ") + e.what()};
    }
}

}  // namespace formality
