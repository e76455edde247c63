#include "formality/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "formality/certificate.hpp"
#include "formality/geography.hpp"

namespace formality::cli {

using nlohmann::json;

namespace {

struct ModelSpec {
    Model model;
    std::optional<ModelRecipe> recipe;  // for the built-in families
    std::string spec;
};

ModelSpec load_model(const std::string& spec) {
    ModelSpec out;
    out.spec = spec;
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (head == "mpq") {
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--model", "expected mpq:P,Q");
        int p = std::stoi(rest.substr(0, comma));
        int q = std::stoi(rest.substr(comma + 1));
        out.model = mpq_model(p, q);
        out.recipe = ModelRecipe::mpq(p, q);
    } else if (head == "fgg") {
        if (rest.empty())
            throw CLI::ValidationError("--model", "expected fgg:B");
        out.model = fgg_model(std::stoi(rest));
        out.recipe = ModelRecipe::fgg(std::stoi(rest));
    } else if (head == "torus") {
        if (rest.empty())
            throw CLI::ValidationError("--model", "expected torus:K");
        out.model = torus_model(std::stoi(rest));
    } else if (head == "s2" && rest.empty()) {
        out.model = sphere2_model();
        out.recipe = ModelRecipe::s2();
    } else if (head == "recipe") {
        out.recipe = ModelRecipe::parse(rest);
        out.model = build_model(*out.recipe);
    } else if (head == "file") {
        std::ifstream in(rest);
        if (!in)
            throw CLI::ValidationError("--model", "cannot open '" + rest + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        out.model.dga = parse_model(buffer.str());
        out.model.description = spec;
        if (auto top = out.model.dga.algebra().top_degree())
            out.model.dimension = *top;
    } else {
        throw CLI::ValidationError("--model",
                                   "expected mpq:P,Q | fgg:B | torus:K | s2 | recipe:R | file:PATH");
    }
    return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep))
        out.push_back(item);
    return out;
}

std::string format_class(const Element& e) {
    if (e.is_zero())
        return "[0]";
    bool all_negative = true;
    for (const auto& [mono, coeff] : e.terms())
        if (sgn(coeff) > 0)
            all_negative = false;
    if (all_negative)
        return "-[" + (-e).to_string() + "]";
    return "[" + e.to_string() + "]";
}

int top_degree_or(const DGA& dga, int fallback) {
    if (auto top = dga.algebra().top_degree())
        return *top;
    return fallback;
}

long long search_budget(std::optional<long long> flag_value) {
    if (flag_value)
        return *flag_value;
    if (const char* env = std::getenv("FORMALITY_LAB_BUDGET"))
        return std::atoll(env);
    return HigherMasseyOptions{}.budget;
}

json massey_to_json(const MasseyResult& r) {
    json out;
    out["order"] = r.order;
    out["verdict"] = to_string(r.verdict);
    out["value"] = r.value_representative.to_string();
    json indet = json::array();
    for (const auto& e : r.indeterminacy)
        indet.push_back(e.to_string());
    out["indeterminacy"] = indet;
    json xi;
    for (const auto& [key, e] : r.witness.xi)
        xi[std::to_string(key.first) + "," + std::to_string(key.second)] = e.to_string();
    out["xi"] = xi;
    if (!r.note.empty())
        out["note"] = r.note;
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"formality-lab: graded models, cohomology, Massey obstructions, and the\n"
                 "geography of non-formal symplectic and contact models"};
    app.require_subcommand(1);

    std::string model_spec;
    std::string out_format = "text";
    std::string classes_arg;
    std::optional<long long> budget_flag;
    int degree = 0;
    int s_level = 1;
    int max_degree = -1;

    auto add_model_flag = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_spec,
                        "mpq:P,Q | fgg:B | torus:K | s2 | recipe:R | file:PATH")
            ->required();
    };
    auto add_out_flag = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* describe = app.add_subcommand("describe", "print a model's structure");
    add_model_flag(describe);
    add_out_flag(describe);

    CLI::App* betti = app.add_subcommand("betti", "print Betti numbers");
    add_model_flag(betti);
    add_out_flag(betti);
    betti->add_option("--max-degree", max_degree, "highest degree (default: top degree)");

    CLI::App* cohom = app.add_subcommand("cohomology", "print a degree's class basis");
    add_model_flag(cohom);
    add_out_flag(cohom);
    cohom->add_option("--degree", degree, "cohomological degree")->required();

    CLI::App* massey = app.add_subcommand("massey", "triple or higher Massey product");
    add_model_flag(massey);
    add_out_flag(massey);
    massey->add_option("--classes", classes_arg, "comma-separated cocycle expressions")->required();
    massey->add_option("--budget", budget_flag, "search budget for higher products");

    CLI::App* amassey = app.add_subcommand("amassey", "a-Massey product on degree-2 classes");
    add_model_flag(amassey);
    add_out_flag(amassey);
    amassey->add_option("--classes", classes_arg, "a,b1,b2,b3 cocycle expressions")->required();

    CLI::App* certify = app.add_subcommand("certify", "search a non-s-formality certificate");
    add_model_flag(certify);
    add_out_flag(certify);
    certify->add_option("--s", s_level, "s-formality level")->required();

    CLI::App* realize_cmd = app.add_subcommand("realize", "realize (dimension, b1, flavor)");
    int q_m = 0, q_b = 0;
    std::string q_flavor;
    realize_cmd->add_option("m", q_m, "dimension")->required();
    realize_cmd->add_option("b", q_b, "first Betti number")->required();
    realize_cmd->add_option("flavor", q_flavor, "symplectic | contact")
        ->required()
        ->check(CLI::IsMember({"symplectic", "contact"}));
    add_out_flag(realize_cmd);

    CLI::App* parse_check = app.add_subcommand("parse-check", "validate a model file");
    std::string check_path;
    parse_check->add_option("file", check_path, "model DSL file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (describe->parsed()) {
            ModelSpec spec = load_model(model_spec);
            ValidationReport report = spec.model.dga.validate();
            if (out_format == "json") {
                json j;
                j["model"] = spec.spec;
                j["generators"] = spec.model.dga.algebra().generator_count();
                j["dimension"] = spec.model.dimension;
                j["dsl"] = serialize_model(spec.model.dga);
                if (spec.model.symplectic_form)
                    j["symplectic_form"] = spec.model.symplectic_form->to_string();
                if (spec.recipe)
                    j["recipe"] = spec.recipe->to_string();
                j["valid"] = report.ok;
                out << j.dump(2) << "\n";
            } else {
                out << "model " << spec.spec << "\n";
                out << serialize_model(spec.model.dga);
                if (spec.model.dimension > 0)
                    out << "dimension " << spec.model.dimension << "\n";
                if (spec.model.symplectic_form)
                    out << "symplectic form " << spec.model.symplectic_form->to_string() << "\n";
                out << "d^2 = 0: " << (report.ok ? "ok" : "violated") << "\n";
            }
            return report.ok ? 0 : 1;
        }

        if (betti->parsed()) {
            ModelSpec spec = load_model(model_spec);
            int top = max_degree >= 0 ? max_degree : top_degree_or(spec.model.dga, -1);
            if (top < 0)
                throw Error("the algebra has unbounded degrees; pass --max-degree");
            auto numbers = spec.model.dga.betti(top);
            if (out_format == "json") {
                out << json(numbers).dump() << "\n";
            } else {
                for (size_t i = 0; i < numbers.size(); ++i)
                    out << (i ? " " : "") << numbers[i];
                out << "\n";
            }
            return 0;
        }

        if (cohom->parsed()) {
            ModelSpec spec = load_model(model_spec);
            auto space = spec.model.dga.cohomology(degree);
            if (out_format == "json") {
                json j;
                j["degree"] = degree;
                j["dimension"] = space->dimension();
                json basis = json::array();
                for (const auto& cls : space->classes())
                    basis.push_back(cls.representative.to_string());
                j["classes"] = basis;
                out << j.dump(2) << "\n";
            } else {
                out << "dim H^" << degree << " = " << space->dimension() << "\n";
                for (const auto& cls : space->classes())
                    out << "  " << format_class(cls.representative) << "\n";
            }
            return 0;
        }

        if (massey->parsed()) {
            ModelSpec spec = load_model(model_spec);
            const DGA& dga = spec.model.dga;
            std::vector<CohomologyClass> classes;
            for (const auto& expr : split(classes_arg, ','))
                classes.push_back(dga.class_of(parse_element(dga.algebra(), expr)));
            if (classes.size() < 3)
                throw Error("massey needs at least three classes");

            MasseyResult result;
            if (classes.size() == 3) {
                result = triple_massey(dga, classes[0], classes[1], classes[2]);
            } else {
                HigherMasseyOptions options;
                options.budget = search_budget(budget_flag);
                result = higher_massey(dga, classes, options);
            }
            if (out_format == "json") {
                out << massey_to_json(result).dump(2) << "\n";
            } else {
                if (result.verdict == MasseyVerdict::non_vanishing)
                    out << "non-vanishing: " << format_class(result.value_representative) << "\n";
                else
                    out << to_string(result.verdict)
                        << (result.note.empty() ? "" : " (" + result.note + ")") << "\n";
            }
            return 0;
        }

        if (amassey->parsed()) {
            ModelSpec spec = load_model(model_spec);
            const DGA& dga = spec.model.dga;
            auto exprs = split(classes_arg, ',');
            if (exprs.size() != 4)
                throw Error("amassey needs --classes a,b1,b2,b3");
            std::vector<CohomologyClass> classes;
            for (const auto& expr : exprs)
                classes.push_back(dga.class_of(parse_element(dga.algebra(), expr)));
            MasseyResult result = a_massey(dga, classes[0], classes[1], classes[2], classes[3]);
            if (out_format == "json") {
                out << massey_to_json(result).dump(2) << "\n";
            } else if (result.verdict == MasseyVerdict::non_vanishing) {
                out << "non-vanishing: " << format_class(result.value_representative) << "\n";
            } else {
                out << to_string(result.verdict) << "\n";
            }
            return 0;
        }

        if (certify->parsed()) {
            ModelSpec spec = load_model(model_spec);
            auto cert = not_s_formal_certificate(spec.model.dga, s_level);
            if (!cert) {
                if (out_format == "json") {
                    json j;
                    j["result"] = "none_found";
                    j["s"] = s_level;
                    out << j.dump(2) << "\n";
                } else {
                    out << "none found (no non-vanishing triple product in range; not a "
                           "formality proof)\n";
                }
                return 0;
            }
            std::vector<std::string> notes = {"model " + spec.spec};
            if (spec.model.dimension > 0) {
                int n = (spec.model.dimension + 1) / 2;
                if (s_level >= n - 1)
                    notes.push_back(
                        "dimension note: a compact orientable manifold of dimension " +
                        std::to_string(spec.model.dimension) + " is formal iff it is " +
                        std::to_string(n - 1) +
                        "-formal, so this certificate obstructs formality itself (the "
                        "dimension is metadata; the manifold hypotheses are the caller's)");
            }
            json j = make_s_formality_certificate(
                spec.model.dga, spec.recipe, *cert,
                {"a defined non-vanishing Massey product in these degrees obstructs "
                 "s-formality"},
                notes);
            if (out_format == "json") {
                out << j.dump(2) << "\n";
            } else {
                out << "not " << s_level << "-formal: <";
                for (int i = 0; i < 3; ++i)
                    out << (i ? "," : "")
                        << format_class(cert->result.witness.classes[i].representative);
                out << "> = " << format_class(cert->result.value_representative)
                    << " (non-vanishing)\n";
            }
            return 0;
        }

        if (realize_cmd->parsed()) {
            GeographyQuery query{q_m, q_b,
                                 q_flavor == "symplectic" ? Flavor::symplectic : Flavor::contact};
            GeographyVerdict verdict = realize(query);
            if (out_format == "json") {
                json j;
                j["query"] = {{"m", query.m}, {"b", query.b}, {"flavor", to_string(query.flavor)}};
                j["status"] = to_string(verdict.status);
                j["citation"] = verdict.citation;
                if (verdict.recipe)
                    j["recipe"] = verdict.recipe->to_string();
                if (verdict.status == GeographyStatus::realized) {
                    j["b1"] = verdict.realized_b1;
                    j["dimension"] = verdict.realized_dimension;
                }
                if (verdict.certificate)
                    j["certificate"] = *verdict.certificate;
                out << j.dump(2) << "\n";
            } else {
                out << to_string(verdict.status) << "\n";
                if (verdict.recipe)
                    out << "recipe " << verdict.recipe->to_string() << "\n";
                if (verdict.status == GeographyStatus::realized)
                    out << "b1 " << verdict.realized_b1 << "\ndimension "
                        << verdict.realized_dimension << "\n";
                out << "citation: " << verdict.citation << "\n";
            }
            return verdict.status == GeographyStatus::impossible ? 1 : 0;
        }

        if (parse_check->parsed()) {
            std::ifstream in(check_path);
            if (!in) {
                err << "error: cannot open '" << check_path << "'\n";
                return 2;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            try {
                DGA dga = parse_model(buffer.str());
                int diffs = 0;
                for (int i = 0; i < dga.algebra().generator_count(); ++i)
                    if (!dga.generator_differential(i).is_zero())
                        ++diffs;
                out << "OK: " << dga.algebra().generator_count() << " generators, " << diffs
                    << " differentials\n";
                return 0;
            } catch (const Error& e) {
                err << "invalid model: " << e.what() << "\n";
                return 1;
            }
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    err << "error: no command\n";
    return 2;
}

}  // namespace formality::cli
