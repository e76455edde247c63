#include "doctest.h"

#include "formality/massey.hpp"
#include "formality/models.hpp"

using namespace formality;

namespace {

Element gen(const DGA& dga, const std::string& name) {
    return Element::generator(dga.algebra(), *dga.algebra().index_of(name));
}

}  // namespace

TEST_CASE("mpq model structure") {
    Model model = mpq_model(1, 1);
    CHECK(model.dga.algebra().generator_count() == 6);
    CHECK(model.dimension == 6);
    CHECK(model.dga.validate().ok);
    CHECK(model.dga.betti(1)[1] == 4);  // b1 = p+q+2

    Model big = mpq_model(2, 3);
    CHECK(big.dga.algebra().generator_count() == 12);
    CHECK(big.dga.d(gen(big.dga, "c2")) == -(gen(big.dga, "a2") * gen(big.dga, "b")));
    CHECK(big.dga.d(gen(big.dga, "ct3")) == -(gen(big.dga, "at3") * gen(big.dga, "bt")));
    CHECK(big.dga.betti(1)[1] == 7);
}

TEST_CASE("mpq rejects out-of-range parameters") {
    CHECK_THROWS_AS(mpq_model(0, 1), Error);
    CHECK_THROWS_AS(mpq_model(1, 0), Error);
}

TEST_CASE("mpq symplectic form: closed with nonzero top power") {
    for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}, std::pair{3, 1}}) {
        Model model = mpq_model(p, q);
        REQUIRE(model.symplectic_form.has_value());
        CHECK(model.dga.d(*model.symplectic_form).is_zero());
        Element top = model.symplectic_form->pow(p + q + 1);
        CHECK_FALSE(top.is_zero());
    }
}

TEST_CASE("mpq H^2 dimension matches the closed-form count") {
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
        Model model = mpq_model(p, q);
        int expected = p * p + p * q + q * q + 2 * p + 2 * q + 1;
        CHECK(model.dga.cohomology(2)->dimension() == expected);
    }
}

TEST_CASE("fgg models") {
    Model m2 = fgg_model(2);
    Model m3 = fgg_model(3);
    CHECK(m2.dga.validate().ok);  // includes d^2 h = d(a c) = -a(ab) = 0
    CHECK(m3.dga.validate().ok);
    CHECK(m2.dga.betti(1)[1] == 2);
    CHECK(m3.dga.betti(1)[1] == 3);

    for (const Model* model : {&m2, &m3}) {
        REQUIRE(model->symplectic_form.has_value());
        CHECK(model->dga.d(*model->symplectic_form).is_zero());
        CHECK_FALSE(model->symplectic_form->pow(2).is_zero());
    }
    CHECK_THROWS_AS(fgg_model(4), Error);
}

TEST_CASE("sphere and torus models") {
    Model s2 = sphere2_model();
    auto bs = s2.dga.betti(2);
    CHECK(bs == std::vector<int>{1, 0, 1});

    Model t1 = torus_model(1);
    CHECK(t1.dga.betti(2) == std::vector<int>{1, 2, 1});
    CHECK(torus_model(2).dga.betti(1)[1] == 4);
}

TEST_CASE("built-in families are minimal") {
    CHECK(is_minimal(mpq_model(1, 1).dga).minimal);
    CHECK(is_minimal(mpq_model(3, 2).dga).minimal);
    CHECK(is_minimal(fgg_model(2).dga).minimal);
    CHECK(is_minimal(fgg_model(3).dga).minimal);
    CHECK(is_minimal(torus_model(2).dga).minimal);
}

TEST_CASE("DSL text for M(1,1) equals the built-in model") {
    const char* text =
        "# M(1,1) structure equations\n"
        "gen a1 1\n"
        "gen b 1\n"
        "gen c1 1\n"
        "gen at1 1\n"
        "gen bt 1\n"
        "gen ct1 1\n"
        "d c1 = -a1*b\n"
        "d ct1 = -at1*bt\n";
    DGA parsed = parse_model(text);
    CHECK(structurally_equal(parsed, mpq_model(1, 1).dga));
}

TEST_CASE("empty model body gives the unit algebra") {
    DGA parsed = parse_model("# nothing here\n\n");
    CHECK(parsed.algebra().generator_count() == 0);
    CHECK(parsed.cohomology(0)->dimension() == 1);
}

TEST_CASE("round trip: parse(serialize(D)) is structurally equal") {
    for (const Model& model : {mpq_model(2, 1), fgg_model(2), sphere2_model(), torus_model(2)}) {
        std::string text = serialize_model(model.dga);
        DGA parsed = parse_model(text);
        CHECK(structurally_equal(parsed, model.dga));
        CHECK(serialize_model(parsed) == text);
    }
}

TEST_CASE("serialization uses the canonical grammar") {
    Model m = mpq_model(1, 1);
    std::string text = serialize_model(m.dga);
    CHECK(text.find("gen a1 1\n") != std::string::npos);
    CHECK(text.find("d c1 = -a1*b\n") != std::string::npos);
    std::string s2 = serialize_model(sphere2_model().dga);
    CHECK(s2 == "gen x 2 trunc 2\n");
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_model("gen a 1\ngen b zero\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }

    try {
        parse_model("gen a 1\nd a = a*q\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    CHECK_THROWS_AS(parse_model("hello world\n"), ParseError);
    CHECK_THROWS_AS(parse_model("gen a 1\nd z = a\n"), ParseError);  // unknown generator
}

TEST_CASE("the d^2 fixture is rejected with the offending generator named") {
    const char* text =
        "gen e1 1\ngen e2 1\ngen e3 1\ngen e4 1\ngen e5 1\n"
        "d e5 = e3*e4\n"
        "d e4 = e1*e2\n";
    try {
        parse_model(text);
        FAIL("expected validation error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("e5") != std::string::npos);
    }
}

TEST_CASE("expression parser handles the full term grammar") {
    GradedAlgebra a = make_algebra({{"a", 1, std::nullopt}, {"b", 1, std::nullopt}, {"x", 2, 4}});
    Element parsed = parse_element(a, "1/2*a*b - x^2 + 3");
    Element expected = Element::generator(a, 0) * Element::generator(a, 1) * Rational(1, 2) -
                       Element::generator(a, 2).pow(2) + Element::one(a) * Rational(3);
    CHECK(parsed == expected);
    CHECK(parse_element(a, "0").is_zero());
    CHECK(parse_element(a, "-a*b") == -(Element::generator(a, 0) * Element::generator(a, 1)));
    CHECK_THROWS_AS(parse_element(a, "a*"), ParseError);
    CHECK_THROWS_AS(parse_element(a, "2a"), ParseError);
    CHECK_THROWS_AS(parse_element(a, "1/0*a"), ParseError);
}

TEST_CASE("recipe parse/print round trip") {
    ModelRecipe recipe = ModelRecipe::tensor(
        ModelRecipe::s1_bundle(ModelRecipe::tensor(ModelRecipe::fgg(3), ModelRecipe::s2()),
                               "a*c + b*h + x"),
        ModelRecipe::t2());
    std::string text = recipe.to_string();
    CHECK(text == "TENSOR(S1_BUNDLE(TENSOR(FGG(3),S2),a*c + b*h + x),T2)");
    ModelRecipe reparsed = ModelRecipe::parse(text);
    CHECK(reparsed == recipe);

    CHECK(ModelRecipe::parse("MPQ(2,3)") == ModelRecipe::mpq(2, 3));
    CHECK_THROWS_AS(ModelRecipe::parse("MPQ(2,3) junk"), ParseError);
    CHECK_THROWS_AS(ModelRecipe::parse("WHAT(1)"), ParseError);
}

TEST_CASE("DSL accepts CRLF line endings") {
    DGA parsed = parse_model("gen x 1\r\ngen y 1\r\ngen t 1\r\nd t = x*y\r\n");
    CHECK(parsed.algebra().generator_count() == 3);
    CHECK(structurally_equal(parsed, parse_model("gen x 1\ngen y 1\ngen t 1\nd t = x*y\n"),
                             /*compare_names=*/true));
}
