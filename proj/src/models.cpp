#include "formality/models.hpp"

#include <cctype>
#include <sstream>

namespace formality {

Model mpq_model(int p, int q) {
    if (p < 1 || q < 1)
        throw Error("mpq model needs p >= 1 and q >= 1");
    std::vector<Generator> gens;
    std::vector<std::pair<std::string, std::string>> roles;
    auto add = [&](const std::string& name, const std::string& role) {
        gens.push_back({name, 1, std::nullopt});
        roles.emplace_back(role, name);
    };
    for (int i = 1; i <= p; ++i)
        add("a" + std::to_string(i), "alpha" + std::to_string(i));
    add("b", "beta");
    for (int i = 1; i <= p; ++i)
        add("c" + std::to_string(i), "gamma" + std::to_string(i));
    for (int i = 1; i <= q; ++i)
        add("at" + std::to_string(i), "alpha~" + std::to_string(i));
    add("bt", "beta~");
    for (int i = 1; i <= q; ++i)
        add("ct" + std::to_string(i), "gamma~" + std::to_string(i));

    GradedAlgebra algebra = make_algebra(gens);
    auto g = [&](const std::string& name) { return Element::generator(algebra, *algebra.index_of(name)); };

    std::map<std::string, Element> diff;
    for (int i = 1; i <= p; ++i)
        diff["c" + std::to_string(i)] = -(g("a" + std::to_string(i)) * g("b"));
    for (int i = 1; i <= q; ++i)
        diff["ct" + std::to_string(i)] = -(g("at" + std::to_string(i)) * g("bt"));

    Model model;
    model.dimension = 2 * p + 2 * q + 2;
    model.dga = DGA::make(algebra, diff, model.dimension);
    Element omega = Element::zero(algebra);
    for (int i = 1; i <= p; ++i)
        omega += g("a" + std::to_string(i)) * g("c" + std::to_string(i));
    for (int i = 1; i <= q; ++i)
        omega += g("at" + std::to_string(i)) * g("ct" + std::to_string(i));
    omega += g("b") * g("bt");
    model.symplectic_form = omega;
    model.roles = std::move(roles);
    model.description = "mpq:" + std::to_string(p) + "," + std::to_string(q);
    return model;
}

Model fgg_model(int b) {
    if (b != 2 && b != 3)
        throw Error("fgg model needs b in {2,3}");
    GradedAlgebra algebra = make_algebra({{"a", 1, std::nullopt},
                                          {"b", 1, std::nullopt},
                                          {"c", 1, std::nullopt},
                                          {"h", 1, std::nullopt}});
    auto g = [&](int i) { return Element::generator(algebra, i); };
    std::map<std::string, Element> diff;
    diff["c"] = g(0) * g(1);  // d c = a*b
    if (b == 2)
        diff["h"] = g(0) * g(2);  // d h = a*c

    Model model;
    model.dimension = 4;
    model.dga = DGA::make(algebra, diff, 4);
    model.symplectic_form = g(0) * g(3) + g(1) * g(2);
    model.roles = {{"alpha", "a"}, {"beta", "b"}, {"gamma", "c"}, {"eta", "h"}};
    model.description = "fgg:" + std::to_string(b);
    return model;
}

Model sphere2_model() {
    GradedAlgebra algebra = make_algebra({{"x", 2, 2}});
    Model model;
    model.dimension = 2;
    model.dga = DGA::make(algebra, {}, 2);
    model.symplectic_form = Element::generator(algebra, 0);
    model.roles = {{"volume", "x"}};
    model.description = "s2";
    return model;
}

Model torus_model(int k) {
    if (k < 1)
        throw Error("torus model needs k >= 1");
    std::vector<Generator> gens;
    for (int i = 1; i <= k; ++i) {
        gens.push_back({"x" + std::to_string(i), 1, std::nullopt});
        gens.push_back({"y" + std::to_string(i), 1, std::nullopt});
    }
    GradedAlgebra algebra = make_algebra(gens);
    Model model;
    model.dimension = 2 * k;
    model.dga = DGA::make(algebra, {}, 2 * k);
    Element omega = Element::zero(algebra);
    for (int i = 0; i < k; ++i)
        omega += Element::generator(algebra, 2 * i) * Element::generator(algebra, 2 * i + 1);
    model.symplectic_form = omega;
    model.description = "torus:" + std::to_string(k);
    return model;
}

// ---------------------------------------------------------------------------
// Expression and DSL parsing
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;
    int line = 1;

    int column() const { return static_cast<int>(pos) + 1; }

    void skip_space() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
    }
    bool done() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line, static_cast<int>(pos) + 1);
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    long parse_int() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            fail("expected an integer");
        return std::stol(std::string(text.substr(start, pos - start)));
    }
    std::string parse_name() {
        skip_space();
        size_t start = pos;
        if (pos < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_'))
                ++pos;
        }
        if (pos == start)
            fail("expected a name");
        return std::string(text.substr(start, pos - start));
    }
};

Rational parse_coefficient(Cursor& cur) {
    long num = cur.parse_int();
    if (cur.accept('/')) {
        long den = cur.parse_int();
        if (den == 0)
            cur.fail("zero denominator");
        return Rational(num, den);
    }
    return Rational(num);
}

Element parse_term(Cursor& cur, const GradedAlgebra& algebra) {
    Rational coeff = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        coeff = parse_coefficient(cur);
        saw_coeff = true;
        if (!cur.accept('*'))
            return Element::one(algebra) * coeff;  // bare constant
    }
    Element out = Element::one(algebra) * coeff;
    bool first = true;
    while (true) {
        if (!first && !cur.accept('*'))
            break;
        if (first && !saw_coeff && !(std::isalpha(static_cast<unsigned char>(cur.peek())) ||
                                     cur.peek() == '_'))
            cur.fail("expected a generator name or coefficient");
        size_t name_pos = cur.pos;
        std::string name = cur.parse_name();
        auto index = algebra.index_of(name);
        if (!index) {
            cur.pos = name_pos;
            cur.fail("unknown generator '" + name + "'");
        }
        int exp = 1;
        if (cur.accept('^'))
            exp = static_cast<int>(cur.parse_int());
        Element factor = Element::generator(algebra, *index);
        out = out * factor.pow(exp);
        first = false;
    }
    return out;
}

Element parse_poly(Cursor& cur, const GradedAlgebra& algebra) {
    Element out = Element::zero(algebra);
    bool negate = cur.accept('-');
    while (true) {
        Element term = parse_term(cur, algebra);
        out += negate ? -term : term;
        if (cur.accept('+'))
            negate = false;
        else if (cur.accept('-'))
            negate = true;
        else
            break;
    }
    return out;
}

}  // namespace

Element parse_element(const GradedAlgebra& algebra, std::string_view text, int line) {
    Cursor cur{text, 0, line};
    if (cur.done())
        cur.fail("empty expression");
    Element out = parse_poly(cur, algebra);
    if (!cur.done())
        cur.fail("trailing input after expression");
    return out;
}

DGA parse_model(std::string_view text) {
    struct DiffLine {
        int line;
        std::string name;
        std::string poly;
        int poly_offset;
    };
    std::vector<Generator> gens;
    std::vector<DiffLine> diffs;

    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string_view raw = text.substr(start, end == std::string_view::npos ? text.size() - start
                                                                                : end - start);
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);
        std::string_view line = raw.substr(0, raw.find('#'));
        Cursor cur{line, 0, line_no};
        if (!cur.done()) {
            std::string keyword = cur.parse_name();
            if (keyword == "gen") {
                Generator g;
                g.name = cur.parse_name();
                g.degree = static_cast<int>(cur.parse_int());
                if (!cur.done()) {
                    std::string trunc = cur.parse_name();
                    if (trunc != "trunc")
                        cur.fail("expected 'trunc'");
                    g.truncation = static_cast<int>(cur.parse_int());
                }
                if (!cur.done())
                    cur.fail("trailing input after generator");
                gens.push_back(std::move(g));
            } else if (keyword == "d") {
                DiffLine d;
                d.line = line_no;
                d.name = cur.parse_name();
                cur.expect('=');
                cur.skip_space();
                d.poly = std::string(line.substr(cur.pos));
                d.poly_offset = static_cast<int>(cur.pos);
                diffs.push_back(std::move(d));
            } else {
                cur.pos = 0;
                cur.fail("expected 'gen' or 'd'");
            }
        }
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }

    GradedAlgebra algebra = make_algebra(std::move(gens));
    std::map<std::string, Element> diff;
    for (const auto& d : diffs) {
        if (!algebra.index_of(d.name))
            throw ParseError("differential for unknown generator '" + d.name + "'", d.line, 3);
        if (diff.count(d.name))
            throw ParseError("duplicate differential for '" + d.name + "'", d.line, 3);
        diff[d.name] = parse_element(algebra, d.poly, d.line);
    }

    DGA dga = DGA::make(algebra, diff);
    ValidationReport report = dga.validate();
    if (!report.ok) {
        std::ostringstream msg;
        msg << "d^2 != 0 at generator '" << report.violations.front().generator
            << "': d^2 = " << report.violations.front().d_squared.to_string();
        throw Error(msg.str());
    }
    return dga;
}

std::string serialize_model(const DGA& dga) {
    std::ostringstream out;
    const GradedAlgebra& a = dga.algebra();
    for (int i = 0; i < a.generator_count(); ++i) {
        const Generator& g = a.generator(i);
        out << "gen " << g.name << " " << g.degree;
        if (g.truncation)
            out << " trunc " << *g.truncation;
        out << "\n";
    }
    for (int i = 0; i < a.generator_count(); ++i) {
        const Element& dg = dga.generator_differential(i);
        if (!dg.is_zero())
            out << "d " << a.generator(i).name << " = " << dg.to_string() << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Recipes
// ---------------------------------------------------------------------------

ModelRecipe ModelRecipe::mpq(int p, int q) {
    ModelRecipe r;
    r.kind = Kind::Mpq;
    r.p = p;
    r.q = q;
    return r;
}
ModelRecipe ModelRecipe::fgg(int b) {
    ModelRecipe r;
    r.kind = Kind::Fgg;
    r.p = b;
    return r;
}
ModelRecipe ModelRecipe::s2() {
    ModelRecipe r;
    r.kind = Kind::S2;
    return r;
}
ModelRecipe ModelRecipe::t2() {
    ModelRecipe r;
    r.kind = Kind::T2;
    return r;
}
ModelRecipe ModelRecipe::tensor(ModelRecipe lhs, ModelRecipe rhs) {
    ModelRecipe r;
    r.kind = Kind::Tensor;
    r.children.push_back(std::move(lhs));
    r.children.push_back(std::move(rhs));
    return r;
}
ModelRecipe ModelRecipe::s1_bundle(ModelRecipe base, std::string euler_class) {
    ModelRecipe r;
    r.kind = Kind::S1Bundle;
    r.children.push_back(std::move(base));
    r.euler_class = std::move(euler_class);
    return r;
}

bool ModelRecipe::operator==(const ModelRecipe& rhs) const {
    return kind == rhs.kind && p == rhs.p && q == rhs.q && euler_class == rhs.euler_class &&
           children == rhs.children;
}

std::string ModelRecipe::to_string() const {
    switch (kind) {
        case Kind::Mpq:
            return "MPQ(" + std::to_string(p) + "," + std::to_string(q) + ")";
        case Kind::Fgg:
            return "FGG(" + std::to_string(p) + ")";
        case Kind::S2:
            return "S2";
        case Kind::T2:
            return "T2";
        case Kind::Tensor:
            return "TENSOR(" + children[0].to_string() + "," + children[1].to_string() + ")";
        case Kind::S1Bundle:
            return "S1_BUNDLE(" + children[0].to_string() + "," + euler_class + ")";
    }
    return "";
}

namespace {

ModelRecipe parse_recipe(Cursor& cur) {
    std::string head = cur.parse_name();
    if (head == "S2")
        return ModelRecipe::s2();
    if (head == "T2")
        return ModelRecipe::t2();
    if (head == "MPQ") {
        cur.expect('(');
        int p = static_cast<int>(cur.parse_int());
        cur.expect(',');
        int q = static_cast<int>(cur.parse_int());
        cur.expect(')');
        return ModelRecipe::mpq(p, q);
    }
    if (head == "FGG") {
        cur.expect('(');
        int b = static_cast<int>(cur.parse_int());
        cur.expect(')');
        return ModelRecipe::fgg(b);
    }
    if (head == "TENSOR") {
        cur.expect('(');
        ModelRecipe lhs = parse_recipe(cur);
        cur.expect(',');
        ModelRecipe rhs = parse_recipe(cur);
        cur.expect(')');
        return ModelRecipe::tensor(std::move(lhs), std::move(rhs));
    }
    if (head == "S1_BUNDLE") {
        cur.expect('(');
        ModelRecipe base = parse_recipe(cur);
        cur.expect(',');
        cur.skip_space();
        int depth = 0;
        size_t start = cur.pos;
        while (cur.pos < cur.text.size()) {
            char c = cur.text[cur.pos];
            if (c == '(')
                ++depth;
            else if (c == ')') {
                if (depth == 0)
                    break;
                --depth;
            }
            ++cur.pos;
        }
        std::string euler(cur.text.substr(start, cur.pos - start));
        cur.expect(')');
        while (!euler.empty() && (euler.back() == ' ' || euler.back() == '\t'))
            euler.pop_back();
        if (euler.empty())
            cur.fail("empty Euler class");
        return ModelRecipe::s1_bundle(std::move(base), std::move(euler));
    }
    cur.fail("unknown recipe atom '" + head + "'");
}

}  // namespace

ModelRecipe ModelRecipe::parse(std::string_view text) {
    Cursor cur{text, 0, 1};
    ModelRecipe recipe = parse_recipe(cur);
    if (!cur.done())
        cur.fail("trailing input after recipe");
    return recipe;
}

}  // namespace formality
