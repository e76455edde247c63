#include "formality/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace formality {

std::string to_string(const Rational& r) {
    return r.get_str();
}

Rational rational_from_string(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    // mpq_class(string) accepts "p/q" but tolerates some forms we reject
    // (whitespace, hex). Validate: [+-]?digits(/digits)?
    size_t i = 0;
    if (text[0] == '+' || text[0] == '-')
        i = 1;
    bool saw_digit = false, saw_slash = false;
    for (size_t j = i; j < text.size(); ++j) {
        char c = text[j];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            saw_digit = true;
        } else if (c == '/' && saw_digit && !saw_slash) {
            saw_slash = true;
            saw_digit = false;
        } else {
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        }
    }
    if (!saw_digit)
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    Rational r{std::string(text)};
    if (saw_slash && r.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + std::string(text));
    r.canonicalize();
    return r;
}

}  // namespace formality
