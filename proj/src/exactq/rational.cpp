#include "loopforge/exactq/rational.hpp"

#include "loopforge/error.hpp"

#include <cctype>

namespace loopforge::exactq {

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) fail(ErrorCode::Parse, "malformed rational: '" + std::string(whole) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            fail(ErrorCode::Parse, "malformed rational: '" + std::string(whole) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) fail(ErrorCode::InvalidInput, "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    const mpz_class num = parse_integer(text.substr(0, slash), text);
    const mpz_class den = parse_integer(text.substr(slash + 1), text);
    return Rational(num, den);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorCode::InvalidInput, "division by zero");
    v_ /= o.v_;
    return *this;
}

}  // namespace loopforge::exactq
