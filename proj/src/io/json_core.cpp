#include "loopforge/error.hpp"
#include "loopforge/io/json_io.hpp"

namespace loopforge::io {

json parse_json(std::string_view text, const std::string& source_name) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorCode::Parse, source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                   ": JSON syntax error");
    }
}

const json& require(const json& j, const char* key) {
    if (!j.is_object()) fail(ErrorCode::Parse, std::string("expected an object containing '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorCode::Parse, std::string("missing field '") + key + "'");
    return *it;
}

json to_json(const exactq::Rational& r) { return r.str(); }

exactq::Rational rational_from_json(const json& j) {
    if (j.is_string()) return exactq::Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return exactq::Rational(j.get<std::int64_t>());
    fail(ErrorCode::Parse, "expected a rational as \"p/q\" string or integer, got " + j.dump());
}

json to_json(const exactq::RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

exactq::RationalMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) fail(ErrorCode::Parse, "matrix must be an array of rows");
    std::vector<std::vector<exactq::Rational>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) fail(ErrorCode::Parse, "matrix row must be an array");
        rows.emplace_back();
        for (const auto& x : row) rows.back().push_back(rational_from_json(x));
    }
    return exactq::RationalMatrix::from_rows(rows);
}

json to_json(const exactq::Vector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

}  // namespace loopforge::io
