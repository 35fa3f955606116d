#include "loopforge/error.hpp"
#include "loopforge/io/json_io.hpp"

#include <algorithm>

namespace loopforge::io {

frob2tqft::FrobeniusAlgebra frobenius_from_json(const json& j) {
    AlgebraData a = algebra_from_json(j);
    if (!a.ops.count("dot")) fail(ErrorCode::MissingOperator, "Frobenius algebra needs operation 'dot'");
    for (const char* v : {"unit", "trace"})
        if (!a.vectors.count(v)) fail(ErrorCode::MissingOperator, std::string("Frobenius algebra needs '") + v + "'");
    return frob2tqft::validate_frobenius(a.space, a.ops.at("dot"), a.vectors.at("unit"), a.vectors.at("trace"));
}

frob2tqft::FiniteGroup group_from_json(const json& j) {
    std::vector<std::string> names;
    if (j.contains("elements"))
        for (const auto& e : j.at("elements")) names.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    const json& rows = require(j, "cayley");
    if (!rows.is_array()) fail(ErrorCode::Parse, "cayley must be an array of rows");
    if (names.empty())
        for (std::size_t i = 0; i < rows.size(); ++i) names.push_back(std::to_string(i));
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : rows) {
        if (!row.is_array()) fail(ErrorCode::Parse, "cayley row must be an array");
        table.emplace_back();
        for (const auto& x : row) {
            if (x.is_number_unsigned()) {
                table.back().push_back(x.get<std::size_t>());
            } else if (x.is_string()) {
                const auto it = std::find(names.begin(), names.end(), x.get<std::string>());
                if (it == names.end()) fail(ErrorCode::InvalidGroup, "unknown element " + x.dump());
                table.back().push_back(static_cast<std::size_t>(it - names.begin()));
            } else {
                fail(ErrorCode::Parse, "bad Cayley entry " + x.dump());
            }
        }
    }
    return frob2tqft::FiniteGroup(std::move(table), std::move(names));
}

frob2tqft::CobordismWord cobordism_from_json(const json& j) {
    if (j.contains("word")) return frob2tqft::CobordismWord::parse(j.at("word").get<std::string>());
    frob2tqft::CobordismWord w;
    for (const auto& layer : require(j, "layers")) {
        if (!layer.is_array() || layer.empty()) fail(ErrorCode::Parse, "each layer is a nonempty array of tokens");
        w.layers.emplace_back();
        for (const auto& t : layer) w.layers.back().push_back(frob2tqft::token_from_string(t.get<std::string>()));
    }
    w.inputs();  // wiring check
    return w;
}

}  // namespace loopforge::io
