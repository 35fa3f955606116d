#include "loopforge/error.hpp"
#include "loopforge/io/json_io.hpp"

#include <set>

namespace loopforge::io {

using exactq::GradedVectorSpace;
using exactq::MultilinearMap;

GradedVectorSpace space_from_json(const json& j) {
    if (j.contains("basis")) {
        std::vector<exactq::BasisElement> basis;
        std::set<std::string> names;
        for (const auto& b : j.at("basis")) {
            exactq::BasisElement e;
            if (b.is_string()) {
                e.name = b.get<std::string>();
            } else {
                e.name = require(b, "name").get<std::string>();
                if (b.contains("degree")) e.degree = b.at("degree").get<int>();
            }
            if (!names.insert(e.name).second) fail(ErrorCode::Parse, "duplicate basis name '" + e.name + "'");
            basis.push_back(std::move(e));
        }
        if (basis.empty()) fail(ErrorCode::Parse, "empty basis");
        return GradedVectorSpace(std::move(basis));
    }
    const auto n = require(j, "dim").get<long long>();
    if (n < 1) fail(ErrorCode::Parse, "dim must be positive");
    return GradedVectorSpace::ungraded(static_cast<std::size_t>(n));
}

json to_json(const GradedVectorSpace& v) {
    json out = json::array();
    for (const auto& b : v.basis()) out.push_back({{"name", b.name}, {"degree", b.degree}});
    return out;
}

std::size_t basis_index(const GradedVectorSpace& v, const std::string& name) {
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (v.name(i) == name) return i;
    fail(ErrorCode::Parse, "unknown basis element '" + name + "'");
}

namespace {

std::size_t index_from_json(const json& x, const GradedVectorSpace& v) {
    if (x.is_string()) return basis_index(v, x.get<std::string>());
    if (x.is_number_unsigned() && x.get<std::size_t>() < v.dim()) return x.get<std::size_t>();
    fail(ErrorCode::Parse, "bad basis reference " + x.dump());
}

}  // namespace

MultilinearMap multilinear_from_json(const json& j, const exactq::SpacePtr& v) {
    const auto arity = require(j, "arity").get<std::size_t>();
    const int degree = j.value("degree", 0);
    MultilinearMap m(std::vector<exactq::SpacePtr>(arity, v), v, degree);
    for (const auto& row : require(j, "entries")) {
        if (!row.is_array() || row.size() != arity + 2)
            fail(ErrorCode::Parse, "entry " + row.dump() + " should list " + std::to_string(arity) +
                                       " inputs, an output and a coefficient");
        exactq::MultiIndex key(arity + 1);
        for (std::size_t k = 0; k < arity; ++k) key[k + 1] = index_from_json(row[k], *v);
        key[0] = index_from_json(row[arity], *v);
        try {
            m.add(key, rational_from_json(row[arity + 1]));
        } catch (const Error& e) {
            fail(e.code(), std::string(e.what()) + " in entry " + row.dump());
        }
    }
    return m;
}

json to_json(const MultilinearMap& m) {
    json entries = json::array();
    const auto& v = *m.target();
    for (const auto& [key, c] : m.coefficients()) {
        json row = json::array();
        for (std::size_t k = 1; k < key.size(); ++k) row.push_back(m.sources()[k - 1]->name(key[k]));
        row.push_back(v.name(key[0]));
        row.push_back(c.str());
        entries.push_back(std::move(row));
    }
    return {{"arity", m.arity()}, {"degree", m.shift()}, {"entries", entries}};
}

exactq::Vector vector_from_json(const json& j, const GradedVectorSpace& v) {
    exactq::Vector out(v.dim());
    if (j.is_array()) {
        if (j.size() != v.dim()) fail(ErrorCode::Parse, "vector has length " + std::to_string(j.size()));
        for (std::size_t i = 0; i < v.dim(); ++i) out[i] = rational_from_json(j[i]);
        return out;
    }
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) out[basis_index(v, it.key())] = rational_from_json(it.value());
        return out;
    }
    if (j.is_string()) {
        out[basis_index(v, j.get<std::string>())] = exactq::Rational(1);
        return out;
    }
    fail(ErrorCode::Parse, "vector must be an array, an object or a basis name");
}

AlgebraData algebra_from_json(const json& j) {
    AlgebraData a;
    a.space = exactq::make_space(space_from_json(j));
    if (j.contains("operations"))
        for (auto it = j.at("operations").begin(); it != j.at("operations").end(); ++it) {
            try {
                a.ops.emplace(it.key(), multilinear_from_json(it.value(), a.space));
            } catch (const Error& e) {
                fail(e.code(), "operation '" + it.key() + "': " + e.what());
            }
        }
    for (const char* key : {"unit", "trace"})
        if (j.contains(key)) a.vectors.emplace(key, vector_from_json(j.at(key), *a.space));
    a.extra = j;
    return a;
}

hochschild::DGAlgebra dg_algebra_from_json(const json& j) {
    AlgebraData d = algebra_from_json(j);
    if (!d.ops.count("dot")) fail(ErrorCode::MissingOperator, "algebra needs a \"dot\" operation");
    if (!d.vectors.count("unit")) fail(ErrorCode::MissingOperator, "algebra needs a \"unit\"");
    std::optional<exactq::MultilinearMap> dif;
    if (auto it = d.ops.find("differential"); it != d.ops.end()) dif = it->second;
    return hochschild::make_dg_algebra(d.space, d.ops.at("dot"), d.vectors.at("unit"), std::move(dif));
}

gbv::GradedOperatorAlgebra operator_algebra_from_json(const json& j) {
    AlgebraData d = algebra_from_json(j);
    if (!d.ops.count("dot")) fail(ErrorCode::MissingOperator, "algebra needs a \"dot\" operation");
    if (!d.vectors.count("unit")) fail(ErrorCode::MissingOperator, "algebra needs a \"unit\"");
    std::map<std::string, MultilinearMap> ops;
    if (j.contains("operators")) {
        if (!j.at("operators").is_object()) fail(ErrorCode::Parse, "\"operators\" must be an object");
        for (auto it = j.at("operators").begin(); it != j.at("operators").end(); ++it) {
            json spec = it.value();
            if (spec.is_object() && !spec.contains("arity")) spec["arity"] = it.key() == "bracket" ? 2 : 1;
            try {
                ops.emplace(it.key(), multilinear_from_json(spec, d.space));
            } catch (const Error& e) {
                fail(e.code(), "operator '" + it.key() + "': " + e.what());
            }
        }
    }
    return gbv::make_operator_algebra(d.space, d.ops.at("dot"), d.vectors.at("unit"), std::move(ops));
}

}  // namespace loopforge::io
