#pragma once

#include "loopforge/exactq/graded.hpp"
#include "loopforge/exactq/matrix.hpp"
#include "loopforge/fatgraph/fatgraph.hpp"
#include "loopforge/frob2tqft/frobenius.hpp"
#include "loopforge/hochschild/hochschild.hpp"
#include "loopforge/gbv/gbv.hpp"
#include "loopforge/cacti/cacti.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <string_view>

namespace loopforge::io {

using nlohmann::json;

/// Parses JSON text; syntax errors become ErrorCode::Parse with line/column.
json parse_json(std::string_view text, const std::string& source_name = "input");

json to_json(const exactq::Rational& r);
exactq::Rational rational_from_json(const json& j);

json to_json(const exactq::RationalMatrix& m);
exactq::RationalMatrix matrix_from_json(const json& j);

json to_json(const exactq::Vector& v);

fatgraph::FatGraph fatgraph_from_json(const json& j, fatgraph::Valence mode = fatgraph::Valence::Relaxed);
json to_json(const fatgraph::FatGraph& g);
json cycles_to_json(const fatgraph::FatGraph& g, const fatgraph::BoundaryPartition& p);

/// Algebra fixtures: {"basis": [{"name","degree"}...] | "dim": n,
/// "operations": {name: {"arity", "degree", "entries": [[in.., out, coeff]..]}},
/// plus optional named vectors such as "unit" and "trace" written either as
/// a dense array or as {basis name: coeff}. Basis names must be unique.
exactq::GradedVectorSpace space_from_json(const json& j);
json to_json(const exactq::GradedVectorSpace& v);
std::size_t basis_index(const exactq::GradedVectorSpace& v, const std::string& name);
exactq::MultilinearMap multilinear_from_json(const json& j, const exactq::SpacePtr& v);
json to_json(const exactq::MultilinearMap& m);
exactq::Vector vector_from_json(const json& j, const exactq::GradedVectorSpace& v);

struct AlgebraData {
    exactq::SpacePtr space;
    std::map<std::string, exactq::MultilinearMap> ops;
    std::map<std::string, exactq::Vector> vectors;
    json extra;  ///< the whole document, for module-specific fields
};
AlgebraData algebra_from_json(const json& j);

/// Frobenius algebra from an algebra fixture: operation "dot", vectors "unit" and "trace".
frob2tqft::FrobeniusAlgebra frobenius_from_json(const json& j);
/// {"elements": [names], "cayley": [[name or index..]..]}
frob2tqft::FiniteGroup group_from_json(const json& j);
/// {"layers": [["cap_unit", "cylinder"], ["pants"]]} or {"word": "cap_unit cylinder | pants"}
frob2tqft::CobordismWord cobordism_from_json(const json& j);

/// Operation "dot", vector "unit", optional operation "differential" (arity 1, degree 1).
hochschild::DGAlgebra dg_algebra_from_json(const json& j);

/// Field access with ErrorCode::Parse on missing keys.
const json& require(const json& j, const char* key);

/// Operation "dot", vector "unit", and an "operators" block of named maps in
/// the operation format; "arity" defaults to 2 for "bracket" and 1 otherwise.
gbv::GradedOperatorAlgebra operator_algebra_from_json(const json& j);

/// {"lobes": [{"label", "circumference"}], "nodes": [{"incidences": [{"lobe", "param"}],
/// "cyclic_order": [lobe..]}], "marked": {"lobe", "param"}}. Without "cyclic_order"
/// the incidences are taken in the listed order.
cacti::Cactus cactus_from_json(const json& j);
json to_json(const cacti::Cactus& c);
json to_json(const cacti::PinchingTrace& t);

}  // namespace loopforge::io
