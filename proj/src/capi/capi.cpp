#include "loopforge.h"

#include "loopforge/cacti/cacti.hpp"
#include "loopforge/error.hpp"
#include "loopforge/fatgraph/fatgraph.hpp"
#include "loopforge/frob2tqft/frobenius.hpp"
#include "loopforge/gbv/gbv.hpp"
#include "loopforge/hochschild/hochschild.hpp"
#include "loopforge/io/json_io.hpp"
#include "loopforge/operad/operad.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using loopforge::Error;
using loopforge::ErrorCode;
using nlohmann::json;
namespace io = loopforge::io;

struct lf_fatgraph {
    loopforge::fatgraph::FatGraph graph;
};
struct lf_algebra {
    json doc;
};
struct lf_group {
    loopforge::frob2tqft::FiniteGroup group;
};
struct lf_cactus {
    loopforge::cacti::Cactus cactus;
};

namespace {

thread_local std::string last_error;

template <class F>
lf_status guarded(F&& f) {
    try {
        last_error.clear();
        f();
        return LF_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<lf_status>(static_cast<int>(e.code()));
    } catch (const json::exception& e) {
        last_error = e.what();
        return LF_E_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return LF_E_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LF_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) loopforge::fail(ErrorCode::InvalidInput, std::string("null argument: ") + what);
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void emit(const json& j, char** out) { *out = dup(j.dump()); }

json parse(const char* text) {
    need(text, "json");
    return io::parse_json(text);
}

json witness_names(const loopforge::exactq::GradedVectorSpace& v, const std::vector<std::size_t>& w) {
    json out = json::array();
    for (auto i : w) out.push_back(v.name(i));
    return out;
}

json named_vector(const loopforge::exactq::GradedVectorSpace& v, const loopforge::exactq::Vector& x) {
    json out = json::object();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) out[v.name(i)] = x[i].str();
    return out;
}

}  // namespace

#define LF_NEED(p)                                        \
    do {                                                  \
        if (!(p)) {                                       \
            last_error = "null argument: " #p;            \
            return LF_E_NULL_ARGUMENT;                    \
        }                                                 \
    } while (0)

extern "C" {

const char* lf_version(void) { return "1.0.0"; }

const char* lf_status_name(lf_status s) {
    switch (s) {
        case LF_OK: return "ok";
        case LF_E_NULL_ARGUMENT: return "null_argument";
        case LF_E_INTERNAL: return "internal";
        default: break;
    }
    const int c = static_cast<int>(s);
    if (c >= static_cast<int>(ErrorCode::InvalidInput) && c <= static_cast<int>(ErrorCode::Parse))
        return loopforge::error_code_name(static_cast<ErrorCode>(c));
    return "Unknown";
}

const char* lf_last_error(void) { return last_error.c_str(); }

void lf_string_free(char* s) { std::free(s); }

// ---- fat graphs

lf_status lf_fatgraph_from_json(const char* text, int strict_valence, lf_fatgraph** out) {
    LF_NEED(text);
    LF_NEED(out);
    return guarded([&] {
        using loopforge::fatgraph::Valence;
        auto g = io::fatgraph_from_json(parse(text), strict_valence ? Valence::Strict : Valence::Relaxed);
        *out = new lf_fatgraph{std::move(g)};
    });
}

void lf_fatgraph_free(lf_fatgraph* g) { delete g; }

lf_status lf_fatgraph_analyze(const lf_fatgraph* g, const size_t* incoming, size_t n_incoming, char** out_json) {
    LF_NEED(g);
    LF_NEED(out_json);
    return guarded([&] {
        namespace fg = loopforge::fatgraph;
        const auto& graph = g->graph;
        const auto cycles = fg::boundary_cycles(graph);
        json r{{"half_edges", graph.half_edge_count()},
               {"edges", graph.edge_count()},
               {"vertices", graph.vertex_count()},
               {"euler_characteristic", fg::euler_characteristic(graph)},
               {"boundary_cycles", io::cycles_to_json(graph, cycles)}};
        const auto s = fg::genus(graph);
        r["genus"] = s.genus;
        r["boundary_components"] = s.boundary_components;
        if (incoming) {
            const auto cd = fg::validate_chord_diagram(graph, std::vector<std::size_t>(incoming, incoming + n_incoming));
            const auto red = fg::reduce_chord_diagram(cd);
            json circ = json::array();
            for (std::size_t e = 0; e < cd.circular.size(); ++e)
                if (cd.circular[e]) circ.push_back(e);
            r["chord"] = {{"genus", cd.type.genus},
                          {"p", cd.type.p},
                          {"q", cd.type.q},
                          {"circular_edges", circ},
                          {"reduced",
                           {{"vertices", red.graph.vertex_count()},
                            {"edges", red.graph.edge_count()},
                            {"boundary_cycles", io::cycles_to_json(red.graph, red.cycles)},
                            {"incoming", red.incoming},
                            {"outgoing", red.outgoing}}}};
        }
        emit(r, out_json);
    });
}

// ---- algebras and groups

lf_status lf_algebra_from_json(const char* text, lf_algebra** out) {
    LF_NEED(text);
    LF_NEED(out);
    return guarded([&] {
        json doc = parse(text);
        io::algebra_from_json(doc);  // shape check only
        *out = new lf_algebra{std::move(doc)};
    });
}

void lf_algebra_free(lf_algebra* a) { delete a; }

lf_status lf_group_builtin(const char* name, lf_group** out) {
    LF_NEED(name);
    LF_NEED(out);
    return guarded([&] { *out = new lf_group{loopforge::frob2tqft::FiniteGroup::builtin(name)}; });
}

lf_status lf_group_from_json(const char* text, lf_group** out) {
    LF_NEED(text);
    LF_NEED(out);
    return guarded([&] { *out = new lf_group{io::group_from_json(parse(text))}; });
}

void lf_group_free(lf_group* g) { delete g; }

// ---- TQFT

lf_status lf_tqft_eval(const lf_algebra* a, const char* word_json, char** out_json) {
    LF_NEED(a);
    LF_NEED(word_json);
    LF_NEED(out_json);
    return guarded([&] {
        namespace ft = loopforge::frob2tqft;
        const auto f = io::frobenius_from_json(a->doc);
        const auto w = io::cobordism_from_json(parse(word_json));
        const auto m = ft::eval_cobordism(f, w);
        emit({{"rows", m.rows()}, {"cols", m.cols()}, {"matrix", io::to_json(m)}}, out_json);
    });
}

lf_status lf_tqft_surface(const lf_algebra* a, unsigned genus, char** out_json) {
    LF_NEED(a);
    LF_NEED(out_json);
    return guarded([&] {
        namespace ft = loopforge::frob2tqft;
        const auto f = io::frobenius_from_json(a->doc);
        const auto z = ft::closed_surface_invariant(f, genus);
        const auto w = ft::eval_cobordism(f, ft::closed_surface_word(genus));
        emit({{"genus", genus}, {"invariant", z.str()}, {"word_value", w(0, 0).str()}, {"agree", w(0, 0) == z}},
             out_json);
    });
}

lf_status lf_tqft_dw(const lf_group* g, unsigned genus, char** out_json) {
    LF_NEED(g);
    LF_NEED(out_json);
    return guarded([&] {
        namespace ft = loopforge::frob2tqft;
        const auto z = ft::closed_surface_invariant(ft::dw_center_algebra(g->group), genus);
        const auto brute = ft::dw_partition_brute(g->group, genus);
        emit({{"group_order", g->group.order()},
              {"genus", genus},
              {"invariant", z.str()},
              {"brute_force", brute.str()},
              {"agree", z == brute}},
             out_json);
    });
}

// ---- Hochschild

lf_status lf_hochschild(const lf_algebra* a, const lf_hochschild_options* opt, char** out_json) {
    LF_NEED(a);
    LF_NEED(opt);
    LF_NEED(out_json);
    return guarded([&] {
        namespace hh = loopforge::hochschild;
        const auto alg = io::dg_algebra_from_json(a->doc);
        const auto m = hh::self_bimodule(alg);
        if ((opt->cup || opt->bracket) && !opt->cohomology)
            loopforge::fail(ErrorCode::InvalidInput, "cup and bracket tables need cohomology");
        const auto res = opt->cohomology ? hh::hochschild_cohomology(alg, m, opt->truncation, opt->lo, opt->hi)
                                         : hh::hochschild_homology(alg, m, opt->truncation, opt->lo, opt->hi);
        json dims = json::array();
        for (const auto& [deg, d] : res.dims) dims.push_back(d);
        json r{{"kind", opt->cohomology ? "cohomology" : "homology"},
               {"window", {opt->lo, opt->hi}},
               {"truncation", res.truncation},
               {"dims", dims},
               {"stable", res.stable}};
        if (opt->cup || opt->bracket) {
            const int top = std::max(opt->hi, 0);
            std::vector<std::vector<hh::Cochain>> basis(static_cast<std::size_t>(top) + 1);
            json sizes = json::array();
            for (int n = 0; n <= top; ++n) {
                basis[static_cast<std::size_t>(n)] = hh::cohomology_basis(alg, static_cast<std::size_t>(n));
                sizes.push_back(basis[static_cast<std::size_t>(n)].size());
            }
            r["basis_sizes_by_arity"] = sizes;
            auto label = [](int n, std::size_t k) { return "h" + std::to_string(n) + "_" + std::to_string(k); };
            auto table = [&](auto&& op, int shift) {
                json t = json::array();
                for (int p = 0; p <= top; ++p)
                    for (int q = 0; q <= top; ++q) {
                        const int s = p + q + shift;
                        if (s < 0 || s > top) continue;
                        for (std::size_t i = 0; i < basis[static_cast<std::size_t>(p)].size(); ++i)
                            for (std::size_t j = 0; j < basis[static_cast<std::size_t>(q)].size(); ++j) {
                                const auto z = op(basis[static_cast<std::size_t>(p)][i], basis[static_cast<std::size_t>(q)][j]);
                                const auto c = hh::cohomology_coordinates(alg, basis[static_cast<std::size_t>(s)], z);
                                if (!c) loopforge::fail(ErrorCode::InvalidInput, "product of cocycles is not a cocycle");
                                json prod = json::object();
                                for (std::size_t k = 0; k < c->size(); ++k)
                                    if (!(*c)[k].is_zero()) prod[label(s, k)] = (*c)[k].str();
                                t.push_back({{"left", label(p, i)}, {"right", label(q, j)}, {"result", prod}});
                            }
                    }
                return t;
            };
            if (opt->cup)
                r["cup"] = table([&](const hh::Cochain& f, const hh::Cochain& g) { return hh::cup(alg, f, g); }, 0);
            if (opt->bracket)
                r["bracket"] = table(
                    [&](const hh::Cochain& f, const hh::Cochain& g) { return hh::gerstenhaber_bracket(alg, f, g); }, -1);
        }
        emit(r, out_json);
    });
}

// ---- checkers

lf_status lf_check_operad(const char* preset, const lf_algebra* a, const char* dot_op, const char* bracket_op,
                          int* passed, char** out_json) {
    LF_NEED(preset);
    LF_NEED(a);
    LF_NEED(passed);
    LF_NEED(out_json);
    return guarded([&] {
        namespace op = loopforge::operad;
        const auto p = op::preset_from_string(preset);
        const auto d = io::algebra_from_json(a->doc);
        op::EndomorphismAssignment e{d.space, {}, {}};
        for (const auto& [gen, src] : {std::pair<std::string, const char*>{"dot", dot_op}, {"bracket", bracket_op}}) {
            const std::string name = src ? src : gen;
            if (auto it = d.ops.find(name); it != d.ops.end()) e.ops.emplace(gen, it->second);
        }
        if (d.vectors.count("unit")) e.unit = d.vectors.at("unit");
        const auto rep = op::check_algebra(p, e);
        json clauses = json::array();
        for (const auto& c : rep.clauses) {
            json j{{"name", c.name}, {"pass", c.pass}};
            if (!c.pass) {
                j["witness"] = witness_names(*d.space, c.witness);
                j["value"] = named_vector(*d.space, c.witness_value);
            }
            clauses.push_back(j);
        }
        *passed = rep.pass() ? 1 : 0;
        emit({{"preset", op::preset_name(p)}, {"pass", rep.pass()}, {"clauses", clauses}}, out_json);
    });
}

lf_status lf_check_gbv(const lf_algebra* a, const char* convention, int n, int* passed, char** out_json) {
    LF_NEED(a);
    LF_NEED(passed);
    LF_NEED(out_json);
    return guarded([&] {
        namespace gb = loopforge::gbv;
        const auto alg = io::operator_algebra_from_json(a->doc);
        const auto conv = gb::convention_from_string(convention ? convention : "gbv");
        json clauses = json::array();
        bool ok = true;
        auto add = [&](const gb::Report& rep, const std::string& prefix) {
            for (const auto& c : rep.clauses) {
                json j{{"name", prefix + c.name}, {"pass", c.pass}};
                if (!c.pass) {
                    j["witness"] = witness_names(*alg.space, c.witness);
                    j["detail"] = c.detail;
                }
                clauses.push_back(j);
                ok = ok && c.pass;
            }
        };
        if (n < 0) loopforge::fail(ErrorCode::InvalidInput, "n must be >= 0");
        if (n == 0) {
            add(gb::check_bv(alg, "delta", conv), "");
            const auto b = gb::derive_bracket(alg, "delta");
            add(gb::check_gerstenhaber(alg, b, b.shift()), "bracket.");
        } else {
            add(gb::check_bv_nplus1(alg, n, conv), "");
        }
        *passed = ok ? 1 : 0;
        emit({{"mode", n == 0 ? "bv" : "bv_n+1"}, {"n", n}, {"convention", gb::convention_name(conv)}, {"pass", ok},
              {"clauses", clauses}},
             out_json);
    });
}

// ---- cacti

lf_status lf_cactus_from_json(const char* text, lf_cactus** out) {
    LF_NEED(text);
    LF_NEED(out);
    return guarded([&] { *out = new lf_cactus{io::cactus_from_json(parse(text))}; });
}

void lf_cactus_free(lf_cactus* c) { delete c; }

lf_status lf_cactus_lobes(const lf_cactus* c, size_t* out) {
    LF_NEED(c);
    LF_NEED(out);
    *out = c->cactus.lobes();
    return LF_OK;
}

lf_status lf_cactus_to_json(const lf_cactus* c, char** out_json) {
    LF_NEED(c);
    LF_NEED(out_json);
    return guarded([&] { emit(io::to_json(loopforge::cacti::canonical_form(c->cactus)), out_json); });
}

lf_status lf_cactus_trace(const lf_cactus* c, char** out_json) {
    LF_NEED(c);
    LF_NEED(out_json);
    return guarded([&] { emit(io::to_json(loopforge::cacti::pinching_trace(c->cactus)), out_json); });
}

lf_status lf_cactus_compose(const lf_cactus* c1, unsigned i, const lf_cactus* c2, lf_cactus** out) {
    LF_NEED(c1);
    LF_NEED(c2);
    LF_NEED(out);
    return guarded([&] { *out = new lf_cactus{loopforge::cacti::compose(c1->cactus, static_cast<int>(i), c2->cactus)}; });
}

lf_status lf_cactus_equal(const lf_cactus* a, const lf_cactus* b, int* equal) {
    LF_NEED(a);
    LF_NEED(b);
    LF_NEED(equal);
    return guarded([&] {
        *equal = loopforge::cacti::canonical_form(a->cactus) == loopforge::cacti::canonical_form(b->cactus) ? 1 : 0;
    });
}

}  // extern "C"
