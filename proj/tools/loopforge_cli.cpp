// loopforge command-line front end. Talks to the library only through loopforge.h.
//
// Output: three JSON lines (command, inputs, results), then a short human
// summary unless --json. Exit codes: 0 ok, 1 a check failed, 2 bad input.
#include "loopforge.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct InputError {
    std::string message;
};

// Carries an lf_status out of a call site.
struct ApiError {
    lf_status status;
    std::string message;
};

void check(lf_status s) {
    if (s != LF_OK) throw ApiError{s, lf_last_error()};
}

json take(char* s) {
    json j = json::parse(s);
    lf_string_free(s);
    return j;
}

std::string fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class Run {
public:
    std::vector<std::string> argv;
    std::map<std::string, std::string> digests;  // sorted for stable output
    json results = json::object();
    std::vector<std::string> summary;
    bool failed = false;

    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError{"cannot read " + path};
        std::ostringstream ss;
        ss << in.rdbuf();
        digests[path] = "fnv1a64:" + fnv1a(ss.str());
        return ss.str();
    }
};

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { if (p) Free(p); }
};
using Algebra = Handle<lf_algebra, lf_algebra_free>;
using Group = Handle<lf_group, lf_group_free>;
using Graph = Handle<lf_fatgraph, lf_fatgraph_free>;
using Cactus = Handle<lf_cactus, lf_cactus_free>;

void load_algebra(Run& run, const std::string& path, Algebra& a) {
    check(lf_algebra_from_json(run.read(path).c_str(), &a.p));
}

std::string join(const json& arr) {
    std::string s;
    for (const auto& v : arr) {
        if (!s.empty()) s += ' ';
        s += v.is_string() ? v.get<std::string>() : v.dump();
    }
    return s;
}

std::vector<std::size_t> parse_indices(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw InputError{"--chord expects comma separated non-negative integers, got '" + s + "'"};
        }
    }
    return out;
}

void clause_summary(Run& run, const json& r) {
    for (const auto& c : r["clauses"]) {
        std::string line = std::string(c["pass"].get<bool>() ? "pass " : "FAIL ") + c["name"].get<std::string>();
        if (c.contains("witness")) line += "  witness: " + join(c["witness"]);
        run.summary.push_back(line);
    }
}

void cactus_doc(const json& doc, Cactus& c) {
    check(lf_cactus_from_json(doc.dump().c_str(), &c.p));
}

json cactus_json(const lf_cactus* c) {
    char* out = nullptr;
    check(lf_cactus_to_json(c, &out));
    return take(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loopforge: fat graphs, TQFTs, Hochschild, BV and cacti checks"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --json follow the subcommand
    bool json_only = false;
    app.add_flag("--json", json_only, "JSON lines only, no summary");

    Run run;
    for (int i = 1; i < argc; ++i) run.argv.emplace_back(argv[i]);

    // fatgraph
    auto* fat = app.add_subcommand("fatgraph", "Fat graphs")->require_subcommand(1);
    auto* fat_an = fat->add_subcommand("analyze", "Boundary cycles, chi, genus");
    std::string fat_file, chord;
    bool strict = false;
    fat_an->add_option("file", fat_file, "Graph JSON")->required();
    fat_an->add_option("--chord", chord, "Incoming boundary cycles i,j,... (0-based)");
    fat_an->add_flag("--strict", strict, "Reject vertices of valence < 3");

    // tqft
    auto* tqft = app.add_subcommand("tqft", "2D TQFTs")->require_subcommand(1);
    std::string alg_file, word_file, group;
    unsigned genus = 0;
    auto* t_eval = tqft->add_subcommand("eval", "Evaluate a cobordism word");
    t_eval->add_option("--algebra", alg_file)->required();
    t_eval->add_option("--word", word_file, "Cobordism word JSON")->required();
    auto* t_dw = tqft->add_subcommand("dw", "Dijkgraaf-Witten closed surface invariant");
    t_dw->add_option("--group", group, "z<n>, s3, klein4 or a Cayley table JSON")->required();
    t_dw->add_option("--genus", genus)->required();
    auto* t_surf = tqft->add_subcommand("surface", "Closed surface invariant");
    t_surf->add_option("--algebra", alg_file)->required();
    t_surf->add_option("--genus", genus)->required();

    // hochschild
    auto* hoch = app.add_subcommand("hochschild", "Hochschild (co)homology")->require_subcommand(1);
    int lo = 0, hi = 3;
    unsigned trunc = 8;
    bool cup = false, bracket = false;
    auto* h_hom = hoch->add_subcommand("homology");
    auto* h_coh = hoch->add_subcommand("cohomology");
    for (auto* s : {h_hom, h_coh}) {
        s->add_option("--algebra", alg_file)->required();
        s->add_option("--lo", lo)->capture_default_str();
        s->add_option("--hi", hi)->capture_default_str();
        s->add_option("--truncation", trunc, "Maximal tensor length")->capture_default_str();
    }
    h_coh->add_flag("--cup", cup, "Cup product table");
    h_coh->add_flag("--bracket", bracket, "Gerstenhaber bracket table");

    // check
    auto* chk = app.add_subcommand("check", "Axiom checkers")->require_subcommand(1);
    std::string preset, dot_op, bracket_op, convention = "gbv";
    int n = 0;
    auto* c_op = chk->add_subcommand("operad", "Algebra over comm, ass, lie or poisson");
    c_op->add_option("--preset", preset)->required()->check(CLI::IsMember({"comm", "ass", "lie", "poisson"}));
    c_op->add_option("--algebra", alg_file)->required();
    c_op->add_option("--dot-op", dot_op, "Operation standing for dot");
    c_op->add_option("--bracket-op", bracket_op, "Operation standing for bracket");
    auto* c_gbv = chk->add_subcommand("gbv", "BV and BV_{n+1} axioms");
    c_gbv->add_option("--algebra", alg_file)->required();
    c_gbv->add_option("--convention", convention)->check(CLI::IsMember({"gbv", "sw"}))->capture_default_str();
    c_gbv->add_option("--n", n, "0: BV on delta, else BV_{n+1}")->capture_default_str();

    // cacti
    auto* cac = app.add_subcommand("cacti", "Cacti")->require_subcommand(1);
    std::string cac_file, outer, inner, triple;
    unsigned slot = 1;
    auto* k_trace = cac->add_subcommand("trace", "Pinching trace");
    k_trace->add_option("file", cac_file)->required();
    auto* k_comp = cac->add_subcommand("compose", "Compose outer o_i inner, or check a triple");
    auto* o_outer = k_comp->add_option("--outer", outer);
    auto* o_inner = k_comp->add_option("--inner", inner);
    k_comp->add_option("--i", slot)->capture_default_str();
    auto* o_triple = k_comp->add_option("--triple", triple, "{outer, i, middle, j, inner}: both bracketings");
    o_triple->excludes(o_outer)->excludes(o_inner);
    o_outer->needs(o_inner);
    o_inner->needs(o_outer);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        char* out = nullptr;
        if (*fat_an) {
            Graph g;
            check(lf_fatgraph_from_json(run.read(fat_file).c_str(), strict ? 1 : 0, &g.p));
            std::vector<std::size_t> inc;
            if (!chord.empty()) inc = parse_indices(chord);
            check(lf_fatgraph_analyze(g.p, chord.empty() ? nullptr : inc.data(), inc.size(), &out));
            run.results = take(out);
            const auto& r = run.results;
            run.summary.push_back("genus " + r["genus"].dump() + ", boundary components " +
                                  r["boundary_components"].dump() + ", chi " + r["euler_characteristic"].dump());
            for (const auto& c : r["boundary_cycles"]) run.summary.push_back("cycle (" + join(c) + ")");
            if (r.contains("chord"))
                run.summary.push_back("chord diagram: genus " + r["chord"]["genus"].dump() + ", p " +
                                      r["chord"]["p"].dump() + ", q " + r["chord"]["q"].dump());
        } else if (*t_eval) {
            Algebra a;
            load_algebra(run, alg_file, a);
            check(lf_tqft_eval(a.p, run.read(word_file).c_str(), &out));
            run.results = take(out);
            run.summary.push_back(run.results["rows"].dump() + "x" + run.results["cols"].dump() + " matrix");
            for (const auto& row : run.results["matrix"]) run.summary.push_back("  " + join(row));
        } else if (*t_dw) {
            Group g;
            if (std::filesystem::is_regular_file(group))
                check(lf_group_from_json(run.read(group).c_str(), &g.p));
            else
                check(lf_group_builtin(group.c_str(), &g.p));
            check(lf_tqft_dw(g.p, genus, &out));
            run.results = take(out);
            const auto& r = run.results;
            run.failed = !r["agree"].get<bool>();
            run.summary.push_back(r["invariant"].get<std::string>());
            run.summary.push_back(std::string("bundle count ") + r["brute_force"].get<std::string>() +
                                  (run.failed ? " DISAGREES" : " agrees"));
        } else if (*t_surf) {
            Algebra a;
            load_algebra(run, alg_file, a);
            check(lf_tqft_surface(a.p, genus, &out));
            run.results = take(out);
            run.failed = !run.results["agree"].get<bool>();
            run.summary.push_back(run.results["invariant"].get<std::string>());
            run.summary.push_back(std::string("cobordism word ") + (run.failed ? "DISAGREES" : "agrees"));
        } else if (*h_hom || *h_coh) {
            Algebra a;
            load_algebra(run, alg_file, a);
            const lf_hochschild_options opt{*h_coh ? 1 : 0, lo, hi, trunc, cup ? 1 : 0, bracket ? 1 : 0};
            check(lf_hochschild(a.p, &opt, &out));
            run.results = take(out);
            run.summary.push_back(join(run.results["dims"]));
            run.summary.push_back(run.results["stable"].get<bool>() ? "stable" : "not stable at this truncation");
        } else if (*c_op) {
            Algebra a;
            load_algebra(run, alg_file, a);
            int passed = 0;
            check(lf_check_operad(preset.c_str(), a.p, dot_op.empty() ? nullptr : dot_op.c_str(),
                                  bracket_op.empty() ? nullptr : bracket_op.c_str(), &passed, &out));
            run.results = take(out);
            run.failed = passed == 0;
            clause_summary(run, run.results);
        } else if (*c_gbv) {
            Algebra a;
            load_algebra(run, alg_file, a);
            int passed = 0;
            check(lf_check_gbv(a.p, convention.c_str(), n, &passed, &out));
            run.results = take(out);
            run.failed = passed == 0;
            clause_summary(run, run.results);
        } else if (*k_trace) {
            Cactus c;
            check(lf_cactus_from_json(run.read(cac_file).c_str(), &c.p));
            check(lf_cactus_trace(c.p, &out));
            run.results = take(out);
            for (const auto& arc : run.results["arcs"]) run.summary.push_back("arc " + arc.dump());
        } else if (*k_comp && !triple.empty()) {
            json doc;
            try {
                doc = json::parse(run.read(triple));
            } catch (const json::parse_error& e) {
                throw ApiError{LF_E_PARSE, triple + ": " + e.what()};
            }
            for (const char* key : {"outer", "i", "middle", "j", "inner"})
                if (!doc.contains(key)) throw ApiError{LF_E_INVALID_INPUT, std::string("triple lacks \"") + key + "\""};
            const unsigned i = doc["i"].get<unsigned>(), j = doc["j"].get<unsigned>();
            Cactus a, b, c, ab, left, bc, right;
            cactus_doc(doc["outer"], a);
            cactus_doc(doc["middle"], b);
            cactus_doc(doc["inner"], c);
            check(lf_cactus_compose(a.p, i, b.p, &ab.p));
            check(lf_cactus_compose(ab.p, i + j - 1, c.p, &left.p));
            check(lf_cactus_compose(b.p, j, c.p, &bc.p));
            check(lf_cactus_compose(a.p, i, bc.p, &right.p));
            int eq = 0;
            check(lf_cactus_equal(left.p, right.p, &eq));
            run.failed = eq == 0;
            run.results = {{"i", i}, {"j", j}, {"left", cactus_json(left.p)}, {"right", cactus_json(right.p)},
                           {"equal", eq != 0}};
            run.summary.push_back(eq ? "equal" : "NOT equal");
        } else if (*k_comp) {
            if (outer.empty()) throw InputError{"compose needs --outer/--inner or --triple"};
            Cactus a, b, r;
            check(lf_cactus_from_json(run.read(outer).c_str(), &a.p));
            check(lf_cactus_from_json(run.read(inner).c_str(), &b.p));
            check(lf_cactus_compose(a.p, slot, b.p, &r.p));
            size_t k = 0;
            check(lf_cactus_lobes(r.p, &k));
            run.results = {{"i", slot}, {"lobes", k}, {"composed", cactus_json(r.p)}};
            size_t kb = 0;
            check(lf_cactus_lobes(b.p, &kb));
            if (kb == 1) {
                // one-lobe inner: the result should be the outer cactus itself
                int eq = 0;
                check(lf_cactus_equal(a.p, r.p, &eq));
                run.results["equal_to_outer"] = eq != 0;
                run.failed = eq == 0;
                run.summary.push_back(eq ? "equal" : "NOT equal");
            }
            run.summary.push_back(std::to_string(k) + " lobes");
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 2;
    } catch (const ApiError& e) {
        std::cerr << "error [" << lf_status_name(e.status) << "]: " << e.message << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cout << json{{"command", run.argv}}.dump() << "\n";
    std::cout << json{{"inputs", run.digests}}.dump() << "\n";
    std::cout << json{{"results", run.results}}.dump() << "\n";
    if (!json_only) {
        for (const auto& line : run.summary) std::cout << line << "\n";
        std::cout << (run.failed ? "FAIL" : "OK") << "\n";
    }
    return run.failed ? 1 : 0;
}
