#include "loopforge/cacti/cacti.hpp"

#include "loopforge/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace loopforge::cacti {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::MalformedCactus, what); }

Rational floor_div(const Rational& x, const Rational& c) {
    const mpq_class q = x.raw() / c.raw();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

Rational reduce(const Rational& x, const Rational& c) { return x - floor_div(x, c) * c; }

bool incidence_less(const Incidence& a, const Incidence& b) {
    return a.lobe != b.lobe ? a.lobe < b.lobe : a.param < b.param;
}

struct Stop {
    Rational param;
    std::size_t node, pos;
};

// Node points on each lobe, sorted by parameter.
std::vector<std::vector<Stop>> stops_by_lobe(const Cactus& c) {
    std::vector<std::vector<Stop>> s(c.lobes());
    for (std::size_t n = 0; n < c.nodes.size(); ++n)
        for (std::size_t p = 0; p < c.nodes[n].incidences.size(); ++p) {
            const auto& inc = c.nodes[n].incidences[p];
            s[static_cast<std::size_t>(inc.lobe - 1)].push_back({inc.param, n, p});
        }
    for (auto& v : s) std::sort(v.begin(), v.end(), [](const Stop& a, const Stop& b) { return a.param < b.param; });
    return s;
}

std::optional<Stop> stop_at(const std::vector<std::vector<Stop>>& s, const Incidence& at) {
    for (const auto& st : s[static_cast<std::size_t>(at.lobe - 1)])
        if (st.param == at.param) return st;
    return std::nullopt;
}

}  // namespace

Rational Cactus::total() const {
    Rational t;
    for (const auto& c : circumference) t += c;
    return t;
}

Cactus make_cactus(std::vector<Rational> circumference, std::vector<Node> nodes, Incidence marked) {
    const std::size_t k = circumference.size();
    if (k == 0) malformed("a cactus needs at least one lobe");
    for (std::size_t j = 0; j < k; ++j)
        if (circumference[j].sign() <= 0) malformed("lobe " + std::to_string(j + 1) + " has non-positive circumference");
    auto check_point = [&](const Incidence& inc, const std::string& where) {
        if (inc.lobe < 1 || static_cast<std::size_t>(inc.lobe) > k)
            malformed(where + " refers to lobe " + std::to_string(inc.lobe) + " of " + std::to_string(k));
        const auto& c = circumference[static_cast<std::size_t>(inc.lobe - 1)];
        if (inc.param.sign() < 0 || inc.param >= c)
            malformed(where + " has parameter " + inc.param.str() + " outside [0, " + c.str() + ")");
    };
    std::set<std::pair<int, Rational>> points;
    std::vector<std::size_t> parent(k + nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::size_t edges = 0;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const auto& inc = nodes[n].incidences;
        const std::string where = "node " + std::to_string(n + 1);
        if (inc.size() < 2) malformed(where + " joins fewer than two lobes");
        std::set<int> seen;
        for (const auto& x : inc) {
            check_point(x, where);
            if (!seen.insert(x.lobe).second) malformed(where + " meets lobe " + std::to_string(x.lobe) + " twice");
            if (!points.insert({x.lobe, x.param}).second)
                malformed("two nodes sit at parameter " + x.param.str() + " of lobe " + std::to_string(x.lobe));
            parent[find(static_cast<std::size_t>(x.lobe - 1))] = find(k + n);
            ++edges;
        }
    }
    check_point(marked, "marked point");
    for (std::size_t v = 1; v < parent.size(); ++v)
        if (find(v) != find(0)) malformed("the dual graph is disconnected");
    if (edges != k + nodes.size() - 1) malformed("the dual graph has a cycle");
    return Cactus{std::move(circumference), std::move(nodes), marked};
}

PinchingTrace pinching_trace(const Cactus& c) {
    const auto stops = stops_by_lobe(c);
    const Rational total = c.total();
    PinchingTrace tr{{}, total};
    Incidence at = c.marked;
    Rational t;
    // Every lobe is traversed once, split at each node point on it.
    const std::size_t bound = c.lobes() + 2 * c.nodes.size() * c.lobes() + 2;
    while (tr.arcs.size() < bound) {
        const auto& s = stops[static_cast<std::size_t>(at.lobe - 1)];
        const Rational& circ = c.circumference[static_cast<std::size_t>(at.lobe - 1)];
        const Rational remaining = total - t;
        std::optional<Stop> next;
        Rational dist;
        for (const auto& st : s)
            if (st.param > at.param) {
                next = st;
                dist = st.param - at.param;
                break;
            }
        if (!next && !s.empty()) {
            next = s.front();
            dist = s.front().param + circ - at.param;
        }
        if (!next || remaining <= dist) {
            tr.arcs.push_back({at.lobe, at.param, remaining});
            const Incidence end{at.lobe, reduce(at.param + remaining, circ)};
            const auto se = stop_at(stops, end), sm = stop_at(stops, c.marked);
            if (!(end == c.marked) && !(se && sm && se->node == sm->node))
                fail(ErrorCode::MalformedCactus, "pinching trace did not close up");
            return tr;
        }
        tr.arcs.push_back({at.lobe, at.param, dist});
        t += dist;
        const auto& node = c.nodes[next->node].incidences;
        at = node[(next->pos + 1) % node.size()];
    }
    fail(ErrorCode::MalformedCactus, "pinching trace did not terminate");
}

Incidence trace_position(const Cactus& c, const Rational& t) {
    const auto tr = pinching_trace(c);
    const Rational u = reduce(t, tr.total);
    Rational acc;
    for (const auto& a : tr.arcs) {
        if (u < acc + a.length)
            return {a.lobe, reduce(a.start + (u - acc), c.circumference[static_cast<std::size_t>(a.lobe - 1)])};
        acc += a.length;
    }
    fail(ErrorCode::MalformedCactus, "trace time out of range");
}

Cactus dilate(const Cactus& c, const Rational& s) {
    if (s.sign() <= 0) fail(ErrorCode::InvalidInput, "dilation factor must be positive");
    Cactus d = c;
    for (auto& x : d.circumference) x *= s;
    for (auto& n : d.nodes)
        for (auto& inc : n.incidences) inc.param *= s;
    d.marked.param *= s;
    return d;
}

Cactus relabel(const Cactus& c, const std::vector<int>& perm) {
    const std::size_t k = c.lobes();
    if (perm.size() != k) fail(ErrorCode::InvalidInput, "relabeling has the wrong length");
    std::vector<bool> hit(k);
    for (int p : perm) {
        if (p < 1 || static_cast<std::size_t>(p) > k || hit[static_cast<std::size_t>(p - 1)])
            fail(ErrorCode::InvalidInput, "relabeling is not a permutation");
        hit[static_cast<std::size_t>(p - 1)] = true;
    }
    auto map = [&](int l) { return perm[static_cast<std::size_t>(l - 1)]; };
    Cactus r = c;
    for (std::size_t j = 0; j < k; ++j) r.circumference[static_cast<std::size_t>(perm[j] - 1)] = c.circumference[j];
    for (auto& n : r.nodes)
        for (auto& inc : n.incidences) inc.lobe = map(inc.lobe);
    r.marked.lobe = map(r.marked.lobe);
    return r;
}

Cactus compose(const Cactus& c1, int i, const Cactus& c2) {
    const int k = static_cast<int>(c1.lobes()), l = static_cast<int>(c2.lobes());
    if (i < 1 || i > k)
        fail(ErrorCode::IndexOutOfRange, "lobe " + std::to_string(i) + " out of range 1.." + std::to_string(k));
    const Rational ci = c1.circumference[static_cast<std::size_t>(i - 1)];
    const Cactus d2 = dilate(c2, ci / c2.total());
    const auto stops2 = stops_by_lobe(d2);
    auto from1 = [&](int j) { return j < i ? j : j + l - 1; };
    auto from2 = [&](int m) { return i + m - 1; };

    std::vector<Rational> circ;
    for (int j = 1; j < i; ++j) circ.push_back(c1.circumference[static_cast<std::size_t>(j - 1)]);
    for (const auto& x : d2.circumference) circ.push_back(x);
    for (int j = i + 1; j <= k; ++j) circ.push_back(c1.circumference[static_cast<std::size_t>(j - 1)]);

    // node of d2 -> position of the departing lobe -> c1 lobes to insert before it
    std::map<std::size_t, std::map<std::size_t, std::vector<Incidence>>> inserts;
    std::vector<Node> nodes;
    for (const auto& n : c1.nodes) {
        const auto& inc = n.incidences;
        auto it = std::find_if(inc.begin(), inc.end(), [&](const Incidence& x) { return x.lobe == i; });
        if (it == inc.end()) {
            Node m = n;
            for (auto& x : m.incidences) x.lobe = from1(x.lobe);
            nodes.push_back(std::move(m));
            continue;
        }
        const std::size_t at = static_cast<std::size_t>(it - inc.begin());
        const Incidence p = trace_position(d2, it->param);
        // c1's lobes around this node, starting just after lobe i
        std::vector<Incidence> rest;
        for (std::size_t s = 1; s < inc.size(); ++s) {
            Incidence x = inc[(at + s) % inc.size()];
            x.lobe = from1(x.lobe);
            rest.push_back(x);
        }
        if (auto st = stop_at(stops2, p)) {
            inserts[st->node][st->pos] = std::move(rest);
        } else {
            Node m;
            m.incidences.push_back({from2(p.lobe), p.param});
            for (auto& x : rest) m.incidences.push_back(x);
            nodes.push_back(std::move(m));
        }
    }
    for (std::size_t n = 0; n < d2.nodes.size(); ++n) {
        Node m;
        const auto& inc = d2.nodes[n].incidences;
        for (std::size_t p = 0; p < inc.size(); ++p) {
            if (auto it = inserts.find(n); it != inserts.end())
                if (auto jt = it->second.find(p); jt != it->second.end())
                    for (const auto& x : jt->second) m.incidences.push_back(x);
            m.incidences.push_back({from2(inc[p].lobe), inc[p].param});
        }
        nodes.push_back(std::move(m));
    }
    Incidence marked;
    if (c1.marked.lobe == i) {
        const Incidence p = trace_position(d2, c1.marked.param);
        marked = {from2(p.lobe), p.param};
    } else {
        marked = {from1(c1.marked.lobe), c1.marked.param};
    }
    return canonical_form(make_cactus(std::move(circ), std::move(nodes), marked));
}

Cactus canonical_form(const Cactus& c) {
    Cactus r = c;
    for (auto& n : r.nodes) {
        auto& v = n.incidences;
        const auto lo = std::min_element(v.begin(), v.end(), incidence_less);
        std::rotate(v.begin(), lo, v.end());
    }
    std::sort(r.nodes.begin(), r.nodes.end(), [](const Node& a, const Node& b) {
        return std::lexicographical_compare(a.incidences.begin(), a.incidences.end(), b.incidences.begin(),
                                            b.incidences.end(), incidence_less);
    });
    return r;
}

Cactus identity_cactus(const Rational& circumference) { return make_cactus({circumference}, {}, {1, Rational(0)}); }

Cactus random_cactus(std::mt19937_64& rng, int k) {
    if (k < 1) fail(ErrorCode::InvalidInput, "a cactus needs at least one lobe");
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    static const Rational sizes[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(2, 3), Rational(3)};
    std::vector<Rational> circ;
    for (int j = 0; j < k; ++j) circ.push_back(sizes[pick(0, 5)]);
    auto param_on = [&](int lobe) {
        const int b = pick(1, 4);
        return circ[static_cast<std::size_t>(lobe - 1)] * Rational(pick(0, b - 1), b);
    };
    std::vector<Node> nodes;
    for (int j = 2; j <= k; ++j) {
        const Incidence fresh{j, param_on(j)};
        if (!nodes.empty() && pick(0, 3) == 0) {
            auto& inc = nodes[static_cast<std::size_t>(pick(0, static_cast<int>(nodes.size()) - 1))].incidences;
            inc.insert(inc.begin() + pick(0, static_cast<int>(inc.size())), fresh);
            continue;
        }
        const int host = pick(1, j - 1);
        const Incidence h{host, param_on(host)};
        if (auto it = std::find_if(nodes.begin(), nodes.end(),
                                   [&](const Node& n) {
                                       return std::find(n.incidences.begin(), n.incidences.end(), h) != n.incidences.end();
                                   });
            it != nodes.end()) {
            auto& inc = it->incidences;
            inc.insert(inc.begin() + pick(0, static_cast<int>(inc.size())), fresh);
        } else {
            nodes.push_back(Node{pick(0, 1) ? std::vector<Incidence>{h, fresh} : std::vector<Incidence>{fresh, h}});
        }
    }
    Incidence marked{pick(1, k), Rational()};
    std::vector<Incidence> on_lobe;
    for (const auto& n : nodes)
        for (const auto& x : n.incidences)
            if (x.lobe == marked.lobe) on_lobe.push_back(x);
    if (!on_lobe.empty() && pick(0, 2) == 0)
        marked = on_lobe[static_cast<std::size_t>(pick(0, static_cast<int>(on_lobe.size()) - 1))];
    else
        marked.param = param_on(marked.lobe);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    return canonical_form(relabel(make_cactus(std::move(circ), std::move(nodes), marked), perm));
}

}  // namespace loopforge::cacti
