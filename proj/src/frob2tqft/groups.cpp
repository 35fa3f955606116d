#include "loopforge/error.hpp"
#include "loopforge/frob2tqft/frobenius.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <thread>

namespace loopforge::frob2tqft {

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> cayley, std::vector<std::string> names)
    : table_(std::move(cayley)), names_(std::move(names)) {
    const std::size_t n = table_.size();
    if (n == 0) fail(ErrorCode::InvalidGroup, "empty Cayley table");
    for (const auto& row : table_) {
        if (row.size() != n) fail(ErrorCode::InvalidGroup, "Cayley table is not square");
        for (auto x : row)
            if (x >= n) fail(ErrorCode::InvalidGroup, "Cayley table entry out of range");
    }
    if (names_.empty())
        for (std::size_t i = 0; i < n; ++i) names_.push_back("g" + std::to_string(i));
    if (names_.size() != n) fail(ErrorCode::InvalidGroup, "need one name per element");

    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) fail(ErrorCode::InvalidGroup, "no identity element");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    fail(ErrorCode::InvalidGroup, "not associative at (" + names_[a] + "," + names_[b] + "," +
                                                      names_[c] + ")");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
        if (inverse_[a] == n) fail(ErrorCode::InvalidGroup, names_[a] + " has no inverse");
    }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidGroup, "cyclic group of order 0");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(std::to_string(a));
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::symmetric3() {
    std::vector<std::array<std::size_t, 3>> perms;
    std::array<std::size_t, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < 6; ++a) {
        names.push_back(std::to_string(perms[a][0]) + std::to_string(perms[a][1]) + std::to_string(perms[a][2]));
        for (std::size_t b = 0; b < 6; ++b) {
            // (a b)(x) = a(b(x))
            std::array<std::size_t, 3> c{};
            for (std::size_t x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    }
    return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t n = a.order(), m = b.order();
    std::vector<std::vector<std::size_t>> t(n * m, std::vector<std::size_t>(n * m));
    std::vector<std::string> names;
    for (std::size_t x = 0; x < n * m; ++x) {
        names.push_back("(" + a.names()[x / m] + "," + b.names()[x % m] + ")");
        for (std::size_t y = 0; y < n * m; ++y) t[x][y] = a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
    }
    return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::builtin(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (const auto x = s.find('x'); x != std::string::npos && x > 0 && x + 1 < s.size())
        return product(builtin(s.substr(0, x)), builtin(s.substr(x + 1)));
    if (s == "trivial") return cyclic(1);
    if (s == "s3") return symmetric3();
    if (s == "klein4" || s == "v4") return product(cyclic(2), cyclic(2));
    for (const char* prefix : {"cyclic", "z"})
        if (s.rfind(prefix, 0) == 0) {
            const std::string num = s.substr(std::string(prefix).size());
            if (!num.empty() && num.size() < 4 && std::all_of(num.begin(), num.end(), ::isdigit))
                return cyclic(std::stoul(num));
        }
    fail(ErrorCode::InvalidGroup, "unknown group '" + name + "' (zN, cyclicN, s3, klein4, trivial, AxB)");
}

std::vector<std::vector<std::size_t>> FiniteGroup::conjugacy_classes() const {
    const std::size_t n = order();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t a = 0; a < n; ++a) {
        if (seen[a]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t g = 0; g < n; ++g) {
            const std::size_t c = mul(mul(g, a), inverse(g));
            if (!seen[c]) {
                seen[c] = true;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.push_back(std::move(cls));
    }
    return out;
}

FrobeniusAlgebra dw_center_algebra(const FiniteGroup& g) {
    const auto classes = g.conjugacy_classes();
    const std::size_t d = classes.size();
    std::vector<std::size_t> class_of(g.order());
    std::vector<exactq::BasisElement> basis;
    for (std::size_t c = 0; c < d; ++c) {
        for (auto x : classes[c]) class_of[x] = c;
        basis.push_back({"C" + std::to_string(c), 0});
    }
    const auto space = exactq::make_space(exactq::GradedVectorSpace(basis));
    MultilinearMap prod({space, space}, space);
    // C_a C_b = sum_c n_ab^c C_c, n_ab^c = #{(x,y) in C_a x C_b : xy = rep(c)}.
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            std::vector<long> count(d, 0);
            for (auto x : classes[a])
                for (auto y : classes[b]) {
                    const std::size_t z = g.mul(x, y);
                    if (z == classes[class_of[z]].front()) ++count[class_of[z]];
                }
            for (std::size_t c = 0; c < d; ++c)
                if (count[c]) prod.set({c, a, b}, Rational(count[c]));
        }
    Vector unit(d), trace(d);
    unit[class_of[g.identity()]] = Rational(1);
    trace[class_of[g.identity()]] = Rational(1, static_cast<std::int64_t>(g.order()));
    return validate_frobenius(space, std::move(prod), std::move(unit), std::move(trace));
}

unsigned default_threads() {
    if (const char* env = std::getenv("LOOPFORGE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Rational dw_partition_brute(const FiniteGroup& g, std::size_t genus, const BruteOptions& opt) {
    const std::uint64_t n = g.order();
    const auto order = static_cast<std::int64_t>(n);
    if (genus == 0) return Rational(1, order);
    std::uint64_t tuples = 1;
    for (std::size_t k = 0; k < 2 * genus; ++k) {
        if (tuples > opt.max_tuples / n) fail(ErrorCode::SizeGuard, "brute force over |G|^(2g) tuples is too large");
        tuples *= n;
    }
    // comm[a][b] = a b a^-1 b^-1
    std::vector<std::size_t> comm(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) comm[a * n + b] = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));

    const std::uint64_t pairs = n * n;
    const unsigned threads = static_cast<unsigned>(
        std::min<std::uint64_t>(opt.threads ? opt.threads : default_threads(), pairs));
    std::vector<std::uint64_t> partial(threads, 0);
    auto work = [&](unsigned t) {
        // Thread t takes the first pairs congruent to t; the rest is a depth-first walk.
        std::vector<std::uint64_t> idx(genus, 0);
        std::uint64_t count = 0;
        for (std::uint64_t first = t; first < pairs; first += threads) {
            idx.assign(genus, 0);
            idx[0] = first;
            for (;;) {
                std::size_t acc = comm[idx[0]];
                for (std::size_t k = 1; k < genus; ++k) acc = g.mul(acc, comm[idx[k]]);
                if (acc == g.identity()) ++count;
                std::size_t k = genus;
                while (k > 1 && ++idx[k - 1] == pairs) idx[--k] = 0;
                if (k == 1) break;
            }
        }
        partial[t] = count;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::uint64_t total = 0;
    for (auto c : partial) total += c;
    return Rational(mpz_class(std::to_string(total)), mpz_class(order));
}

}  // namespace loopforge::frob2tqft
