#pragma once

#include "loopforge/exactq/rational.hpp"

#include <optional>
#include <random>
#include <vector>

namespace loopforge::cacti {

using exactq::Rational;

struct Incidence {
    int lobe = 0;     ///< 1-based label
    Rational param;   ///< in [0, circumference of the lobe)

    friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// An intersection point. Incidences are listed in the cyclic order of the
/// lobes around the point, so the trace arriving on incidences[j] leaves on
/// incidences[j+1].
struct Node {
    std::vector<Incidence> incidences;

    friend bool operator==(const Node&, const Node&) = default;
};

/// Lobe j has label j+1. Built through make_cactus, which validates.
struct Cactus {
    std::vector<Rational> circumference;
    std::vector<Node> nodes;
    Incidence marked;

    std::size_t lobes() const { return circumference.size(); }
    Rational total() const;

    friend bool operator==(const Cactus&, const Cactus&) = default;
};

/// Throws MalformedCactus: labels, parameter ranges, node arity >= 2, two
/// nodes at one point, marked point, dual graph not a tree.
Cactus make_cactus(std::vector<Rational> circumference, std::vector<Node> nodes, Incidence marked);

struct Arc {
    int lobe = 0;
    Rational start;   ///< parameter where the arc begins; may wrap past 0
    Rational length;

    friend bool operator==(const Arc&, const Arc&) = default;
};

struct PinchingTrace {
    std::vector<Arc> arcs;
    Rational total;

    friend bool operator==(const PinchingTrace&, const PinchingTrace&) = default;
};

PinchingTrace pinching_trace(const Cactus& c);

/// Point of the cactus reached at trace time t in [0, total). At a node the
/// lobe is the one the trace leaves on.
Incidence trace_position(const Cactus& c, const Rational& t);

/// c2 scaled to the circumference of lobe i of c1 and glued in along its
/// pinching map; labels of c2 are inserted at position i.
Cactus compose(const Cactus& c1, int i, const Cactus& c2);

/// Relabels lobe j as perm[j-1] (perm is a permutation of 1..k).
Cactus relabel(const Cactus& c, const std::vector<int>& perm);

/// Every parameter scaled by s > 0.
Cactus dilate(const Cactus& c, const Rational& s);

/// Nodes rotated to start at their smallest label and sorted; equal cacti
/// have identical canonical forms.
Cactus canonical_form(const Cactus& c);

/// Single lobe of the given circumference, marked at 0.
Cactus identity_cactus(const Rational& circumference = Rational(1));

/// Random valid cactus with k lobes, small-denominator rational parameters,
/// and sometimes a marked point or several lobes sitting on one node.
Cactus random_cactus(std::mt19937_64& rng, int k);

}  // namespace loopforge::cacti
