#include "loopforge/error.hpp"
#include "loopforge/io/json_io.hpp"

namespace loopforge::io {

namespace {

cacti::Incidence incidence_from_json(const json& j) {
    return {require(j, "lobe").get<int>(), rational_from_json(require(j, "param"))};
}

json to_json(const cacti::Incidence& x) { return {{"lobe", x.lobe}, {"param", x.param.str()}}; }

}  // namespace

cacti::Cactus cactus_from_json(const json& j) {
    try {
        const auto& lobes = require(j, "lobes");
        std::vector<exactq::Rational> circ(lobes.size());
        std::vector<bool> seen(lobes.size());
        for (const auto& l : lobes) {
            const int label = require(l, "label").get<int>();
            if (label < 1 || static_cast<std::size_t>(label) > lobes.size() || seen[static_cast<std::size_t>(label - 1)])
                fail(ErrorCode::MalformedCactus, "lobe labels must be 1.." + std::to_string(lobes.size()) + " without repeats");
            seen[static_cast<std::size_t>(label - 1)] = true;
            circ[static_cast<std::size_t>(label - 1)] = rational_from_json(require(l, "circumference"));
        }
        std::vector<cacti::Node> nodes;
        for (const auto& n : j.value("nodes", json::array())) {
            std::vector<cacti::Incidence> inc;
            for (const auto& x : require(n, "incidences")) inc.push_back(incidence_from_json(x));
            if (n.contains("cyclic_order")) {
                const auto& order = n.at("cyclic_order");
                if (order.size() != inc.size())
                    fail(ErrorCode::MalformedCactus, "cyclic order must list each incident lobe once");
                std::vector<cacti::Incidence> sorted;
                for (const auto& o : order) {
                    const int lobe = o.get<int>();
                    auto it = std::find_if(inc.begin(), inc.end(), [&](const cacti::Incidence& x) { return x.lobe == lobe; });
                    if (it == inc.end())
                        fail(ErrorCode::MalformedCactus, "cyclic order names lobe " + std::to_string(lobe) +
                                                             ", which is not incident to the node");
                    sorted.push_back(*it);
                }
                inc = std::move(sorted);
            }
            nodes.push_back({std::move(inc)});
        }
        return cacti::make_cactus(std::move(circ), std::move(nodes), incidence_from_json(require(j, "marked")));
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("cactus: ") + e.what());
    }
}

json to_json(const cacti::Cactus& c) {
    json lobes = json::array(), nodes = json::array();
    for (std::size_t j = 0; j < c.lobes(); ++j) lobes.push_back({{"label", j + 1}, {"circumference", c.circumference[j].str()}});
    for (const auto& n : c.nodes) {
        json inc = json::array(), order = json::array();
        for (const auto& x : n.incidences) {
            inc.push_back(to_json(x));
            order.push_back(x.lobe);
        }
        nodes.push_back({{"incidences", inc}, {"cyclic_order", order}});
    }
    return {{"lobes", lobes}, {"nodes", nodes}, {"marked", to_json(c.marked)}};
}

json to_json(const cacti::PinchingTrace& t) {
    json arcs = json::array();
    for (const auto& a : t.arcs) arcs.push_back({{"lobe", a.lobe}, {"start", a.start.str()}, {"length", a.length.str()}});
    return {{"arcs", arcs}, {"total", t.total.str()}};
}

}  // namespace loopforge::io
