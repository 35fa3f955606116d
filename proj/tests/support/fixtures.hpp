#pragma once

#include "loopforge/io/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef LOOPFORGE_FIXTURES
#error "LOOPFORGE_FIXTURES must point at the fixtures directory"
#endif

namespace testsupport {

inline std::string fixture_path(const std::string& rel) { return std::string(LOOPFORGE_FIXTURES) + "/" + rel; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json load_fixture(const std::string& rel) {
    return loopforge::io::parse_json(read_text(fixture_path(rel)), rel);
}

}  // namespace testsupport
