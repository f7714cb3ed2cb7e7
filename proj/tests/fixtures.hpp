#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "labelcut/io.hpp"

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(LABELCUT_FIXTURE_DIR) + "/" + name;
}

inline labelcut::LabeledGraph load_fixture(const std::string& name) {
    return labelcut::parse(read_text_file(fixture_path(name)));
}
