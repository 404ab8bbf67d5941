// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/snapshot.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace cutstack {

namespace {

constexpr const char* kFormatTag = "cutstack-tower/1";

std::string levels_to_string(const std::vector<uint8_t>& levels, uint32_t alphabet) {
    if (alphabet <= 36) {
        std::string s;
        s.reserve(levels.size());
        for (uint8_t v : levels) s += static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10);
        return s;
    }
    std::string s;
    for (size_t i = 0; i < levels.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(levels[i]);
    }
    return s;
}

std::vector<uint8_t> levels_from_string(const std::string& text, uint32_t alphabet,
                                        size_t col_index) {
    std::vector<uint8_t> out;
    const std::string where = "columns[" + std::to_string(col_index) + "].levels";
    if (alphabet <= 36) {
        for (char c : text) {
            uint8_t v;
            if (c >= '0' && c <= '9') v = static_cast<uint8_t>(c - '0');
            else if (c >= 'a' && c <= 'z') v = static_cast<uint8_t>(c - 'a' + 10);
            else raise(ErrorKind::parse, where + ": bad symbol character '" + std::string(1, c) + "'");
            require(v < alphabet, ErrorKind::parse, where + ": symbol out of alphabet");
            out.push_back(v);
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        long v = -1;
        try {
            v = std::stol(item);
        } catch (const std::exception&) {
            raise(ErrorKind::parse, where + ": bad symbol '" + item + "'");
        }
        require(v >= 0 && v < static_cast<long>(alphabet), ErrorKind::parse,
                where + ": symbol out of alphabet");
        out.push_back(static_cast<uint8_t>(v));
    }
    return out;
}

}  // namespace

std::string snapshot_to_string(const Tower& t) {
    nlohmann::ordered_json j;
    j["format"] = kFormatTag;
    j["alphabet_size"] = t.alphabet_size;
    j["spacer_symbol"] = t.spacer_symbol;
    j["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : t.columns) {
        nlohmann::ordered_json jc;
        jc["levels"] = levels_to_string(c.levels, t.alphabet_size);
        jc["width"] = rational_to_string(c.width);
        j["columns"].push_back(std::move(jc));
    }
    j["stage_log"] = t.stage_log;
    return j.dump(2) + "\n";
}

Tower snapshot_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorKind::parse, std::string("snapshot: ") + e.what());
    }
    try {
        require(j.value("format", "") == kFormatTag, ErrorKind::parse,
                "snapshot: unknown or missing format tag (expected " + std::string(kFormatTag) + ")");
        Tower t;
        t.alphabet_size = j.at("alphabet_size").get<uint32_t>();
        const long spacer = j.at("spacer_symbol").get<long>();
        require(spacer >= 0 && spacer < static_cast<long>(t.alphabet_size), ErrorKind::parse,
                "snapshot: spacer_symbol out of alphabet");
        t.spacer_symbol = static_cast<uint8_t>(spacer);
        size_t idx = 0;
        for (const auto& jc : j.at("columns")) {
            Column c;
            c.levels = levels_from_string(jc.at("levels").get<std::string>(), t.alphabet_size, idx);
            c.width = parse_rational(jc.at("width").get<std::string>());
            require(c.width > 0, ErrorKind::parse,
                    "snapshot: columns[" + std::to_string(idx) + "].width must be positive");
            require(!c.levels.empty(), ErrorKind::parse,
                    "snapshot: columns[" + std::to_string(idx) + "] has no levels");
            t.columns.push_back(std::move(c));
            ++idx;
        }
        if (j.contains("stage_log"))
            t.stage_log = j.at("stage_log").get<std::vector<std::string>>();
        t.check_valid();
        return t;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::parse, std::string("snapshot: ") + e.what());
    }
}

void save_snapshot(const Tower& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::parse, "cannot open for writing: " + path);
    out << snapshot_to_string(t);
}

Tower load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::parse, "cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return snapshot_from_string(ss.str());
}

}  // namespace cutstack
