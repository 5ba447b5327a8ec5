#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace tlab {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    Json params = Json::object();
    int precision_bits = 256;
    uint64_t seed = 20260801;
    std::string output_dir; // OUTPUT_DIR env or cwd

    std::string resolve(const std::string& filename) const;
    Json header() const; // {op, inputs, precision_bits, seed}
};

// temp file + rename; never leaves a partial artifact at the final path
void write_file_atomic(const std::string& path, const std::string& content);

// 15 significant digits, '.' decimal separator
std::string fmt_g15(double v);

// RFC-4180 CSV body plus a single '#' header comment carrying the run config
std::string make_csv(const RunConfig& cfg, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows);

} // namespace tlab
