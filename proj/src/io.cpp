#include "tlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace tlab {

std::string RunConfig::resolve(const std::string& filename) const {
    if (filename.empty() || filename[0] == '/')
        return filename;
    if (output_dir.empty())
        return filename;
    return output_dir + "/" + filename;
}

Json RunConfig::header() const {
    Json h;
    h["op"] = command;
    h["inputs"] = params;
    h["precision_bits"] = precision_bits;
    h["seed"] = seed;
    return h;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

std::string fmt_g15(double v) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string make_csv(const RunConfig& cfg, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows) {
    std::string out = "# tlab op=" + cfg.command + " seed=" + std::to_string(cfg.seed) +
                      " precision_bits=" + std::to_string(cfg.precision_bits) + "\n";
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i)
            out += ',';
        out += columns[i];
    }
    out += "\r\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += row[i];
        }
        out += "\r\n";
    }
    return out;
}

} // namespace tlab
