#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace notchwave {

// fixed-format number rendering so repeated runs emit byte-identical files
inline std::string fmt_num(double v, int significant = 10) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : os_(path, std::ios::trunc) {
        if (!os_) throw std::runtime_error("cannot open for writing: " + path);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << cells[i];
        }
        os_ << '\n';
    }

private:
    std::ofstream os_;
};

}  // namespace notchwave
