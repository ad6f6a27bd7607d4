#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace nqa {

// CSV with header row, RFC-style quoting, '.' decimal separator and
// 17 significant digits, so repeated runs diff cleanly.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << quote(cells[i]);
        }
        os_ << '\n';
    }

    static std::string num(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    static std::string num(long long v) { return std::to_string(v); }
    static std::string num(int v) { return std::to_string(v); }

    static std::string quote(const std::string& s)
    {
        if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out += c;
        }
        out += '"';
        return out;
    }

private:
    std::ostream& os_;
};

} // namespace nqa
