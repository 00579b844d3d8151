#include "msw/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace msw {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, const std::string& path, std::size_t row) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        std::ostringstream os;
        os << path << ": row " << row << ": not a number: '" << s << "'";
        throw io_error(os.str());
    }
    return value;
}

}  // namespace

EmpiricalMeasure read_point_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open file");

    std::string line;
    if (!std::getline(in, line)) throw io_error(path + ": empty file");
    auto header = split_csv_line(line);
    bool has_weight = !header.empty() && header.back() == "w";
    std::size_t d = header.size() - (has_weight ? 1 : 0);
    if (d == 0) throw io_error(path + ": header has no coordinate columns");

    Vec supports;
    Vec weights;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            std::ostringstream os;
            os << path << ": row " << row << ": expected " << header.size() << " fields, got "
               << fields.size();
            throw io_error(os.str());
        }
        for (std::size_t j = 0; j < d; ++j) supports.push_back(parse_number(fields[j], path, row));
        if (has_weight) weights.push_back(parse_number(fields[d], path, row));
    }
    std::size_t n = supports.size() / d;
    if (n == 0) throw io_error(path + ": no data rows");

    EmpiricalMeasure mu = has_weight
                              ? EmpiricalMeasure(n, d, std::move(supports), std::move(weights))
                              : EmpiricalMeasure::uniform(n, d, std::move(supports));
    if (auto violation = validate(mu)) throw io_error(path + ": " + *violation);
    return mu;
}

void write_point_cloud_csv(const std::string& path, const EmpiricalMeasure& mu,
                           bool include_weights) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot open file for writing");
    for (std::size_t j = 0; j < mu.dim(); ++j) {
        if (j) out << ',';
        out << 'x' << (j + 1);
    }
    if (include_weights) out << ",w";
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (std::size_t j = 0; j < mu.dim(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", mu.coord(i, j));
            out << buf;
        }
        if (include_weights) {
            std::snprintf(buf, sizeof(buf), "%.17g", mu.weights()[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw io_error(path + ": write failed");
}

}  // namespace msw
