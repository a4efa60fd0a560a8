#include "mfdcca/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mfdcca/errors.hpp"

namespace mfdcca {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.push_back("");
    }
    return cells;
}

bool parse_number(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size() && errno == 0;
}

// selector: "" (unused), decimal index, or header name
std::size_t resolve_column(const std::string& selector, const std::vector<std::string>& header,
                           std::size_t fallback) {
    if (selector.empty()) return fallback;
    double idx;
    if (parse_number(selector, idx) && idx >= 0 && idx == static_cast<std::size_t>(idx)) {
        return static_cast<std::size_t>(idx);
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == selector) return i;
    }
    throw DataError("missing column: " + selector);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw DataError("empty file: " + path);
    }
    return lines;
}

}  // namespace

SeriesPair load_series_csv(const std::string& path, const std::string& col_x,
                           const std::string& col_y) {
    const std::vector<std::string> lines = read_lines(path);

    const std::vector<std::string> first = split_csv_line(lines[0]);
    bool has_header = false;
    for (const std::string& cell : first) {
        double v;
        if (!parse_number(cell, v)) {
            has_header = true;
            break;
        }
    }
    const std::vector<std::string> header = has_header ? first : std::vector<std::string>{};
    const std::size_t ix = resolve_column(col_x, header, 0);
    const std::size_t iy = resolve_column(col_y, header, 1);

    const std::size_t width = first.size();
    if (ix >= width || iy >= width) {
        throw DataError("missing column in " + path);
    }

    SeriesPair pair;
    for (std::size_t li = has_header ? 1 : 0; li < lines.size(); ++li) {
        const std::vector<std::string> cells = split_csv_line(lines[li]);
        if (cells.size() != width) {
            throw DataError("ragged row " + std::to_string(li + 1) + " in " + path);
        }
        double vx, vy;
        if (!parse_number(cells[ix], vx) || !parse_number(cells[iy], vy)) {
            throw DataError("non-numeric cell at row " + std::to_string(li + 1) + " in " + path);
        }
        pair.x.push_back(vx);
        pair.y.push_back(vy);
    }
    if (pair.x.empty()) {
        throw DataError("no data rows in " + path);
    }
    return pair;
}

Field2D load_field_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    Field2D field;
    field.n1 = lines.size();
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::vector<std::string> cells = split_csv_line(lines[li]);
        if (li == 0) {
            field.n2 = cells.size();
        } else if (cells.size() != field.n2) {
            throw DataError("ragged row " + std::to_string(li + 1) + " in " + path);
        }
        for (const std::string& cell : cells) {
            double v;
            if (!parse_number(cell, v)) {
                throw DataError("non-numeric cell at row " + std::to_string(li + 1) + " in " + path);
            }
            field.values.push_back(v);
        }
    }
    if (field.n1 < 2 || field.n2 < 2) {
        throw DataError("field must be at least 2 x 2");
    }
    return field;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    return out;
}

}  // namespace

void write_series_csv(const std::string& path, const SeriesPair& pair, const std::string& header) {
    validate_pair(pair);
    std::ofstream out = open_out(path);
    if (!header.empty()) out << header << "\n";
    for (std::size_t i = 0; i < pair.x.size(); ++i) {
        out << format_double(pair.x[i]) << "," << format_double(pair.y[i]) << "\n";
    }
}

void write_fluctuation_csv(const std::string& path, const FluctuationMatrix& fm) {
    std::ofstream out = open_out(path);
    out << "q,s,f_xx,f_xy,f_yy\n";
    for (std::size_t qi = 0; qi < fm.n_q(); ++qi) {
        for (std::size_t si = 0; si < fm.n_s(); ++si) {
            out << format_double(fm.q_grid[qi]) << "," << fm.scale_grid[si] << ","
                << format_double(fm.xx(qi, si)) << "," << format_double(fm.xy(qi, si)) << ","
                << format_double(fm.yy(qi, si)) << "\n";
        }
    }
}

void write_exponent_csv(const std::string& path, const ScalingResult& sr) {
    std::ofstream out = open_out(path);
    out << "q,h,h_stderr,tau,alpha,f_alpha\n";
    for (std::size_t i = 0; i < sr.q_grid.size(); ++i) {
        out << format_double(sr.q_grid[i]) << "," << format_double(sr.h[i]) << ","
            << format_double(sr.h_stderr[i]) << "," << format_double(sr.tau[i]) << ","
            << format_double(sr.alpha[i]) << "," << format_double(sr.f_alpha[i]) << "\n";
    }
}

void write_delta_csv(const std::string& path, const ExponentDelta& delta) {
    std::ofstream out = open_out(path);
    out << "q,delta_h,delta_tau\n";
    for (std::size_t i = 0; i < delta.q_grid.size(); ++i) {
        out << format_double(delta.q_grid[i]) << "," << format_double(delta.delta_h[i]) << ","
            << format_double(delta.delta_tau[i]) << "\n";
    }
}

}  // namespace mfdcca
