#pragma once

// CSV ingestion for the command-line tools. The header row names the columns:
// x1..xL (required), weight (optional, defaults to 1), budget (optional
// nonnegative integer, defaults to 1). Row order defines the original point
// indices that all results refer to.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "pmssc/core.hpp"
#include "pmssc/errors.hpp"

namespace pmssc {

struct CsvData {
    std::vector<WeightedPoint> points;
    std::size_t dim = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

inline double parse_double(const std::string& cell, std::size_t line_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || cell.empty())
        throw parse_error("expected a number, got '" + cell + "'", line_no);
    return value;
}

inline long long parse_integer(const std::string& cell, std::size_t line_no) {
    long long value = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || cell.empty())
        throw parse_error("expected an integer, got '" + cell + "'", line_no);
    return value;
}

}  // namespace detail

inline CsvData ingest_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    // Header: every column must be x<j>, weight or budget.
    do {
        if (!std::getline(in, line)) throw parse_error("missing header row", 1);
        ++line_no;
        line = detail::trim(line);
    } while (line.empty());

    const std::vector<std::string> header = detail::split_csv_line(line);
    const std::size_t ncols = header.size();
    std::vector<std::size_t> coord_of_col(ncols, SIZE_MAX);
    std::size_t weight_col = SIZE_MAX, budget_col = SIZE_MAX, dim = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
        const std::string& name = header[c];
        if (name == "weight") {
            if (weight_col != SIZE_MAX) throw parse_error("duplicate weight column", line_no);
            weight_col = c;
        } else if (name == "budget") {
            if (budget_col != SIZE_MAX) throw parse_error("duplicate budget column", line_no);
            budget_col = c;
        } else if (name.size() >= 2 && name[0] == 'x') {
            std::size_t axis = 0;
            try {
                std::size_t used = 0;
                axis = std::stoul(name.substr(1), &used);
                if (used != name.size() - 1 || axis == 0) throw std::invalid_argument(name);
            } catch (const std::exception&) {
                throw parse_error("unrecognized column '" + name + "'", line_no);
            }
            if (axis > ncols) throw parse_error("coordinate column '" + name + "' out of range",
                                                line_no);
            if (coord_of_col[c] != SIZE_MAX) throw parse_error("internal header state", line_no);
            coord_of_col[c] = axis - 1;
            dim = std::max(dim, axis);
        } else {
            throw parse_error("unrecognized column '" + name + "'", line_no);
        }
    }
    if (dim == 0) throw parse_error("no coordinate columns (x1..xL) found", line_no);
    {
        std::vector<bool> seen(dim, false);
        for (std::size_t c = 0; c < ncols; ++c) {
            if (coord_of_col[c] == SIZE_MAX) continue;
            if (seen[coord_of_col[c]])
                throw parse_error("duplicate coordinate column x" +
                                      std::to_string(coord_of_col[c] + 1),
                                  line_no);
            seen[coord_of_col[c]] = true;
        }
        for (std::size_t d = 0; d < dim; ++d)
            if (!seen[d])
                throw parse_error("missing coordinate column x" + std::to_string(d + 1), line_no);
    }

    CsvData data;
    data.dim = dim;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() != ncols)
            throw parse_error("expected " + std::to_string(ncols) + " cells, got " +
                                  std::to_string(cells.size()),
                              line_no);
        WeightedPoint p;
        p.coords.assign(dim, 0.0);
        for (std::size_t c = 0; c < ncols; ++c) {
            if (coord_of_col[c] != SIZE_MAX) {
                p.coords[coord_of_col[c]] = detail::parse_double(cells[c], line_no);
            } else if (c == weight_col) {
                p.weight = detail::parse_double(cells[c], line_no);
                if (!(p.weight > 0.0))
                    throw parse_error("weights must be positive", line_no);
            } else if (c == budget_col) {
                p.budget = detail::parse_integer(cells[c], line_no);
                if (p.budget < 0) throw parse_error("budgets must be nonnegative", line_no);
            }
        }
        data.points.push_back(std::move(p));
    }
    if (data.points.empty()) throw parse_error("no data rows", line_no + 1);
    return data;
}

inline CsvData ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'", 0);
    return ingest_csv(in);
}

}  // namespace pmssc
