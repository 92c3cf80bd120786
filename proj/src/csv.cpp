#include "fairhms/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fairhms {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::vector<std::string>& numeric_columns,
                 const std::string& group_column, const std::string& id_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open file '" + path + "'");
    if (numeric_columns.size() < 2)
        throw std::invalid_argument("csv: need at least two numeric columns");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: file '" + path + "' is empty");
    std::vector<std::string> header = split_line(line);
    for (auto& h : header) h = trim(h);

    auto column_index = [&](const std::string& name) {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw std::runtime_error("csv: column '" + name + "' not found in '" + path + "'");
    };

    std::vector<int> num_idx;
    for (const auto& name : numeric_columns) num_idx.push_back(column_index(name));
    const int grp_idx = column_index(group_column);
    const int id_idx = id_column.empty() ? -1 : column_index(id_column);

    std::vector<Point> points;
    std::vector<std::string> group_labels;
    std::unordered_map<std::string, int> group_of;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() < header.size())
            throw std::runtime_error("csv: row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        Point p;
        p.id = id_idx >= 0 ? trim(cells[id_idx]) : std::to_string(row - 1);
        for (size_t j = 0; j < num_idx.size(); ++j) {
            const std::string cell = trim(cells[num_idx[j]]);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size())
                throw std::runtime_error("csv: row " + std::to_string(row) + ", column '" +
                                         numeric_columns[j] + "': cannot parse '" + cell +
                                         "' as a number");
            p.coords.push_back(v);
        }
        const std::string label = trim(cells[grp_idx]);
        auto it = group_of.find(label);
        if (it == group_of.end()) {
            it = group_of.emplace(label, static_cast<int>(group_labels.size())).first;
            group_labels.push_back(label);
        }
        p.group = it->second;
        points.push_back(std::move(p));
    }
    if (points.empty()) throw std::runtime_error("csv: file '" + path + "' contains no data rows");

    return Dataset(std::move(points), static_cast<int>(numeric_columns.size()),
                   static_cast<int>(group_labels.size()), std::move(group_labels));
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write file '" + path + "'");
    out << "id";
    for (int i = 0; i < ds.dim(); ++i) out << ",x" << (i + 1);
    out << ",group\n";
    char buf[32];
    for (const Point& p : ds.points()) {
        out << p.id;
        for (double v : p.coords) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ',' << buf;
        }
        out << ',' << ds.group_label(p.group) << '\n';
    }
    if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

}  // namespace fairhms
