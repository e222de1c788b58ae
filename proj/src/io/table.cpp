#include "io/table.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace qpl {

int Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> Table::column(const std::string& name) const {
    const int ci = column_index(name);
    if (ci < 0) throw UsageError("Table: no column named '" + name + "'");
    std::vector<double> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) out[r] = rows[r][static_cast<std::size_t>(ci)];
    return out;
}

void write_table(const std::filesystem::path& path, const Table& t) {
    std::ofstream f(path);
    if (!f) throw UsageError("write_table: cannot open " + path.string());
    f << "# qpathlab " << t.kind << " v1\n";
    for (const auto& [k, v] : t.meta) f << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        f << t.columns[c] << (c + 1 < t.columns.size() ? "," : "\n");
    char buf[40];
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[c]);
            f << buf << (c + 1 < row.size() ? "," : "\n");
        }
    }
    if (!f) throw UsageError("write_table: write failed for " + path.string());
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("read_table: cannot open " + path.string());
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            while (!body.empty() && body.front() == ' ') body.erase(body.begin());
            if (body.rfind("qpathlab ", 0) == 0) {
                std::istringstream ss(body);
                std::string tag, kind;
                ss >> tag >> kind;
                t.kind = kind;
            } else {
                const auto eq = body.find('=');
                if (eq != std::string::npos)
                    t.meta[body.substr(0, eq)] = body.substr(eq + 1);
            }
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
            have_header = true;
        } else {
            std::vector<double> row;
            while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
            if (row.size() != t.columns.size())
                throw UsageError("read_table: ragged row in " + path.string());
            t.rows.push_back(std::move(row));
        }
    }
    if (!have_header) throw UsageError("read_table: no header row in " + path.string());
    return t;
}

Table density_table(const std::vector<double>& x, const std::vector<double>& density,
                    std::map<std::string, std::string> meta) {
    if (x.size() != density.size()) throw UsageError("density_table: size mismatch");
    Table t;
    t.kind = "density";
    t.meta = std::move(meta);
    t.columns = {"x", "density"};
    t.rows.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t.rows.push_back({x[i], density[i]});
    return t;
}

}  // namespace qpl
