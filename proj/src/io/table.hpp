#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qpl {

/// Delimited-text exchange format shared by all CLI outputs: a `# qpathlab
/// <kind> v1` banner, `# key=value` metadata lines, one CSV header row, then
/// numeric rows printed with full double precision.
struct Table {
    std::string kind = "table";
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
};

void write_table(const std::filesystem::path& path, const Table& t);
Table read_table(const std::filesystem::path& path);

/// Convenience for x / density pairs.
Table density_table(const std::vector<double>& x, const std::vector<double>& density,
                    std::map<std::string, std::string> meta = {});

}  // namespace qpl
