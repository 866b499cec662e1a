#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hystrd {

/// Column-named table of records with strictly increasing first column `t`.
struct TimeSeries {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t size() const noexcept { return rows.size(); }
    std::size_t column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
    void append(std::vector<double> row);

    bool operator==(const TimeSeries&) const = default;
};

} // namespace hystrd
