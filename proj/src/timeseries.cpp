#include "hystrd/timeseries.hpp"

#include "hystrd/errors.hpp"

#include <algorithm>

namespace hystrd {

std::size_t TimeSeries::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw InvalidArgument("time series has no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> TimeSeries::column(const std::string& name) const {
    const std::size_t i = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row[i]);
    }
    return out;
}

void TimeSeries::append(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw DimensionError("time series row has wrong width");
    }
    if (!rows.empty() && !(row.front() > rows.back().front())) {
        throw InvalidArgument("time series times must be strictly increasing");
    }
    rows.push_back(std::move(row));
}

} // namespace hystrd
