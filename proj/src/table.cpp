#include "gabor/table.hpp"

#include <cstdio>

#include "gabor/errors.hpp"

namespace gabor {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        fail(ErrorCode::invalid_params, "table row width does not match header");
    rows_.push_back(std::move(row));
}

const Table::Cell& Table::at(std::size_t row, std::size_t col) const {
    if (row >= rows_.size() || col >= columns_.size())
        fail(ErrorCode::invalid_params, "table index out of range");
    return rows_[row][col];
}

double Table::number_at(std::size_t row, std::size_t col) const {
    const Cell& c = at(row, col);
    if (c.kind != Cell::Kind::number)
        fail(ErrorCode::invalid_params, "table cell is not numeric");
    return c.num;
}

std::vector<double> Table::column(std::size_t col) const {
    std::vector<double> out;
    out.reserve(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) out.push_back(number_at(r, col));
    return out;
}

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == name) return i;
    fail(ErrorCode::invalid_params, "no table column named " + name);
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += (row[i].kind == Cell::Kind::number) ? format_double(row[i].num)
                                                       : row[i].text;
        }
        out += '\n';
    }
    return out;
}

}  // namespace gabor
