#ifndef GABOR_TABLE_HPP
#define GABOR_TABLE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gabor {

// Small column-named result table used by the study operations. Cells are
// doubles or short strings (flag columns). CSV serialization uses '.'
// decimals and 17 significant digits so doubles round-trip exactly.
class Table {
  public:
    struct Cell {
        enum class Kind { number, text } kind = Kind::number;
        double num = 0.0;
        std::string text;

        static Cell number_cell(double v) { return Cell{Kind::number, v, {}}; }
        static Cell text_cell(std::string s) { return Cell{Kind::text, 0.0, std::move(s)}; }
    };

    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    std::size_t cols() const { return columns_.size(); }
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& column_names() const { return columns_; }

    void add_row(std::vector<Cell> row);
    const Cell& at(std::size_t row, std::size_t col) const;
    double number_at(std::size_t row, std::size_t col) const;

    // Column values as doubles (errors on text cells).
    std::vector<double> column(std::size_t col) const;
    std::size_t column_index(const std::string& name) const;

    // CSV body: header row plus data rows. Leading comment lines (timestamp,
    // config echo) are the caller's business.
    std::string to_csv() const;

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);  // %.17g

}  // namespace gabor

#endif
