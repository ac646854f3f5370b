#include "maxstable/grid.hpp"

#include <cmath>
#include <string>

#include "maxstable/errors.hpp"

namespace maxstable {

GridSpec GridSpec::line(std::size_t length) {
  if (length == 0) throw DomainError("grid must contain at least one site");
  GridSpec g;
  g.dimension_ = 1;
  g.rows_ = length;
  g.cols_ = 1;
  g.sites_.reserve(length);
  for (std::size_t i = 1; i <= length; ++i) g.sites_.push_back({static_cast<int>(i), 0});
  return g;
}

GridSpec GridSpec::lattice(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DomainError("grid must contain at least one site");
  GridSpec g;
  g.dimension_ = 2;
  g.rows_ = rows;
  g.cols_ = cols;
  g.sites_.reserve(rows * cols);
  for (std::size_t r = 1; r <= rows; ++r) {
    for (std::size_t c = 1; c <= cols; ++c) g.sites_.push_back({static_cast<int>(r), static_cast<int>(c)});
  }
  return g;
}

std::optional<std::size_t> GridSpec::index_of(const Site& s) const {
  if (s.row < 1 || static_cast<std::size_t>(s.row) > rows_) return std::nullopt;
  if (dimension_ == 1) {
    if (s.col != 0) return std::nullopt;
    return static_cast<std::size_t>(s.row - 1);
  }
  if (s.col < 1 || static_cast<std::size_t>(s.col) > cols_) return std::nullopt;
  return static_cast<std::size_t>(s.row - 1) * cols_ + static_cast<std::size_t>(s.col - 1);
}

double GridSpec::distance(const Site& a, const Site& b) {
  const double dr = a.row - b.row;
  const double dc = a.col - b.col;
  return std::sqrt(dr * dr + dc * dc);
}

double Path::at(const Site& s) const {
  const auto idx = grid.index_of(s);
  if (!idx) {
    throw ProblemError("site (" + std::to_string(s.row) + "," + std::to_string(s.col) + ") outside the path");
  }
  return values[*idx];
}

}  // namespace maxstable
