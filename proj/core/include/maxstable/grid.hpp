#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace maxstable {

/// Integer lattice point. One-dimensional grids leave `col` at 0.
struct Site {
  int row = 0;
  int col = 0;

  friend bool operator==(const Site&, const Site&) = default;
  friend Site operator+(Site a, Site b) { return {a.row + b.row, a.col + b.col}; }
  friend Site operator-(Site a, Site b) { return {a.row - b.row, a.col - b.col}; }
};

/// Ordered set of unit-mesh lattice sites. 1D grids are {1..L}; 2D grids are
/// rows x cols lattices {1..rows} x {1..cols} stored row-major.
class GridSpec {
 public:
  static GridSpec line(std::size_t length);
  static GridSpec lattice(std::size_t rows, std::size_t cols);
  static GridSpec square(std::size_t n) { return lattice(n, n); }

  int dimension() const { return dimension_; }
  std::size_t size() const { return sites_.size(); }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& site(std::size_t index) const { return sites_[index]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Position of `s` in the site order, if it belongs to the grid.
  std::optional<std::size_t> index_of(const Site& s) const;
  bool contains(const Site& s) const { return index_of(s).has_value(); }

  /// Euclidean distance between two sites (|i - j| in 1D).
  static double distance(const Site& a, const Site& b);

 private:
  int dimension_ = 1;
  std::size_t rows_ = 0;
  std::size_t cols_ = 1;
  std::vector<Site> sites_;
};

/// Realization of a field on a grid; values are in site order.
struct Path {
  GridSpec grid;
  std::vector<double> values;

  double at(const Site& s) const;
};

}  // namespace maxstable
