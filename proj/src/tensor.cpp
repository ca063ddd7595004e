#include "agreetensor/tensor.hpp"

#include <string>

namespace agreetensor {

const char* to_string(CellClass c) {
  switch (c) {
    case CellClass::AllEqual: return "AllEqual";
    case CellClass::Eq12: return "Eq12";
    case CellClass::Eq13: return "Eq13";
    case CellClass::Eq23: return "Eq23";
    case CellClass::AllDistinct: return "AllDistinct";
  }
  return "?";
}

void check_cell(int n, Cell c) {
  if (c.i < 1 || c.j < 1 || c.k < 1 || c.i > n || c.j > n || c.k > n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "cell (" + std::to_string(c.i) + "," + std::to_string(c.j) + "," +
                    std::to_string(c.k) + ") outside 1.." + std::to_string(n));
  }
}

CellClass classify_cell(int n, Cell c) {
  check_cell(n, c);
  return cell_class(c);
}

std::size_t class_cardinality(CellClass c, int n) {
  const auto m = static_cast<std::size_t>(n);
  switch (c) {
    case CellClass::AllEqual: return m;
    case CellClass::Eq12:
    case CellClass::Eq13:
    case CellClass::Eq23: return m * (m - 1);
    case CellClass::AllDistinct: return m * (m - 1) * (m - 2);
  }
  return 0;
}

std::vector<Cell> all_cells(int n) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) cells.push_back(Cell{i, j, k});
  return cells;
}

}  // namespace agreetensor
