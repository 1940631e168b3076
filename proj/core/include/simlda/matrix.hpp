#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace simlda {

/// Dense row-major matrix. Rows are exposed as spans.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using CountMatrix = DenseMatrix<std::int64_t>;

/// Builds a matrix from nested rows; every row must have the same length.
Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> matrix_to_rows(const Matrix& m);

/// Divides each row by its sum. Rows summing to zero are left untouched.
void normalize_rows(Matrix& m);

/// Largest |row sum - 1| over all rows.
double max_row_sum_error(const Matrix& m);

}  // namespace simlda
