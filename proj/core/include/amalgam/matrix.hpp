#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace amalgam {

using Int = std::int64_t;

// Overflow-checked integer arithmetic; throws std::overflow_error.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Dense row-major matrix of 64-bit integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0);
  /// Builds from nested rows; throws std::invalid_argument if ragged.
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Int> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<Int> column(std::size_t c) const;
  std::vector<std::vector<Int>> to_rows() const;

  IntMatrix transpose() const;
  IntMatrix with_columns_permuted(std::span<const std::size_t> new_position) const;
  IntMatrix without_column(std::size_t c) const;

  Int row_sum(std::size_t r) const;
  Int column_sum(std::size_t c) const;
  Int max_entry() const;
  bool column_is_zero(std::size_t c) const;

  /// y = M^T x  (length cols()).
  std::vector<Int> transpose_times(std::span<const Int> x) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::string to_string(const IntMatrix& m);
std::string to_string(std::span<const Int> v);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace amalgam
