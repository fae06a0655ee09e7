#pragma once

#include "eisen/numtheory.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace eisen {

using ZVec = std::vector<BigInt>;

// Dense integer matrix, row-major. Vectors act on the left (v -> v * A).
class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ZMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  ZVec row(std::size_t i) const;

  ZMatrix operator*(const ZMatrix& o) const;
  ZMatrix operator+(const ZMatrix& o) const;
  ZMatrix operator-(const ZMatrix& o) const;
  // this + c * identity
  ZMatrix shifted(const BigInt& c) const;
  bool is_zero() const;
  friend bool operator==(const ZMatrix& a, const ZMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

ZVec vec_times(const ZVec& v, const ZMatrix& a);

// Incremental row Hermite normal form of the Z-span of inserted vectors.
// Rows are kept in echelon form with positive pivots; entries above a pivot
// are reduced into [0, pivot). Once the lattice has full rank the
// determinant is used as a modulus for new vectors.
class HnfBuilder {
 public:
  explicit HnfBuilder(std::size_t cols) : cols_(cols) {}

  void insert(ZVec v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  // Basis sorted by pivot column, fully reduced.
  std::vector<ZVec> basis() const;
  std::vector<std::size_t> pivots() const;
  // Coordinates of v in the basis; throws if v is outside the lattice.
  ZVec coordinates(ZVec v) const;
  bool contains(ZVec v) const;

 private:
  void reduce_above(std::size_t k);
  bool full_rank() const { return rows_.size() == cols_; }

  std::size_t cols_;
  std::vector<ZVec> rows_;
  std::vector<std::size_t> pivot_;
  BigInt modulus_;
};

// Elementary divisors (nonzero ones, ascending in the divisibility chain).
std::vector<BigInt> elementary_divisors(std::vector<ZVec> rows, std::size_t cols);

// Saturated basis of {x in Z^m : x * B = 0} for an m x n integer matrix B.
std::vector<ZVec> integer_left_kernel(const ZMatrix& b);

// Solves x * B = v over Q where the rows of B are linearly independent.
// Returns false if v is not in the rational row span.
bool solve_rational_left(const std::vector<ZVec>& basis, const ZVec& v, std::vector<Rational>& x);

// Row-span computations over F_ell with ell < 2^31.
namespace modp {

using Vec = std::vector<std::uint32_t>;
using Mat = std::vector<Vec>;

// Basis of {y : y * A = 0} where A is rows x cols.
Mat left_nullspace(const Mat& a, std::size_t cols, std::uint32_t ell);
std::size_t rank(Mat a, std::uint32_t ell);
std::uint32_t reduce(std::int64_t x, std::uint32_t ell);

}  // namespace modp

}  // namespace eisen
