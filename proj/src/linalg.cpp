#include "eisen/linalg.hpp"

#include "eisen/error.hpp"

#include <algorithm>
#include <utility>

namespace eisen {

ZMatrix ZMatrix::identity(std::size_t n) {
  ZMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZVec ZMatrix::row(std::size_t i) const {
  return ZVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ZMatrix ZMatrix::operator*(const ZMatrix& o) const {
  if (cols_ != o.rows_) throw InternalError("matrix shape mismatch in product");
  ZMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) != 0) out.at(i, j) += a * o.at(k, j);
      }
    }
  }
  return out;
}

ZMatrix ZMatrix::operator+(const ZMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix shape mismatch in sum");
  ZMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

ZMatrix ZMatrix::operator-(const ZMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix shape mismatch in difference");
  ZMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

ZMatrix ZMatrix::shifted(const BigInt& c) const {
  ZMatrix out = *this;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) out.at(i, i) += c;
  return out;
}

bool ZMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

ZVec vec_times(const ZVec& v, const ZMatrix& a) {
  if (v.size() != a.rows()) throw InternalError("vector/matrix shape mismatch");
  ZVec out(a.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(k, j) != 0) out[j] += v[k] * a.at(k, j);
    }
  }
  return out;
}

namespace {

std::size_t leading(const ZVec& v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) return j;
  }
  return v.size();
}

void axpy(ZVec& y, const BigInt& a, const ZVec& x) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (x[j] != 0) y[j] += a * x[j];
  }
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

void HnfBuilder::insert(ZVec v) {
  if (v.size() != cols_) throw InternalError("HNF insert with wrong length");
  if (full_rank()) {
    for (auto& x : v) x = x % modulus_;
  }
  while (true) {
    const std::size_t j = leading(v);
    if (j == cols_) return;
    auto it = std::find(pivot_.begin(), pivot_.end(), j);
    if (it == pivot_.end()) {
      if (v[j] < 0) {
        for (auto& x : v) x = -x;
      }
      const auto pos = static_cast<std::size_t>(
          std::upper_bound(pivot_.begin(), pivot_.end(), j) - pivot_.begin());
      pivot_.insert(pivot_.begin() + static_cast<std::ptrdiff_t>(pos), j);
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
      reduce_above(pos);
      if (full_rank()) {
        modulus_ = 1;
        for (std::size_t k = 0; k < cols_; ++k) modulus_ *= rows_[k][k];
        for (auto& row : rows_) {
          for (auto& x : row) x = x % modulus_;
        }
        // Re-establish positive pivots after the modular reduction; a pivot
        // can only vanish mod D when it equals D, so restore it.
        for (std::size_t k = 0; k < cols_; ++k) {
          if (rows_[k][k] == 0) rows_[k][k] = modulus_;
        }
        for (std::size_t k = 0; k < cols_; ++k) reduce_above(k);
      }
      return;
    }
    const auto k = static_cast<std::size_t>(it - pivot_.begin());
    ZVec& b = rows_[k];
    if (v[j] % b[j] == 0) {
      const BigInt q = v[j] / b[j];
      axpy(v, -q, b);
    } else {
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t(), v[j].get_mpz_t());
      const BigInt bj = b[j] / g;
      const BigInt vj = v[j] / g;
      ZVec nb(cols_), nv(cols_);
      for (std::size_t c = 0; c < cols_; ++c) {
        nb[c] = s * b[c] + t * v[c];
        nv[c] = vj * b[c] - bj * v[c];
      }
      if (full_rank()) {
        for (auto& x : nv) x = x % modulus_;
      }
      b = std::move(nb);
      v = std::move(nv);
      reduce_above(k);
    }
    if (full_rank()) {
      for (auto& x : v) x = x % modulus_;
    }
  }
}

void HnfBuilder::reduce_above(std::size_t k) {
  const std::size_t j = pivot_[k];
  const ZVec& b = rows_[k];
  for (std::size_t i = 0; i < k; ++i) {
    if (rows_[i][j] == 0) continue;
    const BigInt q = floor_div(rows_[i][j], b[j]);
    if (q != 0) axpy(rows_[i], -q, b);
  }
}

std::vector<ZVec> HnfBuilder::basis() const {
  HnfBuilder copy = *this;
  for (std::size_t k = 0; k < copy.rows_.size(); ++k) copy.reduce_above(k);
  return copy.rows_;
}

std::vector<std::size_t> HnfBuilder::pivots() const { return pivot_; }

ZVec HnfBuilder::coordinates(ZVec v) const {
  ZVec x(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t j = pivot_[k];
    for (std::size_t c = 0; c < j && c < v.size(); ++c) {
      if (v[c] != 0) throw InternalError("vector outside lattice span");
    }
    if (v[j] % rows_[k][j] != 0) throw InternalError("vector outside lattice");
    x[k] = v[j] / rows_[k][j];
    if (x[k] != 0) axpy(v, -x[k], rows_[k]);
  }
  for (const auto& c : v) {
    if (c != 0) throw InternalError("vector outside lattice span");
  }
  return x;
}

bool HnfBuilder::contains(ZVec v) const {
  try {
    coordinates(std::move(v));
    return true;
  } catch (const InternalError&) {
    return false;
  }
}

std::vector<BigInt> elementary_divisors(std::vector<ZVec> rows, std::size_t cols) {
  // Smith form by repeated row and column gcd elimination.
  std::vector<BigInt> out;
  const std::size_t m = rows.size();
  std::size_t r = 0;
  for (std::size_t c0 = 0; r < m && c0 < cols; ++c0) {
    // find a nonzero entry with smallest absolute value in the trailing block
    while (true) {
      std::size_t bi = m, bj = cols;
      BigInt best;
      for (std::size_t i = r; i < m; ++i) {
        for (std::size_t j = r; j < cols; ++j) {
          if (rows[i][j] == 0) continue;
          if (bi == m || abs(rows[i][j]) < best) {
            best = abs(rows[i][j]);
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == m) {
        std::sort(out.begin(), out.end());
        return out;
      }
      std::swap(rows[r], rows[bi]);
      if (bj != r) {
        for (auto& row : rows) std::swap(row[r], row[bj]);
      }
      const BigInt p = rows[r][r];
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (rows[i][r] == 0) continue;
        const BigInt q = floor_div(rows[i][r], p);
        axpy(rows[i], -q, rows[r]);
        if (rows[i][r] != 0) clean = false;
      }
      for (std::size_t j = r + 1; j < cols; ++j) {
        if (rows[r][j] == 0) continue;
        const BigInt q = floor_div(rows[r][j], p);
        for (std::size_t i = r; i < m; ++i) rows[i][j] -= q * rows[i][r];
        if (rows[r][j] != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide every remaining entry
      bool divides = true;
      for (std::size_t i = r + 1; i < m && divides; ++i) {
        for (std::size_t j = r + 1; j < cols; ++j) {
          if (rows[i][j] % p != 0) {
            axpy(rows[r], BigInt(1), rows[i]);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    out.push_back(abs(rows[r][r]));
    ++r;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ZVec> integer_left_kernel(const ZMatrix& b) {
  // Unimodular row reduction of [B | I]; rows whose B-part vanishes give the kernel.
  const std::size_t m = b.rows(), n = b.cols();
  std::vector<ZVec> rows(m, ZVec(n + m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = b.at(i, j);
    rows[i][n + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (rows[i][c] != 0 && (best == m || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      }
      if (best == m) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (rows[i][c] == 0) continue;
        const BigInt q = floor_div(rows[i][c], rows[r][c]);
        axpy(rows[i], -q, rows[r]);
        if (rows[i][c] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  std::vector<ZVec> kernel;
  for (std::size_t i = r; i < m; ++i) {
    kernel.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(n), rows[i].end());
  }
  // LLL is overkill here; a size reduction through HNF keeps entries small.
  HnfBuilder h(m);
  for (auto& v : kernel) h.insert(v);
  return h.basis();
}

bool solve_rational_left(const std::vector<ZVec>& basis, const ZVec& v, std::vector<Rational>& x) {
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  // Gaussian elimination on the transposed system: columns are basis vectors.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) a[j][i] = Rational(basis[i][j]);
    a[j][k] = Rational(v[j]);
  }
  std::vector<std::size_t> where(k, n);
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && a[sel][col].is_zero()) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    const Rational inv = Rational(1) / a[row][col];
    for (auto& e : a[row]) e *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      const Rational f = a[i][col];
      for (std::size_t c = col; c <= k; ++c) a[i][c] -= f * a[row][c];
    }
    where[col] = row;
    ++row;
  }
  for (std::size_t i = row; i < n; ++i) {
    if (!a[i][k].is_zero()) return false;
  }
  x.assign(k, Rational(0));
  for (std::size_t col = 0; col < k; ++col) {
    if (where[col] == n) return false;
    x[col] = a[where[col]][k];
  }
  return true;
}

namespace modp {

std::uint32_t reduce(std::int64_t x, std::uint32_t ell) {
  const auto r = x % static_cast<std::int64_t>(ell);
  return static_cast<std::uint32_t>(r < 0 ? r + ell : r);
}

namespace {

std::uint32_t inv(std::uint32_t a, std::uint32_t ell) {
  return static_cast<std::uint32_t>(inverse_mod(a, ell));
}

}  // namespace

Mat left_nullspace(const Mat& a, std::size_t cols, std::uint32_t ell) {
  // Row-reduce [A | I]; the identity part of rows with zero A-part spans the nullspace.
  const std::size_t m = a.size();
  Mat rows(m, Vec(cols + m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) rows[i][j] = a[i][j] % ell;
    rows[i][cols + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    std::size_t sel = r;
    while (sel < m && rows[sel][c] == 0) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[r]);
    const std::uint64_t iv = inv(rows[r][c], ell);
    for (auto& e : rows[r]) e = static_cast<std::uint32_t>(e * iv % ell);
    for (std::size_t i = r + 1; i < m; ++i) {
      const std::uint64_t f = rows[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols + m; ++j) {
        rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + (ell - f) * rows[r][j]) % ell);
      }
    }
    ++r;
  }
  Mat out;
  for (std::size_t i = r; i < m; ++i) out.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(cols), rows[i].end());
  return out;
}

std::size_t rank(Mat a, std::uint32_t ell) {
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t sel = r;
    while (sel < a.size() && a[sel][c] % ell == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[r]);
    const std::uint64_t iv = inv(a[r][c] % ell, ell);
    for (auto& e : a[r]) e = static_cast<std::uint32_t>(e % ell * iv % ell);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const std::uint64_t f = a[i][c] % ell;
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] = static_cast<std::uint32_t>((a[i][j] % ell + (ell - f) * a[r][j]) % ell);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace modp

}  // namespace eisen
