#include "vfree/linalg.hpp"

#include <sstream>

#include "vfree/error.hpp"
#include "vfree/kernels.hpp"

namespace vfree {

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(&f), r_(rows), c_(cols), a_(rows * cols, f.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw_input("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Scalar> Matrix::row(std::size_t i) const {
  return {a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_)};
}

std::vector<Scalar> Matrix::col(std::size_t j) const {
  std::vector<Scalar> v;
  v.reserve(r_);
  for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(*field_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::embed(const Field& target) const {
  Matrix m(target, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = vfree::embed(a_[i], target);
  return m;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != c_) throw_integrity("matrix-vector size mismatch");
  std::vector<Scalar> out(r_, field_->zero());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) throw_integrity("matrix product size mismatch");
  Matrix m(*a.field_, a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

std::uint32_t inv_small(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Rref rref_packed(const Matrix& a) {
  const auto p = static_cast<std::uint32_t>(a.field().characteristic());
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<std::vector<std::uint32_t>> m(R, std::vector<std::uint32_t>(C));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) m[i][j] = a(i, j).digits()[0];
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < C && r < R; ++j) {
    std::size_t piv = r;
    while (piv < R && m[piv][j] == 0) ++piv;
    if (piv == R) continue;
    std::swap(m[r], m[piv]);
    const std::uint32_t inv = inv_small(m[r][j], p);
    for (auto& v : m[r]) v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * inv % p);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m[i][j] == 0) continue;
      kernels::axpy_mod(m[i], m[r], p - m[i][j], p);
    }
    pivots.push_back(j);
    ++r;
  }
  Matrix out(a.field(), R, C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = a.field().from_int(m[i][j]);
  return {std::move(out), std::move(pivots)};
}

}  // namespace

Rref rref(const Matrix& a) {
  const Field& F = a.field();
  if (F.is_prime_field() && F.characteristic() < kernels::kMaxModulus) return rref_packed(a);
  Matrix m = a;
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < C && r < R; ++j) {
    std::size_t piv = r;
    while (piv < R && m(piv, j).is_zero()) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t k = 0; k < C; ++k) std::swap(m(r, k), m(piv, k));
    const Scalar inv = m(r, j).inverse();
    for (std::size_t k = j; k < C; ++k) m(r, k) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m(i, j).is_zero()) continue;
      const Scalar c = m(i, j);
      for (std::size_t k = j; k < C; ++k)
        if (!m(r, k).is_zero()) m(i, k) -= c * m(r, k);
    }
    pivots.push_back(j);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

std::vector<std::vector<Scalar>> kernel(const Matrix& a) {
  const Field& F = a.field();
  Rref r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto j : r.pivots) is_pivot[j] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(a.cols(), F.zero());
    v[f] = F.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b) {
  if (b.size() != a.rows()) throw_integrity("solve: size mismatch");
  const Field& F = a.field();
  Matrix aug(F, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  std::vector<Scalar> x(a.cols(), F.zero());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.m(i, a.cols());
  return x;
}

Scalar det(const Matrix& a) {
  if (a.rows() != a.cols()) throw_integrity("det of non-square matrix");
  const Field& F = a.field();
  Matrix m = a;
  const std::size_t n = m.rows();
  Scalar d = F.one();
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    while (piv < n && m(piv, j).is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != j) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(j, k), m(piv, k));
      d = -d;
    }
    d *= m(j, j);
    const Scalar inv = m(j, j).inverse();
    for (std::size_t i = j + 1; i < n; ++i) {
      if (m(i, j).is_zero()) continue;
      const Scalar c = m(i, j) * inv;
      for (std::size_t k = j; k < n; ++k) m(i, k) -= c * m(j, k);
    }
  }
  return d;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw_integrity("inverse of non-square matrix");
  const std::size_t n = a.rows();
  const Field& F = a.field();
  Matrix aug(F, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = F.one();
  }
  Rref r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
  return inv;
}

}  // namespace vfree
