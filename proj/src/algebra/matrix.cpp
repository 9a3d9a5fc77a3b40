#include "nondeg/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace nondeg {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldError("matrix field mismatch: " + a.name() + " vs " + b.name());
}

}  // namespace

Mat::Mat(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Mat::Mat(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count does not match shape");
  for (Elem e : a_)
    if (!field_.contains(e)) throw FieldError("matrix entry outside " + field_.name());
}

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows) {
  std::vector<Elem> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("row length mismatch");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Mat(f, rows.size(), cols, std::move(entries));
}

Mat Mat::operator*(const Mat& o) const {
  require_same_field(field_, o.field_);
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  Mat out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out(i, j) = field_.add(out(i, j), field_.mul(a, o(k, j)));
    }
  }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  require_same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
  Mat out(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(a_[i], o.a_[i]);
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  require_same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
  Mat out(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.sub(a_[i], o.a_[i]);
  return out;
}

Mat Mat::transpose() const {
  Mat out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Mat Mat::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("submatrix out of range");
  Mat out(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

Mat Mat::stacked(const Mat& o) const {
  require_same_field(field_, o.field_);
  if (cols_ != o.cols_) throw std::invalid_argument("stacking matrices with different column counts");
  std::vector<Elem> e = a_;
  e.insert(e.end(), o.a_.begin(), o.a_.end());
  return Mat(field_, rows_ + o.rows_, cols_, std::move(e));
}

bool Mat::is_zero() const {
  for (Elem e : a_)
    if (e != 0) return false;
  return true;
}

bool Mat::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Vec vec_mul(const Vec& v, const Mat& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector-matrix dimension mismatch");
  const Field& f = m.field();
  Vec out(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[k], m(k, j)));
  }
  return out;
}

Elem dot(const Field& f, std::span<const Elem> u, std::span<const Elem> v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot product dimension mismatch");
  Elem acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc = f.add(acc, f.mul(u[i], v[i]));
  return acc;
}

Vec vec_sub(const Field& f, const Vec& u, const Vec& v) {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.sub(u[i], v[i]);
  return out;
}

Vec vec_add(const Field& f, const Vec& u, const Vec& v) {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.add(u[i], v[i]);
  return out;
}

Vec vec_scale(const Field& f, const Vec& u, Elem s) {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.mul(u[i], s);
  return out;
}

bool vec_is_zero(const Vec& v) {
  for (Elem e : v)
    if (e != 0) return false;
  return true;
}

Rref rref(const Mat& m) {
  const Field& f = m.field();
  Mat r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, col) == 0) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
    const Elem s = f.inv(r(row, col));
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) = f.mul(r(row, j), s);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row) continue;
      const Elem c = r(i, col);
      if (c == 0) continue;
      for (std::size_t j = col; j < r.cols(); ++j) r(i, j) = f.sub(r(i, j), f.mul(c, r(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).rank(); }

Mat image(const Mat& m) {
  auto rr = rref(m);
  return rr.reduced.submatrix(0, 0, rr.rank(), m.cols());
}

Mat kernel(const Mat& m) {
  const Field& f = m.field();
  auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = f.neg(rr.reduced(i, free));
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Mat(f, 0, m.cols());
  return image(Mat::from_rows(f, m.cols(), basis));
}

Elem determinant(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const Field& f = m.field();
  Mat r = m;
  Elem det = 1;
  const std::size_t n = r.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && r(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(piv, j), r(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, r(col, col));
    const Elem s = f.inv(r(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const Elem c = f.mul(r(i, col), s);
      if (c == 0) continue;
      for (std::size_t j = col; j < n; ++j) r(i, j) = f.sub(r(i, j), f.mul(c, r(col, j)));
    }
  }
  return det;
}

Mat inverse(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const Field& f = m.field();
  Mat aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto rr = rref(aug);
  if (rr.rank() < n || rr.pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  return rr.reduced.submatrix(0, n, n, n);
}

Vec coordinates(const Mat& basis, const Vec& v) {
  // Solve c * basis = v, i.e. basis^T c^T = v^T.
  const Field& f = basis.field();
  const std::size_t e = basis.rows();
  const std::size_t d = basis.cols();
  Mat aug(f, d, e + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < e; ++j) aug(i, j) = basis(j, i);
    aug(i, e) = v[i];
  }
  auto rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == e) throw std::domain_error("vector not in row space");
  if (rr.rank() != e) throw std::domain_error("basis rows are dependent");
  Vec c(e);
  for (std::size_t i = 0; i < e; ++i) c[i] = rr.reduced(i, e);
  return c;
}

Poly char_poly(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Mat h = m;

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t piv = c + 1;
    while (piv < n && h(piv, c) == 0) ++piv;
    if (piv == n) continue;
    if (piv != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
    }
    const Elem s = f.inv(h(c + 1, c));
    for (std::size_t i = c + 2; i < n; ++i) {
      const Elem t = f.mul(h(i, c), s);
      if (t == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h(i, j) = f.sub(h(i, j), f.mul(t, h(c + 1, j)));
      for (std::size_t r = 0; r < n; ++r) h(r, c + 1) = f.add(h(r, c + 1), f.mul(t, h(r, i)));
    }
  }

  // p_k(t) = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}.
  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::constant(f, 1));
  for (std::size_t k = 0; k < n; ++k) {
    Poly next = Poly::linear(f, h(k, k)) * p[k];
    Elem sub_prod = 1;
    for (std::size_t i = k; i-- > 0;) {
      sub_prod = f.mul(sub_prod, h(i + 1, i));
      if (sub_prod == 0) break;
      const Elem coef = f.mul(h(i, k), sub_prod);
      if (coef != 0) next = next - p[i].scaled(coef);
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

Mat eval_poly(const Poly& p, const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("polynomial evaluation needs a square matrix");
  const Field& f = m.field();
  Mat acc(f, m.rows(), m.cols());
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) = f.add(acc(d, d), c[i]);
  }
  return acc;
}

}  // namespace nondeg
