#pragma once

// Dense matrices over a Field. Vectors are rows; a matrix acts on the right
// (v -> v M), so the row space of M is its image.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nondeg/field.hpp"
#include "nondeg/poly.hpp"

namespace nondeg {

using Vec = std::vector<Elem>;

class Mat {
 public:
  Mat(Field field, std::size_t rows, std::size_t cols);
  Mat(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Mat identity(const Field& f, std::size_t n);
  static Mat from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  const std::vector<Elem>& entries() const { return a_; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && field_ == o.field_;
  }

  Mat transpose() const;
  template <class Fn>
  Mat map(Fn&& fn) const {
    Mat out(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = fn(a_[i]);
    return out;
  }
  Mat submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  // Rows of *this followed by rows of o.
  Mat stacked(const Mat& o) const;

  bool is_zero() const;
  bool is_identity() const;

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> a_;
};

// v M for a row vector v.
Vec vec_mul(const Vec& v, const Mat& m);
Elem dot(const Field& f, std::span<const Elem> u, std::span<const Elem> v);
Vec vec_sub(const Field& f, const Vec& u, const Vec& v);
Vec vec_add(const Field& f, const Vec& u, const Vec& v);
Vec vec_scale(const Field& f, const Vec& u, Elem s);
bool vec_is_zero(const Vec& v);

struct Rref {
  Mat reduced;                      // full reduced row echelon form (same shape)
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

Rref rref(const Mat& m);
std::size_t rank(const Mat& m);
// Basis (as rows, reduced echelon) of the row space of m.
Mat image(const Mat& m);
// Basis (as rows, reduced echelon) of {x : m x^T = 0}; a 0 x cols matrix when trivial.
Mat kernel(const Mat& m);
Elem determinant(const Mat& m);
Mat inverse(const Mat& m);
// Coordinates c with c * basis = v; basis rows independent. Throws if v is
// not in the row space.
Vec coordinates(const Mat& basis, const Vec& v);

// Monic characteristic polynomial det(tI - M), via Hessenberg reduction.
Poly char_poly(const Mat& m);
// p(M) by Horner evaluation.
Mat eval_poly(const Poly& p, const Mat& m);

}  // namespace nondeg
