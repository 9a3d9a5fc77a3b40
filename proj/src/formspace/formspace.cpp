#include "nondeg/formspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace nondeg {

Sign sign_from_int(int v) {
  if (v < -1 || v > 1) throw FormError("sign must be -1, 0 or +1");
  return static_cast<Sign>(v);
}

Sign operator*(Sign a, Sign b) { return static_cast<Sign>(to_int(a) * to_int(b)); }

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Symplectic: return "Sp";
    case Kind::Unitary: return "U";
    case Kind::Orthogonal: return "O";
  }
  return "?";
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Minus: return "-";
    case Sign::Circ: return "circ";
    case Sign::Plus: return "+";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "Sp" || s == "sp" || s == "symplectic") return Kind::Symplectic;
  if (s == "U" || s == "u" || s == "unitary") return Kind::Unitary;
  if (s == "O" || s == "o" || s == "orthogonal") return Kind::Orthogonal;
  throw FormError("unknown form kind '" + s + "'");
}

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus" || s == "+1" || s == "1") return Sign::Plus;
  if (s == "-" || s == "minus" || s == "-1") return Sign::Minus;
  if (s == "0" || s == "circ" || s == "o") return Sign::Circ;
  throw FormError("unknown type '" + s + "'");
}

Vec nth_vector(const Field& f, std::size_t dim, std::uint64_t n) {
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = static_cast<Elem>(n % f.order());
    n /= f.order();
  }
  return v;
}

std::uint64_t vector_count(const Field& f, std::size_t dim, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    n *= f.order();
    if (n > cap) throw FormError("vector space too large to scan");
  }
  return n;
}

namespace {

Elem quad_eval(const Field& f, const Mat& quad, const Vec& v) {
  Elem acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Elem inner = 0;
    for (std::size_t j = i; j < v.size(); ++j) inner = f.add(inner, f.mul(quad(i, j), v[j]));
    acc = f.add(acc, f.mul(v[i], inner));
  }
  return acc;
}

Elem bilinear(const Field& f, const Mat& b, const Vec& u, const Vec& v) {
  Elem acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    acc = f.add(acc, f.mul(u[i], dot(f, b.row(i), v)));
  }
  return acc;
}

Mat polar(const Mat& quad) { return quad + quad.transpose(); }

bool is_upper_triangular(const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != 0) return false;
  return true;
}

Elem least_nonsquare(const Field& f) {
  for (Elem a = 1; a < f.order(); ++a)
    if (f.pow(a, (f.order() - 1) / 2) != 1) return a;
  throw std::logic_error("no non-square in odd-order field");
}

// Absolute trace GF(2^k) -> GF(2).
Elem trace2(const Field& f, Elem c) {
  Elem acc = 0, x = c;
  for (unsigned i = 0; i < f.degree(); ++i) {
    acc = f.add(acc, x);
    x = f.frobenius(x);
  }
  return acc;
}

}  // namespace

ClassicalSpace::ClassicalSpace(Kind kind, Field field, std::uint32_t q, Mat gram, std::optional<Mat> quad,
                               std::optional<Sign> declared) {
  const std::size_t d = gram.rows();
  if (!gram.is_square()) throw FormError("Gram matrix must be square");
  if (!(gram.field() == field)) throw FormError("Gram matrix over the wrong field");
  Mat qpart(field, d, d);
  Sign eps = Sign::Circ;
  switch (kind) {
    case Kind::Symplectic:
      if (field.order() != q) throw FormError("symplectic space must be over GF(q)");
      for (std::size_t i = 0; i < d; ++i) {
        if (gram(i, i) != 0) throw FormError("symplectic Gram matrix must have zero diagonal");
        for (std::size_t j = 0; j < d; ++j)
          if (gram(i, j) != field.neg(gram(j, i))) throw FormError("symplectic Gram matrix must be alternating");
      }
      break;
    case Kind::Unitary: {
      if (field.degree() % 2 != 0 || std::uint64_t{q} * q != field.order())
        throw FormError("unitary space must be over GF(q^2)");
      const unsigned half = field.degree() / 2;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (gram(i, j) != field.frobenius(gram(j, i), half)) throw FormError("unitary Gram matrix must be hermitian");
      break;
    }
    case Kind::Orthogonal:
      if (field.order() != q) throw FormError("orthogonal space must be over GF(q)");
      if (!quad) throw FormError("orthogonal space needs a quadratic part");
      if (!(quad->field() == field) || quad->rows() != d || quad->cols() != d || !is_upper_triangular(*quad))
        throw FormError("quadratic part must be an upper-triangular d x d matrix");
      if (!(polar(*quad) == gram)) throw FormError("Gram matrix must be the polar form of the quadratic part");
      qpart = *quad;
      break;
  }
  if (d > 0 && determinant(gram) == 0) throw FormError("form is degenerate");
  if (kind == Kind::Orthogonal) {
    eps = quadratic_type(field, qpart);
    if (declared && *declared != eps)
      throw FormError("quadratic form has type " + to_string(eps) + ", not " + to_string(*declared));
  }
  d_ = std::make_shared<const Data>(Data{kind, std::move(field), q, std::move(gram), std::move(qpart), eps});
}

Elem ClassicalSpace::conj(Elem x) const {
  return d_->kind == Kind::Unitary ? d_->field.frobenius(x, d_->field.degree() / 2) : x;
}

Vec ClassicalSpace::conj(const Vec& v) const {
  if (d_->kind != Kind::Unitary) return v;
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = conj(v[i]);
  return out;
}

Mat ClassicalSpace::conj(const Mat& m) const {
  if (d_->kind != Kind::Unitary) return m;
  return m.map([this](Elem x) { return conj(x); });
}

bool ClassicalSpace::operator==(const ClassicalSpace& o) const {
  if (d_ == o.d_) return true;
  return d_->kind == o.d_->kind && d_->q == o.d_->q && d_->gram == o.d_->gram && d_->quad == o.d_->quad;
}

std::string ClassicalSpace::describe() const {
  std::string s = to_string(kind());
  if (kind() == Kind::Orthogonal) s += eps() == Sign::Circ ? "o" : to_string(eps());
  return s + "(" + std::to_string(dim()) + "," + std::to_string(q()) + ")";
}

ClassicalSpace standard_space(Kind kind, std::size_t d, std::uint32_t q, Sign eps) {
  const Field base = Field::of_order(q);
  if (kind == Kind::Unitary) {
    if (d < 1) throw FormError("unitary dimension must be at least 1");
    const Field f = Field::make(base.characteristic(), 2 * base.degree());
    return ClassicalSpace(kind, f, q, Mat::identity(f, d));
  }
  const Field& f = base;
  if (kind == Kind::Symplectic) {
    if (d < 2 || d % 2 != 0) throw FormError("symplectic dimension must be even and positive");
    Mat b(f, d, d);
    for (std::size_t i = 0; i + 1 < d; i += 2) {
      b(i, i + 1) = 1;
      b(i + 1, i) = f.neg(1);
    }
    return ClassicalSpace(kind, f, q, b);
  }
  if (d < 1) throw FormError("orthogonal dimension must be positive");
  if (d % 2 == 1 && eps != Sign::Circ) throw FormError("odd-dimensional orthogonal space has type circ");
  if (d % 2 == 0 && eps == Sign::Circ) throw FormError("even-dimensional orthogonal space has type + or -");
  if (d % 2 == 1 && q % 2 == 0) throw FormError("odd-dimensional orthogonal space needs odd q");
  Mat quad(f, d, d);
  const std::size_t pairs = (eps == Sign::Plus) ? d / 2 : (d - 1) / 2;
  const std::size_t pair_end = (eps == Sign::Minus) ? d - 2 : 2 * pairs;
  for (std::size_t i = 0; i < pair_end; i += 2) quad(i, i + 1) = 1;
  if (eps == Sign::Minus) {
    const std::size_t a = d - 2, b = d - 1;
    quad(a, a) = 1;
    if (f.characteristic() == 2) {
      Elem c = 1;
      while (trace2(f, c) != 1) ++c;
      quad(a, b) = 1;
      quad(b, b) = c;
    } else {
      quad(b, b) = f.neg(least_nonsquare(f));
    }
  } else if (eps == Sign::Circ) {
    quad(d - 1, d - 1) = 1;
  }
  return ClassicalSpace(kind, f, q, polar(quad), quad, eps);
}

Elem evaluate_form(const ClassicalSpace& V, const Vec& u, const Vec& v) {
  if (u.size() != V.dim() || v.size() != V.dim()) throw FormError("vector dimension mismatch");
  return bilinear(V.field(), V.gram(), u, V.conj(v));
}

Elem evaluate_quadratic(const ClassicalSpace& V, const Vec& v) {
  if (V.kind() != Kind::Orthogonal) throw FormError("quadratic form only defined for orthogonal spaces");
  if (v.size() != V.dim()) throw FormError("vector dimension mismatch");
  return quad_eval(V.field(), V.quad(), v);
}

Mat restricted_gram(const ClassicalSpace& V, const Mat& basis) {
  return basis * V.gram() * V.conj(basis).transpose();
}

Mat restricted_quad(const ClassicalSpace& V, const Mat& basis) {
  const Field& f = V.field();
  const std::size_t e = basis.rows();
  Mat out(f, e, e);
  const Mat g = restricted_gram(V, basis);
  for (std::size_t i = 0; i < e; ++i) {
    out(i, i) = quad_eval(f, V.quad(), basis.row_vec(i));
    for (std::size_t j = i + 1; j < e; ++j) out(i, j) = g(i, j);
  }
  return out;
}

Sign quadratic_type(const Field& f, const Mat& quad) {
  const std::size_t n = quad.rows();
  const Mat b = polar(quad);
  if (n > 0 && determinant(b) == 0) throw FormError("quadratic form is degenerate");
  if (n % 2 == 1) return Sign::Circ;
  Mat cur = Mat::identity(f, n);
  const Elem q = f.order();
  while (cur.rows() > 0) {
    const std::size_t r = cur.rows();
    const std::size_t span = std::min<std::size_t>(r, 3);
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < span; ++i) combos *= q;
    Vec v;
    for (std::uint64_t c = 1; c < combos && v.empty(); ++c) {
      const Vec coeff = nth_vector(f, span, c);
      Vec x(n, 0);
      for (std::size_t i = 0; i < span; ++i) x = vec_add(f, x, vec_scale(f, cur.row_vec(i), coeff[i]));
      if (quad_eval(f, quad, x) == 0) v = std::move(x);
    }
    if (v.empty()) {
      if (r == 2) return Sign::Minus;
      throw std::logic_error("no singular vector in a quadratic space of dimension >= 3");
    }
    Vec w;
    for (std::size_t i = 0; i < r && w.empty(); ++i) {
      const Elem bv = bilinear(f, b, v, cur.row_vec(i));
      if (bv != 0) w = vec_scale(f, cur.row_vec(i), f.inv(bv));
    }
    if (w.empty()) throw std::logic_error("singular vector in the radical");
    w = vec_sub(f, w, vec_scale(f, v, quad_eval(f, quad, w)));
    Mat next(f, r, n);
    for (std::size_t i = 0; i < r; ++i) {
      const Vec x = cur.row_vec(i);
      Vec y = vec_sub(f, x, vec_scale(f, v, bilinear(f, b, x, w)));
      y = vec_sub(f, y, vec_scale(f, w, bilinear(f, b, x, v)));
      std::copy(y.begin(), y.end(), next.row(i).begin());
    }
    cur = image(next);
    if (cur.rows() != r - 2) throw std::logic_error("hyperbolic splitting lost dimension");
  }
  return Sign::Plus;
}

std::uint64_t count_singular(const Field& f, const Mat& quad) {
  const std::uint64_t total = vector_count(f, quad.rows(), std::uint64_t{1} << 26);
  std::uint64_t n = 0;
  for (std::uint64_t i = 1; i < total; ++i)
    if (quad_eval(f, quad, nth_vector(f, quad.rows(), i)) == 0) ++n;
  return n;
}

Subspace::Subspace(const ClassicalSpace& ambient, const Mat& rows) : ambient_(ambient), basis_(ambient.field(), 0, ambient.dim()) {
  if (!(rows.field() == ambient.field()) || rows.cols() != ambient.dim())
    throw FormError("subspace rows do not match the ambient space");
  if (rows.rows() > 0) basis_ = image(rows);
  const std::size_t e = basis_.rows();
  nondeg_ = e == 0 || determinant(restricted_gram(ambient_, basis_)) != 0;
  if (ambient_.kind() == Kind::Orthogonal && e % 2 == 0 && nondeg_)
    type_ = e == 0 ? Sign::Plus : quadratic_type(ambient_.field(), restricted_quad(ambient_, basis_));
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_.dim()) throw FormError("vector dimension mismatch");
  if (vec_is_zero(v)) return true;
  if (dim() == 0) return false;
  return rank(basis_.stacked(Mat(ambient_.field(), 1, v.size(), v))) == dim();
}

Subspace whole_space(const ClassicalSpace& V) { return Subspace(V, Mat::identity(V.field(), V.dim())); }

Subspace zero_subspace(const ClassicalSpace& V) { return Subspace(V, Mat(V.field(), 0, V.dim())); }

namespace {

void check_ambient(const ClassicalSpace& V, const Subspace& S) {
  if (!(S.ambient() == V)) throw FormError("subspace belongs to a different space");
}

}  // namespace

Subspace perp(const ClassicalSpace& V, const Subspace& S) {
  check_ambient(V, S);
  if (S.dim() == 0) return whole_space(V);
  const Mat m = V.conj(S.basis()) * V.gram().transpose();
  const Mat k = kernel(m);
  return Subspace(V, k);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  const ClassicalSpace& V = a.ambient();
  if (a.dim() == 0 || b.dim() == 0) return zero_subspace(V);
  const Mat both = a.basis().stacked(b.basis());
  const Mat rel = kernel(both.transpose());
  Mat out(V.field(), rel.rows(), V.dim());
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    Vec c(rel.row(i).begin(), rel.row(i).begin() + static_cast<std::ptrdiff_t>(a.dim()));
    const Vec x = vec_mul(c, a.basis());
    std::copy(x.begin(), x.end(), out.row(i).begin());
  }
  return Subspace(V, out);
}

Subspace sum(const Subspace& a, const Subspace& b) { return Subspace(a.ambient(), a.basis().stacked(b.basis())); }

bool is_nondegenerate(const ClassicalSpace& V, const Subspace& S) {
  check_ambient(V, S);
  return S.nondegenerate();
}

Sign witt_classify(const ClassicalSpace& V, const Subspace& S) {
  check_ambient(V, S);
  if (V.kind() != Kind::Orthogonal) throw FormError("Witt type only defined for orthogonal spaces");
  if (!S.nondegenerate()) throw FormError("restriction is degenerate");
  if (S.type()) return *S.type();
  return quadratic_type(V.field(), restricted_quad(V, S.basis()));
}

ClassicalSpace restrict_to(const ClassicalSpace& V, const Subspace& S) {
  check_ambient(V, S);
  if (!S.nondegenerate() || S.dim() == 0) throw FormError("restriction is degenerate");
  const Mat g = restricted_gram(V, S.basis());
  if (V.kind() == Kind::Orthogonal) return ClassicalSpace(V.kind(), V.field(), V.q(), g, restricted_quad(V, S.basis()));
  return ClassicalSpace(V.kind(), V.field(), V.q(), g);
}

}  // namespace nondeg
