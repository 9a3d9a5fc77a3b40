#pragma once

// Classical spaces (symplectic, unitary, orthogonal) over small finite fields,
// their subspaces, perps, restrictions and Witt types.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "nondeg/matrix.hpp"

namespace nondeg {

enum class Kind { Symplectic, Unitary, Orthogonal };

// Orthogonal type; identified with the integers -1, 0, +1.
enum class Sign : int { Minus = -1, Circ = 0, Plus = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
Sign sign_from_int(int v);
Sign operator*(Sign a, Sign b);
std::string to_string(Kind k);
std::string to_string(Sign s);
Kind parse_kind(const std::string& s);
Sign parse_sign(const std::string& s);

class FormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ClassicalSpace {
 public:
  // Validates non-degeneracy and the shape of the form data. For Orthogonal,
  // `quad` is upper triangular and gram = quad + quad^T; eps is recomputed
  // and compared with `declared` when given.
  ClassicalSpace(Kind kind, Field field, std::uint32_t q, Mat gram, std::optional<Mat> quad = std::nullopt,
                 std::optional<Sign> declared = std::nullopt);

  Kind kind() const { return d_->kind; }
  // GF(q^2) for Unitary, GF(q) otherwise.
  const Field& field() const { return d_->field; }
  // Order of the form's base field: |F| for Sp/O, sqrt(|F|) for U.
  std::uint32_t q() const { return d_->q; }
  std::size_t dim() const { return d_->gram.rows(); }
  const Mat& gram() const { return d_->gram; }
  // Upper-triangular quadratic part; zero matrix unless Orthogonal.
  const Mat& quad() const { return d_->quad; }
  // Orthogonal type; Circ for non-orthogonal spaces.
  Sign eps() const { return d_->eps; }

  // x -> x^q on GF(q^2) for Unitary, identity otherwise.
  Elem conj(Elem x) const;
  Vec conj(const Vec& v) const;
  Mat conj(const Mat& m) const;

  bool operator==(const ClassicalSpace& o) const;
  std::string describe() const;

 private:
  struct Data {
    Kind kind;
    Field field;
    std::uint32_t q;
    Mat gram;
    Mat quad;
    Sign eps;
  };
  std::shared_ptr<const Data> d_;
};

// Standard models: hyperbolic pairs; O^- ends in an anisotropic plane,
// O^circ in a 1-dimensional block x^2. eps is ignored unless kind is O.
ClassicalSpace standard_space(Kind kind, std::size_t d, std::uint32_t q, Sign eps = Sign::Circ);

Elem evaluate_form(const ClassicalSpace& V, const Vec& u, const Vec& v);
Elem evaluate_quadratic(const ClassicalSpace& V, const Vec& v);

class Subspace {
 public:
  // Row space of `rows`, stored as its reduced echelon basis.
  Subspace(const ClassicalSpace& ambient, const Mat& rows);

  const ClassicalSpace& ambient() const { return ambient_; }
  const Mat& basis() const { return basis_; }
  std::size_t dim() const { return basis_.rows(); }
  bool nondegenerate() const { return nondeg_; }
  // Set iff Orthogonal, dim even and the restriction non-degenerate.
  std::optional<Sign> type() const { return type_; }
  bool contains(const Vec& v) const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator<(const Subspace& o) const { return basis_.entries() < o.basis_.entries(); }

 private:
  ClassicalSpace ambient_;
  Mat basis_;
  bool nondeg_ = false;
  std::optional<Sign> type_;
};

// Form values on a basis: S B conj(S)^T.
Mat restricted_gram(const ClassicalSpace& V, const Mat& basis);
// Upper-triangular quadratic part of Q restricted to the rows of basis.
Mat restricted_quad(const ClassicalSpace& V, const Mat& basis);

Subspace whole_space(const ClassicalSpace& V);
Subspace zero_subspace(const ClassicalSpace& V);
Subspace perp(const ClassicalSpace& V, const Subspace& S);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
bool is_nondegenerate(const ClassicalSpace& V, const Subspace& S);
// Plus iff the Witt index is maximal (even dim), Circ for odd dim.
Sign witt_classify(const ClassicalSpace& V, const Subspace& S);
ClassicalSpace restrict_to(const ClassicalSpace& V, const Subspace& S);

// Witt type of a non-degenerate quadratic form given by its upper-triangular
// part, by greedy hyperbolic splitting.
Sign quadratic_type(const Field& f, const Mat& quad);
// Number of nonzero v with Q(v) = 0 (brute force).
std::uint64_t count_singular(const Field& f, const Mat& quad);

// n-th vector of F^dim in base-|F| digit order (coordinate 0 least significant).
Vec nth_vector(const Field& f, std::size_t dim, std::uint64_t n);
// q^dim, throwing FormError when above cap.
std::uint64_t vector_count(const Field& f, std::size_t dim, std::uint64_t cap = std::uint64_t{1} << 32);

}  // namespace nondeg
