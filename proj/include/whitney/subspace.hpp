#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "whitney/linalg.hpp"

namespace whitney {

// An affine flat {x : Cx = b}, stored with [C|b] in reduced row echelon form
// and C of full row rank. The rref is a canonical representation, so flats
// compare and hash by it directly.
class AffineFlat {
 public:
  static AffineFlat full_space(int ambient) {
    AffineFlat f;
    f.ambient_ = ambient;
    f.cb_ = RatMat(0, ambient + 1);
    return f;
  }

  // Canonicalizes; nullopt when the constraints are inconsistent (empty flat).
  static std::optional<AffineFlat> from_constraints(const RatMat& c,
                                                    const std::vector<Rat>& b) {
    if (c.rows() != static_cast<int>(b.size()))
      throw std::invalid_argument("constraint shape mismatch");
    RatMat aug(c.rows(), c.cols() + 1);
    for (int i = 0; i < c.rows(); ++i) {
      for (int j = 0; j < c.cols(); ++j) aug.at(i, j) = c.at(i, j);
      aug.at(i, c.cols()) = b[static_cast<size_t>(i)];
    }
    return reduce(c.cols(), std::move(aug));
  }

  // Flat spanned by the given basis rows (linear part) translated by offset.
  static AffineFlat from_basis_offset(int ambient, const RatMat& basis,
                                      const std::vector<Rat>& offset) {
    if (basis.cols() != ambient && basis.rows() > 0)
      throw std::invalid_argument("basis ambient mismatch");
    RatMat b = basis.rows() ? basis : RatMat(0, ambient);
    RatMat c = nullspace(b);  // rows annihilate the linear part
    std::vector<Rat> rhs = mat_vec(c, offset);
    auto f = from_constraints(c, rhs);
    // Constraints built from a genuine point are always consistent.
    return *f;
  }

  int ambient() const { return ambient_; }
  int codim() const { return cb_.rows(); }
  int dim() const { return ambient_ - cb_.rows(); }
  bool is_full_space() const { return cb_.rows() == 0; }

  bool is_central() const {
    for (int i = 0; i < cb_.rows(); ++i)
      if (cb_.at(i, ambient_) != 0) return false;
    return true;
  }

  // Constraint rows [C|b].
  const RatMat& constraints_aug() const { return cb_; }
  RatMat constraint_matrix() const {
    RatMat c(cb_.rows(), ambient_);
    for (int i = 0; i < cb_.rows(); ++i)
      for (int j = 0; j < ambient_; ++j) c.at(i, j) = cb_.at(i, j);
    return c;
  }
  std::vector<Rat> constraint_rhs() const {
    std::vector<Rat> b(static_cast<size_t>(cb_.rows()));
    for (int i = 0; i < cb_.rows(); ++i) b[static_cast<size_t>(i)] = cb_.at(i, ambient_);
    return b;
  }

  // Deterministic echelon basis of the linear part, as rows.
  RatMat basis() const { return nullspace(constraint_matrix()); }

  // Particular point with free coordinates zero.
  std::vector<Rat> point() const {
    auto p = solve_particular(constraint_matrix(), constraint_rhs());
    return *p;
  }

  // Offset canonicalized as the projection onto the orthogonal complement of
  // the linear part: the minimum-norm solution of Cx = b via normal equations.
  std::vector<Rat> min_norm_point() const {
    if (cb_.rows() == 0) return std::vector<Rat>(static_cast<size_t>(ambient_));
    RatMat c = constraint_matrix();
    RatMat cct = mat_mul(c, transpose(c));
    auto y = solve_particular(cct, constraint_rhs());
    return mat_vec(transpose(c), *y);
  }

  std::optional<AffineFlat> intersect(const AffineFlat& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("ambient mismatch");
    RatMat aug = cb_;
    for (int i = 0; i < o.cb_.rows(); ++i) aug.append_row(o.cb_.row(i));
    return reduce(ambient_, std::move(aug));
  }

  // True iff this flat contains  other (as point sets).
  bool contains(const AffineFlat& other) const {
    if (ambient_ != other.ambient_) return false;
    if (cb_.rows() == 0) return true;
    if (other.cb_.rows() < cb_.rows()) return false;
    // Every constraint row of *this must reduce to zero against other's rref.
    for (int i = 0; i < cb_.rows(); ++i) {
      std::vector<Rat> r = cb_.row(i);
      other.reduce_row_against(r);
      for (const Rat& v : r)
        if (v != 0) return false;
    }
    return true;
  }

  bool operator==(const AffineFlat& o) const {
    return ambient_ == o.ambient_ && cb_ == o.cb_;
  }

  // Canonical string key (rref is unique per flat).
  std::string key() const {
    std::ostringstream os;
    os << ambient_ << "|";
    for (int i = 0; i < cb_.rows(); ++i) {
      for (int j = 0; j <= ambient_; ++j) os << rat_to_string(cb_.at(i, j)) << ",";
      os << ";";
    }
    return os.str();
  }

 private:
  static std::optional<AffineFlat> reduce(int ambient, RatMat aug) {
    std::vector<int> pivots = rref_in_place(aug);
    RatMat rows(0, ambient + 1);
    for (size_t i = 0; i < pivots.size(); ++i) {
      if (pivots[i] == ambient) return std::nullopt;  // pivot in b column: empty
      rows.append_row(aug.row(static_cast<int>(i)));
    }
    AffineFlat f;
    f.ambient_ = ambient;
    f.cb_ = std::move(rows);
    return f;
  }

  void reduce_row_against(std::vector<Rat>& r) const {
    // cb_ is rref'd; eliminate r's entries at the pivot columns.
    for (int i = 0; i < cb_.rows(); ++i) {
      int p = 0;
      while (p <= ambient_ && cb_.at(i, p) == 0) ++p;
      if (p > ambient_) continue;
      const Rat& f = r[static_cast<size_t>(p)];
      if (f == 0) continue;
      Rat factor = f;  // pivot is 1
      for (int j = p; j <= ambient_; ++j) r[static_cast<size_t>(j)] -= factor * cb_.at(i, j);
    }
  }

  int ambient_ = 0;
  RatMat cb_;  // [C | b], rref'd, full row rank
};

// Arrangement element: an affine flat plus a label. The basis/offset view
// required by the serialization format is derived from the canonical
// constraint form.
struct Subspace {
  AffineFlat flat;
  std::string label;

  static Subspace from_basis_offset(int ambient, const RatMat& basis,
                                    const std::vector<Rat>& offset,
                                    std::string label = {}) {
    return Subspace{AffineFlat::from_basis_offset(ambient, basis, offset),
                    std::move(label)};
  }
  static Subspace from_constraints(const RatMat& c, const std::vector<Rat>& b,
                                   std::string label = {}) {
    auto f = AffineFlat::from_constraints(c, b);
    if (!f) throw std::invalid_argument("subspace constraints are inconsistent");
    return Subspace{*f, std::move(label)};
  }

  int dim() const { return flat.dim(); }
  RatMat basis() const { return flat.basis(); }
  std::vector<Rat> offset() const { return flat.min_norm_point(); }
};

}  // namespace whitney
