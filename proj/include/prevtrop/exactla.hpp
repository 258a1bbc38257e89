#pragma once

// Exact integer and rational linear algebra over GMP integers.
//
// Everything in this header is a value type: matrices, lattices and groups
// are immutable once built and can be shared freely between threads.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prevtrop {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Parses "p", "-p", "p/q"; the result is canonical (reduced, q > 0).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
IntVector primitive(IntVector v);
/// Clears denominators and divides out the content.
IntVector primitive(const RatVector& v);
bool is_zero(std::span<const Integer> v);
bool is_zero(std::span<const Rational> v);
RatVector to_rational(std::span<const Integer> v);

/// Lexicographic comparison, -1/0/1.
int compare(std::span<const Integer> a, std::span<const Integer> b);
int compare(std::span<const Rational> a, std::span<const Rational> b);

struct LexLess {
    bool operator()(const IntVector& a, const IntVector& b) const { return compare(a, b) < 0; }
};

/// Dense row-major matrix of arbitrary precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    /// All rows must have length `cols`; `cols` is needed for the 0-row case.
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector column(std::size_t j) const;
    std::vector<IntVector> row_vectors() const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(std::span<const Integer> v) const;
    RatVector operator*(std::span<const Rational> v) const;

    bool is_zero() const;
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_columns(std::size_t a, std::size_t b);
    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void negate_row(std::size_t i);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Row-style Hermite normal form: H = U*A, pivots positive, entries above
/// a pivot reduced into [0, pivot), zero rows last.
struct HermiteResult {
    IntMatrix H;
    IntMatrix U;
    std::vector<std::size_t> pivot_columns;
};
HermiteResult hermite_normal_form(const IntMatrix& A);

/// Smith normal form: D = P*A*Q, diagonal with d1 | d2 | ... and d_i >= 0.
struct SmithResult {
    IntMatrix D;
    IntMatrix P;
    IntMatrix Q;
    std::vector<Integer> invariant_factors() const;
};
SmithResult smith_normal_form(const IntMatrix& A);

std::size_t rank(const IntMatrix& A);
std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols);
Integer determinant(const IntMatrix& A);

/// Some rational x with A*x = b (free variables set to zero), if any.
std::optional<RatVector> solve_rational(const IntMatrix& A, std::span<const Rational> b);
/// Some integer x with A*x = b, if any.
std::optional<IntVector> solve_integer(const IntMatrix& A, std::span<const Integer> b);
/// Inverse of a nonsingular square matrix over the rationals.
std::vector<RatVector> inverse_rational(const IntMatrix& A);

/// A free lattice given by a basis (the rows of `basis`) inside Z^ambient.
class Lattice {
public:
    Lattice() = default;
    /// The basis is put into Hermite normal form; rows must be independent.
    Lattice(std::size_t ambient, const IntMatrix& basis);
    /// Z^rank with its standard basis.
    static Lattice standard(std::size_t rank);

    std::size_t rank() const { return basis_.rows(); }
    std::size_t ambient_rank() const { return ambient_; }
    const IntMatrix& basis() const { return basis_; }
    std::vector<IntVector> basis_vectors() const { return basis_.row_vectors(); }

    bool contains(std::span<const Integer> v) const;
    /// Coordinates of v with respect to the basis, if v lies in the lattice.
    std::optional<IntVector> coordinates(std::span<const Integer> v) const;
    /// SNF of the basis matrix has only unit invariant factors.
    bool is_saturated() const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    std::size_t ambient_ = 0;
    IntMatrix basis_;
};

/// Saturated basis of { v in Z^n : A*v = 0 }.
Lattice kernel_lattice(const IntMatrix& A);

/// Z^free_rank + Z/m_1 + ... + Z/m_k.
class AbelianGroup {
public:
    AbelianGroup() = default;
    AbelianGroup(std::size_t free_rank, std::vector<Integer> torsion);

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    std::size_t coordinate_count() const { return free_rank_ + torsion_.size(); }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

    /// Torsion coordinates reduced into [0, m_k).
    IntVector reduce(IntVector element) const;

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
};

struct CokernelInfo {
    bool finite = false;
    std::optional<Integer> index;
};

/// Whether the columns of A generate a finite-index subgroup of `target`.
CokernelInfo cokernel_is_finite(const IntMatrix& A, const AbelianGroup& target);

}  // namespace prevtrop
