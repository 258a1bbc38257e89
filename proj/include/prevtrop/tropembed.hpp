#pragma once

// Classical points over Q(t) with the t-adic valuation, their tropical and
// non-negative tropical images, Kapranov membership for hypersurfaces and
// the refinement of a graded embedding by one extra variable.

#include "prevtrop/multiproj.hpp"
#include "prevtrop/troppre.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prevtrop {

class NotBounded : public Error {
public:
    using Error::Error;
};

class NotHomogeneous : public Error {
public:
    using Error::Error;
};

class NotSeparating : public Error {
public:
    using Error::Error;
};

/// Polynomial in t over Q, dense, no trailing zero coefficients.
class QtPoly {
public:
    QtPoly() = default;
    QtPoly(Rational c);
    QtPoly(long c) : QtPoly(Rational(c)) {}
    /// c * t^e
    static QtPoly monomial(Rational c, std::size_t e);
    static QtPoly t() { return monomial(1, 1); }

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for zero.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    /// Lowest exponent with a nonzero coefficient; requires a nonzero polynomial.
    std::size_t order() const;
    const Rational& leading() const { return coeffs_.back(); }

    friend QtPoly operator+(const QtPoly& a, const QtPoly& b);
    friend QtPoly operator-(const QtPoly& a, const QtPoly& b);
    friend QtPoly operator-(const QtPoly& a);
    friend QtPoly operator*(const QtPoly& a, const QtPoly& b);
    friend bool operator==(const QtPoly&, const QtPoly&) = default;

    /// Quotient and remainder, b nonzero.
    static std::pair<QtPoly, QtPoly> divide(const QtPoly& a, const QtPoly& b);
    /// Monic gcd, zero if both are zero.
    static QtPoly gcd(const QtPoly& a, const QtPoly& b);

private:
    void trim();
    std::vector<Rational> coeffs_;
};

std::string to_string(const QtPoly& p);

/// An element num/den of Q(t), stored reduced with a monic denominator.
class ValuedScalar {
public:
    ValuedScalar() : ValuedScalar(QtPoly(), QtPoly(1)) {}
    ValuedScalar(QtPoly num, QtPoly den = QtPoly(1));
    ValuedScalar(Rational c) : ValuedScalar(QtPoly(std::move(c))) {}
    ValuedScalar(long c) : ValuedScalar(QtPoly(c)) {}
    static ValuedScalar t() { return QtPoly::t(); }

    const QtPoly& num() const { return num_; }
    const QtPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// ord_t(num) - ord_t(den), infinity for 0.
    ExtRational valuation() const;
    /// Negative exponents require a nonzero scalar.
    ValuedScalar pow(const Integer& e) const;

    friend ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b);
    friend ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b);
    friend ValuedScalar operator-(const ValuedScalar& a);
    friend ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b);
    friend ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b);
    friend bool operator==(const ValuedScalar&, const ValuedScalar&) = default;

private:
    QtPoly num_;
    QtPoly den_;
};

std::string to_string(const ValuedScalar& x);

struct PolyTerm {
    IntVector exponent;
    ValuedScalar coeff;
};

/// Laurent polynomial sum coeff * T^exponent with coefficients in Q(t).
struct Polynomial {
    std::size_t n = 0;
    std::vector<PolyTerm> terms;

    /// Zero coordinates are allowed where the exponent is non-negative.
    ValuedScalar evaluate(const std::vector<ValuedScalar>& point) const;
};

/// The degree shared by all terms; NotHomogeneous otherwise.
IntVector homogeneous_degree(const Grading& g, const Polynomial& f);

/// A point of the chart U_sigma with values on the generators of S_sigma.
struct ClassicalChartPoint {
    std::size_t chart = 0;
    std::vector<ValuedScalar> values;
};

/// Throws unless the values are multiplicative and vanish off a face.
void check_classical(const TropicalPrevariety& x, const ClassicalChartPoint& p);

/// chi^s(p) for s in S_sigma.
ValuedScalar character_value(const TropicalPrevariety& x, const ClassicalChartPoint& p,
                             std::span<const Integer> s);

/// The point of the orbit of `face` (a class below `chart`) given by the
/// torus element `torus`: chi^s -> prod torus_i^{s_i} on face^perp, 0 off it.
ClassicalChartPoint classical_point(const TropicalPrevariety& x, std::size_t chart, std::size_t face,
                                    const std::vector<ValuedScalar>& torus);

TropPoint trop_point(const TropicalPrevariety& x, const ClassicalChartPoint& p);
/// Throws NotBounded if some generator has negative valuation.
NonNegTropPoint nonneg_trop_point(const TropicalPrevariety& x, const ClassicalChartPoint& p);

/// Image under the toric morphism with lattice map m.lattice_map.
ClassicalChartPoint map_point(const SysFanMorphism& m, const TropicalPrevariety& source,
                              const TropicalPrevariety& target, const ClassicalChartPoint& p);

/// Min-twice test after discarding terms that are infinite at w; true when
/// nothing survives.
bool kapranov_membership(const TropicalPrevariety& x, const ValuatedChartPolynomial& f, const TropPoint& w);

/// Valuations of the coefficients of a chart polynomial.
ValuatedChartPolynomial valuated(std::size_t chart, const Polynomial& f);

/// Proj of a graded polynomial ring with its tropical prevariety.
struct ProjPrevariety {
    Grading grading;
    ProjResult proj;
    TropicalPrevariety trop;

    explicit ProjPrevariety(const Grading& g);
    /// Class of the maximal cone of a chart of the system.
    std::size_t chart_class(std::size_t chart) const;
};

/// The chart point of homogeneous coordinates T; T_i != 0 for i in the chart subset.
ClassicalChartPoint cox_chart_point(const ProjPrevariety& p, std::size_t chart,
                                    const std::vector<ValuedScalar>& coords);
/// First chart whose variables are all nonzero at T.
std::optional<std::size_t> cox_chart(const ProjPrevariety& p, const std::vector<ValuedScalar>& coords);

struct Refinement {
    Grading grading;           // old variables followed by x
    Polynomial substitution;   // x -> gtilde
    IntVector divisor;         // h, the regular function is x / h
};

Refinement refine_embedding(const Grading& g, const Polynomial& gtilde, const IntVector& h);

/// (T, gtilde(T)).
std::vector<ValuedScalar> refine_coords(const Refinement& r, const std::vector<ValuedScalar>& coords);

/// Tropicalizes T extended by x on the chart of the refined system with the
/// same subset as the old chart.
TropPoint refined_trop(const ProjPrevariety& refined, const Refinement& r, const Subset& chart,
                       const std::vector<ValuedScalar>& coords);

/// Forgets the x coordinate of a point of the refined system lying in the
/// chart with the given (x-free) subset.
TropPoint forget_refinement(const ProjPrevariety& old, const ProjPrevariety& refined,
                            const Subset& chart, const TropPoint& p);

struct SeparationWitness {
    Refinement refinement;
    TropPoint first;
    TropPoint second;
};

/// f is a Laurent polynomial of degree 0 regular on the chart; h is the
/// smallest monomial with h*f polynomial. Throws NotSeparating unless the
/// points have equal tropicalizations on the chart and val f differs.
SeparationWitness separation_witness(const ProjPrevariety& old, const Subset& chart,
                                     const std::vector<ValuedScalar>& p,
                                     const std::vector<ValuedScalar>& q, const Polynomial& f);

}  // namespace prevtrop
