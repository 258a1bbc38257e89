#pragma once

// Points of the tropical and non-negative tropical prevariety of a system of
// fans, evaluation on characters, induced maps and the comparison map.

#include "prevtrop/sysfan.hpp"

#include <compare>
#include <string>
#include <vector>

namespace prevtrop {

class FiniteLocusNotAFace : public Error {
public:
    using Error::Error;
};

class RelationViolation : public Error {
public:
    using Error::Error;
};

class ChartMismatch : public Error {
public:
    using Error::Error;
};

/// A rational number or +infinity, with a + inf = inf.
class ExtRational {
public:
    ExtRational() : infinite_(true) {}
    ExtRational(Rational value) : infinite_(false), value_(std::move(value)) {}
    ExtRational(long value) : infinite_(false), value_(value) {}
    static ExtRational infinity() { return {}; }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }
    /// Requires a finite value.
    const Rational& value() const;

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    bool infinite_;
    Rational value_;
};

std::string to_string(const ExtRational& x);
ExtRational parse_ext_rational(std::string_view text);

/// A point of X^trop: the stratum N_R/span(sigma) of a class [sigma,i] and
/// coordinates in the quotient basis given by quotient_by_span(sigma).
struct TropPoint {
    std::size_t cls = 0;
    RatVector coords;

    friend bool operator==(const TropPoint&, const TropPoint&) = default;
    friend std::strong_ordering operator<=>(const TropPoint& a, const TropPoint& b);
};

/// A point of X^{trop,>=0}, in canonical form: `chart` is the smallest class
/// whose non-negative chart contains the point, `face` is the class of the
/// finite-locus face tau and `coords` lie in the image of the chart cone in
/// N_R/span(tau).
struct NonNegTropPoint {
    std::size_t chart = 0;
    std::size_t face = 0;
    RatVector coords;

    friend bool operator==(const NonNegTropPoint&, const NonNegTropPoint&) = default;
    friend std::strong_ordering operator<=>(const NonNegTropPoint& a, const NonNegTropPoint& b);
};

struct ChartTerm {
    IntVector exponent;   // element of S_sigma
    ExtRational valuation;
};

/// sum of a_s chi^s on the chart of a class, coefficients recorded by valuation.
struct ValuatedChartPolynomial {
    std::size_t chart = 0;
    std::vector<ChartTerm> terms;
};

struct ClassData {
    Cone cone;
    std::size_t rep = 0;
    AffineSemigroup semigroup;          // generators of S_sigma
    Quotient quotient;                  // N -> N/span(sigma), rows P
    Lattice perp;                       // sigma^perp cap M, basis = rows of P
};

struct Stratum {
    std::size_t cls;
    std::size_t dim;
};

struct NonNegStratum {
    std::size_t chart;
    std::size_t face;
    std::size_t dim;
};

/// A validated system of fans together with precomputed per-class data.
/// Immutable after construction.
class TropicalPrevariety {
public:
    /// Throws Error listing the first violation if the system is invalid.
    explicit TropicalPrevariety(SystemOfFans system);

    const SystemOfFans& system() const { return system_; }
    const OmegaPoset& omega() const { return omega_; }
    std::size_t ambient_rank() const { return system_.ambient_rank(); }
    const ClassData& data(std::size_t cls) const { return data_.at(cls); }
    std::size_t class_count() const { return data_.size(); }

    /// Throws if the class is unknown or the coordinate count is wrong.
    void check(const TropPoint& p) const;
    void check(const NonNegTropPoint& q) const;

    /// u(s) for s in S_tau, tau the stratum cone of p.
    ExtRational eval(const TropPoint& p, std::span<const Integer> s) const;
    /// u(s) for s in S_sigma of a chart class above p's class.
    ExtRational eval(const TropPoint& p, std::size_t chart, std::span<const Integer> s) const;
    /// Values on the generators of S_sigma of a chart class above p's class.
    std::vector<ExtRational> chart_values(const TropPoint& p, std::size_t chart) const;

    /// The point with the given values on the generators of S_sigma.
    TropPoint point_from_chart_values(std::size_t chart, const std::vector<ExtRational>& values) const;

    /// A non-negative point given on some chart, canonicalized.
    NonNegTropPoint make_nonneg(std::size_t chart, std::size_t face, RatVector coords) const;
    NonNegTropPoint nonneg_from_chart_values(std::size_t chart,
                                             const std::vector<ExtRational>& values) const;
    TropPoint compare_to_trop(const NonNegTropPoint& q) const;
    /// All non-negative points mapping to p.
    std::vector<NonNegTropPoint> nonneg_preimages(const TropPoint& p) const;

    ExtRational skeleton_seminorm(const TropPoint& p, const ValuatedChartPolynomial& f) const;

    std::vector<Stratum> strata() const;
    std::vector<NonNegStratum> nonneg_strata() const;

private:
    SystemOfFans system_;
    OmegaPoset omega_;
    std::vector<ClassData> data_;
};

/// f^trop(p) for a morphism of systems of fans.
TropPoint induced_map(const SysFanMorphism& m, const TropicalPrevariety& source,
                      const TropicalPrevariety& target, const TropPoint& p);

}  // namespace prevtrop
