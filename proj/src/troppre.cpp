#include "prevtrop/troppre.hpp"

#include <algorithm>

namespace prevtrop {

const Rational& ExtRational::value() const
{
    if (infinite_)
        throw Error("value() of infinity");
    return value_;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b)
{
    if (a.infinite_ || b.infinite_)
        return ExtRational::infinity();
    return ExtRational(Rational(a.value_ + b.value_));
}

bool operator==(const ExtRational& a, const ExtRational& b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ <=> b.infinite_;
    int c = cmp(a.value_, b.value_);
    return c <=> 0;
}

std::string to_string(const ExtRational& x)
{
    return x.is_infinite() ? "inf" : to_string(x.value());
}

ExtRational parse_ext_rational(std::string_view text)
{
    if (text == "inf")
        return ExtRational::infinity();
    return parse_rational(text);
}

std::strong_ordering operator<=>(const TropPoint& a, const TropPoint& b)
{
    if (auto c = a.cls <=> b.cls; c != 0)
        return c;
    return compare(a.coords, b.coords) <=> 0;
}

std::strong_ordering operator<=>(const NonNegTropPoint& a, const NonNegTropPoint& b)
{
    if (auto c = a.chart <=> b.chart; c != 0)
        return c;
    if (auto c = a.face <=> b.face; c != 0)
        return c;
    return compare(a.coords, b.coords) <=> 0;
}

TropicalPrevariety::TropicalPrevariety(SystemOfFans system) : system_(std::move(system))
{
    auto violations = validate_system(system_);
    if (!violations.empty())
        throw Error("invalid system of fans: " + violations.front().message);
    omega_ = OmegaPoset(system_);
    const std::size_t n = system_.ambient_rank();
    for (const auto& cls : omega_.classes()) {
        ClassData d;
        d.cone = cls.cone;
        d.rep = cls.rep;
        d.semigroup = hilbert_basis(cls.cone);
        d.quotient = quotient_by_span(cls.cone);
        d.perp = Lattice(n, d.quotient.projection);
        data_.push_back(std::move(d));
    }
}

void TropicalPrevariety::check(const TropPoint& p) const
{
    if (p.cls >= data_.size())
        throw Error("unknown stratum class " + std::to_string(p.cls));
    if (p.coords.size() != data_[p.cls].quotient.rank)
        throw DimensionMismatch("stratum of class " + std::to_string(p.cls) + " has dimension " +
                                std::to_string(data_[p.cls].quotient.rank));
}

void TropicalPrevariety::check(const NonNegTropPoint& q) const
{
    if (q.chart >= data_.size() || q.face >= data_.size())
        throw Error("unknown class in non-negative point");
    if (!omega_.leq(q.face, q.chart))
        throw ChartMismatch("face class is not below the chart class");
    if (q.coords.size() != data_[q.face].quotient.rank)
        throw DimensionMismatch("wrong coordinate count for the face class");
}

ExtRational TropicalPrevariety::eval(const TropPoint& p, std::span<const Integer> s) const
{
    check(p);
    const ClassData& d = data_[p.cls];
    if (s.size() != ambient_rank())
        throw DimensionMismatch("character has the wrong length");
    if (!d.semigroup.contains(s))
        throw Error("character is not in the monoid of the stratum cone");
    auto t = d.perp.coordinates(s);
    if (!t)
        return ExtRational::infinity();
    Rational v = 0;
    for (std::size_t k = 0; k < t->size(); ++k)
        v += p.coords[k] * (*t)[k];
    return v;
}

ExtRational TropicalPrevariety::eval(const TropPoint& p, std::size_t chart,
                                     std::span<const Integer> s) const
{
    check(p);
    if (chart >= data_.size() || !omega_.leq(p.cls, chart))
        throw ChartMismatch("point does not lie in the chart");
    if (s.size() != ambient_rank())
        throw DimensionMismatch("character has the wrong length");
    if (!data_[chart].semigroup.contains(s))
        throw Error("character is not in the monoid of the chart");
    return eval(p, s);
}

std::vector<ExtRational> TropicalPrevariety::chart_values(const TropPoint& p, std::size_t chart) const
{
    std::vector<ExtRational> out;
    for (const auto& g : data_.at(chart).semigroup.generators)
        out.push_back(eval(p, chart, g));
    return out;
}

TropPoint TropicalPrevariety::point_from_chart_values(std::size_t chart,
                                                      const std::vector<ExtRational>& values) const
{
    if (chart >= data_.size())
        throw Error("unknown chart class " + std::to_string(chart));
    const ClassData& c = data_[chart];
    const auto& gens = c.semigroup.generators;
    const std::size_t n = ambient_rank();
    if (values.size() != gens.size())
        throw DimensionMismatch("expected " + std::to_string(gens.size()) + " generator values");

    std::vector<std::size_t> finite;
    std::vector<IntVector> finite_gens;
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (values[k].is_finite()) {
            finite.push_back(k);
            finite_gens.push_back(gens[k]);
        }
    Cone tau = Cone::from_inequalities(n, c.cone.inequalities(), [&] {
        auto eqs = c.cone.equations();
        eqs.insert(eqs.end(), finite_gens.begin(), finite_gens.end());
        return eqs;
    }());
    auto face = omega_.class_of(tau, c.rep);
    if (!face || !c.cone.has_face(tau))
        throw FiniteLocusNotAFace("finite locus does not cut out a face");
    const ClassData& f = data_[*face];
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (f.perp.contains(gens[k]) != values[k].is_finite())
            throw FiniteLocusNotAFace("finite locus is not the monoid of a face: generator " +
                                      std::to_string(k) + " should be " +
                                      (values[k].is_finite() ? "infinite" : "finite"));

    if (!finite.empty()) {
        IntMatrix exps = IntMatrix::from_columns(finite_gens, n);
        for (const auto& rel : kernel_lattice(exps).basis_vectors()) {
            Rational total = 0;
            for (std::size_t k = 0; k < finite.size(); ++k)
                total += rel[k] * values[finite[k]].value();
            if (total != 0)
                throw RelationViolation("values violate a relation among the chart generators");
        }
    }

    std::vector<IntVector> rows;
    RatVector rhs;
    for (std::size_t k = 0; k < finite.size(); ++k) {
        rows.push_back(*f.perp.coordinates(finite_gens[k]));
        rhs.push_back(values[finite[k]].value());
    }
    TropPoint p{*face, RatVector(f.quotient.rank, Rational(0))};
    if (f.quotient.rank > 0) {
        auto w = solve_rational(IntMatrix::from_rows(rows, f.quotient.rank), rhs);
        if (!w)
            throw RelationViolation("values violate a relation among the chart generators");
        p.coords = *w;
    }
    return p;
}

NonNegTropPoint TropicalPrevariety::make_nonneg(std::size_t chart, std::size_t face,
                                                RatVector coords) const
{
    NonNegTropPoint q{chart, face, std::move(coords)};
    check(q);
    const ClassData& c = data_[chart];
    const ClassData& f = data_[face];
    if (omega_.class_of(f.cone, c.rep) != face)
        throw ChartMismatch("face class does not belong to the chart");
    if (!image(f.quotient.projection, c.cone).contains(std::span<const Rational>(q.coords)))
        throw Error("coordinates lie outside the non-negative part of the chart");

    const std::size_t n = ambient_rank();
    auto eqs = c.cone.equations();
    for (const auto& g : c.semigroup.generators) {
        auto t = f.perp.coordinates(g);
        if (!t)
            continue;
        Rational v = 0;
        for (std::size_t k = 0; k < t->size(); ++k)
            v += q.coords[k] * (*t)[k];
        if (v == 0)
            eqs.push_back(g);
    }
    Cone rho = Cone::from_inequalities(n, c.cone.inequalities(), eqs);
    auto minimal = omega_.class_of(rho, c.rep);
    if (!minimal)
        throw Error("internal: minimal chart is not a cone of the fan");
    q.chart = *minimal;
    return q;
}

NonNegTropPoint TropicalPrevariety::nonneg_from_chart_values(std::size_t chart,
                                                             const std::vector<ExtRational>& values) const
{
    for (const auto& v : values)
        if (v < ExtRational(0))
            throw Error("non-negative points take values in [0, inf]");
    TropPoint p = point_from_chart_values(chart, values);
    return make_nonneg(chart, p.cls, p.coords);
}

TropPoint TropicalPrevariety::compare_to_trop(const NonNegTropPoint& q) const
{
    check(q);
    return {q.face, q.coords};
}

std::vector<NonNegTropPoint> TropicalPrevariety::nonneg_preimages(const TropPoint& p) const
{
    check(p);
    const ClassData& f = data_[p.cls];
    std::vector<NonNegTropPoint> out;
    for (std::size_t b : omega_.up_set(p.cls)) {
        if (omega_.class_of(f.cone, data_[b].rep) != p.cls)
            continue;
        if (image(f.quotient.projection, data_[b].cone).in_relative_interior(p.coords))
            out.push_back({b, p.cls, p.coords});
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExtRational TropicalPrevariety::skeleton_seminorm(const TropPoint& p,
                                                  const ValuatedChartPolynomial& f) const
{
    ExtRational best = ExtRational::infinity();
    for (const auto& term : f.terms)
        best = std::min(best, term.valuation + eval(p, f.chart, term.exponent));
    return best;
}

std::vector<Stratum> TropicalPrevariety::strata() const
{
    std::vector<Stratum> out;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.push_back({i, data_[i].quotient.rank});
    return out;
}

std::vector<NonNegStratum> TropicalPrevariety::nonneg_strata() const
{
    std::vector<NonNegStratum> out;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        const ClassData& c = data_[i];
        for (const auto& tau : c.cone.faces()) {
            auto face = omega_.class_of(tau, c.rep);
            if (!face)
                throw Error("internal: face missing from the fan");
            out.push_back({i, *face, c.cone.dim() - tau.dim()});
        }
    }
    return out;
}

TropPoint induced_map(const SysFanMorphism& m, const TropicalPrevariety& source,
                      const TropicalPrevariety& target, const TropPoint& p)
{
    source.check(p);
    if (m.class_map.size() != source.class_count())
        throw DimensionMismatch("class map does not cover the source classes");
    std::size_t chart = m.class_map[p.cls];
    if (chart >= target.class_count())
        throw Error("class map points outside the target");
    IntMatrix ft = m.lattice_map.transpose();
    std::vector<ExtRational> values;
    for (const auto& g : target.data(chart).semigroup.generators)
        values.push_back(source.eval(p, ft * std::span<const Integer>(g)));
    return target.point_from_chart_values(chart, values);
}

}  // namespace prevtrop
