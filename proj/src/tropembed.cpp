#include "prevtrop/tropembed.hpp"

#include <algorithm>

namespace prevtrop {

QtPoly::QtPoly(Rational c)
{
    c.canonicalize();
    if (c != 0)
        coeffs_.push_back(std::move(c));
}

QtPoly QtPoly::monomial(Rational c, std::size_t e)
{
    QtPoly p;
    c.canonicalize();
    if (c == 0)
        return p;
    p.coeffs_.assign(e + 1, Rational(0));
    p.coeffs_[e] = std::move(c);
    return p;
}

std::size_t QtPoly::order() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return i;
    throw Error("order of the zero polynomial");
}

void QtPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

QtPoly operator+(const QtPoly& a, const QtPoly& b)
{
    QtPoly r = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
    const QtPoly& s = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i)
        r.coeffs_[i] += s.coeffs_[i];
    r.trim();
    return r;
}

QtPoly operator-(const QtPoly& a)
{
    QtPoly r = a;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

QtPoly operator-(const QtPoly& a, const QtPoly& b)
{
    return a + (-b);
}

QtPoly operator*(const QtPoly& a, const QtPoly& b)
{
    QtPoly r;
    if (a.is_zero() || b.is_zero())
        return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    r.trim();
    return r;
}

std::pair<QtPoly, QtPoly> QtPoly::divide(const QtPoly& a, const QtPoly& b)
{
    if (b.is_zero())
        throw Error("polynomial division by zero");
    QtPoly q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        QtPoly m = monomial(Rational(r.leading() / b.leading()), shift);
        q = q + m;
        r = r - m * b;
    }
    return {q, r};
}

QtPoly QtPoly::gcd(const QtPoly& a, const QtPoly& b)
{
    QtPoly x = a, y = b;
    while (!y.is_zero()) {
        QtPoly r = divide(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero())
        return x;
    return x * QtPoly(Rational(1 / x.leading()));
}

std::string to_string(const QtPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
        const Rational& c = p.coefficients()[i];
        if (c == 0)
            continue;
        std::string coeff = to_string(c);
        if (!out.empty()) {
            if (coeff.front() == '-') {
                out += " - ";
                coeff.erase(0, 1);
            } else {
                out += " + ";
            }
        }
        if (i == 0)
            out += coeff;
        else {
            if (coeff != "1")
                out += (coeff == "-1" ? "-" : coeff + "*");
            out += i == 1 ? "t" : "t^" + std::to_string(i);
        }
    }
    return out;
}

ValuedScalar::ValuedScalar(QtPoly num, QtPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero())
        throw Error("zero denominator in Q(t)");
    if (num_.is_zero()) {
        den_ = QtPoly(1);
        return;
    }
    QtPoly g = QtPoly::gcd(num_, den_);
    num_ = QtPoly::divide(num_, g).first;
    den_ = QtPoly::divide(den_, g).first;
    QtPoly scale(Rational(1 / den_.leading()));
    num_ = num_ * scale;
    den_ = den_ * scale;
}

ExtRational ValuedScalar::valuation() const
{
    if (num_.is_zero())
        return ExtRational::infinity();
    return static_cast<long>(num_.order()) - static_cast<long>(den_.order());
}

ValuedScalar ValuedScalar::pow(const Integer& e) const
{
    if (e < 0) {
        if (is_zero())
            throw Error("negative power of zero");
        return ValuedScalar(den_, num_).pow(-e);
    }
    ValuedScalar result(1), base = *this;
    Integer k = e;
    while (k > 0) {
        if (k % 2 == 1)
            result = result * base;
        k /= 2;
        if (k > 0)
            base = base * base;
    }
    return result;
}

ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b)
{
    if (a.den_ == b.den_)
        return ValuedScalar(a.num_ + b.num_, a.den_);
    return ValuedScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ValuedScalar operator-(const ValuedScalar& a)
{
    ValuedScalar r = a;
    r.num_ = -r.num_;
    return r;
}

ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b)
{
    return a + (-b);
}

ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b)
{
    return ValuedScalar(a.num_ * b.num_, a.den_ * b.den_);
}

ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b)
{
    if (b.is_zero())
        throw Error("division by zero in Q(t)");
    return ValuedScalar(a.num_ * b.den_, a.den_ * b.num_);
}

std::string to_string(const ValuedScalar& x)
{
    if (x.den() == QtPoly(1))
        return to_string(x.num());
    return "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
}

ValuedScalar Polynomial::evaluate(const std::vector<ValuedScalar>& point) const
{
    if (point.size() != n)
        throw DimensionMismatch("point has the wrong number of coordinates");
    ValuedScalar total;
    for (const auto& term : terms) {
        if (term.exponent.size() != n)
            throw DimensionMismatch("exponent has the wrong length");
        ValuedScalar v = term.coeff;
        for (std::size_t i = 0; i < n; ++i)
            if (term.exponent[i] != 0)
                v = v * point[i].pow(term.exponent[i]);
        total = total + v;
    }
    return total;
}

IntVector homogeneous_degree(const Grading& g, const Polynomial& f)
{
    if (f.n != g.n)
        throw DimensionMismatch("polynomial and grading have different variable counts");
    std::optional<IntVector> degree;
    for (const auto& term : f.terms) {
        if (term.coeff.is_zero())
            continue;
        IntVector d(g.group.coordinate_count(), Integer(0));
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t k = 0; k < d.size(); ++k)
                d[k] += term.exponent.at(i) * g.degrees[i][k];
        d = g.group.reduce(std::move(d));
        if (degree && *degree != d)
            throw NotHomogeneous("terms of different degrees");
        degree = std::move(d);
    }
    if (!degree)
        throw Error("the zero polynomial has no degree");
    return *degree;
}

namespace {

std::vector<ExtRational> valuations(const std::vector<ValuedScalar>& values)
{
    std::vector<ExtRational> out;
    for (const auto& v : values)
        out.push_back(v.valuation());
    return out;
}

ValuedScalar monomial_value(const std::vector<ValuedScalar>& values, std::span<const Integer> exps)
{
    ValuedScalar v(1);
    for (std::size_t k = 0; k < values.size(); ++k)
        if (exps[k] != 0)
            v = v * values[k].pow(exps[k]);
    return v;
}

}  // namespace

void check_classical(const TropicalPrevariety& x, const ClassicalChartPoint& p)
{
    if (p.chart >= x.class_count())
        throw Error("unknown chart class");
    const auto& gens = x.data(p.chart).semigroup.generators;
    if (p.values.size() != gens.size())
        throw DimensionMismatch("expected " + std::to_string(gens.size()) + " generator values");
    x.point_from_chart_values(p.chart, valuations(p.values));

    std::vector<std::size_t> nonzero;
    std::vector<IntVector> cols;
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (!p.values[k].is_zero()) {
            nonzero.push_back(k);
            cols.push_back(gens[k]);
        }
    if (cols.empty())
        return;
    std::vector<ValuedScalar> vals;
    for (std::size_t k : nonzero)
        vals.push_back(p.values[k]);
    for (const auto& rel : kernel_lattice(IntMatrix::from_columns(cols, x.ambient_rank())).basis_vectors())
        if (monomial_value(vals, rel) != ValuedScalar(1))
            throw RelationViolation("generator values are not multiplicative");
}

ValuedScalar character_value(const TropicalPrevariety& x, const ClassicalChartPoint& p,
                             std::span<const Integer> s)
{
    const ClassData& c = x.data(p.chart);
    if (s.size() != x.ambient_rank())
        throw DimensionMismatch("character has the wrong length");
    if (!c.semigroup.contains(s))
        throw Error("character is not in the monoid of the chart");
    std::vector<IntVector> cols;
    std::vector<ValuedScalar> vals;
    for (std::size_t k = 0; k < c.semigroup.generators.size(); ++k)
        if (!p.values.at(k).is_zero()) {
            cols.push_back(c.semigroup.generators[k]);
            vals.push_back(p.values[k]);
        }
    if (is_zero(s))
        return 1;
    if (cols.empty())
        return 0;
    auto lambda = solve_integer(IntMatrix::from_columns(cols, x.ambient_rank()), s);
    if (!lambda)
        return 0;
    return monomial_value(vals, *lambda);
}

ClassicalChartPoint classical_point(const TropicalPrevariety& x, std::size_t chart, std::size_t face,
                                    const std::vector<ValuedScalar>& torus)
{
    if (chart >= x.class_count() || face >= x.class_count() || !x.omega().leq(face, chart))
        throw ChartMismatch("orbit class is not below the chart class");
    if (torus.size() != x.ambient_rank())
        throw DimensionMismatch("torus element has the wrong length");
    for (const auto& v : torus)
        if (v.is_zero())
            throw Error("torus coordinates must be nonzero");
    ClassicalChartPoint p{chart, {}};
    for (const auto& g : x.data(chart).semigroup.generators)
        p.values.push_back(x.data(face).perp.contains(g) ? monomial_value(torus, g) : ValuedScalar(0));
    return p;
}

TropPoint trop_point(const TropicalPrevariety& x, const ClassicalChartPoint& p)
{
    check_classical(x, p);
    return x.point_from_chart_values(p.chart, valuations(p.values));
}

NonNegTropPoint nonneg_trop_point(const TropicalPrevariety& x, const ClassicalChartPoint& p)
{
    check_classical(x, p);
    auto vals = valuations(p.values);
    for (std::size_t k = 0; k < vals.size(); ++k)
        if (vals[k] < ExtRational(0))
            throw NotBounded("generator " + std::to_string(k) + " has valuation " + to_string(vals[k]));
    return x.nonneg_from_chart_values(p.chart, vals);
}

ClassicalChartPoint map_point(const SysFanMorphism& m, const TropicalPrevariety& source,
                              const TropicalPrevariety& target, const ClassicalChartPoint& p)
{
    check_classical(source, p);
    if (m.class_map.size() != source.class_count())
        throw DimensionMismatch("class map does not cover the source classes");
    ClassicalChartPoint out{m.class_map[p.chart], {}};
    IntMatrix ft = m.lattice_map.transpose();
    for (const auto& g : target.data(out.chart).semigroup.generators)
        out.values.push_back(character_value(source, p, ft * std::span<const Integer>(g)));
    return out;
}

bool kapranov_membership(const TropicalPrevariety& x, const ValuatedChartPolynomial& f, const TropPoint& w)
{
    std::vector<Rational> finite;
    for (const auto& term : f.terms) {
        ExtRational v = term.valuation + x.eval(w, f.chart, term.exponent);
        if (v.is_finite())
            finite.push_back(v.value());
    }
    if (finite.empty())
        return true;
    const Rational& best = *std::min_element(finite.begin(), finite.end());
    return std::count(finite.begin(), finite.end(), best) >= 2;
}

ValuatedChartPolynomial valuated(std::size_t chart, const Polynomial& f)
{
    ValuatedChartPolynomial out{chart, {}};
    for (const auto& term : f.terms)
        out.terms.push_back({term.exponent, term.coeff.valuation()});
    return out;
}

ProjPrevariety::ProjPrevariety(const Grading& g)
    : grading(g), proj(proj_system_of_fans(g)), trop(proj.system)
{
}

std::size_t ProjPrevariety::chart_class(std::size_t chart) const
{
    auto maximal = proj.system.fan(chart, chart).maximal_cones();
    auto id = trop.omega().class_of(maximal.at(0), chart);
    if (!id)
        throw Error("internal: chart cone has no class");
    return *id;
}

ClassicalChartPoint cox_chart_point(const ProjPrevariety& p, std::size_t chart,
                                    const std::vector<ValuedScalar>& coords)
{
    if (chart >= p.proj.charts.size())
        throw Error("unknown chart");
    if (coords.size() != p.grading.n)
        throw DimensionMismatch("expected " + std::to_string(p.grading.n) + " homogeneous coordinates");
    for (std::size_t i : p.proj.charts[chart])
        if (coords[i].is_zero())
            throw ChartMismatch("coordinate T" + std::to_string(i + 1) + " vanishes on the chart");
    ClassicalChartPoint out{p.chart_class(chart), {}};
    IntMatrix kt = p.proj.pairing.transpose();
    for (const auto& g : p.trop.data(out.chart).semigroup.generators)
        out.values.push_back(monomial_value(coords, kt * std::span<const Integer>(g)));
    return out;
}

std::optional<std::size_t> cox_chart(const ProjPrevariety& p, const std::vector<ValuedScalar>& coords)
{
    for (std::size_t c = 0; c < p.proj.charts.size(); ++c)
        if (std::all_of(p.proj.charts[c].begin(), p.proj.charts[c].end(),
                        [&](std::size_t i) { return !coords.at(i).is_zero(); }))
            return c;
    return std::nullopt;
}

Refinement refine_embedding(const Grading& g, const Polynomial& gtilde, const IntVector& h)
{
    for (const auto& term : gtilde.terms)
        for (const auto& e : term.exponent)
            if (e < 0)
                throw Error("the substituted polynomial must have non-negative exponents");
    IntVector degree = homogeneous_degree(g, gtilde);
    Polynomial monomial{g.n, {{h, ValuedScalar(1)}}};
    for (const auto& e : h)
        if (e < 0)
            throw Error("the divisor must be a monomial");
    if (homogeneous_degree(g, monomial) != degree)
        throw NotHomogeneous("divisor and substituted polynomial have different degrees");
    auto degrees = g.degrees;
    degrees.push_back(degree);
    return {Grading(g.n + 1, g.group, degrees), gtilde, h};
}

std::vector<ValuedScalar> refine_coords(const Refinement& r, const std::vector<ValuedScalar>& coords)
{
    auto out = coords;
    out.push_back(r.substitution.evaluate(coords));
    return out;
}

namespace {

std::size_t chart_index(const ProjPrevariety& p, const Subset& chart)
{
    auto it = std::find(p.proj.charts.begin(), p.proj.charts.end(), chart);
    if (it == p.proj.charts.end())
        throw ChartMismatch("no chart " + subset_label(chart));
    return static_cast<std::size_t>(it - p.proj.charts.begin());
}

}  // namespace

TropPoint refined_trop(const ProjPrevariety& refined, const Refinement& r, const Subset& chart,
                       const std::vector<ValuedScalar>& coords)
{
    auto extended = refine_coords(r, coords);
    return trop_point(refined.trop, cox_chart_point(refined, chart_index(refined, chart), extended));
}

TropPoint forget_refinement(const ProjPrevariety& old, const ProjPrevariety& refined,
                            const Subset& chart, const TropPoint& p)
{
    std::size_t old_class = old.chart_class(chart_index(old, chart));
    std::size_t new_class = refined.chart_class(chart_index(refined, chart));
    refined.trop.check(p);
    if (!refined.trop.omega().leq(p.cls, new_class))
        throw ChartMismatch("point does not lie in the chart");
    IntMatrix kt = old.proj.pairing.transpose();
    std::vector<ExtRational> values;
    for (const auto& g : old.trop.data(old_class).semigroup.generators) {
        IntVector s = kt * std::span<const Integer>(g);
        s.emplace_back(0);
        auto coords = refined.proj.characters.coordinates(s);
        if (!coords)
            throw Error("internal: old character is not a character of the refinement");
        values.push_back(refined.trop.eval(p, new_class, *coords));
    }
    return old.trop.point_from_chart_values(old_class, values);
}

SeparationWitness separation_witness(const ProjPrevariety& old, const Subset& chart,
                                     const std::vector<ValuedScalar>& p,
                                     const std::vector<ValuedScalar>& q, const Polynomial& f)
{
    const std::size_t n = old.grading.n;
    IntVector degree = homogeneous_degree(old.grading, f);
    if (!is_zero(degree))
        throw NotHomogeneous("the separating function must have degree 0");
    IntVector h(n, Integer(0));
    for (const auto& term : f.terms)
        for (std::size_t i = 0; i < n; ++i)
            if (term.exponent[i] < 0) {
                if (!std::binary_search(chart.begin(), chart.end(), i))
                    throw Error("function is not regular on chart " + subset_label(chart));
                h[i] = std::max(h[i], Integer(-term.exponent[i]));
            }
    std::size_t idx = chart_index(old, chart);
    TropPoint tp = trop_point(old.trop, cox_chart_point(old, idx, p));
    TropPoint tq = trop_point(old.trop, cox_chart_point(old, idx, q));
    if (tp != tq)
        throw NotSeparating("the points already have different tropicalizations");
    if (f.evaluate(p).valuation() == f.evaluate(q).valuation())
        throw NotSeparating("the function has the same valuation at both points");

    Polynomial gtilde{n, {}};
    for (const auto& term : f.terms) {
        IntVector e = term.exponent;
        for (std::size_t i = 0; i < n; ++i)
            e[i] += h[i];
        gtilde.terms.push_back({e, term.coeff});
    }
    Refinement r = refine_embedding(old.grading, gtilde, h);
    ProjPrevariety refined(r.grading);
    SeparationWitness w{r, refined_trop(refined, r, chart, p), refined_trop(refined, r, chart, q)};
    if (w.first == w.second)
        throw Error("internal: refinement failed to separate the points");
    return w;
}

}  // namespace prevtrop
