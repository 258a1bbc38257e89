#include "fixtures.hpp"

#include "prevtrop/troppre.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace prevtrop;
using namespace testing_support;
using fixtures::cone;
using fixtures::ray;

namespace {

std::size_t cls(const TropicalPrevariety& x, const Cone& c, std::size_t chart = 0)
{
    auto id = x.omega().class_of(c, chart);
    REQUIRE(id.has_value());
    return *id;
}

// u(s) through a rational representative x of the coordinates: u(s) = <s, x>
// when s vanishes on the stratum cone, infinity otherwise.
ExtRational oracle_eval(const TropicalPrevariety& x, const TropPoint& p, const IntVector& s)
{
    const Cone& tau = x.data(p.cls).cone;
    for (const auto& r : tau.rays())
        if (dot(s, r) != 0)
            return ExtRational::infinity();
    for (const auto& l : tau.lineality())
        if (dot(s, l) != 0)
            return ExtRational::infinity();
    const std::size_t n = x.ambient_rank();
    if (n == 0)
        return Rational(0);
    auto rep = solve_rational(x.data(p.cls).quotient.projection, p.coords);
    REQUIRE(rep.has_value());
    if (x.data(p.cls).quotient.rank == 0)
        rep = RatVector(n, Rational(0));
    return dot(std::span<const Rational>(*rep), std::span<const Integer>(s));
}

RatVector random_coords(std::mt19937_64& gen, std::size_t k)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    RatVector out;
    for (std::size_t i = 0; i < k; ++i) {
        Rational q(num(gen), den(gen));
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

TropPoint random_point(std::mt19937_64& gen, const TropicalPrevariety& x)
{
    std::uniform_int_distribution<std::size_t> pick(0, x.class_count() - 1);
    std::size_t c = pick(gen);
    return {c, random_coords(gen, x.data(c).quotient.rank)};
}

// Non-negative combination of the generators of S_sigma.
IntVector random_character(std::mt19937_64& gen, const AffineSemigroup& s)
{
    std::uniform_int_distribution<long> coef(0, 3);
    IntVector out(s.ambient, Integer(0));
    for (const auto& g : s.generators) {
        long a = coef(gen);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += a * g[i];
    }
    return out;
}

// A point of the chart's non-negative part: a face tau and the image of a
// random non-negative combination of the chart rays.
NonNegTropPoint random_nonneg(std::mt19937_64& gen, const TropicalPrevariety& x, std::size_t chart)
{
    const ClassData& c = x.data(chart);
    auto faces = c.cone.faces();
    std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
    std::uniform_int_distribution<long> num(0, 6);
    std::uniform_int_distribution<long> den(1, 3);
    const Cone& tau = faces[pick(gen)];
    std::size_t face = cls(x, tau, c.rep);
    RatVector v(x.ambient_rank(), Rational(0));
    for (const auto& r : c.cone.rays()) {
        Rational lambda(num(gen), den(gen));
        lambda.canonicalize();
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += lambda * r[i];
    }
    RatVector coords = x.data(face).quotient.projection * std::span<const Rational>(v);
    return x.make_nonneg(chart, face, coords);
}

}  // namespace

TEST_CASE("extended rationals")
{
    ExtRational inf = ExtRational::infinity();
    CHECK(inf + ExtRational(3) == inf);
    CHECK(ExtRational(2) + ExtRational(Rational(1, 2)) == ExtRational(Rational(5, 2)));
    CHECK(ExtRational(100) < inf);
    CHECK(std::min(inf, ExtRational(-1)) == ExtRational(-1));
    CHECK(to_string(inf) == "inf");
    CHECK(parse_ext_rational("inf").is_infinite());
    CHECK(parse_ext_rational("-3/6") == ExtRational(Rational(-1, 2)));
    CHECK_THROWS_AS(inf.value(), Error);
}

TEST_CASE("evaluation on the affine plane")
{
    TropicalPrevariety x(fixtures::affine_plane());
    REQUIRE(x.class_count() == 4);
    std::size_t torus = cls(x, Cone::zero(2));
    std::size_t line = cls(x, ray({0, 1}));   // u(e2) = inf, u(e1) finite
    std::size_t deepest = cls(x, Cone::orthant(2));

    TropPoint p{torus, rv({1, 2})};
    CHECK(x.eval(p, iv({1, 0})) == ExtRational(1));
    CHECK(x.eval(p, iv({-1, 1})) == ExtRational(1));

    TropPoint q{line, rv({5})};
    CHECK(x.eval(q, iv({0, 1})).is_infinite());
    CHECK(x.eval(q, iv({1, 0})) == ExtRational(5));
    CHECK(x.eval(q, deepest, iv({2, 0})) == ExtRational(10));

    TropPoint o{deepest, {}};
    CHECK(x.eval(o, iv({1, 0})).is_infinite());
    CHECK(x.eval(o, iv({0, 0})) == ExtRational(0));

    CHECK_THROWS_AS(x.eval(p, deepest, iv({-1, 0})), Error);
    CHECK_THROWS_AS(x.eval(q, iv({1, -1})), Error);
    CHECK_THROWS_AS(x.eval(o, torus, iv({1, 0})), ChartMismatch);
    CHECK_THROWS_AS(x.eval(TropPoint{torus, rv({1})}, iv({1, 0})), DimensionMismatch);
    CHECK_THROWS_AS(x.eval(TropPoint{99, {}}, iv({1, 0})), Error);
}

TEST_CASE("points from chart values")
{
    TropicalPrevariety x(fixtures::affine_plane());
    std::size_t deepest = cls(x, Cone::orthant(2));
    const auto& gens = x.data(deepest).semigroup.generators;
    REQUIRE(gens == ivs({{0, 1}, {1, 0}}));

    TropPoint p = x.point_from_chart_values(deepest, {ExtRational::infinity(), ExtRational(1)});
    CHECK(p.cls == cls(x, ray({0, 1})));
    CHECK(p.coords == rv({1}));

    TropPoint t = x.point_from_chart_values(deepest, {ExtRational(0), ExtRational(0)});
    CHECK(t.cls == cls(x, Cone::zero(2)));
    CHECK(t.coords == rv({0, 0}));

    TropPoint o = x.point_from_chart_values(deepest, {ExtRational::infinity(), ExtRational::infinity()});
    CHECK(o.cls == deepest);
    CHECK(o.coords.empty());

    CHECK_THROWS_AS(x.point_from_chart_values(deepest, {ExtRational(0)}), DimensionMismatch);
}

TEST_CASE("relations and finite loci on a non-smooth cone")
{
    Cone sigma = cone(2, {{1, 0}, {1, 2}});
    TropicalPrevariety x(SystemOfFans::single(Fan(2, {sigma})));
    std::size_t c = cls(x, sigma);
    REQUIRE(x.data(c).semigroup.generators == ivs({{0, 1}, {1, 0}, {2, -1}}));

    // 2*(1,0) = (2,-1) + (0,1)
    CHECK_THROWS_AS(x.point_from_chart_values(c, {ExtRational(0), ExtRational(0), ExtRational(5)}),
                    RelationViolation);
    TropPoint p = x.point_from_chart_values(c, {ExtRational(1), ExtRational(3), ExtRational(5)});
    CHECK(p.cls == cls(x, Cone::zero(2)));
    CHECK(x.chart_values(p, c) == std::vector<ExtRational>{ExtRational(1), ExtRational(3), ExtRational(5)});

    // Finite on (0,1) and (2,-1) forces tau = 0, so (1,0) must be finite too.
    CHECK_THROWS_AS(x.point_from_chart_values(
                        c, {ExtRational(0), ExtRational::infinity(), ExtRational(0)}),
                    FiniteLocusNotAFace);

    // Finite exactly on (2,-1): the face through (1,2).
    TropPoint q = x.point_from_chart_values(
        c, {ExtRational::infinity(), ExtRational::infinity(), ExtRational(Rational(7, 2))});
    CHECK(q.cls == cls(x, ray({1, 2})));
    CHECK(x.eval(q, iv({2, -1})) == ExtRational(Rational(7, 2)));
}

TEST_CASE("evaluation agrees with a representative and chart values round-trip")
{
    std::mt19937_64 gen(seed() + 10);
    for (const auto& s : fixtures::all_systems()) {
        TropicalPrevariety x(s);
        for (int trial = 0; trial < 60; ++trial) {
            TropPoint p = random_point(gen, x);
            for (std::size_t chart : x.omega().up_set(p.cls)) {
                IntVector ch = random_character(gen, x.data(chart).semigroup);
                REQUIRE(x.eval(p, chart, ch) == oracle_eval(x, p, ch));
                auto values = x.chart_values(p, chart);
                TropPoint back = x.point_from_chart_values(chart, values);
                REQUIRE(back == p);
                REQUIRE(x.chart_values(back, chart) == values);
            }
        }
    }
}

TEST_CASE("induced maps")
{
    {
        TropicalPrevariety x(fixtures::p1_times_p1());
        auto id = identity_morphism(x.system());
        std::mt19937_64 gen(seed() + 11);
        for (int trial = 0; trial < 50; ++trial) {
            TropPoint p = random_point(gen, x);
            CHECK(induced_map(id, x, x, p) == p);
        }
    }
    {
        TropicalPrevariety src(fixtures::line_two_origins());
        TropicalPrevariety tgt(fixtures::affine_line());
        auto fold = morphism_from_chart_map(IntMatrix::identity(1), src.system(), tgt.system(), {0, 0});
        std::size_t inf_tgt = cls(tgt, ray({1}));
        for (std::size_t chart : {0u, 1u}) {
            TropPoint origin{cls(src, ray({1}), chart), {}};
            CHECK(induced_map(fold, src, tgt, origin) == TropPoint{inf_tgt, {}});
        }
        TropPoint torus{cls(src, Cone::zero(1)), rv({-4})};
        CHECK(induced_map(fold, src, tgt, torus) == TropPoint{cls(tgt, Cone::zero(1)), rv({-4})});
    }
    {
        TropicalPrevariety src(fixtures::affine_line());
        TropicalPrevariety tgt(fixtures::affine_plane());
        auto diag = morphism_from_chart_map(mat({{1}, {1}}), src.system(), tgt.system(), {0});
        TropPoint p{cls(src, Cone::zero(1)), rv({3})};
        CHECK(induced_map(diag, src, tgt, p) == TropPoint{cls(tgt, Cone::zero(2)), rv({3, 3})});
        TropPoint o{cls(src, ray({1})), {}};
        CHECK(induced_map(diag, src, tgt, o) == TropPoint{cls(tgt, Cone::orthant(2)), {}});
    }
}

TEST_CASE("induced maps pull back characters")
{
    struct Case {
        SystemOfFans source, target;
        IntMatrix F;
        std::vector<std::size_t> chart_map;
    };
    std::vector<Case> cases{
        {fixtures::affine_line(), fixtures::affine_plane(), mat({{1}, {2}}), {0}},
        {fixtures::affine_plane(), fixtures::affine_line(), mat({{1, 1}}), {0}},
        {fixtures::p1_times_p1(), fixtures::projective_line(), mat({{1, 0}}), {0}},
        {fixtures::projective_line(), fixtures::p1_times_p1(), mat({{1}, {-1}}), {0}},
        {fixtures::line_two_origins(), fixtures::projective_line_two_charts(), mat({{1}}), {0, 0}},
    };
    std::mt19937_64 gen(seed() + 12);
    for (const auto& c : cases) {
        TropicalPrevariety src(c.source), tgt(c.target);
        auto m = morphism_from_chart_map(c.F, c.source, c.target, c.chart_map);
        REQUIRE(validate_morphism(m, c.source, c.target).empty());
        IntMatrix ft = c.F.transpose();
        for (int trial = 0; trial < 40; ++trial) {
            TropPoint p = random_point(gen, src);
            TropPoint q = induced_map(m, src, tgt, p);
            REQUIRE(tgt.omega().leq(q.cls, m.class_map[p.cls]));
            for (const auto& g : tgt.data(m.class_map[p.cls]).semigroup.generators)
                REQUIRE(tgt.eval(q, m.class_map[p.cls], g) ==
                        oracle_eval(src, p, ft * std::span<const Integer>(g)));
        }
    }
}

TEST_CASE("comparison map on the line with two origins")
{
    TropicalPrevariety x(fixtures::line_two_origins());
    std::size_t ray1 = cls(x, ray({1}), 0);
    std::size_t ray2 = cls(x, ray({1}), 1);
    std::size_t torus = cls(x, Cone::zero(1));

    NonNegTropPoint a = x.nonneg_from_chart_values(ray1, {ExtRational(1)});
    NonNegTropPoint b = x.nonneg_from_chart_values(ray2, {ExtRational(1)});
    CHECK(a != b);
    CHECK(a.chart == ray1);
    CHECK(b.chart == ray2);
    CHECK(x.compare_to_trop(a) == TropPoint{torus, rv({1})});
    CHECK(x.compare_to_trop(a) == x.compare_to_trop(b));
    CHECK(x.nonneg_preimages(TropPoint{torus, rv({1})}) == std::vector<NonNegTropPoint>{a, b});

    // Value 0 lies in the glued torus, so both charts give one point.
    CHECK(x.nonneg_from_chart_values(ray1, {ExtRational(0)}) ==
          x.nonneg_from_chart_values(ray2, {ExtRational(0)}));
    CHECK(x.nonneg_from_chart_values(ray1, {ExtRational(0)}).chart == torus);

    NonNegTropPoint apex = x.nonneg_from_chart_values(ray1, {ExtRational::infinity()});
    CHECK(x.compare_to_trop(apex) == TropPoint{ray1, {}});
    CHECK(x.nonneg_preimages(TropPoint{torus, rv({-1})}).empty());

    CHECK_THROWS_AS(x.nonneg_from_chart_values(ray1, {ExtRational(-1)}), Error);
    CHECK_THROWS_AS(x.make_nonneg(ray1, torus, rv({-2})), Error);
    CHECK_THROWS_AS(x.make_nonneg(torus, ray1, {}), ChartMismatch);
}

TEST_CASE("comparison map respects strata and is injective exactly on separated fixtures")
{
    std::mt19937_64 gen(seed() + 13);
    for (const auto& s : fixtures::all_systems()) {
        TropicalPrevariety x(s);
        std::set<NonNegTropPoint> points;
        for (std::size_t chart = 0; chart < x.class_count(); ++chart)
            for (int trial = 0; trial < 30; ++trial)
                points.insert(random_nonneg(gen, x, chart));
        std::map<TropPoint, NonNegTropPoint> seen;
        bool collision = false;
        for (const auto& q : points) {
            TropPoint p = x.compare_to_trop(q);
            REQUIRE(p.cls == q.face);
            // make_nonneg is idempotent on canonical points
            REQUIRE(x.make_nonneg(q.chart, q.face, q.coords) == q);
            auto pre = x.nonneg_preimages(p);
            REQUIRE(std::find(pre.begin(), pre.end(), q) != pre.end());
            auto [it, fresh] = seen.emplace(p, q);
            if (!fresh && it->second != q)
                collision = true;
        }
        CHECK(collision == !is_separated(s).separated);
    }
}

TEST_CASE("comparison map is bijective on complete fixtures")
{
    std::mt19937_64 gen(seed() + 14);
    for (const auto& s : {fixtures::projective_line(), fixtures::p1_times_p1(),
                          fixtures::projective_plane(), fixtures::projective_line_two_charts()}) {
        TropicalPrevariety x(s);
        // Every trop stratum receives a non-negative stratum of its own dimension.
        auto nn = x.nonneg_strata();
        for (const auto& st : x.strata()) {
            std::size_t best = 0;
            for (const auto& n : nn)
                if (n.face == st.cls)
                    best = std::max(best, n.dim);
            CHECK(best == st.dim);
        }
        for (int trial = 0; trial < 200; ++trial) {
            TropPoint p = random_point(gen, x);
            REQUIRE(x.nonneg_preimages(p).size() == 1);
        }
    }
    TropicalPrevariety line(fixtures::affine_line());
    CHECK(line.nonneg_preimages(TropPoint{cls(line, Cone::zero(1)), rv({-1})}).empty());
}

TEST_CASE("skeleton seminorm")
{
    TropicalPrevariety x(fixtures::affine_plane());
    std::size_t torus = cls(x, Cone::zero(2));
    std::size_t deepest = cls(x, Cone::orthant(2));
    TropPoint p{torus, rv({1, 2})};

    ValuatedChartPolynomial f{deepest, {{iv({1, 0}), ExtRational(0)}, {iv({0, 1}), ExtRational(1)}}};
    CHECK(x.skeleton_seminorm(p, f) == ExtRational(1));
    CHECK(x.skeleton_seminorm(p, {deepest, {{iv({1, 1}), ExtRational(-2)}}}) == ExtRational(1));
    CHECK(x.skeleton_seminorm(p, {deepest, {}}).is_infinite());
    TropPoint o{deepest, {}};
    CHECK(x.skeleton_seminorm(o, {deepest, {{iv({0, 1}), ExtRational(0)}}}).is_infinite());
    CHECK(x.skeleton_seminorm(o, {deepest, {{iv({0, 0}), ExtRational(4)}}}) == ExtRational(4));
    CHECK_THROWS_AS(x.skeleton_seminorm(o, {torus, {{iv({0, 1}), ExtRational(0)}}}), ChartMismatch);
}

TEST_CASE("seminorms on characters recover the point")
{
    std::mt19937_64 gen(seed() + 15);
    std::uniform_int_distribution<long> val(-5, 5);
    for (const auto& s : fixtures::all_systems()) {
        TropicalPrevariety x(s);
        for (int trial = 0; trial < 40; ++trial) {
            TropPoint p = random_point(gen, x);
            for (std::size_t chart : x.omega().up_set(p.cls)) {
                const auto& gens = x.data(chart).semigroup.generators;
                IntVector ch = random_character(gen, x.data(chart).semigroup);
                ExtRational a(val(gen));
                REQUIRE(x.skeleton_seminorm(p, {chart, {{ch, a}}}) == a + x.eval(p, chart, ch));
                std::vector<ExtRational> values;
                for (const auto& g : gens)
                    values.push_back(x.skeleton_seminorm(p, {chart, {{g, ExtRational(0)}}}));
                TropPoint back = x.point_from_chart_values(chart, values);
                REQUIRE(back == p);
                std::vector<ExtRational> again;
                for (const auto& g : gens)
                    again.push_back(x.skeleton_seminorm(back, {chart, {{g, ExtRational(0)}}}));
                REQUIRE(again == values);
            }
        }
    }
}

TEST_CASE("strata inventories")
{
    auto dims = [](const TropicalPrevariety& x) {
        std::vector<std::size_t> out;
        for (const auto& s : x.strata())
            out.push_back(s.dim);
        std::sort(out.rbegin(), out.rend());
        return out;
    };
    TropicalPrevariety pp(fixtures::p1_times_p1());
    CHECK(dims(pp) == std::vector<std::size_t>{2, 1, 1, 1, 1, 0, 0, 0, 0});
    CHECK(pp.nonneg_strata().size() == 1 + 4 * 2 + 4 * 4);

    TropicalPrevariety two(fixtures::line_two_origins());
    CHECK(dims(two) == std::vector<std::size_t>{1, 0, 0});
    CHECK(two.nonneg_strata().size() == 5);

    TropicalPrevariety pt(fixtures::point());
    CHECK(dims(pt) == std::vector<std::size_t>{0});
    REQUIRE(pt.nonneg_strata().size() == 1);
    CHECK(pt.nonneg_strata()[0].dim == 0);

    TropicalPrevariety a2(fixtures::affine_plane());
    for (const auto& n : a2.nonneg_strata())
        CHECK(n.dim == a2.data(n.chart).cone.dim() - a2.data(n.face).cone.dim());
}

TEST_CASE("invalid systems are rejected")
{
    Fan chart(1, {ray({1})});
    Fan torus(1, {Cone::zero(1)});
    SystemOfFans bad(1, {"1", "2"}, {{chart, chart}, {torus, chart}});
    CHECK_THROWS_AS(TropicalPrevariety{bad}, Error);
}
