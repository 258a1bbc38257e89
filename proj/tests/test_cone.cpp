#include "support.hpp"

#include "prevtrop/cone.hpp"

#include <doctest.h>

#include <functional>
#include <map>

using namespace prevtrop;
using namespace testing_support;

namespace {

// Facet normals of the pointed 2-dim cone spanned by a and b: rotate each ray
// by 90 degrees and orient it positively on the other ray.
std::vector<IntVector> dual_rays_2d(const IntVector& a, const IntVector& b)
{
    auto rot = [](const IntVector& v, const IntVector& other) {
        IntVector n{-v[1], v[0]};
        if (dot(n, other) < 0)
            n = IntVector{v[1], -v[0]};
        return primitive(n);
    };
    std::vector<IntVector> out{rot(a, b), rot(b, a)};
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

bool in_cone_2d(const std::vector<IntVector>& normals, const IntVector& v)
{
    for (const auto& n : normals)
        if (dot(n, v) < 0)
            return false;
    return true;
}

// Irreducible lattice points of cone(r1, r2) found in the box spanned by the
// generators; the cone is described by its facet normals.
std::vector<IntVector> brute_hilbert_2d(const IntVector& r1, const IntVector& r2)
{
    auto normals = dual_rays_2d(r1, r2);
    long radius = 0;
    for (const auto& r : {r1, r2})
        radius += std::max(Integer(abs(r[0])), Integer(abs(r[1]))).get_si();
    std::vector<IntVector> pts;
    for (const auto& v : box(2, radius))
        if (!is_zero(v) && in_cone_2d(normals, v))
            pts.push_back(v);
    std::vector<IntVector> out;
    for (const auto& x : pts) {
        bool reducible = false;
        for (const auto& y : pts) {
            if (y == x)
                continue;
            IntVector d{x[0] - y[0], x[1] - y[1]};
            if (in_cone_2d(normals, d)) {
                reducible = true;
                break;
            }
        }
        if (!reducible)
            out.push_back(x);
    }
    return out;
}

// Whether v is a combination of gens with coefficients in [0, limit], in a
// pointed monoid (decreasing a strictly positive functional).
bool decomposes(const IntVector& v, const std::vector<IntVector>& gens, const Cone& c,
                std::map<IntVector, bool, LexLess>& memo)
{
    if (is_zero(v))
        return true;
    if (auto it = memo.find(v); it != memo.end())
        return it->second;
    bool ok = false;
    for (const auto& g : gens) {
        IntVector rest(v.size());
        for (std::size_t j = 0; j < v.size(); ++j)
            rest[j] = v[j] - g[j];
        if (c.contains(std::span<const Integer>(rest)) && decomposes(rest, gens, c, memo)) {
            ok = true;
            break;
        }
    }
    memo[v] = ok;
    return ok;
}

// v = (combination of the non-unit generators with coefficients in
// [0, limit]) + (element of the group generated by the units).
bool in_generated_monoid(const IntVector& v, const std::vector<IntVector>& gens, int limit)
{
    std::vector<IntVector> units, others;
    for (const auto& g : gens) {
        IntVector neg = g;
        for (auto& x : neg)
            x = -x;
        if (std::find(gens.begin(), gens.end(), neg) != gens.end())
            units.push_back(g);
        else
            others.push_back(g);
    }
    IntMatrix unit_cols = IntMatrix::from_columns(units, v.size());
    std::function<bool(std::size_t, IntVector)> rec = [&](std::size_t i, IntVector rest) {
        if (i == others.size())
            return solve_integer(unit_cols, rest).has_value();
        for (int k = 0; k <= limit; ++k) {
            if (rec(i + 1, rest))
                return true;
            for (std::size_t j = 0; j < rest.size(); ++j)
                rest[j] -= others[i][j];
        }
        return false;
    };
    return rec(0, v);
}

std::vector<Cone> sample_cones()
{
    return {
        Cone::orthant(2),
        Cone::from_generators(2, ivs({{1, 0}, {1, 2}})),
        Cone::from_generators(2, ivs({{1, 0}})),
        Cone::zero(2),
        Cone::from_generators(2, ivs({{-1, 3}, {2, 1}})),
        Cone::orthant(3),
        Cone::from_generators(3, ivs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}})),
        Cone::from_generators(3, ivs({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}})),
        Cone::from_generators(3, ivs({{1, 2, 0}, {0, 1, 3}})),
        Cone::from_generators(3, ivs({{1, 0, 0}}), ivs({{0, 1, 0}})),
        Cone::from_generators(4, ivs({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, -1, 2}})),
    };
}

}  // namespace

TEST_CASE("dual cone examples")
{
    auto half_line = Cone::orthant(1);
    CHECK(half_line.dual() == half_line);

    auto zero = Cone::zero(2);
    CHECK(zero.dual() == Cone::whole(2));
    CHECK(zero.dual().lineality() == ivs({{1, 0}, {0, 1}}));

    auto sigma = Cone::from_generators(2, ivs({{1, 0}, {1, 2}}));
    CHECK(sigma.dual().rays() == dual_rays_2d(iv({1, 0}), iv({1, 2})));
    CHECK(sigma.dual().rays() == ivs({{0, 1}, {2, -1}}));
}

TEST_CASE("canonical representation")
{
    auto c = Cone::from_generators(2, ivs({{2, 0}, {1, 1}, {0, 3}, {1, 0}}));
    CHECK(c == Cone::orthant(2));
    CHECK(c.rays() == ivs({{0, 1}, {1, 0}}));

    auto h = Cone::from_inequalities(2, ivs({{1, 0}, {-1, 2}}));
    CHECK(h.rays() == ivs({{0, 1}, {2, 1}}));

    auto half_plane = Cone::from_generators(2, ivs({{1, 1}}), ivs({{0, 2}}));
    CHECK(half_plane.lineality() == ivs({{0, 1}}));
    CHECK(half_plane.rays() == ivs({{1, 0}}));
    CHECK(half_plane.dim() == 2);
    CHECK_FALSE(half_plane.is_pointed());

    CHECK_THROWS_AS(Cone::from_generators(2, ivs({{1, 0, 0}})), DimensionMismatch);
}

TEST_CASE("dual of dual is the identity")
{
    for (const auto& c : sample_cones()) {
        CHECK(c.dual().dual() == c);
        CHECK(c.dual().dim() + c.lineality().size() == c.ambient_rank());
    }
}

TEST_CASE("face lattice")
{
    auto q = Cone::orthant(2);
    auto faces = q.faces();
    REQUIRE(faces.size() == 4);
    CHECK(faces[0] == Cone::zero(2));
    CHECK(faces[3] == q);
    CHECK(faces[1] == Cone::from_generators(2, ivs({{0, 1}})));
    CHECK(faces[2] == Cone::from_generators(2, ivs({{1, 0}})));
    CHECK(q.face_info()[1].tight == std::vector<std::size_t>{1});

    CHECK(Cone::from_generators(3, ivs({{1, 1, 1}})).faces().size() == 2);

    auto sigma = Cone::from_generators(2, ivs({{1, 0}, {1, 2}}));
    auto sf = sigma.faces();
    REQUIRE(sf.size() == 4);
    // Supporting hyperplanes of the H-representation cut out the two rays.
    for (const auto& normal : sigma.inequalities()) {
        std::vector<IntVector> on;
        for (const auto& r : sigma.rays())
            if (dot(normal, r) == 0)
                on.push_back(r);
        CHECK(std::find(sf.begin(), sf.end(), Cone::from_generators(2, on)) != sf.end());
    }
    CHECK(sf[1].rays() == ivs({{1, 0}}));
    CHECK(sf[2].rays() == ivs({{1, 2}}));

    auto octant_faces = Cone::orthant(3).faces();
    CHECK(octant_faces.size() == 8);
    auto square = Cone::from_generators(3, ivs({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}));
    CHECK(square.faces().size() == 10);
    CHECK(square.facet_indices().size() == 4);

    auto half_plane = Cone::from_generators(2, ivs({{1, 0}}), ivs({{0, 1}}));
    REQUIRE(half_plane.faces().size() == 2);
    CHECK(half_plane.faces()[0] == Cone::from_generators(2, {}, ivs({{0, 1}})));

    for (const auto& c : sample_cones())
        for (const auto& f : c.faces())
            CHECK(c.has_face(f));
    CHECK_FALSE(q.has_face(Cone::from_generators(2, ivs({{1, 1}}))));
}

TEST_CASE("containment")
{
    auto q = Cone::orthant(2);
    CHECK(q.locate(rv({1, 1})).where == Location::interior);
    auto b = q.locate(rv({1, 0}));
    CHECK(b.where == Location::boundary);
    CHECK(q.face(b.face) == Cone::from_generators(2, ivs({{1, 0}})));
    CHECK(q.locate(rv({-1, 0})).where == Location::outside);
    CHECK(q.face(q.locate(rv({0, 0})).face) == Cone::zero(2));
    CHECK_THROWS_AS(q.locate(rv({1, 1, 1})), DimensionMismatch);

    std::mt19937_64 gen(seed() + 10);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    for (const auto& c : sample_cones()) {
        for (int trial = 0; trial < 1000; ++trial) {
            RatVector v(c.ambient_rank());
            for (auto& x : v) {
                x = Rational(num(gen), den(gen));
                x.canonicalize();
            }
            bool direct = true;
            for (const auto& a : c.inequalities())
                if (dot(std::span<const Rational>(v), std::span<const Integer>(a)) < 0)
                    direct = false;
            for (const auto& e : c.equations())
                if (dot(std::span<const Rational>(v), std::span<const Integer>(e)) != 0)
                    direct = false;
            auto where = c.locate(v);
            REQUIRE((where.where != Location::outside) == direct);
            if (direct) {
                // The located face is the smallest one containing v.
                auto f = c.face(where.face);
                REQUIRE(f.in_relative_interior(v));
                for (const auto& g : c.faces())
                    if (g.contains(std::span<const Rational>(v)))
                        REQUIRE(g.contains(f));
            }
        }
    }
}

TEST_CASE("quotient by the span of a face")
{
    auto q = Cone::orthant(2);
    auto id = quotient_by_span(q, Cone::zero(2));
    CHECK(id.rank == 2);
    CHECK(id.projection == IntMatrix::identity(2));
    CHECK(quotient_by_span(q, q).rank == 0);
    auto ray = quotient_by_span(q, Cone::from_generators(2, ivs({{1, 0}})));
    CHECK(ray.rank == 1);
    CHECK(ray.projection == mat({{0, 1}}));
    CHECK_THROWS_AS(quotient_by_span(q, Cone::from_generators(2, ivs({{1, 1}}))), NotAFace);

    auto sigma = Cone::from_generators(2, ivs({{1, 0}, {1, 2}}));
    auto p = quotient_by_span(sigma, Cone::from_generators(2, ivs({{1, 2}})));
    CHECK(p.rank == 1);
    CHECK(p.projection * iv({1, 2}) == iv({0}));
    CHECK(abs((p.projection * iv({1, 0}))[0]) == 2);
}

TEST_CASE("simpliciality")
{
    CHECK(Cone::orthant(2).is_simplicial());
    CHECK_FALSE(
        Cone::from_generators(3, ivs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}})).is_simplicial());
    CHECK(Cone::zero(2).is_simplicial());
}

TEST_CASE("hilbert basis examples")
{
    CHECK(hilbert_basis(Cone::orthant(2)).generators == ivs({{0, 1}, {1, 0}}));

    auto sigma = Cone::from_generators(2, ivs({{1, 0}, {1, 2}}));
    auto hb = hilbert_basis(sigma);
    CHECK(hb.generators == ivs({{0, 1}, {1, 0}, {2, -1}}));
    CHECK(hb.generators == brute_hilbert_2d(iv({0, 1}), iv({2, -1})));

    auto group = hilbert_basis(Cone::zero(1));
    CHECK(group.generators == ivs({{-1}, {1}}));
    CHECK(group.is_unit(0));

    auto ray = hilbert_basis(Cone::from_generators(2, ivs({{1, 0}})));
    CHECK(ray.generators == ivs({{0, -1}, {0, 1}, {1, 0}}));
    CHECK_FALSE(ray.is_unit(2));
}

TEST_CASE("hilbert bases of 2-dim cones against box enumeration")
{
    std::vector<IntVector> prims;
    for (const auto& v : box(2, 2))
        if (!is_zero(v) && primitive(v) == v)
            prims.push_back(v);
    int checked = 0;
    for (std::size_t i = 0; i < prims.size(); ++i)
        for (std::size_t j = i + 1; j < prims.size(); ++j) {
            const auto& a = prims[i];
            const auto& b = prims[j];
            if (a[0] * b[1] - a[1] * b[0] == 0)
                continue;
            auto sigma = Cone::from_generators(2, {a, b});
            auto normals = dual_rays_2d(a, b);
            REQUIRE(sigma.dual().rays() == normals);
            REQUIRE(hilbert_basis(sigma).generators == brute_hilbert_2d(normals[0], normals[1]));
            ++checked;
        }
    CHECK(checked > 50);
}

TEST_CASE("lattice points of the dual cone decompose over the hilbert basis")
{
    for (const auto& c : sample_cones()) {
        if (!c.is_full_dimensional() || !c.is_pointed())
            continue;
        auto hb = hilbert_basis(c);
        auto d = c.dual();
        std::map<IntVector, bool, LexLess> memo;
        long radius = c.ambient_rank() <= 2 ? 4 : 2;
        for (const auto& v : box(c.ambient_rank(), radius))
            if (d.contains(std::span<const Integer>(v)))
                REQUIRE(decomposes(v, hb.generators, d, memo));
        // Each generator is irreducible.
        for (const auto& g : hb.generators) {
            std::vector<IntVector> others;
            for (const auto& h : hb.generators)
                if (h != g)
                    others.push_back(h);
            std::map<IntVector, bool, LexLess> m2;
            CHECK_FALSE(decomposes(g, others, d, m2));
        }
    }
}

TEST_CASE("hilbert basis of a face is the localization at vanishing generators")
{
    for (const auto& c : sample_cones()) {
        if (c.ambient_rank() > 3 || !c.is_pointed())
            continue;
        auto hb = hilbert_basis(c);
        for (const auto& tau : c.faces()) {
            std::vector<IntVector> localized = hb.generators;
            for (const auto& g : hb.generators) {
                bool vanishes = true;
                for (const auto& r : tau.rays())
                    if (dot(g, r) != 0)
                        vanishes = false;
                if (vanishes) {
                    IntVector neg = g;
                    for (auto& x : neg)
                        x = -x;
                    localized.push_back(neg);
                }
            }
            std::sort(localized.begin(), localized.end(), LexLess{});
            localized.erase(std::unique(localized.begin(), localized.end()), localized.end());
            auto local = hilbert_basis(tau);
            for (const auto& g : localized)
                REQUIRE(local.contains(g));
            for (const auto& g : local.generators)
                REQUIRE(in_generated_monoid(g, localized, 3));
        }
    }
}
