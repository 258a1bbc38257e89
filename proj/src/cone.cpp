#include "prevtrop/cone.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace prevtrop {

namespace {

void check_lengths(std::size_t n, const std::vector<IntVector>& vs)
{
    for (const auto& v : vs)
        if (v.size() != n)
            throw DimensionMismatch("vector of length " + std::to_string(v.size()) +
                                    " in ambient rank " + std::to_string(n));
}

struct VRep {
    std::vector<IntVector> rays;
    std::vector<IntVector> lineality;
};

// Double description over Z: returns extremal rays and a lineality basis of
// { x : <a,x> >= 0 for a in constraints }.
VRep double_description(std::size_t n, const std::vector<IntVector>& inequalities,
                        const std::vector<IntVector>& equations)
{
    std::vector<IntVector> constraints;
    for (const auto& a : inequalities)
        if (!is_zero(a))
            constraints.push_back(a);
    for (const auto& e : equations) {
        if (is_zero(e))
            continue;
        constraints.push_back(e);
        IntVector neg = e;
        for (auto& x : neg)
            x = -x;
        constraints.push_back(neg);
    }
    const std::size_t m = constraints.size();

    std::vector<IntVector> lin;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, Integer(0));
        e[i] = 1;
        lin.push_back(e);
    }
    std::vector<IntVector> rays;
    std::vector<std::vector<char>> tight;

    for (std::size_t c = 0; c < m; ++c) {
        const IntVector& a = constraints[c];
        std::size_t pivot = lin.size();
        for (std::size_t k = 0; k < lin.size(); ++k)
            if (dot(a, lin[k]) != 0) {
                pivot = k;
                break;
            }
        if (pivot < lin.size()) {
            IntVector l0 = lin[pivot];
            Integer alpha = dot(a, l0);
            if (alpha < 0) {
                for (auto& x : l0)
                    x = -x;
                alpha = -alpha;
            }
            lin.erase(lin.begin() + static_cast<long>(pivot));
            auto eliminate = [&](IntVector& v) {
                Integer beta = dot(a, v);
                if (beta == 0)
                    return;
                for (std::size_t j = 0; j < n; ++j)
                    v[j] = alpha * v[j] - beta * l0[j];
                v = primitive(std::move(v));
            };
            for (auto& l : lin)
                eliminate(l);
            for (std::size_t r = 0; r < rays.size(); ++r) {
                eliminate(rays[r]);
                tight[r][c] = 1;
            }
            std::vector<char> z(m, 0);
            for (std::size_t k = 0; k < c; ++k)
                z[k] = 1;
            rays.push_back(primitive(l0));
            tight.push_back(std::move(z));
            continue;
        }

        std::vector<Integer> value(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = dot(a, rays[r]);
            if (value[r] > 0)
                pos.push_back(r);
            else if (value[r] < 0)
                neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (value[r] == 0)
                    tight[r][c] = 1;
            continue;
        }
        std::vector<IntVector> next_rays;
        std::vector<std::vector<char>> next_tight;
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                std::vector<char> common(m, 0);
                for (std::size_t k = 0; k < c; ++k)
                    common[k] = tight[p][k] && tight[q][k];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q)
                        continue;
                    bool covers = true;
                    for (std::size_t k = 0; k < c; ++k)
                        if (common[k] && !tight[r][k]) {
                            covers = false;
                            break;
                        }
                    if (covers)
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                IntVector v(n);
                for (std::size_t j = 0; j < n; ++j)
                    v[j] = value[p] * rays[q][j] - value[q] * rays[p][j];
                common[c] = 1;
                next_rays.push_back(primitive(std::move(v)));
                next_tight.push_back(std::move(common));
            }
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (value[r] < 0)
                continue;
            if (value[r] == 0)
                tight[r][c] = 1;
            next_rays.push_back(std::move(rays[r]));
            next_tight.push_back(std::move(tight[r]));
        }
        rays = std::move(next_rays);
        tight = std::move(next_tight);
    }
    return {rays, lin};
}

// Rays projected orthogonally to the lineality space, made primitive,
// deduplicated and sorted.
std::vector<IntVector> canonical_rays(const std::vector<IntVector>& rays,
                                      const std::vector<IntVector>& lineality)
{
    std::set<IntVector, LexLess> out;
    if (lineality.empty()) {
        for (const auto& r : rays)
            if (!is_zero(r))
                out.insert(primitive(r));
        return {out.begin(), out.end()};
    }
    const std::size_t k = lineality.size();
    IntMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            gram.at(i, j) = dot(lineality[i], lineality[j]);
    auto ginv = inverse_rational(gram);
    for (const auto& r : rays) {
        RatVector proj = to_rational(r);
        std::vector<Rational> b(k);
        for (std::size_t i = 0; i < k; ++i)
            b[i] = dot(lineality[i], r);
        for (std::size_t i = 0; i < k; ++i) {
            Rational coeff = 0;
            for (std::size_t j = 0; j < k; ++j)
                coeff += ginv[i][j] * b[j];
            for (std::size_t t = 0; t < proj.size(); ++t)
                proj[t] -= coeff * lineality[i][t];
        }
        if (!is_zero(proj))
            out.insert(primitive(proj));
    }
    return {out.begin(), out.end()};
}

int compare_lists(const std::vector<IntVector>& a, const std::vector<IntVector>& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(a[i], b[i]); c != 0)
            return c;
    if (a.size() == b.size())
        return 0;
    return a.size() < b.size() ? -1 : 1;
}

template <typename T>
Containment locate_impl(const Cone& c, std::span<const T> v)
{
    if (v.size() != c.ambient_rank())
        throw DimensionMismatch("point of length " + std::to_string(v.size()) +
                                " tested against a cone in rank " +
                                std::to_string(c.ambient_rank()));
    RatVector q(v.begin(), v.end());
    for (const auto& e : c.equations())
        if (dot(std::span<const Rational>(q), std::span<const Integer>(e)) != 0)
            return {};
    std::vector<std::size_t> tight;
    for (std::size_t j = 0; j < c.inequalities().size(); ++j) {
        Rational s = dot(std::span<const Rational>(q), std::span<const Integer>(c.inequalities()[j]));
        if (s < 0)
            return {};
        if (s == 0)
            tight.push_back(j);
    }
    std::vector<std::size_t> ray_set;
    for (std::size_t r = 0; r < c.rays().size(); ++r) {
        bool ok = true;
        for (std::size_t j : tight)
            if (dot(c.inequalities()[j], c.rays()[r]) != 0) {
                ok = false;
                break;
            }
        if (ok)
            ray_set.push_back(r);
    }
    const auto& faces = c.face_info();
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (faces[f].rays == ray_set) {
            Location where = (f + 1 == faces.size()) ? Location::interior : Location::boundary;
            return {where, f};
        }
    throw Error("internal: point located in no face");
}

}  // namespace

std::vector<IntVector> saturate(std::size_t ambient, const std::vector<IntVector>& vectors)
{
    check_lengths(ambient, vectors);
    Lattice perp = kernel_lattice(IntMatrix::from_rows(vectors, ambient));
    return kernel_lattice(perp.basis()).basis_vectors();
}

Cone::Cone()
{
    compute_faces();
}

Cone Cone::build(std::size_t ambient, const std::vector<IntVector>& generators,
                 const std::vector<IntVector>& lineality)
{
    check_lengths(ambient, generators);
    check_lengths(ambient, lineality);
    VRep dual = double_description(ambient, generators, lineality);
    VRep primal = double_description(ambient, dual.rays, dual.lineality);
    Cone c;
    c.ambient_ = ambient;
    c.lineality_ = saturate(ambient, primal.lineality);
    c.rays_ = canonical_rays(primal.rays, c.lineality_);
    c.dual_lineality_ = saturate(ambient, dual.lineality);
    c.dual_rays_ = canonical_rays(dual.rays, c.dual_lineality_);
    c.dim_ = c.lineality_.size() + rank(c.rays_, ambient);
    c.compute_faces();
    return c;
}

Cone Cone::from_generators(std::size_t ambient, const std::vector<IntVector>& generators,
                           const std::vector<IntVector>& lineality)
{
    return build(ambient, generators, lineality);
}

Cone Cone::from_inequalities(std::size_t ambient, const std::vector<IntVector>& inequalities,
                             const std::vector<IntVector>& equations)
{
    check_lengths(ambient, inequalities);
    check_lengths(ambient, equations);
    VRep primal = double_description(ambient, inequalities, equations);
    return build(ambient, primal.rays, primal.lineality);
}

Cone Cone::zero(std::size_t ambient)
{
    return build(ambient, {}, {});
}

Cone Cone::whole(std::size_t ambient)
{
    return build(ambient, {}, IntMatrix::identity(ambient).row_vectors());
}

Cone Cone::orthant(std::size_t ambient)
{
    return build(ambient, IntMatrix::identity(ambient).row_vectors(), {});
}

bool Cone::is_simplicial() const
{
    return rank(rays_, ambient_) == rays_.size();
}

Cone Cone::dual() const
{
    Cone d;
    d.ambient_ = ambient_;
    d.rays_ = dual_rays_;
    d.lineality_ = dual_lineality_;
    d.dual_rays_ = rays_;
    d.dual_lineality_ = lineality_;
    d.dim_ = d.lineality_.size() + rank(d.rays_, ambient_);
    d.compute_faces();
    return d;
}

void Cone::compute_faces()
{
    const std::size_t k = rays_.size();
    const std::size_t m = dual_rays_.size();
    std::vector<std::vector<std::size_t>> zero_sets(m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t r = 0; r < k; ++r)
            if (dot(dual_rays_[j], rays_[r]) == 0)
                zero_sets[j].push_back(r);

    std::vector<std::size_t> all(k);
    for (std::size_t r = 0; r < k; ++r)
        all[r] = r;
    std::set<std::vector<std::size_t>> seen{all};
    std::vector<std::vector<std::size_t>> queue{all};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::size_t> meet;
            std::set_intersection(queue[head].begin(), queue[head].end(), zero_sets[j].begin(),
                                  zero_sets[j].end(), std::back_inserter(meet));
            if (seen.insert(meet).second)
                queue.push_back(meet);
        }
    }

    faces_.clear();
    for (const auto& rs : queue) {
        FaceInfo f;
        f.rays = rs;
        for (std::size_t j = 0; j < m; ++j)
            if (std::includes(zero_sets[j].begin(), zero_sets[j].end(), rs.begin(), rs.end()))
                f.tight.push_back(j);
        std::vector<IntVector> gens;
        for (std::size_t r : rs)
            gens.push_back(rays_[r]);
        f.dim = lineality_.size() + rank(gens, ambient_);
        faces_.push_back(std::move(f));
    }
    std::sort(faces_.begin(), faces_.end(), [](const FaceInfo& a, const FaceInfo& b) {
        if (a.dim != b.dim)
            return a.dim < b.dim;
        return a.rays < b.rays;
    });
}

Cone Cone::face(std::size_t index) const
{
    const FaceInfo& f = faces_.at(index);
    if (f.rays.size() == rays_.size())
        return *this;
    std::vector<IntVector> gens;
    for (std::size_t r : f.rays)
        gens.push_back(rays_[r]);
    return build(ambient_, gens, lineality_);
}

std::vector<Cone> Cone::faces() const
{
    std::vector<Cone> out;
    out.reserve(faces_.size());
    for (std::size_t i = 0; i < faces_.size(); ++i)
        out.push_back(face(i));
    return out;
}

std::optional<std::size_t> Cone::face_index(const Cone& tau) const
{
    if (tau.ambient_ != ambient_ || tau.lineality_ != lineality_)
        return std::nullopt;
    std::vector<std::size_t> idx;
    for (const auto& r : tau.rays_) {
        auto it = std::lower_bound(rays_.begin(), rays_.end(), r, LexLess{});
        if (it == rays_.end() || *it != r)
            return std::nullopt;
        idx.push_back(static_cast<std::size_t>(it - rays_.begin()));
    }
    for (std::size_t f = 0; f < faces_.size(); ++f)
        if (faces_[f].rays == idx)
            return f;
    return std::nullopt;
}

std::vector<std::size_t> Cone::facet_indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < faces_.size(); ++f)
        if (faces_[f].dim + 1 == dim_)
            out.push_back(f);
    return out;
}

Containment Cone::locate(std::span<const Rational> v) const
{
    return locate_impl(*this, v);
}

bool Cone::contains(std::span<const Integer> v) const
{
    if (v.size() != ambient_)
        throw DimensionMismatch("point of length " + std::to_string(v.size()) +
                                " tested against a cone in rank " + std::to_string(ambient_));
    for (const auto& e : dual_lineality_)
        if (dot(e, v) != 0)
            return false;
    for (const auto& a : dual_rays_)
        if (dot(a, v) < 0)
            return false;
    return true;
}

bool Cone::contains(std::span<const Rational> v) const
{
    if (v.size() != ambient_)
        throw DimensionMismatch("point of length " + std::to_string(v.size()) +
                                " tested against a cone in rank " + std::to_string(ambient_));
    for (const auto& e : dual_lineality_)
        if (dot(v, std::span<const Integer>(e)) != 0)
            return false;
    for (const auto& a : dual_rays_)
        if (dot(v, std::span<const Integer>(a)) < 0)
            return false;
    return true;
}

bool Cone::contains(const Cone& other) const
{
    if (other.ambient_ != ambient_)
        throw DimensionMismatch("cones live in different ambient lattices");
    for (const auto& r : other.rays_)
        if (!contains(std::span<const Integer>(r)))
            return false;
    for (const auto& l : other.lineality_) {
        for (const auto& e : dual_lineality_)
            if (dot(e, l) != 0)
                return false;
        for (const auto& a : dual_rays_)
            if (dot(a, l) != 0)
                return false;
    }
    return true;
}

bool Cone::in_relative_interior(std::span<const Rational> v) const
{
    return locate(v).where == Location::interior;
}

Cone Cone::intersect(const Cone& other) const
{
    if (other.ambient_ != ambient_)
        throw DimensionMismatch("cones live in different ambient lattices");
    auto ineqs = dual_rays_;
    ineqs.insert(ineqs.end(), other.dual_rays_.begin(), other.dual_rays_.end());
    auto eqs = dual_lineality_;
    eqs.insert(eqs.end(), other.dual_lineality_.begin(), other.dual_lineality_.end());
    return from_inequalities(ambient_, ineqs, eqs);
}

IntVector Cone::relative_interior_point() const
{
    IntVector s(ambient_, Integer(0));
    for (const auto& r : rays_)
        for (std::size_t j = 0; j < ambient_; ++j)
            s[j] += r[j];
    return s;
}

bool operator==(const Cone& a, const Cone& b)
{
    return a.ambient_ == b.ambient_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
}

std::strong_ordering operator<=>(const Cone& a, const Cone& b)
{
    if (auto c = a.ambient_ <=> b.ambient_; c != 0)
        return c;
    if (auto c = a.dim_ <=> b.dim_; c != 0)
        return c;
    if (int c = compare_lists(a.lineality_, b.lineality_); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = compare_lists(a.rays_, b.rays_); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Cone product(const Cone& a, const Cone& b)
{
    const std::size_t n = a.ambient_rank();
    const std::size_t m = b.ambient_rank();
    auto pad = [&](const IntVector& v, bool first) {
        IntVector out(n + m, Integer(0));
        std::copy(v.begin(), v.end(), out.begin() + static_cast<long>(first ? 0 : n));
        return out;
    };
    std::vector<IntVector> gens, lin;
    for (const auto& r : a.rays())
        gens.push_back(pad(r, true));
    for (const auto& r : b.rays())
        gens.push_back(pad(r, false));
    for (const auto& l : a.lineality())
        lin.push_back(pad(l, true));
    for (const auto& l : b.lineality())
        lin.push_back(pad(l, false));
    return Cone::from_generators(n + m, gens, lin);
}

Cone image(const IntMatrix& F, const Cone& sigma)
{
    if (F.cols() != sigma.ambient_rank())
        throw DimensionMismatch("lattice map does not match the cone's ambient rank");
    std::vector<IntVector> gens, lin;
    for (const auto& r : sigma.rays())
        gens.push_back(F * std::span<const Integer>(r));
    for (const auto& l : sigma.lineality())
        lin.push_back(F * std::span<const Integer>(l));
    return Cone::from_generators(F.rows(), gens, lin);
}

Quotient quotient_by_span(const Cone& tau)
{
    auto rows = tau.rays();
    rows.insert(rows.end(), tau.lineality().begin(), tau.lineality().end());
    Lattice perp = kernel_lattice(IntMatrix::from_rows(rows, tau.ambient_rank()));
    return {perp.rank(), perp.basis()};
}

Quotient quotient_by_span(const Cone& sigma, const Cone& tau)
{
    if (!sigma.has_face(tau))
        throw NotAFace("cone is not a face of the given cone");
    return quotient_by_span(tau);
}

bool AffineSemigroup::is_unit(std::size_t generator) const
{
    IntVector neg = generators.at(generator);
    for (auto& x : neg)
        x = -x;
    return cone.contains(std::span<const Integer>(neg));
}

namespace {

// Simplicial cones covering a pointed cone, each given by its rays.
void cover_by_simplices(const Cone& c, std::vector<std::vector<IntVector>>& out)
{
    if (c.rays().size() == c.dim()) {
        out.push_back(c.rays());
        return;
    }
    const IntVector& apex = c.rays().front();
    for (std::size_t f : c.facet_indices()) {
        const FaceInfo& info = c.face_info()[f];
        if (!info.rays.empty() && info.rays.front() == 0)
            continue;
        std::vector<std::vector<IntVector>> sub;
        cover_by_simplices(c.face(f), sub);
        for (auto& s : sub) {
            s.insert(s.begin(), apex);
            out.push_back(std::move(s));
        }
    }
}

// Lattice points of the half-open parallelepiped spanned by the rows of R.
std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& generators)
{
    const std::size_t d = generators.size();
    IntMatrix R = IntMatrix::from_rows(generators, d);
    auto snf = smith_normal_form(R);
    auto qinv = inverse_rational(snf.Q);
    auto rinv = inverse_rational(R);
    auto factors = snf.invariant_factors();
    std::vector<IntVector> out;
    std::vector<Integer> w(d, Integer(0));
    while (true) {
        RatVector y(d, Rational(0));
        for (std::size_t i = 0; i < d; ++i)
            if (w[i] != 0)
                for (std::size_t j = 0; j < d; ++j)
                    y[j] += qinv[i][j] * w[i];
        RatVector lambda(d, Rational(0));
        for (std::size_t i = 0; i < d; ++i)
            if (y[i] != 0)
                for (std::size_t j = 0; j < d; ++j)
                    lambda[j] += y[i] * rinv[i][j];
        for (auto& l : lambda) {
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
            l -= fl;
        }
        RatVector x(d, Rational(0));
        for (std::size_t i = 0; i < d; ++i)
            if (lambda[i] != 0)
                for (std::size_t j = 0; j < d; ++j)
                    x[j] += lambda[i] * R.at(i, j);
        if (!is_zero(x)) {
            IntVector p(d);
            for (std::size_t j = 0; j < d; ++j)
                p[j] = x[j].get_num();
            out.push_back(std::move(p));
        }
        std::size_t i = 0;
        while (i < d) {
            w[i] += 1;
            if (w[i] < factors[i])
                break;
            w[i] = 0;
            ++i;
        }
        if (i == d)
            break;
    }
    return out;
}

// Hilbert basis of a pointed full-dimensional cone.
std::vector<IntVector> pointed_hilbert_basis(const Cone& c)
{
    std::set<IntVector, LexLess> candidates(c.rays().begin(), c.rays().end());
    std::vector<std::vector<IntVector>> simplices;
    cover_by_simplices(c, simplices);
    for (const auto& s : simplices)
        for (auto& p : parallelepiped_points(s))
            candidates.insert(std::move(p));
    std::vector<IntVector> out;
    for (const auto& x : candidates) {
        bool reducible = false;
        for (const auto& y : candidates) {
            if (y == x)
                continue;
            IntVector diff(x.size());
            for (std::size_t j = 0; j < x.size(); ++j)
                diff[j] = x[j] - y[j];
            if (c.contains(std::span<const Integer>(diff))) {
                reducible = true;
                break;
            }
        }
        if (!reducible)
            out.push_back(x);
    }
    return out;
}

}  // namespace

AffineSemigroup monoid_generators(const Cone& c)
{
    const std::size_t n = c.ambient_rank();
    AffineSemigroup out;
    out.ambient = n;
    out.cone = c;
    std::set<IntVector, LexLess> gens;
    for (const auto& l : c.lineality()) {
        gens.insert(l);
        IntVector neg = l;
        for (auto& x : neg)
            x = -x;
        gens.insert(neg);
    }
    if (!c.rays().empty()) {
        auto spanning = c.rays();
        spanning.insert(spanning.end(), c.lineality().begin(), c.lineality().end());
        Lattice span_lattice(n, IntMatrix::from_rows(saturate(n, spanning), n));
        const std::size_t d = span_lattice.rank();
        auto coords = [&](const IntVector& v) {
            auto y = span_lattice.coordinates(v);
            if (!y)
                throw Error("internal: generator outside its saturated span");
            return *y;
        };
        std::vector<IntVector> lin_coords;
        for (const auto& l : c.lineality())
            lin_coords.push_back(coords(l));
        IntMatrix P = kernel_lattice(IntMatrix::from_rows(lin_coords, d)).basis();
        std::vector<IntVector> projected;
        for (const auto& r : c.rays())
            projected.push_back(P * std::span<const Integer>(coords(r)));
        Cone pointed = Cone::from_generators(P.rows(), projected);
        HermiteResult lin_hnf = hermite_normal_form(IntMatrix::from_rows(c.lineality(), n));
        for (const auto& h : pointed_hilbert_basis(pointed)) {
            auto y = solve_integer(P, h);
            if (!y)
                throw Error("internal: projection onto the pointed quotient is not surjective");
            IntVector x = span_lattice.basis().transpose() * std::span<const Integer>(*y);
            for (std::size_t i = 0; i < lin_hnf.pivot_columns.size(); ++i) {
                const std::size_t pc = lin_hnf.pivot_columns[i];
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), x[pc].get_mpz_t(), lin_hnf.H.at(i, pc).get_mpz_t());
                if (q != 0)
                    for (std::size_t j = 0; j < n; ++j)
                        x[j] -= q * lin_hnf.H.at(i, j);
            }
            gens.insert(std::move(x));
        }
    }
    out.generators.assign(gens.begin(), gens.end());
    return out;
}

AffineSemigroup hilbert_basis(const Cone& sigma)
{
    return monoid_generators(sigma.dual());
}

}  // namespace prevtrop
