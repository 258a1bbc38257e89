#pragma once

// Rational polyhedral cones in Z^n with both representations kept in
// canonical form, the face lattice, and monoid generators of dual cones.

#include "prevtrop/exactla.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace prevtrop {

class NotAFace : public Error {
public:
    using Error::Error;
};

struct FaceInfo {
    std::vector<std::size_t> rays;        // indices into Cone::rays()
    std::vector<std::size_t> tight;       // indices into Cone::inequalities()
    std::size_t dim = 0;
};

enum class Location { outside, boundary, interior };

struct Containment {
    Location where = Location::outside;
    std::size_t face = 0;   // index into Cone::face_info(), meaningful unless outside
};

/// A cone { x : <a, x> >= 0 for all inequalities a, <e, x> = 0 for all
/// equations e } = cone(rays) + span(lineality).
///
/// Canonical form: the lineality basis is the Hermite basis of the saturated
/// lineality lattice; rays are the primitive representatives of extremal rays
/// orthogonal to the lineality space, sorted lexicographically. The H side is
/// stored as the canonical V side of the dual cone.
class Cone {
public:
    /// The zero cone in Z^0.
    Cone();

    /// cone(generators) + span(lineality); generators need not be minimal.
    static Cone from_generators(std::size_t ambient, const std::vector<IntVector>& generators,
                                const std::vector<IntVector>& lineality = {});
    static Cone from_inequalities(std::size_t ambient, const std::vector<IntVector>& inequalities,
                                  const std::vector<IntVector>& equations = {});
    static Cone zero(std::size_t ambient);
    static Cone whole(std::size_t ambient);
    static Cone orthant(std::size_t ambient);

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t dim() const { return dim_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality() const { return lineality_; }
    /// Facet normals; the cone is { x : <a,x> >= 0, <e,x> = 0 }.
    const std::vector<IntVector>& inequalities() const { return dual_rays_; }
    const std::vector<IntVector>& equations() const { return dual_lineality_; }

    bool is_pointed() const { return lineality_.empty(); }
    bool is_full_dimensional() const { return dim_ == ambient_; }
    bool is_simplicial() const;

    Cone dual() const;

    const std::vector<FaceInfo>& face_info() const { return faces_; }
    Cone face(std::size_t index) const;
    /// All faces, ordered by dimension and then by ray index set.
    std::vector<Cone> faces() const;
    std::optional<std::size_t> face_index(const Cone& tau) const;
    bool has_face(const Cone& tau) const { return face_index(tau).has_value(); }
    /// Faces of codimension one.
    std::vector<std::size_t> facet_indices() const;

    Containment locate(std::span<const Rational> v) const;
    bool contains(std::span<const Integer> v) const;
    bool contains(std::span<const Rational> v) const;
    bool contains(const Cone& other) const;
    bool in_relative_interior(std::span<const Rational> v) const;

    Cone intersect(const Cone& other) const;
    /// Sum of the rays.
    IntVector relative_interior_point() const;

    friend bool operator==(const Cone& a, const Cone& b);
    friend std::strong_ordering operator<=>(const Cone& a, const Cone& b);

private:
    static Cone build(std::size_t ambient, const std::vector<IntVector>& generators,
                      const std::vector<IntVector>& lineality);
    void compute_faces();

    std::size_t ambient_ = 0;
    std::size_t dim_ = 0;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> dual_rays_;
    std::vector<IntVector> dual_lineality_;
    std::vector<FaceInfo> faces_;
};

/// Direct product cone in Z^{n+n'}.
Cone product(const Cone& a, const Cone& b);
/// Image F(sigma) of a cone under an integer matrix.
Cone image(const IntMatrix& F, const Cone& sigma);

/// The lattice N / (span(tau) cap N) with the surjection N -> quotient.
struct Quotient {
    std::size_t rank = 0;
    IntMatrix projection;   // rank x n, kernel = span(tau) cap Z^n
};
Quotient quotient_by_span(const Cone& sigma, const Cone& tau);
/// Same construction without the face check.
Quotient quotient_by_span(const Cone& tau);

/// Finite monoid generating set of a saturated affine monoid C cap Z^n.
struct AffineSemigroup {
    std::size_t ambient = 0;
    std::vector<IntVector> generators;   // lexicographically sorted
    Cone cone;

    bool contains(std::span<const Integer> v) const { return cone.contains(v); }
    bool is_unit(std::size_t generator) const;
};

/// Generators of dual(sigma) cap Z^n: a Hilbert basis of the pointed part
/// together with +/- a basis of the unit group sigma^perp cap Z^n.
AffineSemigroup hilbert_basis(const Cone& sigma);
/// Generators of C cap Z^n for an arbitrary cone C (no dualization).
AffineSemigroup monoid_generators(const Cone& c);

/// Saturated lattice basis (Hermite form) of span(vectors) cap Z^n.
std::vector<IntVector> saturate(std::size_t ambient, const std::vector<IntVector>& vectors);

}  // namespace prevtrop
