#pragma once

// Fans, systems of fans (Delta_ij), the poset of cone classes [sigma, i],
// morphisms between systems, products, separatedness and completeness.

#include "prevtrop/cone.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prevtrop {

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// A finite set of cones closed under taking faces. Cones are kept sorted
/// and deduplicated; whether they meet along common faces is checked by
/// fan_violations().
class Fan {
public:
    Fan() = default;
    /// Adds all faces of the given cones.
    Fan(std::size_t ambient, const std::vector<Cone>& cones);

    std::size_t ambient_rank() const { return ambient_; }
    const std::vector<Cone>& cones() const { return cones_; }
    bool empty() const { return cones_.empty(); }
    bool contains(const Cone& c) const;
    std::optional<std::size_t> index_of(const Cone& c) const;
    std::vector<Cone> maximal_cones() const;
    /// Cones of both fans.
    Fan common_cones(const Fan& other) const;
    bool is_subfan_of(const Fan& other) const;
    /// The unique cone whose relative interior contains v, if any.
    std::optional<std::size_t> carrier(std::span<const Rational> v) const;

    friend bool operator==(const Fan&, const Fan&) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<Cone> cones_;
};

struct Violation {
    enum class Kind { not_a_fan, not_pointed, empty_fan, asymmetric, not_in_diagonal, gluing };
    Kind kind;
    std::vector<std::string> indices;   // (i,j) or (i,j,k)
    std::optional<Cone> cone;
    std::string message;
};
std::string kind_name(Violation::Kind kind);

/// Pairwise conditions on the cones of a single fan.
std::vector<Violation> fan_violations(const Fan& fan);

class SystemOfFans {
public:
    SystemOfFans() = default;
    /// fans[i][j] is Delta_ij; the matrix must be |labels| x |labels|.
    SystemOfFans(std::size_t ambient, std::vector<std::string> labels,
                 std::vector<std::vector<Fan>> fans);
    /// Entries (i,j) with i != j may be given on one side only and are
    /// mirrored; diagonal entries are required.
    static SystemOfFans from_entries(std::size_t ambient, std::vector<std::string> labels,
                                     const std::map<std::pair<std::size_t, std::size_t>, Fan>& entries);
    /// One chart: Delta_11 = fan.
    static SystemOfFans single(const Fan& fan, std::string label = "1");

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> index_of(const std::string& label) const;
    const Fan& fan(std::size_t i, std::size_t j) const { return fans_.at(i).at(j); }

    friend bool operator==(const SystemOfFans&, const SystemOfFans&) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<Fan>> fans_;
};

/// All axiom violations, empty when the system is valid.
std::vector<Violation> validate_system(const SystemOfFans& s);

struct OmegaClass {
    std::size_t id = 0;
    Cone cone;
    std::size_t rep = 0;                 // smallest chart index in the class
    std::vector<std::size_t> charts;     // all i with (cone, i) in the class
};

/// The poset Omega(S) of classes [sigma, i].
class OmegaPoset {
public:
    OmegaPoset() = default;
    explicit OmegaPoset(const SystemOfFans& s);

    std::size_t size() const { return classes_.size(); }
    const std::vector<OmegaClass>& classes() const { return classes_; }
    const OmegaClass& at(std::size_t id) const { return classes_.at(id); }
    /// Class of (sigma, i); requires sigma in Delta_ii.
    std::optional<std::size_t> class_of(const Cone& sigma, std::size_t chart) const;
    /// a below-or-equal b.
    bool leq(std::size_t a, std::size_t b) const { return order_[a][b]; }
    /// All pairs (a, b) with a below-or-equal b.
    std::vector<std::pair<std::size_t, std::size_t>> relation() const;
    /// Classes below-or-equal id.
    std::vector<std::size_t> down_set(std::size_t id) const;
    std::vector<std::size_t> up_set(std::size_t id) const;
    std::vector<std::size_t> maximal() const;

private:
    std::vector<OmegaClass> classes_;
    std::vector<std::map<Cone, std::size_t>> lookup_;   // per chart
    std::vector<std::vector<bool>> order_;
};

OmegaPoset omega_poset(const SystemOfFans& s);

struct SysFanMorphism {
    IntMatrix lattice_map;               // N -> N', rows = rank N'
    std::vector<std::size_t> class_map;  // Omega(S) -> Omega(S')
};

std::vector<std::string> validate_morphism(const SysFanMorphism& m, const SystemOfFans& source,
                                           const SystemOfFans& target);
/// Class map induced by sending chart i to chart chart_map[i]: each [sigma,i]
/// goes to the class of the smallest cone of the target chart containing
/// F(sigma). Throws if F(sigma) lies in no cone.
SysFanMorphism morphism_from_chart_map(const IntMatrix& F, const SystemOfFans& source,
                                       const SystemOfFans& target,
                                       const std::vector<std::size_t>& chart_map);
SysFanMorphism identity_morphism(const SystemOfFans& s);

/// Labels "i:j", charts ordered lexicographically by (i, j), lattice N + N'.
SystemOfFans product(const SystemOfFans& a, const SystemOfFans& b);

/// Whether some relabelling of the charts makes the systems equal.
bool systems_isomorphic(const SystemOfFans& a, const SystemOfFans& b);

struct SeparationReport {
    bool separated = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;   // class ids
    std::string reason;
};
SeparationReport is_separated(const SystemOfFans& s);

/// Throws PreconditionViolation unless s is separated.
bool support_is_full(const SystemOfFans& s);

}  // namespace prevtrop
