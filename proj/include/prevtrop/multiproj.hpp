#pragma once

// Polynomial rings k[T_1..T_n] graded by a finitely generated abelian group:
// relevant monomials, the irrelevant ideal and Proj_D as a system of fans.

#include "prevtrop/sysfan.hpp"

#include <string>
#include <vector>

namespace prevtrop {

class EmptyProj : public Error {
public:
    using Error::Error;
};

/// Variable indices are 0-based; labels print them 1-based.
using Subset = std::vector<std::size_t>;

struct Grading {
    std::size_t n = 0;
    AbelianGroup group;
    std::vector<IntVector> degrees;   // degrees[i] = deg T_{i+1}, torsion reduced

    /// Checks shapes and reduces the torsion coordinates.
    Grading(std::size_t n, AbelianGroup group, std::vector<IntVector> degrees);
    Grading() = default;

    friend bool operator==(const Grading&, const Grading&) = default;
};

/// "T1T3", or "1" for the empty set.
std::string subset_label(const Subset& f);

bool is_relevant_subset(const Grading& g, const Subset& f);
bool monomial_in_irrelevant_ideal(const Grading& g, std::span<const Integer> exponent);

struct ChartPoset {
    std::vector<Subset> relevant;   // sorted by size, then lexicographically
    std::vector<bool> minimal;
    std::vector<Cone> cones;        // sigma_F for each relevant F

    std::vector<Subset> minimal_subsets() const;
};

/// Enumerates all 2^n subsets; n must be at most 16.
std::vector<Subset> relevant_subsets(const Grading& g);

struct ProjResult {
    SystemOfFans system;            // charts = minimal relevant subsets
    std::vector<Subset> charts;
    ChartPoset poset;
    IntMatrix pairing;              // columns q(e_i) in N
    Lattice characters;             // M inside Z^n
};

/// Throws EmptyProj when no subset is relevant.
ProjResult proj_system_of_fans(const Grading& g);

}  // namespace prevtrop
