#include "prevtrop/multiproj.hpp"

#include <algorithm>
#include <map>

namespace prevtrop {

Grading::Grading(std::size_t n_, AbelianGroup group_, std::vector<IntVector> degrees_)
    : n(n_), group(std::move(group_)), degrees(std::move(degrees_))
{
    if (degrees.size() != n)
        throw DimensionMismatch("expected " + std::to_string(n) + " degrees");
    for (auto& d : degrees)
        d = group.reduce(std::move(d));
}

std::string subset_label(const Subset& f)
{
    if (f.empty())
        return "1";
    std::string out;
    for (std::size_t i : f)
        out += "T" + std::to_string(i + 1);
    return out;
}

bool is_relevant_subset(const Grading& g, const Subset& f)
{
    std::vector<IntVector> cols;
    for (std::size_t i : f) {
        if (i >= g.n)
            throw Error("variable index out of range");
        cols.push_back(g.degrees[i]);
    }
    return cokernel_is_finite(IntMatrix::from_columns(cols, g.group.coordinate_count()), g.group).finite;
}

bool monomial_in_irrelevant_ideal(const Grading& g, std::span<const Integer> exponent)
{
    if (exponent.size() != g.n)
        throw DimensionMismatch("exponent has the wrong length");
    Subset support;
    for (std::size_t i = 0; i < g.n; ++i) {
        if (exponent[i] < 0)
            throw Error("exponents must be non-negative");
        if (exponent[i] > 0)
            support.push_back(i);
    }
    return is_relevant_subset(g, support);
}

std::vector<Subset> ChartPoset::minimal_subsets() const
{
    std::vector<Subset> out;
    for (std::size_t k = 0; k < relevant.size(); ++k)
        if (minimal[k])
            out.push_back(relevant[k]);
    return out;
}

namespace {

Subset members(std::uint32_t mask, std::size_t n)
{
    Subset out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u)
            out.push_back(i);
    return out;
}

bool subset_less(const Subset& a, const Subset& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

Subset set_union(const Subset& a, const Subset& b)
{
    Subset out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::vector<Subset> relevant_subsets(const Grading& g)
{
    if (g.n > 16)
        throw Error("relevant subsets are enumerated for at most 16 variables");
    std::vector<Subset> out;
    for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
        Subset f = members(mask, g.n);
        if (is_relevant_subset(g, f))
            out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), subset_less);
    return out;
}

ProjResult proj_system_of_fans(const Grading& g)
{
    ProjResult res;
    res.poset.relevant = relevant_subsets(g);
    if (res.poset.relevant.empty())
        throw EmptyProj("no monomial is relevant, Proj is empty");

    const std::size_t r = g.group.free_rank();
    IntMatrix free_part(r, g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t k = 0; k < r; ++k)
            free_part.at(k, i) = g.degrees[i][k];
    res.characters = kernel_lattice(free_part);
    res.pairing = res.characters.basis();
    const std::size_t m = res.characters.rank();

    std::map<Subset, std::size_t> index;
    for (const auto& f : res.poset.relevant) {
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < g.n; ++i)
            if (!std::binary_search(f.begin(), f.end(), i))
                gens.push_back(res.pairing.column(i));
        if (rank(gens, m) != gens.size())
            throw Error("internal: cone of relevant subset " + subset_label(f) + " is not simplicial");
        index.emplace(f, res.poset.cones.size());
        res.poset.cones.push_back(Cone::from_generators(m, gens));
    }
    for (const auto& f : res.poset.relevant) {
        bool minimal = true;
        for (const auto& h : res.poset.relevant)
            if (h.size() < f.size() && std::includes(f.begin(), f.end(), h.begin(), h.end()))
                minimal = false;
        res.poset.minimal.push_back(minimal);
        if (minimal)
            res.charts.push_back(f);
    }

    std::vector<std::string> labels;
    for (const auto& f : res.charts)
        labels.push_back(subset_label(f));
    std::vector<std::vector<Fan>> fans(res.charts.size(), std::vector<Fan>(res.charts.size()));
    for (std::size_t i = 0; i < res.charts.size(); ++i)
        for (std::size_t j = 0; j < res.charts.size(); ++j) {
            Subset u = set_union(res.charts[i], res.charts[j]);
            auto it = index.find(u);
            if (it == index.end())
                throw Error("internal: relevance is not closed upward at " + subset_label(u));
            fans[i][j] = Fan(m, {res.poset.cones[it->second]});
        }
    res.system = SystemOfFans(m, std::move(labels), std::move(fans));
    return res;
}

}  // namespace prevtrop
