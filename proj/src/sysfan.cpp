#include "prevtrop/sysfan.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace prevtrop {

namespace {

std::string describe(const Cone& c)
{
    std::string out = "cone(";
    for (std::size_t r = 0; r < c.rays().size(); ++r) {
        if (r > 0)
            out += ",";
        out += "[";
        for (std::size_t j = 0; j < c.rays()[r].size(); ++j) {
            if (j > 0)
                out += ",";
            out += to_string(c.rays()[r][j]);
        }
        out += "]";
    }
    return out + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// Fan

Fan::Fan(std::size_t ambient, const std::vector<Cone>& cones) : ambient_(ambient)
{
    std::set<Cone> all;
    for (const auto& c : cones) {
        if (c.ambient_rank() != ambient)
            throw DimensionMismatch("cone of ambient rank " + std::to_string(c.ambient_rank()) +
                                    " in a fan of rank " + std::to_string(ambient));
        if (all.count(c))
            continue;
        for (auto& f : c.faces())
            all.insert(std::move(f));
    }
    cones_.assign(all.begin(), all.end());
}

bool Fan::contains(const Cone& c) const
{
    return std::binary_search(cones_.begin(), cones_.end(), c);
}

std::optional<std::size_t> Fan::index_of(const Cone& c) const
{
    auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
    if (it == cones_.end() || !(*it == c))
        return std::nullopt;
    return static_cast<std::size_t>(it - cones_.begin());
}

std::vector<Cone> Fan::maximal_cones() const
{
    std::vector<Cone> out;
    for (std::size_t a = 0; a < cones_.size(); ++a) {
        bool maximal = true;
        for (std::size_t b = 0; b < cones_.size() && maximal; ++b)
            if (b != a && cones_[b].dim() > cones_[a].dim() && cones_[b].has_face(cones_[a]))
                maximal = false;
        if (maximal)
            out.push_back(cones_[a]);
    }
    return out;
}

Fan Fan::common_cones(const Fan& other) const
{
    Fan out;
    out.ambient_ = ambient_;
    std::set_intersection(cones_.begin(), cones_.end(), other.cones_.begin(), other.cones_.end(),
                          std::back_inserter(out.cones_));
    return out;
}

bool Fan::is_subfan_of(const Fan& other) const
{
    return std::includes(other.cones_.begin(), other.cones_.end(), cones_.begin(), cones_.end());
}

std::optional<std::size_t> Fan::carrier(std::span<const Rational> v) const
{
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].in_relative_interior(v))
            return i;
    return std::nullopt;
}

std::string kind_name(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::not_a_fan:
        return "not_a_fan";
    case Violation::Kind::not_pointed:
        return "not_pointed";
    case Violation::Kind::empty_fan:
        return "empty_fan";
    case Violation::Kind::asymmetric:
        return "asymmetric";
    case Violation::Kind::not_in_diagonal:
        return "not_in_diagonal";
    case Violation::Kind::gluing:
        return "gluing";
    }
    return "unknown";
}

std::vector<Violation> fan_violations(const Fan& fan)
{
    std::vector<Violation> out;
    for (const auto& c : fan.cones())
        if (!c.is_pointed())
            out.push_back({Violation::Kind::not_pointed, {}, c, describe(c) + " contains a line"});
    auto maximal = fan.maximal_cones();
    for (std::size_t a = 0; a < maximal.size(); ++a)
        for (std::size_t b = a + 1; b < maximal.size(); ++b) {
            Cone meet = maximal[a].intersect(maximal[b]);
            if (!maximal[a].has_face(meet) || !maximal[b].has_face(meet))
                out.push_back({Violation::Kind::not_a_fan, {}, maximal[a],
                               describe(maximal[a]) + " and " + describe(maximal[b]) +
                                   " do not meet in a common face"});
        }
    return out;
}

// ---------------------------------------------------------------------------
// SystemOfFans

SystemOfFans::SystemOfFans(std::size_t ambient, std::vector<std::string> labels,
                           std::vector<std::vector<Fan>> fans)
    : ambient_(ambient), labels_(std::move(labels)), fans_(std::move(fans))
{
    if (fans_.size() != labels_.size())
        throw DimensionMismatch("fan matrix does not match the number of charts");
    for (const auto& row : fans_) {
        if (row.size() != labels_.size())
            throw DimensionMismatch("fan matrix is not square");
        for (const auto& f : row)
            if (f.ambient_rank() != ambient && !f.empty())
                throw DimensionMismatch("fan of rank " + std::to_string(f.ambient_rank()) +
                                        " in a system of rank " + std::to_string(ambient));
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
        throw Error("duplicate chart labels");
}

SystemOfFans SystemOfFans::from_entries(std::size_t ambient, std::vector<std::string> labels,
                                        const std::map<std::pair<std::size_t, std::size_t>, Fan>& entries)
{
    const std::size_t n = labels.size();
    std::vector<std::vector<Fan>> fans(n, std::vector<Fan>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto it = entries.find({i, j});
            if (it == entries.end())
                it = entries.find({j, i});
            if (it == entries.end())
                throw Error("no fan given for charts " + labels[i] + "," + labels[j]);
            fans[i][j] = it->second;
        }
    return SystemOfFans(ambient, std::move(labels), std::move(fans));
}

SystemOfFans SystemOfFans::single(const Fan& fan, std::string label)
{
    return SystemOfFans(fan.ambient_rank(), {std::move(label)}, {{fan}});
}

std::optional<std::size_t> SystemOfFans::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<Violation> validate_system(const SystemOfFans& s)
{
    std::vector<Violation> out;
    const std::size_t n = s.size();
    const auto& L = s.labels();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Fan& f = s.fan(i, j);
            if (f.empty()) {
                if (i <= j)
                    out.push_back({Violation::Kind::empty_fan, {L[i], L[j]}, std::nullopt,
                                   "fan " + L[i] + "," + L[j] + " has no cones"});
                continue;
            }
            if (i <= j || !(s.fan(j, i) == f))
                for (auto v : fan_violations(f)) {
                    v.indices = {L[i], L[j]};
                    v.message = "fan " + L[i] + "," + L[j] + ": " + v.message;
                    out.push_back(std::move(v));
                }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = s.fan(i, j).cones();
            const auto& b = s.fan(j, i).cones();
            if (a == b)
                continue;
            std::vector<Cone> diff;
            std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                          std::back_inserter(diff));
            out.push_back({Violation::Kind::asymmetric, {L[i], L[j]}, diff.front(),
                           "fans " + L[i] + "," + L[j] + " and " + L[j] + "," + L[i] +
                               " differ at " + describe(diff.front())});
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            for (const auto& c : s.fan(i, j).cones())
                if (!s.fan(i, i).contains(c)) {
                    out.push_back({Violation::Kind::not_in_diagonal, {L[i], L[j]}, c,
                                   describe(c) + " lies in fan " + L[i] + "," + L[j] +
                                       " but not in fan " + L[i] + "," + L[i]});
                    break;
                }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k)
                    continue;
                Fan meet = s.fan(i, j).common_cones(s.fan(j, k));
                for (const auto& c : meet.cones())
                    if (!s.fan(i, k).contains(c)) {
                        out.push_back({Violation::Kind::gluing, {L[i], L[j], L[k]}, c,
                                       describe(c) + " lies in fans " + L[i] + "," + L[j] +
                                           " and " + L[j] + "," + L[k] + " but not in " + L[i] +
                                           "," + L[k]});
                        break;
                    }
            }
    return out;
}

// ---------------------------------------------------------------------------
// Omega poset

OmegaPoset::OmegaPoset(const SystemOfFans& s) : lookup_(s.size())
{
    const std::size_t n = s.size();
    std::vector<std::pair<std::size_t, std::size_t>> elements;   // (chart, cone index)
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        offset[i + 1] = offset[i] + s.fan(i, i).cones().size();
        for (std::size_t c = 0; c < s.fan(i, i).cones().size(); ++c)
            elements.push_back({i, c});
    }
    std::vector<std::size_t> parent(elements.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (const auto& c : s.fan(i, j).cones()) {
                auto a = s.fan(i, i).index_of(c);
                auto b = s.fan(j, j).index_of(c);
                if (!a || !b)
                    continue;
                std::size_t ra = find(offset[i] + *a);
                std::size_t rb = find(offset[j] + *b);
                if (ra != rb)
                    parent[std::max(ra, rb)] = std::min(ra, rb);
            }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t e = 0; e < elements.size(); ++e)
        groups[find(e)].push_back(e);
    for (const auto& [root, members] : groups) {
        OmegaClass c;
        c.cone = s.fan(elements[members.front()].first, elements[members.front()].first)
                     .cones()[elements[members.front()].second];
        for (std::size_t e : members)
            c.charts.push_back(elements[e].first);
        std::sort(c.charts.begin(), c.charts.end());
        c.rep = c.charts.front();
        classes_.push_back(std::move(c));
    }
    std::sort(classes_.begin(), classes_.end(), [](const OmegaClass& a, const OmegaClass& b) {
        if (auto c = a.cone <=> b.cone; c != 0)
            return c < 0;
        return a.rep < b.rep;
    });
    for (std::size_t id = 0; id < classes_.size(); ++id) {
        classes_[id].id = id;
        for (std::size_t chart : classes_[id].charts)
            lookup_[chart][classes_[id].cone] = id;
    }
    order_.assign(classes_.size(), std::vector<bool>(classes_.size(), false));
    for (std::size_t b = 0; b < classes_.size(); ++b)
        for (const auto& tau : classes_[b].cone.faces()) {
            auto a = class_of(tau, classes_[b].rep);
            if (a)
                order_[*a][b] = true;
        }
}

std::optional<std::size_t> OmegaPoset::class_of(const Cone& sigma, std::size_t chart) const
{
    if (chart >= lookup_.size())
        return std::nullopt;
    auto it = lookup_[chart].find(sigma);
    if (it == lookup_[chart].end())
        return std::nullopt;
    return it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> OmegaPoset::relation() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b)
            if (order_[a][b])
                out.push_back({a, b});
    return out;
}

std::vector<std::size_t> OmegaPoset::down_set(std::size_t id) const
{
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < size(); ++a)
        if (order_[a][id])
            out.push_back(a);
    return out;
}

std::vector<std::size_t> OmegaPoset::up_set(std::size_t id) const
{
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < size(); ++b)
        if (order_[id][b])
            out.push_back(b);
    return out;
}

std::vector<std::size_t> OmegaPoset::maximal() const
{
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < size(); ++a)
        if (up_set(a).size() == 1)
            out.push_back(a);
    return out;
}

OmegaPoset omega_poset(const SystemOfFans& s)
{
    return OmegaPoset(s);
}

// ---------------------------------------------------------------------------
// Morphisms

std::vector<std::string> validate_morphism(const SysFanMorphism& m, const SystemOfFans& source,
                                           const SystemOfFans& target)
{
    std::vector<std::string> out;
    if (m.lattice_map.cols() != source.ambient_rank() || m.lattice_map.rows() != target.ambient_rank()) {
        out.push_back("lattice map has shape " + std::to_string(m.lattice_map.rows()) + "x" +
                      std::to_string(m.lattice_map.cols()) + ", expected " +
                      std::to_string(target.ambient_rank()) + "x" +
                      std::to_string(source.ambient_rank()));
        return out;
    }
    OmegaPoset ps(source);
    OmegaPoset pt(target);
    if (m.class_map.size() != ps.size()) {
        out.push_back("class map has " + std::to_string(m.class_map.size()) + " entries, expected " +
                      std::to_string(ps.size()));
        return out;
    }
    for (std::size_t a = 0; a < ps.size(); ++a)
        if (m.class_map[a] >= pt.size()) {
            out.push_back("class " + std::to_string(a) + " is sent to a nonexistent class");
            return out;
        }
    for (const auto& [a, b] : ps.relation())
        if (!pt.leq(m.class_map[a], m.class_map[b]))
            out.push_back("order not preserved: class " + std::to_string(a) + " <= class " +
                          std::to_string(b) + " but their images are not ordered");
    for (std::size_t a = 0; a < ps.size(); ++a) {
        Cone img = image(m.lattice_map, ps.at(a).cone);
        if (!pt.at(m.class_map[a]).cone.contains(img))
            out.push_back("class " + std::to_string(a) + ": image of " + describe(ps.at(a).cone) +
                          " is not contained in " + describe(pt.at(m.class_map[a]).cone));
    }
    return out;
}

SysFanMorphism morphism_from_chart_map(const IntMatrix& F, const SystemOfFans& source,
                                       const SystemOfFans& target,
                                       const std::vector<std::size_t>& chart_map)
{
    if (chart_map.size() != source.size())
        throw DimensionMismatch("chart map does not cover every source chart");
    if (F.cols() != source.ambient_rank() || F.rows() != target.ambient_rank())
        throw DimensionMismatch("lattice map does not match the ambient ranks");
    OmegaPoset ps(source);
    OmegaPoset pt(target);
    SysFanMorphism m{F, {}};
    for (const auto& c : ps.classes()) {
        const std::size_t chart = chart_map.at(c.rep);
        IntVector p = F * std::span<const Integer>(c.cone.relative_interior_point());
        RatVector q = to_rational(p);
        const Fan& fan = target.fan(chart, chart);
        auto carrier = fan.carrier(q);
        if (!carrier || !fan.cones()[*carrier].contains(image(F, c.cone)))
            throw Error("image of " + describe(c.cone) + " lies in no cone of chart " +
                        target.labels()[chart]);
        m.class_map.push_back(*pt.class_of(fan.cones()[*carrier], chart));
    }
    return m;
}

SysFanMorphism identity_morphism(const SystemOfFans& s)
{
    OmegaPoset p(s);
    SysFanMorphism m{IntMatrix::identity(s.ambient_rank()), {}};
    for (std::size_t a = 0; a < p.size(); ++a)
        m.class_map.push_back(a);
    return m;
}

// ---------------------------------------------------------------------------
// Constructions and predicates

SystemOfFans product(const SystemOfFans& a, const SystemOfFans& b)
{
    const std::size_t n = a.ambient_rank() + b.ambient_rank();
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            labels.push_back(a.labels()[i] + ":" + b.labels()[k]);
            pairs.push_back({i, k});
        }
    std::vector<std::vector<Fan>> fans(pairs.size(), std::vector<Fan>(pairs.size()));
    for (std::size_t p = 0; p < pairs.size(); ++p)
        for (std::size_t q = p; q < pairs.size(); ++q) {
            std::vector<Cone> cones;
            for (const auto& x : a.fan(pairs[p].first, pairs[q].first).maximal_cones())
                for (const auto& y : b.fan(pairs[p].second, pairs[q].second).maximal_cones())
                    cones.push_back(product(x, y));
            fans[p][q] = Fan(n, cones);
            fans[q][p] = fans[p][q];
        }
    return SystemOfFans(n, std::move(labels), std::move(fans));
}

bool systems_isomorphic(const SystemOfFans& a, const SystemOfFans& b)
{
    if (a.ambient_rank() != b.ambient_rank() || a.size() != b.size())
        return false;
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                ok = a.fan(i, j) == b.fan(perm[i], perm[j]);
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

SeparationReport is_separated(const SystemOfFans& s)
{
    OmegaPoset p(s);
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            const auto& ca = p.at(a);
            const auto& cb = p.at(b);
            Cone meet = ca.cone.intersect(cb.cone);
            if (!ca.cone.has_face(meet) || !cb.cone.has_face(meet))
                return {false, std::pair{a, b}, "the cones do not intersect in a common face"};
            if (!s.fan(ca.rep, cb.rep).contains(meet))
                return {false, std::pair{a, b},
                        "the charts are glued only along a proper face of the intersection"};
        }
    return {};
}

bool support_is_full(const SystemOfFans& s)
{
    if (!is_separated(s).separated)
        throw PreconditionViolation("support test requires a separated system");
    if (s.ambient_rank() == 0)
        return s.size() > 0;
    std::vector<Cone> all;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (const auto& c : s.fan(i, i).cones())
            all.push_back(c);
    Fan fan(s.ambient_rank(), all);
    auto maximal = fan.maximal_cones();
    if (maximal.empty())
        return false;
    for (const auto& m : maximal) {
        if (!m.is_full_dimensional())
            return false;
        for (std::size_t f : m.facet_indices()) {
            Cone facet = m.face(f);
            std::size_t sharing = 0;
            for (const auto& other : maximal)
                if (!(other == m) && other.has_face(facet))
                    ++sharing;
            if (sharing != 1)
                return false;
        }
    }
    return true;
}

}  // namespace prevtrop
