#include "prevtrop/serialize.hpp"

#include <climits>

namespace prevtrop::io {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object())
        throw ParseError(std::string("expected an object with field \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

const Json& array_field(const Json& j, const char* key)
{
    const Json& a = field(j, key);
    if (!a.is_array())
        throw ParseError(std::string("field \"") + key + "\" must be an array");
    return a;
}

std::size_t index_from_json(const Json& j, const char* what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ParseError(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

void expect_array(const Json& j, const char* what)
{
    if (!j.is_array())
        throw ParseError(std::string(what) + " must be an array");
}

}  // namespace

Json document(const std::string& kind)
{
    Json d;
    d["schema"] = schema_version;
    d["kind"] = kind;
    return d;
}

std::string kind_of(const Json& doc)
{
    const Json& k = field(doc, "kind");
    if (!k.is_string())
        throw ParseError("\"kind\" must be a string");
    return k.get<std::string>();
}

void expect_kind(const Json& doc, const std::string& kind)
{
    if (kind_of(doc) != kind)
        throw ParseError("expected a " + kind + " document, got " + kind_of(doc));
    auto it = doc.find("schema");
    if (it != doc.end() && *it != schema_version)
        throw ParseError("unsupported schema version " + it->dump());
}

Json to_json(const Integer& z)
{
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        try {
            Rational q = parse_rational(j.get<std::string>());
            if (q.get_den() != 1)
                throw ParseError("expected an integer, got " + j.get<std::string>());
            return q.get_num();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("expected an integer, got " + j.dump());
}

Json to_json(const Rational& q)
{
    return to_string(q);
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(integer_from_json(j));
    if (!j.is_string())
        throw ParseError("expected a rational \"p/q\", got " + j.dump());
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json to_json(const ExtRational& x)
{
    return to_string(x);
}

ExtRational ext_rational_from_json(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "inf")
        return ExtRational::infinity();
    return rational_from_json(j);
}

Json to_json(std::span<const Integer> v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

IntVector int_vector_from_json(const Json& j)
{
    expect_array(j, "integer vector");
    IntVector v;
    for (const auto& x : j)
        v.push_back(integer_from_json(x));
    return v;
}

Json to_json(std::span<const Rational> v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

RatVector rat_vector_from_json(const Json& j)
{
    expect_array(j, "rational vector");
    RatVector v;
    for (const auto& x : j)
        v.push_back(rational_from_json(x));
    return v;
}

Json to_json(const IntMatrix& m)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(to_json(m.row(i)));
    return a;
}

IntMatrix int_matrix_from_json(const Json& j, std::size_t cols)
{
    expect_array(j, "matrix");
    std::vector<IntVector> rows;
    for (const auto& r : j) {
        rows.push_back(int_vector_from_json(r));
        if (rows.back().size() != rows.front().size())
            throw ParseError("matrix rows have different lengths");
    }
    return IntMatrix::from_rows(rows, rows.empty() ? cols : rows.front().size());
}

Json to_json(const Cone& c)
{
    Json j;
    j["ambient_rank"] = c.ambient_rank();
    j["rays"] = Json::array();
    for (const auto& r : c.rays())
        j["rays"].push_back(to_json(r));
    if (!c.lineality().empty()) {
        j["lineality"] = Json::array();
        for (const auto& l : c.lineality())
            j["lineality"].push_back(to_json(l));
    }
    return j;
}

Cone cone_from_json(const Json& j, std::size_t ambient)
{
    if (j.contains("ambient_rank") && index_from_json(j["ambient_rank"], "ambient_rank") != ambient)
        throw ParseError("cone ambient rank does not match the system");
    auto vectors = [&](const char* key) {
        std::vector<IntVector> out;
        if (!j.contains(key))
            return out;
        for (const auto& r : array_field(j, key)) {
            out.push_back(int_vector_from_json(r));
            if (out.back().size() != ambient)
                throw ParseError("cone generator has the wrong length");
        }
        return out;
    };
    Cone c = Cone::from_generators(ambient, vectors("rays"), vectors("lineality"));
    if (j.contains("inequalities")) {
        auto stored = vectors("inequalities");
        std::sort(stored.begin(), stored.end(), LexLess());
        auto fresh = c.inequalities();
        std::sort(fresh.begin(), fresh.end(), LexLess());
        if (stored != fresh)
            throw ParseError("stored inequalities do not match the rays");
    }
    return c;
}

Json to_json(const Fan& f)
{
    Json a = Json::array();
    for (const auto& c : f.maximal_cones())
        a.push_back(to_json(c));
    return a;
}

Fan fan_from_json(const Json& j, std::size_t ambient)
{
    expect_array(j, "fan");
    std::vector<Cone> cones;
    for (const auto& c : j)
        cones.push_back(cone_from_json(c, ambient));
    if (cones.empty())
        return Fan(ambient, {});
    return Fan(ambient, cones);
}

Json to_json(const SystemOfFans& s)
{
    Json d = document("system_of_fans");
    d["ambient_rank"] = s.ambient_rank();
    d["indices"] = s.labels();
    d["fans"] = Json::object();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i; j < s.size(); ++j)
            d["fans"][s.labels()[i] + "," + s.labels()[j]] = to_json(s.fan(i, j));
    return d;
}

SystemOfFans system_from_json(const Json& doc)
{
    expect_kind(doc, "system_of_fans");
    std::size_t n = index_from_json(field(doc, "ambient_rank"), "ambient_rank");
    std::vector<std::string> labels;
    for (const auto& l : array_field(doc, "indices")) {
        if (!l.is_string())
            throw ParseError("indices must be strings");
        labels.push_back(l.get<std::string>());
    }
    auto lookup = [&](const std::string& l) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end())
            throw ParseError("unknown index \"" + l + "\" in fans");
        return static_cast<std::size_t>(it - labels.begin());
    };
    const Json& fans = field(doc, "fans");
    if (!fans.is_object())
        throw ParseError("\"fans\" must be an object keyed by \"i,j\"");
    std::map<std::pair<std::size_t, std::size_t>, Fan> entries;
    for (auto it = fans.begin(); it != fans.end(); ++it) {
        const std::string& key = it.key();
        auto comma = key.find(',');
        if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos)
            throw ParseError("fan key \"" + key + "\" must look like \"i,j\"");
        std::size_t i = lookup(key.substr(0, comma));
        std::size_t j = lookup(key.substr(comma + 1));
        if (entries.count({i, j}))
            throw ParseError("duplicate fan entry " + key);
        entries.emplace(std::pair{i, j}, fan_from_json(it.value(), n));
    }
    try {
        return SystemOfFans::from_entries(n, labels, entries);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json to_json(const Grading& g)
{
    Json d = document("grading");
    d["n"] = g.n;
    d["free_rank"] = g.group.free_rank();
    d["torsion"] = to_json(g.group.torsion());
    d["degrees"] = Json::array();
    for (const auto& deg : g.degrees)
        d["degrees"].push_back(to_json(deg));
    return d;
}

Grading grading_from_json(const Json& doc)
{
    expect_kind(doc, "grading");
    std::size_t n = index_from_json(field(doc, "n"), "n");
    std::size_t r = index_from_json(field(doc, "free_rank"), "free_rank");
    IntVector torsion = doc.contains("torsion") ? int_vector_from_json(doc["torsion"]) : IntVector{};
    std::vector<IntVector> degrees;
    for (const auto& d : array_field(doc, "degrees"))
        degrees.push_back(int_vector_from_json(d));
    try {
        return Grading(n, AbelianGroup(r, torsion), degrees);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json to_json(const TropPoint& p)
{
    Json d = document("trop_point");
    d["class"] = p.cls;
    d["coords"] = to_json(p.coords);
    return d;
}

TropPoint trop_point_from_json(const Json& doc)
{
    expect_kind(doc, "trop_point");
    return {index_from_json(field(doc, "class"), "class"), rat_vector_from_json(field(doc, "coords"))};
}

Json to_json(const NonNegTropPoint& q)
{
    Json d = document("nonneg_point");
    d["chart"] = q.chart;
    d["face"] = q.face;
    d["coords"] = to_json(q.coords);
    return d;
}

NonNegTropPoint nonneg_point_from_json(const Json& doc)
{
    expect_kind(doc, "nonneg_point");
    return {index_from_json(field(doc, "chart"), "chart"), index_from_json(field(doc, "face"), "face"),
            rat_vector_from_json(field(doc, "coords"))};
}

std::pair<std::size_t, std::vector<ExtRational>> chart_values_from_json(const Json& doc)
{
    expect_kind(doc, "chart_values");
    std::size_t chart = index_from_json(field(doc, "chart"), "chart");
    const Json& v = field(doc, "values");
    std::vector<ExtRational> values;
    if (v.is_array()) {
        for (const auto& x : v)
            values.push_back(ext_rational_from_json(x));
    } else if (v.is_object()) {
        std::map<std::size_t, ExtRational> by_index;
        for (auto it = v.begin(); it != v.end(); ++it) {
            std::size_t k;
            try {
                std::size_t used = 0;
                k = std::stoul(it.key(), &used);
                if (used != it.key().size())
                    throw std::invalid_argument(it.key());
            } catch (const std::exception&) {
                throw ParseError("value keys must be generator indices, got \"" + it.key() + "\"");
            }
            by_index[k] = ext_rational_from_json(it.value());
        }
        for (std::size_t k = 0; k < by_index.size(); ++k) {
            auto it = by_index.find(k);
            if (it == by_index.end())
                throw ParseError("missing value for generator " + std::to_string(k));
            values.push_back(it->second);
        }
    } else {
        throw ParseError("\"values\" must be an array or an object");
    }
    return {chart, values};
}

Json to_json(const QtPoly& p)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < p.coefficients().size(); ++i)
        if (p.coefficients()[i] != 0)
            a.push_back(Json::array({to_json(p.coefficients()[i]), i}));
    return a;
}

QtPoly qt_poly_from_json(const Json& j)
{
    expect_array(j, "t-polynomial");
    QtPoly p;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2)
            throw ParseError("t-polynomial terms are [\"p/q\", exponent] pairs");
        p = p + QtPoly::monomial(rational_from_json(term[0]), index_from_json(term[1], "t exponent"));
    }
    return p;
}

Json to_json(const ValuedScalar& x)
{
    Json j;
    j["num"] = to_json(x.num());
    j["den"] = to_json(x.den());
    return j;
}

ValuedScalar scalar_from_json(const Json& j)
{
    if (j.is_string() || j.is_number_integer())
        return rational_from_json(j);
    QtPoly num = qt_poly_from_json(field(j, "num"));
    QtPoly den = j.contains("den") ? qt_poly_from_json(j["den"]) : QtPoly(1);
    if (den.is_zero())
        throw ParseError("zero denominator");
    return ValuedScalar(num, den);
}

Json to_json(const ClassicalChartPoint& p)
{
    Json d = document("classical_point");
    d["chart"] = p.chart;
    d["values"] = Json::array();
    for (const auto& v : p.values)
        d["values"].push_back(to_json(v));
    return d;
}

ClassicalChartPoint classical_point_from_json(const Json& doc)
{
    expect_kind(doc, "classical_point");
    ClassicalChartPoint p{index_from_json(field(doc, "chart"), "chart"), {}};
    for (const auto& v : array_field(doc, "values"))
        p.values.push_back(scalar_from_json(v));
    return p;
}

std::vector<ValuedScalar> cox_coords_from_json(const Json& doc)
{
    expect_kind(doc, "classical_point");
    std::vector<ValuedScalar> out;
    for (const auto& v : array_field(doc, "coords"))
        out.push_back(scalar_from_json(v));
    return out;
}

Json to_json(const Polynomial& f)
{
    Json d = document("polynomial");
    d["n"] = f.n;
    d["terms"] = Json::array();
    for (const auto& t : f.terms) {
        Json term;
        term["exp"] = to_json(t.exponent);
        term["coeff"] = to_json(t.coeff);
        d["terms"].push_back(term);
    }
    return d;
}

Polynomial polynomial_from_json(const Json& doc)
{
    expect_kind(doc, "polynomial");
    Polynomial f{index_from_json(field(doc, "n"), "n"), {}};
    for (const auto& t : array_field(doc, "terms")) {
        f.terms.push_back({int_vector_from_json(field(t, "exp")), scalar_from_json(field(t, "coeff"))});
        if (f.terms.back().exponent.size() != f.n)
            throw ParseError("term exponent has the wrong length");
    }
    return f;
}

Json to_json(const SysFanMorphism& m)
{
    Json d = document("morphism");
    d["lattice_map"] = to_json(m.lattice_map);
    d["class_map"] = m.class_map;
    return d;
}

SysFanMorphism morphism_from_json(const Json& doc, const SystemOfFans& source, const SystemOfFans& target)
{
    expect_kind(doc, "morphism");
    IntMatrix f = int_matrix_from_json(field(doc, "lattice_map"), source.ambient_rank());
    if (f.rows() != target.ambient_rank() || f.cols() != source.ambient_rank())
        throw ParseError("lattice map must be a " + std::to_string(target.ambient_rank()) + "x" +
                         std::to_string(source.ambient_rank()) + " matrix");
    if (doc.contains("class_map")) {
        std::vector<std::size_t> cm;
        for (const auto& c : array_field(doc, "class_map"))
            cm.push_back(index_from_json(c, "class id"));
        return {f, cm};
    }
    std::vector<std::size_t> charts;
    for (const auto& c : array_field(doc, "chart_map"))
        charts.push_back(index_from_json(c, "chart index"));
    return morphism_from_chart_map(f, source, target, charts);
}

Json to_json(const Violation& v)
{
    Json j;
    j["kind"] = kind_name(v.kind);
    j["indices"] = v.indices;
    if (v.cone)
        j["cone"] = to_json(*v.cone);
    j["message"] = v.message;
    return j;
}

}  // namespace prevtrop::io
