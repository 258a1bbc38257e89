#include "prevtrop/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

using namespace prevtrop;
using io::Json;

namespace {

// Exit code 2: the input is well formed but violates a mathematical condition.
struct Violated {
    std::string message;
};

Json load(const std::string& path)
{
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file)
            throw ParseError("cannot open " + path);
        in = &file;
    }
    try {
        return Json::parse(*in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void emit(const Json& doc)
{
    std::cout << doc.dump(2) << '\n';
}

Json report(const std::string& command)
{
    Json r = io::document("report");
    r["command"] = command;
    return r;
}

std::vector<Json> run_batch(const std::vector<Json>& items, unsigned jobs,
                            const std::function<Json(const Json&)>& fn)
{
    std::vector<Json> out(items.size());
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(items.size())));
    if (jobs <= 1) {
        for (std::size_t k = 0; k < items.size(); ++k)
            out[k] = fn(items[k]);
        return out;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < items.size(); k += jobs)
                    out[k] = fn(items[k]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : workers)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

// A single point document or {"kind": "batch", "points": [...]}.
Json over_points(const Json& doc, unsigned jobs, const std::function<Json(const Json&)>& fn)
{
    if (io::kind_of(doc) != "batch")
        return fn(doc);
    io::expect_kind(doc, "batch");
    if (!doc.contains("points") || !doc["points"].is_array())
        throw ParseError("batch documents need a \"points\" array");
    std::vector<Json> items(doc["points"].begin(), doc["points"].end());
    Json out = io::document("batch");
    out["results"] = run_batch(items, jobs, fn);
    return out;
}

SystemOfFans load_valid_system(const std::string& path)
{
    SystemOfFans s = io::system_from_json(load(path));
    auto v = validate_system(s);
    if (!v.empty())
        throw Violated{"invalid system of fans: " + v.front().message};
    return s;
}

std::vector<std::string> labels_of(const std::vector<Subset>& subsets)
{
    std::vector<std::string> out;
    for (const auto& f : subsets)
        out.push_back(subset_label(f));
    return out;
}

int cmd_validate(const std::string& path, const std::string& source, const std::string& target)
{
    Json doc = load(path);
    std::string kind = io::kind_of(doc);
    Json r = report("validate");
    r["input_kind"] = kind;
    std::vector<std::string> problems;
    r["violations"] = Json::array();
    if (kind == "system_of_fans") {
        for (const auto& v : validate_system(io::system_from_json(doc))) {
            r["violations"].push_back(io::to_json(v));
            problems.push_back(v.message);
        }
    } else if (kind == "grading") {
        Grading g = io::grading_from_json(doc);
        r["relevant"] = labels_of(relevant_subsets(g));
    } else if (kind == "morphism") {
        if (source.empty() || target.empty())
            throw ParseError("validating a morphism needs --source and --target systems");
        SystemOfFans s = load_valid_system(source), t = load_valid_system(target);
        for (const auto& m : validate_morphism(io::morphism_from_json(doc, s, t), s, t)) {
            r["violations"].push_back({{"message", m}});
            problems.push_back(m);
        }
    } else if (kind == "trop_point") {
        io::trop_point_from_json(doc);
    } else if (kind == "nonneg_point") {
        io::nonneg_point_from_json(doc);
    } else if (kind == "polynomial") {
        io::polynomial_from_json(doc);
    } else if (kind == "chart_values") {
        io::chart_values_from_json(doc);
    } else if (kind == "classical_point") {
        if (doc.contains("coords"))
            io::cox_coords_from_json(doc);
        else
            io::classical_point_from_json(doc);
    } else {
        throw ParseError("unknown document kind " + kind);
    }
    r["valid"] = problems.empty();
    emit(r);
    for (const auto& p : problems)
        std::cerr << "violation: " << p << '\n';
    return problems.empty() ? 0 : 2;
}

int cmd_omega(const std::string& path)
{
    TropicalPrevariety x(load_valid_system(path));
    const auto& labels = x.system().labels();
    Json r = report("omega");
    r["classes"] = Json::array();
    for (const auto& c : x.omega().classes()) {
        Json j;
        j["id"] = c.id;
        j["cone"] = io::to_json(c.cone);
        j["rep"] = labels[c.rep];
        std::vector<std::string> charts;
        for (std::size_t i : c.charts)
            charts.push_back(labels[i]);
        j["charts"] = charts;
        j["generators"] = Json::array();
        for (const auto& g : x.data(c.id).semigroup.generators)
            j["generators"].push_back(io::to_json(g));
        r["classes"].push_back(j);
    }
    r["order"] = Json::array();
    for (const auto& [a, b] : x.omega().relation())
        if (a != b)
            r["order"].push_back({a, b});
    r["strata"] = Json::array();
    for (const auto& s : x.strata())
        r["strata"].push_back({{"class", s.cls}, {"dim", s.dim}});
    r["nonneg_strata"] = Json::array();
    for (const auto& s : x.nonneg_strata())
        r["nonneg_strata"].push_back({{"chart", s.chart}, {"face", s.face}, {"dim", s.dim}});
    emit(r);
    return 0;
}

int cmd_separated(const std::string& path)
{
    SystemOfFans s = load_valid_system(path);
    auto sep = is_separated(s);
    Json r = report("separated");
    r["separated"] = sep.separated;
    r["witness"] = sep.witness ? Json::array({sep.witness->first, sep.witness->second}) : Json();
    r["reason"] = sep.reason;
    if (sep.separated)
        r["support_full"] = support_is_full(s);
    emit(r);
    return 0;
}

int cmd_proj(const std::string& path)
{
    Grading g = io::grading_from_json(load(path));
    ProjResult p;
    try {
        p = proj_system_of_fans(g);
    } catch (const EmptyProj& e) {
        throw Violated{e.what()};
    }
    Json doc = io::to_json(p.system);
    Json meta;
    meta["relevant"] = labels_of(p.poset.relevant);
    meta["charts"] = labels_of(p.charts);
    meta["pairing"] = io::to_json(p.pairing);
    auto sep = is_separated(p.system);
    meta["separated"] = sep.separated;
    if (sep.separated)
        meta["support_full"] = support_is_full(p.system);
    doc["metadata"] = meta;
    emit(doc);
    return 0;
}

// Points are read against a system of fans, or against a grading whose Proj
// is built on the fly (then classical points carry homogeneous coordinates).
struct Ambient {
    std::optional<ProjPrevariety> proj;
    std::optional<TropicalPrevariety> plain;

    const TropicalPrevariety& trop() const { return proj ? proj->trop : *plain; }
};

Ambient load_ambient(const std::string& path)
{
    Json doc = load(path);
    Ambient a;
    if (io::kind_of(doc) == "grading") {
        try {
            a.proj.emplace(io::grading_from_json(doc));
        } catch (const EmptyProj& e) {
            throw Violated{e.what()};
        }
    } else {
        SystemOfFans s = io::system_from_json(doc);
        auto v = validate_system(s);
        if (!v.empty())
            throw Violated{"invalid system of fans: " + v.front().message};
        a.plain.emplace(std::move(s));
    }
    return a;
}

ClassicalChartPoint classical_from(const Ambient& a, const Json& doc)
{
    if (doc.contains("coords")) {
        if (!a.proj)
            throw ParseError("homogeneous coordinates need a grading as the ambient");
        auto coords = io::cox_coords_from_json(doc);
        if (coords.size() != a.proj->grading.n)
            throw ParseError("expected " + std::to_string(a.proj->grading.n) + " homogeneous coordinates");
        std::optional<std::size_t> c;
        if (doc.contains("chart")) {
            if (!doc["chart"].is_string())
                throw ParseError("the chart of homogeneous coordinates is a label such as \"T1\"");
            const auto& labels = a.proj->proj.system.labels();
            auto it = std::find(labels.begin(), labels.end(), doc["chart"].get<std::string>());
            if (it == labels.end())
                throw ParseError("unknown chart " + doc["chart"].dump());
            c = static_cast<std::size_t>(it - labels.begin());
        } else {
            c = cox_chart(*a.proj, coords);
        }
        if (!c)
            throw Violated{"the coordinates lie in the irrelevant locus"};
        return cox_chart_point(*a.proj, *c, coords);
    }
    return io::classical_point_from_json(doc);
}

TropPoint trop_of(const Ambient& a, const Json& doc)
{
    std::string kind = io::kind_of(doc);
    if (kind == "trop_point") {
        TropPoint p = io::trop_point_from_json(doc);
        a.trop().check(p);
        return p;
    }
    if (kind == "chart_values") {
        auto [chart, values] = io::chart_values_from_json(doc);
        return a.trop().point_from_chart_values(chart, values);
    }
    return trop_point(a.trop(), classical_from(a, doc));
}

int cmd_trop(const std::string& point, const std::string& system, unsigned jobs)
{
    Ambient a = load_ambient(system);
    emit(over_points(load(point), jobs, [&](const Json& doc) { return io::to_json(trop_of(a, doc)); }));
    return 0;
}

int cmd_nonneg(const std::string& point, const std::string& system, bool compare, unsigned jobs)
{
    Ambient a = load_ambient(system);
    const TropicalPrevariety& x = a.trop();
    emit(over_points(load(point), jobs, [&](const Json& doc) {
        std::string kind = io::kind_of(doc);
        NonNegTropPoint q;
        if (kind == "nonneg_point") {
            NonNegTropPoint raw = io::nonneg_point_from_json(doc);
            q = x.make_nonneg(raw.chart, raw.face, raw.coords);
        } else if (kind == "chart_values") {
            auto [chart, values] = io::chart_values_from_json(doc);
            q = x.nonneg_from_chart_values(chart, values);
        } else {
            q = nonneg_trop_point(x, classical_from(a, doc));
        }
        Json out = io::to_json(q);
        if (compare)
            out["comparison"] = io::to_json(x.compare_to_trop(q));
        return out;
    }));
    return 0;
}

int cmd_kapranov(const std::string& poly, const std::string& point, const std::string& system)
{
    Ambient a = load_ambient(system);
    const TropicalPrevariety& x = a.trop();
    Json pdoc = load(poly);
    Polynomial f = io::polynomial_from_json(pdoc);
    if (!pdoc.contains("chart"))
        throw ParseError("the polynomial needs a \"chart\" class id");
    std::size_t chart = pdoc["chart"].get<std::size_t>();
    if (f.n != x.ambient_rank())
        throw ParseError("polynomial exponents must have length " + std::to_string(x.ambient_rank()));
    TropPoint w = trop_of(a, load(point));
    ValuatedChartPolynomial vf = valuated(chart, f);

    Json r = report("kapranov");
    r["point"] = io::to_json(w);
    std::vector<ExtRational> values;
    for (const auto& term : vf.terms)
        values.push_back(term.valuation + x.eval(w, chart, term.exponent));
    ExtRational best = values.empty() ? ExtRational::infinity() : *std::min_element(values.begin(), values.end());
    r["values"] = Json::array();
    for (const auto& v : values)
        r["values"].push_back(io::to_json(v));
    r["achieving_terms"] = Json::array();
    if (best.is_finite())
        for (std::size_t k = 0; k < values.size(); ++k)
            if (values[k] == best)
                r["achieving_terms"].push_back(k);
    r["member"] = kapranov_membership(x, vf, w);
    emit(r);
    return 0;
}

int cmd_refine(const std::string& grading, const std::string& gtilde, const std::string& h,
               const std::vector<std::string>& points)
{
    Grading g = io::grading_from_json(load(grading));
    Polynomial f = io::polynomial_from_json(load(gtilde));
    IntVector divisor;
    try {
        divisor = io::int_vector_from_json(Json::parse(h));
    } catch (const Json::parse_error&) {
        throw ParseError("--divisor must be a JSON integer array such as [1,0]");
    }
    if (divisor.size() != g.n)
        throw ParseError("--divisor must have " + std::to_string(g.n) + " entries");
    Refinement ref = refine_embedding(g, f, divisor);

    Json r = report("refine");
    r["grading"] = io::to_json(ref.grading);
    r["substitution"] = io::to_json(ref.substitution);
    r["divisor"] = io::to_json(ref.divisor);
    std::vector<Subset> old_relevant = relevant_subsets(g), restricted;
    for (const auto& s : relevant_subsets(ref.grading))
        if (!std::binary_search(s.begin(), s.end(), g.n))
            restricted.push_back(s);
    r["charts_restrict"] = restricted == old_relevant;
    r["points"] = Json::array();
    if (!points.empty()) {
        ProjPrevariety old(g), refined(ref.grading);
        for (const auto& path : points) {
            auto coords = io::cox_coords_from_json(load(path));
            if (coords.size() != g.n)
                throw ParseError(path + ": expected " + std::to_string(g.n) + " coordinates");
            auto c = cox_chart(old, coords);
            if (!c)
                throw Violated{path + ": the coordinates lie in the irrelevant locus"};
            const Subset& chart = old.proj.charts[*c];
            TropPoint before = trop_point(old.trop, cox_chart_point(old, *c, coords));
            TropPoint after = refined_trop(refined, ref, chart, coords);
            Json j;
            j["chart"] = subset_label(chart);
            j["trop"] = io::to_json(before);
            j["refined"] = io::to_json(after);
            auto slot = std::find(refined.proj.charts.begin(), refined.proj.charts.end(), chart);
            std::size_t refined_chart = refined.chart_class(static_cast<std::size_t>(slot - refined.proj.charts.begin()));
            j["refined_values"] = Json::array();
            for (const auto& v : refined.trop.chart_values(after, refined_chart))
                j["refined_values"].push_back(io::to_json(v));
            j["projection_ok"] = forget_refinement(old, refined, chart, after) == before;
            r["points"].push_back(j);
        }
    }
    emit(r);
    return 0;
}

int cmd_product(const std::string& a, const std::string& b)
{
    emit(io::to_json(product(load_valid_system(a), load_valid_system(b))));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Systems of fans, tropical toric prevarieties and Proj of graded polynomial rings.\n"
                 "Reads JSON documents, writes JSON to standard output."};
    app.require_subcommand(1);
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads for batch point documents")->check(CLI::PositiveNumber);

    std::string file, file2, source, target, gtilde, h, system;
    std::vector<std::string> points;
    bool compare = false;

    auto* validate = app.add_subcommand("validate", "Check a document; exit 2 on violations");
    validate->add_option("file", file, "Document")->required();
    validate->add_option("--source", source, "Source system (morphisms)");
    validate->add_option("--target", target, "Target system (morphisms)");

    auto* omega = app.add_subcommand("omega", "Classes, order and strata of a system of fans");
    omega->add_option("system", file)->required();

    auto* separated = app.add_subcommand("separated", "Separatedness with witness, completeness if separated");
    separated->add_option("system", file)->required();

    auto* proj = app.add_subcommand("proj", "Proj of a graded polynomial ring as a system of fans");
    proj->add_option("grading", file)->required();

    auto* trop = app.add_subcommand("trop", "Tropicalize a point");
    trop->add_option("point", file, "classical_point, chart_values, trop_point or batch")->required();
    trop->add_option("system", file2, "System of fans or grading")->required();

    auto* nonneg = app.add_subcommand("nonneg", "Non-negative tropicalization of a point");
    nonneg->add_option("point", file)->required();
    nonneg->add_option("system", file2)->required();
    nonneg->add_flag("--compare", compare, "Also emit the image in the tropical prevariety");

    auto* kapranov = app.add_subcommand("kapranov", "Min-twice membership of a point in a tropical hypersurface");
    kapranov->add_option("polynomial", file)->required();
    kapranov->add_option("point", file2)->required();
    kapranov->add_option("--system", system, "System of fans or grading")->required();

    auto* refine = app.add_subcommand("refine", "Adjoin x -> gtilde to a grading and tropicalize points");
    refine->add_option("grading", file)->required();
    refine->add_option("--gtilde", gtilde, "Polynomial document")->required();
    refine->add_option("--divisor", h, "Monomial divisor h as a JSON array, the regular function is x/h")->required();
    refine->add_option("--point", points, "Homogeneous coordinates (repeatable)");

    auto* prod = app.add_subcommand("product", "Product of two systems of fans");
    prod->add_option("first", file)->required();
    prod->add_option("second", file2)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*validate)
            return cmd_validate(file, source, target);
        if (*omega)
            return cmd_omega(file);
        if (*separated)
            return cmd_separated(file);
        if (*proj)
            return cmd_proj(file);
        if (*trop)
            return cmd_trop(file, file2, jobs);
        if (*nonneg)
            return cmd_nonneg(file, file2, compare, jobs);
        if (*kapranov)
            return cmd_kapranov(file, file2, system);
        if (*refine)
            return cmd_refine(file, gtilde, h, points);
        if (*prod)
            return cmd_product(file, file2);
    } catch (const Violated& v) {
        std::cerr << "error: " << v.message << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
