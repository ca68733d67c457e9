#include "pgap/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pgap {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json load_spec(const std::string& text_or_path) {
    std::size_t i = 0;
    while (i < text_or_path.size() && std::isspace(static_cast<unsigned char>(text_or_path[i]))) ++i;
    if (i < text_or_path.size() && (text_or_path[i] == '{' || text_or_path[i] == '['))
        return nlohmann::json::parse(text_or_path);
    std::ifstream in(text_or_path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + text_or_path);
    return nlohmann::json::parse(in);
}

namespace {

Vec vec_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string(what) + " must be a nonempty array of numbers");
    Vec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw std::invalid_argument(std::string(what) + " must contain only numbers");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
}

nlohmann::json vec_to_json(const Vec& v) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

const nlohmann::json& require_key(const nlohmann::json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string(what) + " spec needs \"" + key + "\"");
    return *it;
}

}  // namespace

FunctionSpec function_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("function spec needs a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    Vec c = vec_from_json(require_key(j, "c", "function"), "function coefficients \"c\"");
    if (kind == "power") {
        if (!j.contains("q")) throw std::invalid_argument("power function spec needs \"q\"");
        return PowerLinearForm(std::move(c), j.at("q").get<double>());
    }
    if (kind == "exp") return ExpLinearForm(std::move(c));
    if (kind == "superpoly") return SuperPolyForm(std::move(c));
    throw std::invalid_argument("unknown function kind: " + kind);
}

nlohmann::json function_to_json(const FunctionSpec& f) {
    nlohmann::json j;
    if (const auto* p = std::get_if<PowerLinearForm>(&f)) {
        j["kind"] = "power";
        j["q"] = p->q;
    } else if (std::holds_alternative<ExpLinearForm>(f)) {
        j["kind"] = "exp";
    } else {
        j["kind"] = "superpoly";
    }
    j["c"] = vec_to_json(coefficients(f));
    return j;
}

Domain domain_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("domain spec needs a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "box") {
        Vec v0 = vec_from_json(require_key(j, "v0", "box"), "box corner \"v0\"");
        if (!j.contains("u")) throw std::invalid_argument("box domain spec needs \"u\"");
        return BoxDomain(std::move(v0), j.at("u").get<double>());
    }
    if (kind == "zonotope") {
        const auto& rows = require_key(j, "A", "zonotope");
        if (!rows.is_array() || rows.empty())
            throw std::invalid_argument("zonotope \"A\" must be a nonempty array of rows");
        int nrows = static_cast<int>(rows.size());
        Vec first = vec_from_json(rows[0], "zonotope row");
        Mat A(nrows, first.size());
        A.row(0) = first.transpose();
        for (int r = 1; r < nrows; ++r) {
            Vec row = vec_from_json(rows[static_cast<std::size_t>(r)], "zonotope row");
            if (row.size() != A.cols())
                throw std::invalid_argument("zonotope rows must all have the same length");
            A.row(r) = row.transpose();
        }
        Vec b = vec_from_json(require_key(j, "b", "zonotope"), "zonotope offset \"b\"");
        return ZonotopeDomain(std::move(A), std::move(b));
    }
    if (kind == "simplex") {
        const auto& verts = require_key(j, "vertices", "simplex");
        if (!verts.is_array() || verts.empty())
            throw std::invalid_argument("simplex \"vertices\" must be a nonempty array");
        std::vector<Vec> vs;
        vs.reserve(verts.size());
        for (const auto& v : verts) vs.push_back(vec_from_json(v, "simplex vertex"));
        return SimplexDomain(std::move(vs));
    }
    throw std::invalid_argument("unknown domain kind: " + kind);
}

nlohmann::json domain_to_json(const Domain& dom) {
    nlohmann::json j;
    if (const auto* box = std::get_if<BoxDomain>(&dom)) {
        j["kind"] = "box";
        j["v0"] = vec_to_json(box->lower());
        j["u"] = box->scale();
        return j;
    }
    if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
        j["kind"] = "zonotope";
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < zono->generators().rows(); ++r)
            rows.push_back(vec_to_json(zono->generators().row(r).transpose()));
        j["A"] = rows;
        j["b"] = vec_to_json(zono->offset());
        return j;
    }
    const auto& simplex = std::get<SimplexDomain>(dom);
    j["kind"] = "simplex";
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : simplex.vertices()) verts.push_back(vec_to_json(v));
    j["vertices"] = verts;
    return j;
}

nlohmann::json report_to_json(const RelaxationReport& rep) {
    nlohmann::json j;
    j["volP"] = rep.vol_perspective;
    j["volP0"] = rep.vol_naive;
    j["delta"] = rep.delta;
    j["ratio"] = rep.ratio;
    j["muKind"] = mu_kind_name(rep.mu);
    j["asymptotic"] = rep.asymptotic;
    j["formulaTrace"] = rep.formula_trace;
    return j;
}

nlohmann::json sweep_row_to_json(const SweepRow& row) {
    nlohmann::json j;
    j["u"] = row.u;
    j["volP"] = row.vol_perspective;
    j["volP0"] = row.vol_naive;
    j["delta"] = row.delta;
    j["ratio"] = row.ratio;
    j["scaledRatio"] = row.scaled_ratio;
    j["theoretical"] = row.theoretical;
    j["asymptotic"] = row.asymptotic;
    return j;
}

nlohmann::json envelope_to_json(const PiecewiseLinearEnvelope& env) {
    nlohmann::json j;
    j["box"] = domain_to_json(Domain(env.box()));
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : env.cells()) {
        nlohmann::json c;
        c["permutation"] = cell.perm;
        nlohmann::json verts = nlohmann::json::array();
        for (const auto& v : env.cell_vertices(cell)) verts.push_back(vec_to_json(v));
        c["vertices"] = verts;
        c["gradient"] = vec_to_json(cell.gradient);
        c["offset"] = cell.offset;
        cells.push_back(std::move(c));
    }
    j["cells"] = cells;
    return j;
}

}  // namespace pgap
