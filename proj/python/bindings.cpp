// Python face of the library. Specs travel as JSON strings in both
// directions; the pgap package wraps these with dict conversion so the
// binding itself stays a thin shim over the C++ entry points.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgap/commands.hpp"
#include "pgap/envelope.hpp"
#include "pgap/integration.hpp"
#include "pgap/io.hpp"
#include "pgap/relaxation.hpp"

namespace py = pybind11;
using namespace pgap;

namespace {

FunctionSpec parse_function(const std::string& spec) {
    return function_from_json(load_spec(spec));
}

Domain parse_domain(const std::string& spec) { return domain_from_json(load_spec(spec)); }

MuKind parse_mu(const std::string& name) {
    if (name == "constant") return MuKind::constant;
    if (name == "envelope") return MuKind::concave_envelope;
    throw std::invalid_argument("mu must be \"constant\" or \"envelope\", got \"" + name + "\"");
}

Vec to_vec(const std::vector<double>& xs) {
    Vec v(static_cast<int>(xs.size()));
    for (int i = 0; i < v.size(); ++i) v[i] = xs[static_cast<std::size_t>(i)];
    return v;
}

NumericOptions make_options(long long samples, std::uint64_t seed) {
    NumericOptions opt;
    opt.mc_samples = samples;
    opt.seed = seed;
    return opt;
}

nlohmann::json integral_json(const IntegralResult& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["method"] = method_name(r.method);
    j["error"] = r.error_estimate;
    return j;
}

std::string integrate_str(const std::string& f, const std::string& dom, long long samples,
                          std::uint64_t seed) {
    return integral_json(integrate(parse_function(f), parse_domain(dom),
                                   make_options(samples, seed)))
        .dump();
}

std::string z_integral_str(const std::string& f, const std::string& dom, long long samples,
                           std::uint64_t seed) {
    return integral_json(z_integral(parse_function(f), parse_domain(dom),
                                    make_options(samples, seed)))
        .dump();
}

std::string analyze_str(const std::string& f, const std::string& dom, const std::string& mu,
                        long long samples, std::uint64_t seed) {
    RelaxationReport rep = analyze(parse_function(f), parse_mu(mu), parse_domain(dom),
                                   make_options(samples, seed));
    return report_to_json(rep).dump();
}

double delta_value(const std::string& f, const std::string& dom, long long samples,
                   std::uint64_t seed) {
    return cutoff_amount(parse_function(f), parse_domain(dom), make_options(samples, seed));
}

std::string sweep_str(const std::string& f, const std::vector<double>& v0,
                      const std::vector<double>& u_values, const std::string& mu,
                      long long samples, std::uint64_t seed) {
    std::vector<SweepRow> rows = ratio_sweep(parse_function(f), parse_mu(mu), to_vec(v0),
                                             u_values, make_options(samples, seed));
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& row : rows) j.push_back(sweep_row_to_json(row));
    return j.dump();
}

std::string envelope_str(const std::string& f, const std::string& dom) {
    Domain d = parse_domain(dom);
    const auto* box = std::get_if<BoxDomain>(&d);
    if (!box) throw std::invalid_argument("envelope export needs a box domain");
    return envelope_to_json(concave_envelope(parse_function(f), *box)).dump();
}

std::string trend_str(const std::string& f, const std::vector<double>& v0,
                      const std::vector<double>& u_values, const std::string& mu,
                      double threshold) {
    TrendReport rep = check_sufficient_condition(parse_function(f), parse_mu(mu), to_vec(v0),
                                                 u_values, threshold);
    nlohmann::json j;
    nlohmann::json rows = nlohmann::json::array();
    for (const TrendRow& row : rep.rows) {
        nlohmann::json r;
        r["u"] = row.u;
        r["r"] = row.r;
        r["method"] = method_name(row.method);
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["decreasing"] = rep.decreasing;
    j["threshold"] = rep.threshold;
    j["satisfied"] = rep.satisfied;
    j["verdict"] = rep.verdict;
    return j.dump();
}

std::string verify_str(std::uint64_t seed) {
    RunConfig cfg;
    cfg.command = "verify";
    cfg.format = "json";
    cfg.seed = seed;
    std::ostringstream out, err;
    int code = run_command(cfg, out, err);
    nlohmann::json doc = nlohmann::json::parse(out.str());
    doc["exitCode"] = code;
    return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_pgap, m) {
    m.doc() = "Exact volumes of perspective and naive on/off relaxations";

    m.def("integrate_json", &integrate_str, py::arg("function"), py::arg("domain"),
          py::arg("samples") = 1'000'000, py::arg("seed") = 42,
          "Integrate the function over the domain; returns a JSON row");
    m.def("z_integral_json", &z_integral_str, py::arg("function"), py::arg("domain"),
          py::arg("samples") = 1'000'000, py::arg("seed") = 42,
          "Integral of z^d * f(z x) over the domain and z in [0,1]; JSON row");
    m.def("analyze_json", &analyze_str, py::arg("function"), py::arg("domain"),
          py::arg("mu") = "envelope", py::arg("samples") = 1'000'000, py::arg("seed") = 42,
          "Both relaxation volumes, their gap, and the cut-off ratio; JSON report");
    m.def("delta", &delta_value, py::arg("function"), py::arg("domain"),
          py::arg("samples") = 1'000'000, py::arg("seed") = 42,
          "Cut-off amount vol(naive) - vol(perspective)");
    m.def("ratio_sweep_json", &sweep_str, py::arg("function"), py::arg("v0"), py::arg("u"),
          py::arg("mu") = "envelope", py::arg("samples") = 1'000'000, py::arg("seed") = 42,
          "Sweep the box scale; JSON list of rows");
    m.def("envelope_json", &envelope_str, py::arg("function"), py::arg("domain"),
          "Concave piecewise-linear upper bound over a box; JSON cells");
    m.def("check_sufficient_condition_json", &trend_str, py::arg("function"), py::arg("v0"),
          py::arg("u"), py::arg("mu") = "constant", py::arg("threshold") = 0.05,
          "Trend of the shifted-integral statistic r(u); JSON report");
    m.def("verify_json", &verify_str, py::arg("seed") = 42,
          "Run the internal identity suite; JSON check list");
}
