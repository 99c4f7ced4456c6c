#include "pgq/report.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace pgq {

Json field_json(const Field& f) {
    return Json{{"p", f.characteristic()},
                {"h", f.degree()},
                {"q", f.order()},
                {"modulus", f.modulus()}};
}

Json form_json(const QuadraticForm& form) {
    Json coeffs = Json::array();
    const Matrix& m = form.coeffs();
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i; j < m.cols; ++j)
            if (m.at(i, j) != 0) coeffs.push_back(Json::array({i, j, m.at(i, j)}));
    Json out{{"dimension", form.dimension()},
             {"coefficients", std::move(coeffs)},
             {"rendered", form_to_string(form)}};
    if (form.special_constant()) out["block_constant"] = *form.special_constant();
    return out;
}

Json point_json(const ProjectiveSpace& space, std::size_t index) {
    auto v = space.point(index);
    return Json{{"index", index}, {"coords", std::vector<Fel>(v.begin(), v.end())}};
}

Json verdict_json(const Verdict& v) { return Json{{"pass", v.pass}, {"detail", v.detail}}; }

Json spectrum_json(const SpectrumReport& s) {
    Json values = Json::array();
    for (const auto& [v, m] : s.multiplicity) values.push_back(Json::array({v, m}));
    return Json{{"context", s.context}, {"surveyed", s.surveyed}, {"values", std::move(values)}};
}

Json colouring_json(const ColouringReport& c) {
    Json hist = Json::array();
    for (const auto& [v, m] : c.histogram) hist.push_back(Json::array({v, m}));
    Json viol = Json::array();
    for (const auto& v : c.violations) viol.push_back(Json{{"point", v.point}, {"count", v.count}});
    Json out{{"family_size", c.family_size},
             {"white_value", c.white_value},
             {"black_value", c.black_value},
             {"red", c.r},
             {"white", c.w},
             {"black", c.b},
             {"histogram", std::move(hist)},
             {"violation_total", c.violation_total},
             {"violations", std::move(viol)}};
    if (c.h_norm) out["h_norm"] = *c.h_norm;
    return out;
}

Json identity_json(const IdentityReport& id) {
    return Json{{"pass", id.pass},
                {"detail", id.detail},
                {"divisible", id.divisible},
                {"h_norm", id.h_norm},
                {"congruence_ok", id.congruence_ok},
                {"member_white", id.s},
                {"member_black", id.t},
                {"s_constant", id.s_constant},
                {"t_constant", id.t_constant},
                {"eq_incidence", id.eq_incidence_ok},
                {"eq_black", id.eq_black_ok},
                {"eq_white", id.eq_white_ok}};
}

Json condition_II_json(const ConditionIIResult& r) {
    Json out{{"spectrum", spectrum_json(r.spectrum)},
             {"violation_total", r.violation_total},
             {"sampled", r.sampled}};
    if (r.verdict) out["verdict"] = verdict_json(*r.verdict);
    Json flats = Json::array();
    for (const auto& g : r.violating_flats) flats.push_back(Json::array({g[0], g[1]}));
    out["violating_flats"] = std::move(flats);
    return out;
}

Json conclusion_json(const ConclusionResult& r, const ProjectiveSpace& space) {
    Json out{{"branch", conclusion_branch_name(r.branch)}, {"verdict", verdict_json(r.verdict)}};
    if (r.fitted) out["fitted_form"] = form_json(*r.fitted);
    Json reds = Json::array();
    for (std::size_t p : r.red_points) reds.push_back(point_json(space, p));
    out["red_points"] = std::move(reds);
    return out;
}

Json quasi_quadric_json(const QuasiQuadricVerdict& v) {
    return Json{{"pass", v.pass},
                {"size", v.size},
                {"size_ok", v.size_ok},
                {"nucleus_lines_ok", v.nucleus_lines_ok},
                {"bad_lines", v.bad_lines},
                {"spectrum_ok", v.spectrum_ok},
                {"off_nucleus_spectrum", spectrum_json(v.off_nucleus_spectrum)},
                {"condition_I_plus", v.condition_I_plus},
                {"condition_I_minus", v.condition_I_minus}};
}

Json switch_search_json(const SwitchSearchReport& r) {
    return Json{{"candidates", r.candidates},
                {"spectrum_pass", r.spectrum_pass},
                {"quadric_pass", r.quadric_pass},
                {"nonquadric_pass", r.nonquadric_pass},
                {"standard_passes", r.standard_passes},
                {"nonquadric_masks", r.nonquadric_masks}};
}

Json odd_spectrum_json(const OddSpectrumResult& r) {
    Json tab = Json::array();
    for (const auto& [key, m] : r.cross_tab)
        tab.push_back(Json::array({key.first, key.second, m}));
    return Json{{"spectrum", spectrum_json(r.spectrum)},
                {"support_ok", verdict_json(r.support_ok)},
                {"cross_tab_ok", verdict_json(r.cross_tab_ok)},
                {"perp_cross_tab", std::move(tab)}};
}

Json line_census_json(const LineCensusResult& r) {
    return Json{{"verdict", verdict_json(r.verdict)},
                {"lines", r.lines},
                {"tangents", r.tangents},
                {"secants", r.secants}};
}

Json make_report(const Json& config_echo) {
    return Json{{"schema", kReportSchema},
                {"tool", Json{{"name", kToolName}, {"version", kToolVersion}}},
                {"config", config_echo}};
}

bool all_verdicts_pass(const Json& report) {
    if (!report.contains("verdicts")) return false;
    bool ok = true;
    for (const auto& [name, v] : report.at("verdicts").items()) {
        (void)name;
        ok = ok && v.get<bool>();
    }
    return ok;
}

void write_json_file(const Json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << report.dump(2) << "\n";
}

void write_csv_file(const Json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "context,value,multiplicity\n";
    // collect every spectrum block anywhere in the report
    std::function<void(const Json&)> walk = [&](const Json& node) {
        if (node.is_object()) {
            if (node.contains("context") && node.contains("values")) {
                for (const auto& row : node.at("values"))
                    out << node.at("context").get<std::string>() << "," << row[0] << ","
                        << row[1] << "\n";
            }
            for (const auto& [k, v] : node.items()) {
                (void)k;
                walk(v);
            }
        } else if (node.is_array()) {
            for (const auto& v : node) walk(v);
        }
    };
    walk(report);
}

Json strip_volatile(Json report) {
    report.erase("timings_ms");
    return report;
}

HyperplaneFamily read_family_file(const std::string& path, const ProjectiveSpace& space,
                                  const std::string& label) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open family file " + path);
    HyperplaneFamily fam{label, IndexBitset(space.hyperplane_count())};
    const std::size_t width = static_cast<std::size_t>(space.dimension()) + 1;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::vector<Fel> v;
        std::uint64_t x;
        while (row >> x) {
            if (x >= space.field().order())
                throw std::invalid_argument("family file line " + std::to_string(lineno) +
                                            ": element index out of range");
            v.push_back(static_cast<Fel>(x));
        }
        if (v.empty()) continue;
        if (v.size() != width)
            throw std::invalid_argument("family file line " + std::to_string(lineno) + ": expected " +
                                        std::to_string(width) + " coordinates");
        fam.bits.set(space.index_of(v));
    }
    return fam;
}

} // namespace pgq
