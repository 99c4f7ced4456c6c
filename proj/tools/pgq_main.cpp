// pgq: construct finite projective spaces PG(2n,q) and quadrics over them,
// classify hyperplane sections, and verify the combinatorial axioms of
// hyperplane families (point colouring, pencil counts, double-counting
// identities, hyperoval configurations) by exhaustive enumeration.
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 configuration error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pgq/parallel.hpp"
#include "pgq/report.hpp"

namespace {

using namespace pgq;

struct CommonArgs {
    int n = 2;
    std::uint64_t q = 2;
    std::string sign = "+";
    std::string emit_json, emit_csv;
    std::size_t violation_cap = 100;
    unsigned workers = 0;
    std::size_t max_points = std::size_t{1} << 20;
};

void add_output_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--emit-json", a.emit_json, "write the full report as JSON to this path");
    cmd->add_option("--emit-csv", a.emit_csv, "write the flat spectra as CSV to this path");
    cmd->add_option("--violation-cap", a.violation_cap,
                    "maximum number of violations listed per report section");
    cmd->add_option("--workers", a.workers,
                    "worker threads (0: PGQ_WORKERS environment variable, then hardware)");
    cmd->add_option("--memory-bound", a.max_points, "maximum point-table size");
}

struct Timings {
    Json json = Json::object();
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    void lap(const std::string& phase) {
        const auto now = std::chrono::steady_clock::now();
        json[phase] = std::chrono::duration_cast<std::chrono::milliseconds>(now - mark).count();
        mark = now;
    }
};

int sign_value(const std::string& s) {
    if (s == "+" || s == "+1" || s == "plus") return +1;
    if (s == "-" || s == "-1" || s == "minus") return -1;
    throw CLI::ValidationError("--sign", "sign must be + or -");
}

// q must be a prime power p^h
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw CLI::ValidationError("--q", "q must be at least 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t h = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++h;
    }
    if (rest != 1)
        throw CLI::ValidationError("--q", std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(p), h};
}

void require_parity(std::uint64_t q, bool want_even, const std::string& cmd) {
    if ((q % 2 == 0) != want_even)
        throw CLI::ValidationError("--q", cmd + " requires " + (want_even ? "even" : "odd") + " q");
}

Json config_echo(const std::string& subcommand, const CommonArgs& a,
                 const std::pair<std::uint32_t, std::uint32_t>& ph) {
    return Json{{"subcommand", subcommand}, {"n", a.n},      {"q", a.q},
                {"p", ph.first},            {"h", ph.second}, {"sign", a.sign},
                {"violation_cap", a.violation_cap},
                {"workers", resolve_workers(a.workers)}};
}

int finish(Json& report, Timings& timings, const CommonArgs& a) {
    report["timings_ms"] = timings.json;
    const bool pass = all_verdicts_pass(report);
    if (!a.emit_json.empty()) write_json_file(report, a.emit_json);
    if (!a.emit_csv.empty()) write_csv_file(report, a.emit_csv);
    std::cout << report.dump(2) << "\n";
    return pass ? 0 : 1;
}

ProjectiveSpace build_space(int dimension, const std::pair<std::uint32_t, std::uint32_t>& ph,
                            const CommonArgs& a) {
    SpaceOptions opts;
    opts.max_points = a.max_points;
    opts.workers = a.workers;
    return ProjectiveSpace(dimension, Field::make(ph.first, ph.second), opts);
}

// census: build Q(2n,q), classify all hyperplanes, colour the points of the
// chosen family and check the counting identities.
int run_census(const CommonArgs& a) {
    const auto ph = factor_prime_power(a.q);
    require_parity(a.q, true, "census");
    if (a.n < 2) throw CLI::ValidationError("--n", "census needs n >= 2");
    const int sign = sign_value(a.sign);
    Timings timings;

    const ProjectiveSpace space = build_space(2 * a.n, ph, a);
    const QuadraticForm form = QuadraticForm::parabolic(a.n, space.field());
    const IndexBitset quadric = zero_set(form, space);
    const std::size_t nuc = nucleus(form, space);
    timings.lap("build");

    Json report = make_report(config_echo("census", a, ph));
    report["field"] = field_json(space.field());
    report["space"] = Json{{"dimension", space.dimension()},
                           {"points", space.point_count()},
                           {"hyperplanes", space.hyperplane_count()},
                           {"codim2_flats", space.codim2_count()}};
    report["quadric"] = form_json(form);
    report["quadric"]["size"] = quadric.count();
    report["quadric"]["nucleus"] = point_json(space, nuc);

    const QuadricPartition part = classify_family(quadric, space, a.n, sign);
    timings.lap("classify");
    report["census"] = Json{{"hyperbolic", part.hyperbolic_count},
                            {"elliptic", part.elliptic_count},
                            {"singular", part.singular_count}};

    const std::uint64_t q = a.q;
    const std::uint64_t qn = ipow(q, static_cast<unsigned>(a.n));
    const bool census_ok = part.hyperbolic_count == qn * (qn + 1) / 2 &&
                           part.elliptic_count == qn * (qn - 1) / 2 &&
                           part.singular_count == parabolic_size(a.n, q) &&
                           quadric.count() == parabolic_size(a.n, q);

    // tangent sections all have the singular size, and are exactly the
    // hyperplanes through the nucleus
    bool tangent_ok = true;
    for (std::size_t h = 0; h < space.hyperplane_count(); ++h) {
        const bool through = space.incident(nuc, h);
        if (through != part.tangent.bits.test(h)) tangent_ok = false;
        if (through &&
            space.count_on_hyperplane(quadric, h) != tangent_section_size(a.n, q))
            tangent_ok = false;
    }
    timings.lap("tangent");

    const ColouringReport colouring = colour_points(part.selected, space, a.n, sign,
                                                    a.violation_cap);
    const Verdict cond1 = check_condition_I(colouring);
    const IdentityReport identities = verify_counting_identities(colouring, part.selected, space);
    const SectionTallies tallies = partition_section_tallies(part, colouring, space);
    timings.lap("colouring");

    report["family"] = Json{{"label", part.selected.label}, {"size", part.selected.size()}};
    report["partition"] = Json{{"selected", part.selected.size()},
                               {"tangent", part.tangent.size()},
                               {"opposite", part.opposite.size()}};
    report["colouring"] = colouring_json(colouring);
    report["identities"] = identity_json(identities);
    report["section_tallies"] = Json{{"opposite_white", tallies.opposite_white},
                                     {"opposite_black", tallies.opposite_black},
                                     {"tangent_white", tallies.tangent_white},
                                     {"tangent_black", tallies.tangent_black},
                                     {"opposite_constant", tallies.opposite_constant},
                                     {"tangent_constant", tallies.tangent_constant}};
    report["verdicts"] = Json{{"census_counts", census_ok},
                              {"tangent_sections", tangent_ok},
                              {"condition_I", cond1.pass},
                              {"identities", identities.pass}};
    return finish(report, timings, a);
}

// check-theorem: conditions (I) and (II) plus the conclusion check, on the
// family classified from the standard quadric or read from a file.
int run_check_theorem(const CommonArgs& a, const std::string& family_path, std::size_t sample,
                      std::uint64_t seed) {
    const auto ph = factor_prime_power(a.q);
    require_parity(a.q, true, "check-theorem");
    if (a.n < 2) throw CLI::ValidationError("--n", "theorem checks need n >= 2");
    const int sign = sign_value(a.sign);
    Timings timings;

    const ProjectiveSpace space = build_space(2 * a.n, ph, a);
    timings.lap("build");

    HyperplaneFamily family;
    if (family_path.empty()) {
        const QuadraticForm form = QuadraticForm::parabolic(a.n, space.field());
        family = classify_family(zero_set(form, space), space, a.n, sign).selected;
    } else {
        family = read_family_file(family_path, space,
                                  sign > 0 ? std::string("H+") : std::string("H-"));
        if (!family.bits.any())
            throw CLI::ValidationError("--family", "family file names no hyperplanes");
    }
    timings.lap("family");

    Json report = make_report(config_echo("check-theorem", a, ph));
    report["config"]["family_file"] = family_path;
    report["field"] = field_json(space.field());
    report["family"] = Json{{"label", family.label}, {"size", family.size()}};

    const ColouringReport colouring = colour_points(family, space, a.n, sign, a.violation_cap);
    const Verdict cond1 = check_condition_I(colouring);
    timings.lap("condition_I");
    const ConditionIIResult cond2 =
        check_condition_II(family, space, a.workers, sample, seed, a.violation_cap);
    timings.lap("condition_II");

    report["colouring"] = colouring_json(colouring);
    report["condition_II"] = condition_II_json(cond2);

    Json verdicts{{"condition_I", cond1.pass},
                  {"condition_II", cond2.verdict ? cond2.verdict->pass : false}};
    if (cond1.pass && cond2.verdict && cond2.verdict->pass) {
        const ConclusionResult conc = theorem_conclusion_check(family, space, a.n, sign);
        timings.lap("conclusion");
        report["conclusion"] = conclusion_json(conc, space);
        verdicts["conclusion"] = conc.verdict.pass;
    } else {
        report["conclusion"] = Json{{"branch", "skipped"},
                                    {"verdict", Json{{"pass", false},
                                                     {"detail", "conditions (I)-(II) not met"}}}};
        verdicts["conclusion"] = false;
    }
    report["verdicts"] = verdicts;
    return finish(report, timings, a);
}

// hyperoval: build the hyperoval family of solids and verify everything.
int run_hyperoval(const CommonArgs& a, const std::string& variant, unsigned k) {
    const auto ph = factor_prime_power(a.q);
    require_parity(a.q, true, "hyperoval");
    Timings timings;

    CommonArgs adjusted = a;
    adjusted.n = 2;
    const ProjectiveSpace space = build_space(4, ph, adjusted);
    const Hyperoval oval = variant == "translation" ? hyperoval_translation(space, k)
                                                    : hyperoval_regular(space);
    const HyperplaneFamily family = solids_disjoint_from(oval, space);
    timings.lap("build");

    Json report = make_report(config_echo("hyperoval", adjusted, ph));
    report["config"]["variant"] = oval.kind;
    report["config"]["frobenius_k"] = oval.exponent;
    report["field"] = field_json(space.field());
    Json oval_points = Json::array();
    for (std::size_t p : oval.points) oval_points.push_back(point_json(space, p));
    report["hyperoval"] = Json{{"kind", oval.kind}, {"points", std::move(oval_points)}};
    report["family"] = Json{{"label", family.label}, {"size", family.size()}};

    const std::uint64_t q = a.q;
    const bool size_ok = family.size() == q * q * (q * q - q) / 2;

    const ColouringReport colouring = colour_points(family, space, 2, -1, a.violation_cap);
    const Verdict cond1 = check_condition_I(colouring);
    const bool census_ok =
        colouring.r == q + 2 && colouring.w == q * q - 1 && colouring.b == ipow(q, 4) + ipow(q, 3);
    timings.lap("colouring");

    const ConditionIIResult cond2 = check_condition_II(family, space, a.workers, 0, 1,
                                                       a.violation_cap);
    timings.lap("condition_II");
    const LineCensusResult lines = red_line_census(colouring, space);
    timings.lap("line_census");
    const ConclusionResult conc = theorem_conclusion_check(family, space, 2, -1);
    timings.lap("conclusion");
    const IdentityReport identities = verify_counting_identities(colouring, family, space);

    report["colouring"] = colouring_json(colouring);
    report["condition_II"] = condition_II_json(cond2);
    report["line_census"] = line_census_json(lines);
    report["conclusion"] = conclusion_json(conc, space);
    report["identities"] = identity_json(identities);
    report["verdicts"] = Json{{"family_size", size_ok},
                              {"red_white_black_census", census_ok},
                              {"condition_I", cond1.pass},
                              {"condition_II", cond2.verdict ? cond2.verdict->pass : false},
                              {"line_census", lines.verdict.pass},
                              {"identities", identities.pass},
                              {"conclusion_hyperoval_branch",
                               conc.verdict.pass && conc.branch == ConclusionBranch::Hyperoval}};
    return finish(report, timings, adjusted);
}

// odd-spectrum: pencil counts of H± over all codimension-2 flats, odd q.
int run_odd_spectrum(const CommonArgs& a) {
    const auto ph = factor_prime_power(a.q);
    require_parity(a.q, false, "odd-spectrum");
    if (a.n < 2) throw CLI::ValidationError("--n", "spectrum runs need n >= 2");
    const int sign = sign_value(a.sign);
    Timings timings;

    const ProjectiveSpace space = build_space(2 * a.n, ph, a);
    const QuadraticForm form = QuadraticForm::parabolic(a.n, space.field());
    timings.lap("build");

    const OddSpectrumResult res = odd_q_spectrum(form, space, a.n, sign);
    timings.lap("spectrum");

    Json report = make_report(config_echo("odd-spectrum", a, ph));
    report["field"] = field_json(space.field());
    report["odd_spectrum"] = odd_spectrum_json(res);
    report["verdicts"] = Json{{"spectrum_support", res.support_ok.pass},
                              {"perp_cross_tab", res.cross_tab_ok.pass}};
    return finish(report, timings, a);
}

// switch-search: the PG(4,2) exhaustive nucleus-line switching run.
int run_switch_search(const CommonArgs& a, const std::string& jsonl_path) {
    const auto ph = factor_prime_power(a.q);
    if (a.q != 2 || a.n != 2)
        throw CLI::ValidationError("switch-search", "the exhaustive run covers PG(4,2) only");
    Timings timings;

    const ProjectiveSpace space = build_space(4, ph, a);
    timings.lap("build");

    std::ofstream jsonl;
    if (!jsonl_path.empty()) {
        jsonl.open(jsonl_path);
        if (!jsonl) throw CLI::ValidationError("--emit-jsonl", "cannot open " + jsonl_path);
    }
    const SwitchSearchReport res =
        exhaustive_switch_search(space, a.workers, jsonl_path.empty() ? nullptr : &jsonl);
    timings.lap("search");

    Json report = make_report(config_echo("switch-search", a, ph));
    report["config"]["emit_jsonl"] = jsonl_path;
    report["field"] = field_json(space.field());
    report["switch_search"] = switch_search_json(res);
    report["verdicts"] = Json{{"candidate_count", res.candidates == 32768},
                              {"standard_selection_passes", res.standard_passes},
                              {"census_consistent",
                               res.spectrum_pass == res.quadric_pass + res.nonquadric_pass}};
    return finish(report, timings, a);
}

// identities: the double-counting equation checks for both signs.
int run_identities(const CommonArgs& a) {
    const auto ph = factor_prime_power(a.q);
    require_parity(a.q, true, "identities");
    if (a.n < 2) throw CLI::ValidationError("--n", "identity checks need n >= 2");
    Timings timings;

    const ProjectiveSpace space = build_space(2 * a.n, ph, a);
    const QuadraticForm form = QuadraticForm::parabolic(a.n, space.field());
    const IndexBitset quadric = zero_set(form, space);
    timings.lap("build");

    Json report = make_report(config_echo("identities", a, ph));
    report["field"] = field_json(space.field());
    Json verdicts = Json::object();
    for (int sign : {+1, -1}) {
        const QuadricPartition part = classify_family(quadric, space, a.n, sign);
        const ColouringReport col = colour_points(part.selected, space, a.n, sign, a.violation_cap);
        const IdentityReport id = verify_counting_identities(col, part.selected, space);
        const std::string key = sign > 0 ? "H+" : "H-";
        report[key] = Json{{"colouring", colouring_json(col)}, {"identities", identity_json(id)}};
        verdicts["identities_" + key] = id.pass;
    }
    timings.lap("identities");
    report["verdicts"] = verdicts;
    return finish(report, timings, a);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite projective spaces, quadrics and hyperplane-family verification"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string family_path, variant = "regular", jsonl_path;
    unsigned frobenius_k = 1;
    std::size_t sample = 0;
    std::uint64_t seed = 1;

    auto* census = app.add_subcommand("census", "classify hyperplanes of Q(2n,q) and colour points");
    census->add_option("--n", a.n, "half the projective dimension")->required();
    census->add_option("--q", a.q, "field order (prime power)")->required();
    census->add_option("--sign", a.sign, "+ for hyperbolic family, - for elliptic");
    add_output_flags(census, a);

    auto* check = app.add_subcommand("check-theorem",
                                     "conditions (I)-(II) and the conclusion check on a family");
    check->add_option("--n", a.n)->required();
    check->add_option("--q", a.q)->required();
    check->add_option("--sign", a.sign);
    check->add_option("--family", family_path, "hyperplane family file (default: classified family)");
    check->add_option("--sample", sample, "sample this many flats instead of the full scan");
    check->add_option("--seed", seed, "sampling seed");
    add_output_flags(check, a);

    auto* oval = app.add_subcommand("hyperoval", "the family of solids disjoint from a hyperoval");
    oval->add_option("--q", a.q)->required();
    oval->add_option("--variant", variant, "regular or translation")
        ->check(CLI::IsMember({"regular", "translation"}));
    oval->add_option("--k", frobenius_k, "Frobenius exponent for the translation variant");
    add_output_flags(oval, a);

    auto* odd = app.add_subcommand("odd-spectrum", "codimension-2 pencil spectrum for odd q");
    odd->add_option("--n", a.n)->required();
    odd->add_option("--q", a.q)->required();
    odd->add_option("--sign", a.sign);
    add_output_flags(odd, a);

    auto* search = app.add_subcommand("switch-search",
                                      "exhaustive nucleus-line switching scan of PG(4,2)");
    search->add_option("--n", a.n);
    search->add_option("--q", a.q);
    search->add_option("--emit-jsonl", jsonl_path, "per-candidate verdicts as JSON lines");
    add_output_flags(search, a);

    auto* ids = app.add_subcommand("identities", "double-counting identities for both families");
    ids->add_option("--n", a.n)->required();
    ids->add_option("--q", a.q)->required();
    add_output_flags(ids, a);

    try {
        app.parse(argc, argv);
        if (census->parsed()) return run_census(a);
        if (check->parsed()) return run_check_theorem(a, family_path, sample, seed);
        if (oval->parsed()) return run_hyperoval(a, variant, frobenius_k);
        if (odd->parsed()) return run_odd_spectrum(a);
        if (search->parsed()) return run_switch_search(a, jsonl_path);
        if (ids->parsed()) return run_identities(a);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
