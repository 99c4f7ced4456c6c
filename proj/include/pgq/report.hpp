#ifndef PGQ_REPORT_HPP
#define PGQ_REPORT_HPP

#include <string>

#include <json.hpp>

#include "pgq/constructions.hpp"
#include "pgq/family.hpp"

namespace pgq {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolName = "pgq";
inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::json;

Json field_json(const Field& f);
Json form_json(const QuadraticForm& form);
Json point_json(const ProjectiveSpace& space, std::size_t index);
Json verdict_json(const Verdict& v);
Json spectrum_json(const SpectrumReport& s);
Json colouring_json(const ColouringReport& c);
Json identity_json(const IdentityReport& id);
Json condition_II_json(const ConditionIIResult& r);
Json conclusion_json(const ConclusionResult& r, const ProjectiveSpace& space);
Json quasi_quadric_json(const QuasiQuadricVerdict& v);
Json switch_search_json(const SwitchSearchReport& r);
Json odd_spectrum_json(const OddSpectrumResult& r);
Json line_census_json(const LineCensusResult& r);

/// Skeleton every report shares: schema, tool block, config echo.
Json make_report(const Json& config_echo);

/// All boolean verdicts reachable from the report's "verdicts" object.
bool all_verdicts_pass(const Json& report);

void write_json_file(const Json& report, const std::string& path);

/// CSV projection: the flat spectra only, one "context,value,multiplicity"
/// row per spectrum entry.
void write_csv_file(const Json& report, const std::string& path);

/// Copy with the volatile parts (timings) removed, for byte-stable
/// comparison of two runs of the same config.
Json strip_volatile(Json report);

/// Hyperplane family file: one row of dimension+1 field-element indices per
/// line, '#' comments and blank lines ignored, normalization applied.
HyperplaneFamily read_family_file(const std::string& path, const ProjectiveSpace& space,
                                  const std::string& label);

} // namespace pgq

#endif
