#pragma once

#include "specls/constructions.hpp"
#include "specls/search.hpp"
#include "specls/spectral.hpp"
#include "specls/theorems.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace specls {

using Json = nlohmann::json;

inline constexpr const char *kToolVersion = "specls 1.0.0";

// Intervals leave long double as the enclosing pair of doubles.
Json to_json(const Interval &iv);
Interval interval_from_json(const Json &j);

Json to_json(const Margin &m);
Margin margin_from_json(const Json &j);

Json to_json(const SpectralCertificate &c, bool with_vector = false);
SpectralCertificate certificate_from_json(const Json &j);

Json to_json(const TheoremVerdict &v);
TheoremVerdict verdict_from_json(const Json &j);

Json to_json(const SearchJob &job);
/// Missing keys keep their SearchJob defaults; unknown keys are rejected.
SearchJob search_job_from_json(const Json &j);

Json to_json(const SearchReport &r);
SearchReport search_report_from_json(const Json &j);

Json to_json(const Construction &c);

/// A verdict together with the graph it was computed on.
struct VerdictEntry
{
  TheoremVerdict verdict;
  std::string graph_ref; ///< graph6 text or construction spec
};

struct CertificateEntry
{
  std::string graph_ref;
  SpectralCertificate certificate;
};

/// Everything a command produced, in a form that round-trips through JSON.
struct ReportDocument
{
  std::string tool_version = kToolVersion;
  std::vector<std::string> command;
  std::vector<VerdictEntry> verdicts;
  std::vector<CertificateEntry> certificates;
  std::vector<SearchReport> searches;
  /// Free-form command results (construct, count) kept as JSON objects.
  std::vector<Json> results;
  std::vector<std::string> specs;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, double> tolerances;
};

Json to_json(const ReportDocument &d);
ReportDocument report_from_json(const Json &j);

/// theorem_id, n, params, hypothesis, conclusion, margin_lo, margin_hi,
/// witness_ref; params joined with ';' so fields never need quoting.
std::string verdicts_csv(const std::vector<VerdictEntry> &rows);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string dump(const Json &j);

} // namespace specls
