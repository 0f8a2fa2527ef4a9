#pragma once

#include "opnorm/approx.hpp"
#include "opnorm/equality.hpp"
#include "opnorm/fuzz.hpp"
#include "opnorm/inequalities.hpp"
#include "opnorm/refinement.hpp"
#include "opnorm/strip.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace opnorm::io {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

// Shortest round-trip decimal formatting (<= 17 significant digits), '.'
// decimal point; shared by every CSV writer so outputs are byte-stable.
std::string format_double(double v);

// FNV-1a 64 over raw bytes, rendered as 16 hex digits.
std::uint64_t fnv1a(const std::string& bytes);
std::string digest_bytes(const std::string& bytes);
std::string digest_files(const std::vector<std::string>& paths);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// Matrix file: {"n": int, "data": [n*n numbers row-major], "name"?: string}.
Matrix load_matrix(const std::string& path);
// A/B slots are symmetrized on load; asymmetry beyond 1e-8 (relative) errors.
SymMatrix load_sym_matrix(const std::string& path);
// Vector file: {"n": int, "data": [n numbers]}.
Vec load_vector(const std::string& path);
json matrix_json(const Matrix& m, const std::string& name);

json report_json(const ineq::InequalityReport& rep);
json report_json(const ineq::OrderReport& rep);
json report_json(const refine::RefinedReport& rep);
json report_json(const refine::SpectralGap& gap);
json report_json(const refine::CertifiedBound& bound);
json report_json(const equality::EqualityVerdict& verdict);
json report_json(const approx::SearchReport& rep, bool include_history);
json campaign_summary_json(const fuzz::CampaignReport& rep);
json config_json(const fuzz::FuzzConfig& cfg);
fuzz::FuzzConfig parse_fuzz_config(const json& j);

// CSV writers: ',' separator, '.' decimal point, '\n' line endings.
std::string campaign_csv(const fuzz::CampaignReport& rep);
std::string history_csv(const std::vector<approx::HistoryRow>& history);
std::string grid_csv(const strip::StripGrid& grid);

// Envelope shared by all subcommands; rerunning identical inputs must
// reproduce identical bytes.
json run_report(const std::string& subcommand, const json& params,
                const std::string& inputs_digest, std::uint64_t seed, json results);

} // namespace opnorm::io
