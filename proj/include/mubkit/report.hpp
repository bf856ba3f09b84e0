// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mubkit/gf2n.hpp"

namespace mubkit {

inline constexpr const char* kToolName = "mubkit";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "report_v1";

/// Round to 12 significant digits so serialized reports are diff-stable.
double round_sig12(double value);

/// {n, modulus_hex, basis_hex[]} fragment describing a field context.
nlohmann::ordered_json field_context_json(const FieldContext& ctx);

/// Unbiasedness certificate for the full basis family in dimension 2^n:
/// {n, pairs_checked, max_deviation} plus the field fragment.
nlohmann::ordered_json mub_certificate_json(int n, bool full_check, std::uint64_t seed);

struct AnalysisOptions {
  std::string cipher = "hn";  ///< "hn" or "wn"
  int n = 1;
  int compose = 1;  ///< v > 1 fills the composition section
  int restarts = 64;
  std::uint64_t seed = 12345;
  std::uint32_t plaintext = 0;
};

/// Full cipher analysis document. Every field except wall_clock_ms is
/// byte-identical across runs with the same options.
nlohmann::ordered_json analysis_report(const AnalysisOptions& options);

/// Circuit verification summary {n, gate_counts, max_infidelity,
/// ancilla_residual} over all (a, c, k) at the given width.
nlohmann::ordered_json circuit_report_json(int n);

/// One CSV row of headline figures per analysis report; header-only for an
/// empty input. Shannon rows are marked "measured" or "lower_bound".
std::string report_table(const std::vector<nlohmann::ordered_json>& reports);

}  // namespace mubkit
