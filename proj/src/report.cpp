// SPDX-License-Identifier: Apache-2.0
#include "mubkit/report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "mubkit/circuit.hpp"
#include "mubkit/cipher.hpp"
#include "mubkit/keyanalysis.hpp"
#include "mubkit/mub.hpp"

namespace mubkit {

namespace {

using nlohmann::ordered_json;

std::string hex_string(std::uint32_t value) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", value);
  return buf;
}

/// CSV cell with a trailing ".0" on integral values, so headline numbers
/// read as 2.0 rather than 2.
std::string csv_number(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

CipherSpec spec_for(const std::string& cipher, int n) {
  if (cipher == "hn") {
    if (n < 1 || n > 6) throw std::invalid_argument("hn analysis supports n in 1..6");
    return hn_spec(n);
  }
  if (cipher == "wn") {
    if (n < 1 || n > 3) throw std::invalid_argument("wn analysis supports n in 1..3");
    return wn_spec(n, make_field(n));
  }
  throw std::invalid_argument("unknown cipher: " + cipher);
}

}  // namespace

double round_sig12(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

ordered_json field_context_json(const FieldContext& ctx) {
  ordered_json basis = ordered_json::array();
  for (std::uint32_t b : ctx.basis) basis.push_back(hex_string(b));
  return ordered_json{{"n", ctx.n}, {"modulus_hex", hex_string(ctx.modulus)},
                      {"basis_hex", basis}};
}

ordered_json mub_certificate_json(int n, bool full_check, std::uint64_t seed) {
  FieldContext ctx = make_field(n);
  MubFamily family = full_check ? mub_family(n, ctx, true, seed) : mub_family(n, ctx);
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["n"] = n;
  doc["field"] = field_context_json(ctx);
  doc["bases"] = int(family.bases.size());
  doc["full_check"] = full_check || n <= 3;
  doc["pairs_checked"] = family.certificate.pairs_checked;
  doc["max_deviation"] = round_sig12(family.certificate.max_deviation);
  return doc;
}

ordered_json analysis_report(const AnalysisOptions& options) {
  auto started = std::chrono::steady_clock::now();
  if (options.compose < 1) throw std::invalid_argument("compose must be >= 1");
  CipherSpec spec = spec_for(options.cipher, options.n);
  std::uint32_t a = options.plaintext;
  if (a >= std::uint32_t(spec.dim())) throw std::invalid_argument("plaintext out of range");

  MesConfig config;
  config.restarts = options.restarts;
  config.seed = options.seed;

  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["seed"] = options.seed;
  doc["cipher"] = options.cipher;
  doc["n"] = spec.n();
  doc["t"] = spec.t();
  doc["m"] = spec.m();
  if (options.cipher == "wn") doc["field"] = field_context_json(make_field(options.n));

  Povm guess = key_guess_povm(spec, a);
  doc["min_entropy_povm"] = {
      {"success_prob", round_sig12(key_identification_probability(spec, a, guess))},
      {"h_inf", round_sig12(min_entropy_key_uncertainty(spec, a, guess))}};

  ordered_json measured = ordered_json::array();
  measured.push_back({{"name", "key_guess"},
                      {"entropy", round_sig12(povm_key_entropy(spec, a, guess))}});
  measured.push_back(
      {{"name", "computational"},
       {"entropy",
        round_sig12(povm_key_entropy(spec, a, OrthonormalBasis::computational(spec.dim())))}});
  for (int c = 0; c < spec.basis_count(); ++c) {
    measured.push_back(
        {{"name", "basis_" + std::to_string(c)},
         {"entropy", round_sig12(povm_key_entropy(spec, a, spec.basis(std::uint32_t(c))))}});
  }

  std::vector<OrthonormalBasis> bases;
  for (int c = 0; c < spec.basis_count(); ++c) bases.push_back(spec.basis(std::uint32_t(c)));
  MesResult mes = mes_search(bases, config);

  doc["shannon"] = {
      {"measured_povms", measured},
      {"mes_upper_bound", round_sig12(mes.value)},
      {"analytic_lower_bounds",
       {{"mu", round_sig12(mu_bound(spec.n()))},
        {"larsen_sanchez", round_sig12(sanchez_bound(spec.basis_count()))}}},
      {"lemma3_bound", round_sig12(shannon_key_uncertainty_bound(spec, mes.value))}};

  if (options.compose > 1) {
    PartitionMes part = partition_mes(spec, options.compose, config);
    doc["composition"] = {
        {"v", options.compose},
        {"part_count", part.part_count},
        {"m_v", round_sig12(part.m_v)},
        {"bound", round_sig12(composed_key_uncertainty_bound(spec, options.compose, part.m_v))},
        {"converged", part.converged}};
  } else {
    doc["composition"] = nullptr;
  }

  if (options.cipher == "wn" && options.n * options.compose <= 3) {
    ConjectureProbe probe = conjecture_probe(options.n, options.compose, config);
    doc["conjecture_probe"] = {{"n", probe.n},
                               {"v", probe.v},
                               {"m_v", round_sig12(probe.m_v)},
                               {"delta_estimate", round_sig12(probe.delta_estimate)},
                               {"conjecture_bound", round_sig12(probe.conjecture_bound)},
                               {"part_count", probe.part_count},
                               {"restarts", probe.restarts},
                               {"seed", probe.seed},
                               {"converged", probe.converged}};
  } else {
    doc["conjecture_probe"] = nullptr;
  }

  auto elapsed = std::chrono::steady_clock::now() - started;
  doc["wall_clock_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return doc;
}

ordered_json circuit_report_json(int n) {
  Circuit circ = build_encrypt_circuit(n, make_field(n));
  CircuitVerification v = verify_circuit(circ);
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["n"] = v.n;
  doc["gate_counts"] = {{"quantum", v.gate_counts.quantum},
                        {"classical_ops", v.gate_counts.classical_ops}};
  doc["max_infidelity"] = round_sig12(v.max_infidelity);
  doc["ancilla_residual"] = round_sig12(v.max_ancilla_residual);
  return doc;
}

std::string report_table(const std::vector<ordered_json>& reports) {
  std::string csv = "cipher,n,t,m,shannon_bits,shannon_kind,min_entropy_bits\n";
  for (const ordered_json& r : reports) {
    std::string cipher = r.at("cipher").get<std::string>();
    int n = r.at("n").get<int>();
    double shannon = 0.0;
    std::string kind;
    if (cipher == "wn") {
      shannon = 2.0 * n - 1.0;
      kind = "lower_bound";
    } else {
      for (const auto& entry : r.at("shannon").at("measured_povms")) {
        if (entry.at("name") == "computational") shannon = entry.at("entropy").get<double>();
      }
      kind = "measured";
    }
    csv += cipher + "," + std::to_string(n) + "," + std::to_string(r.at("t").get<int>()) +
           "," + std::to_string(r.at("m").get<int>()) + "," + csv_number(shannon) + "," +
           kind + "," +
           csv_number(r.at("min_entropy_povm").at("h_inf").get<double>()) + "\n";
  }
  return csv;
}

}  // namespace mubkit
