// SPDX-License-Identifier: Apache-2.0
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mubkit/cipher.hpp"
#include "mubkit/circuit.hpp"
#include "mubkit/keyanalysis.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/report.hpp"
#include "mubkit/stream.hpp"

namespace py = pybind11;
using namespace mubkit;

namespace {

std::vector<std::uint8_t> to_bytes(const py::bytes& data) {
  std::string raw = data;
  return std::vector<std::uint8_t>(raw.begin(), raw.end());
}

py::bytes from_bytes(const std::vector<std::uint8_t>& data) {
  return py::bytes(reinterpret_cast<const char*>(data.data()), data.size());
}

MesConfig config_from(int restarts, std::uint64_t seed) {
  MesConfig config;
  config.restarts = restarts;
  config.seed = seed;
  return config;
}

}  // namespace

PYBIND11_MODULE(_mubkit, m) {
  m.doc() = "quantum cipher construction and key-uncertainty analysis";
  m.attr("__version__") = kToolVersion;

  py::class_<FieldContext>(m, "FieldContext")
      .def_readonly("n", &FieldContext::n)
      .def_readonly("modulus", &FieldContext::modulus)
      .def_readonly("basis", &FieldContext::basis);
  m.def("make_field", py::overload_cast<int>(&make_field), py::arg("n"),
        "GF(2^n) with the default modulus and polynomial basis");

  py::class_<MubFamily>(m, "MubFamily")
      .def_readonly("n", &MubFamily::n)
      .def_property_readonly("dim", &MubFamily::dim)
      .def_property_readonly("pairs_checked",
                             [](const MubFamily& f) { return f.certificate.pairs_checked; })
      .def_property_readonly("max_deviation",
                             [](const MubFamily& f) { return f.certificate.max_deviation; })
      .def_property_readonly("bases", [](const MubFamily& f) {
        std::vector<Eigen::MatrixXcd> out;
        for (const OrthonormalBasis& b : f.bases) out.push_back(b.matrix());
        return out;
      });
  m.def(
      "mub_family",
      [](int n) { return mub_family(n, make_field(n)); }, py::arg("n"),
      "the 2^n + 1 mutually unbiased bases, certified during construction");
  m.def(
      "wf_vector",
      [](int n, std::uint32_t r, std::uint32_t s) {
        return wf_vector(n, alpha_tensor(make_field(n)), r, s).amps();
      },
      py::arg("n"), py::arg("r"), py::arg("s"),
      "phase-basis vector labelled (r, s) as a complex amplitude array");

  py::class_<CipherSpec>(m, "CipherSpec")
      .def_property_readonly("name", &CipherSpec::name)
      .def_property_readonly("n", &CipherSpec::n)
      .def_property_readonly("t", &CipherSpec::t)
      .def_property_readonly("m", &CipherSpec::m)
      .def_property_readonly("dim", &CipherSpec::dim)
      .def_property_readonly("basis_count", &CipherSpec::basis_count)
      .def("basis", [](const CipherSpec& spec, std::uint32_t c) { return spec.basis(c).matrix(); },
           py::arg("c"));
  m.def("hn_spec", &hn_spec, py::arg("n"), "two-basis cipher {computational, Hadamard}");
  m.def(
      "wn_spec", [](int n) { return wn_spec(n, make_field(n)); }, py::arg("n"),
      "phase-basis cipher with 2^n bases");

  m.def(
      "encrypt",
      [](const CipherSpec& spec, std::uint32_t c, std::uint32_t k, std::uint32_t a) {
        return encrypt(spec, CipherKey{c, k}, a).amps();
      },
      py::arg("spec"), py::arg("c"), py::arg("k"), py::arg("a"),
      "ciphertext state for plaintext a under key (c, k)");
  m.def(
      "decrypt",
      [](const CipherSpec& spec, std::uint32_t c, std::uint32_t k, const Eigen::VectorXcd& block) {
        return decrypt(spec, CipherKey{c, k}, StateVector(block));
      },
      py::arg("spec"), py::arg("c"), py::arg("k"), py::arg("block"),
      "plaintext readout; raises on significant off-peak mass");

  m.def(
      "key_guess_success",
      [](const CipherSpec& spec, std::uint32_t a) {
        return key_identification_probability(spec, a, key_guess_povm(spec, a));
      },
      py::arg("spec"), py::arg("a") = 0,
      "average probability that the key-guess measurement names the true key");
  m.def(
      "key_guess_min_entropy",
      [](const CipherSpec& spec, std::uint32_t a) {
        return min_entropy_key_uncertainty(spec, a, key_guess_povm(spec, a));
      },
      py::arg("spec"), py::arg("a") = 0, "min-entropy of the key given the measurement outcome");
  m.def(
      "basis_measurement_entropy",
      [](const CipherSpec& spec, std::uint32_t a, const Eigen::MatrixXcd& basis) {
        return povm_key_entropy(spec, a, OrthonormalBasis(basis));
      },
      py::arg("spec"), py::arg("a"), py::arg("basis"),
      "Shannon key uncertainty H(K|U) of a projective measurement");
  m.def(
      "mes_search",
      [](const CipherSpec& spec, int restarts, std::uint64_t seed) {
        std::vector<OrthonormalBasis> bases;
        for (int c = 0; c < spec.basis_count(); ++c) bases.push_back(spec.basis(std::uint32_t(c)));
        MesResult r = mes_search(bases, config_from(restarts, seed));
        return py::make_tuple(r.value, r.converged, r.restarts);
      },
      py::arg("spec"), py::arg("restarts") = 64, py::arg("seed") = 12345,
      "upper bound on the entropy-sum minimum: (value, converged, restarts)");
  m.def("shannon_key_uncertainty_bound", &shannon_key_uncertainty_bound, py::arg("spec"),
        py::arg("mes_value"), "lower bound t + mes/2^t on H(K|U) over all measurements");
  m.def("sanchez_bound", &sanchez_bound, py::arg("n_bases"));
  m.def("mu_bound", &mu_bound, py::arg("n"));

  m.def(
      "analysis_report_json",
      [](const std::string& cipher, int n, int compose, int restarts, std::uint64_t seed) {
        AnalysisOptions options;
        options.cipher = cipher;
        options.n = n;
        options.compose = compose;
        options.restarts = restarts;
        options.seed = seed;
        return analysis_report(options).dump(2);
      },
      py::arg("cipher"), py::arg("n"), py::arg("compose") = 1, py::arg("restarts") = 64,
      py::arg("seed") = 12345, "full analysis document as a JSON string");

  m.def(
      "verify_circuit",
      [](int n) {
        CircuitVerification v = verify_circuit(build_encrypt_circuit(n, make_field(n)));
        py::dict out;
        out["n"] = v.n;
        out["quantum_gates"] = v.gate_counts.quantum;
        out["classical_ops"] = v.gate_counts.classical_ops;
        out["max_infidelity"] = v.max_infidelity;
        out["ancilla_residual"] = v.max_ancilla_residual;
        return out;
      },
      py::arg("n"), "exhaustive circuit verification figures for n data qubits");

  py::class_<KeystreamGenerator>(m, "KeystreamGenerator")
      .def_property_readonly("e", &KeystreamGenerator::e)
      .def_property_readonly("w", &KeystreamGenerator::w)
      .def_property_readonly("max_bits", &KeystreamGenerator::max_bits)
      .def("bit", &KeystreamGenerator::bit, py::arg("index"))
      .def(
          "bits",
          [](const KeystreamGenerator& gen, std::uint64_t offset, std::uint64_t count) {
            return keystream(gen, offset, count);
          },
          py::arg("offset"), py::arg("count"));
  m.def(
      "keystream_generator",
      [](int e, std::uint64_t max_bits, const py::bytes& seed) {
        return KeystreamGenerator::from_key_material(e, max_bits, to_bytes(seed));
      },
      py::arg("e"), py::arg("max_bits"), py::arg("seed"),
      "e-wise independent keystream stretched from shared key material");
  m.def(
      "stream_encrypt",
      [](const KeystreamGenerator& gen, const CipherSpec& spec,
         const std::vector<std::uint8_t>& bits, std::uint64_t nonce) {
        return from_bytes(stream_encrypt(gen, spec, bits, nonce));
      },
      py::arg("generator"), py::arg("spec"), py::arg("bits"), py::arg("nonce") = 0,
      "encrypt a bit sequence into a stream container (bytes)");
  m.def(
      "stream_decrypt",
      [](const KeystreamGenerator& gen, const CipherSpec& spec, const py::bytes& container) {
        return stream_decrypt(gen, spec, to_bytes(container));
      },
      py::arg("generator"), py::arg("spec"), py::arg("container"),
      "recover the bit sequence from a stream container");
  m.def(
      "ewise_check",
      [](int core_e, int subset_size, int n_bits) {
        EwiseReport r = ewise_check(core_e, subset_size, n_bits);
        return py::make_tuple(r.uniform, r.failing_subset);
      },
      py::arg("core_e"), py::arg("subset_size"), py::arg("n_bits"),
      "exact uniformity enumeration: (uniform, failing_subset_mask)");
  m.def(
      "plaintext_budget",
      [](std::uint64_t t_distinguish, int n) {
        PlaintextBudget b = plaintext_budget(t_distinguish, n);
        return py::make_tuple(b.wn_bits, b.hn_bits, b.delta_zero_bits);
      },
      py::arg("t_distinguish"), py::arg("n"),
      "known-plaintext bits needed: (phase-basis, two-basis, no-gap comparison)");
}
