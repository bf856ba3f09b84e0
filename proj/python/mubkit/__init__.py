# SPDX-License-Identifier: Apache-2.0
"""Quantum cipher construction and key-uncertainty analysis."""

from ._mubkit import (
    CipherSpec,
    FieldContext,
    KeystreamGenerator,
    MubFamily,
    __version__,
    analysis_report_json,
    basis_measurement_entropy,
    decrypt,
    encrypt,
    ewise_check,
    hn_spec,
    key_guess_min_entropy,
    key_guess_success,
    keystream_generator,
    make_field,
    mes_search,
    mu_bound,
    mub_family,
    plaintext_budget,
    sanchez_bound,
    shannon_key_uncertainty_bound,
    stream_decrypt,
    stream_encrypt,
    verify_circuit,
    wf_vector,
    wn_spec,
)

__all__ = [
    "CipherSpec",
    "FieldContext",
    "KeystreamGenerator",
    "MubFamily",
    "__version__",
    "analysis_report_json",
    "basis_measurement_entropy",
    "decrypt",
    "encrypt",
    "ewise_check",
    "hn_spec",
    "key_guess_min_entropy",
    "key_guess_success",
    "keystream_generator",
    "make_field",
    "mes_search",
    "mu_bound",
    "mub_family",
    "plaintext_budget",
    "sanchez_bound",
    "shannon_key_uncertainty_bound",
    "stream_decrypt",
    "stream_encrypt",
    "verify_circuit",
    "wf_vector",
    "wn_spec",
]
