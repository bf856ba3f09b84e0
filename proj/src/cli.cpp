// SPDX-License-Identifier: Apache-2.0
#include "mubkit/cli.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "mubkit/cipher.hpp"
#include "mubkit/circuit.hpp"
#include "mubkit/report.hpp"
#include "mubkit/stream.hpp"

namespace mubkit {

namespace {

using nlohmann::ordered_json;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::vector<std::uint8_t> bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back(std::uint8_t((b >> i) & 1));
  }
  return bits;
}

std::vector<std::uint8_t> bits_to_bytes(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 8 != 0) {
    throw std::invalid_argument("bit count is not a whole number of bytes");
  }
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bytes[i / 8] = std::uint8_t(bytes[i / 8] | (bits[i] & 1) << (7 - i % 8));
  }
  return bytes;
}

std::vector<std::uint8_t> parse_hex_bytes(const std::string& hex) {
  if (hex.empty() || hex.size() % 2 != 0) {
    throw std::invalid_argument("seed must be a nonempty even-length hex string");
  }
  auto digit = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("invalid hex digit: ") + c);
  };
  std::vector<std::uint8_t> bytes(hex.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = std::uint8_t(digit(hex[2 * i]) << 4 | digit(hex[2 * i + 1]));
  }
  return bytes;
}

CipherSpec cli_spec(const std::string& cipher, int n) {
  if (cipher == "hn") {
    if (n < 1 || n > 8) throw std::invalid_argument("hn supports n in 1..8");
    return hn_spec(n);
  }
  if (n < 1 || n > 3) throw std::invalid_argument("wn supports n in 1..3");
  return wn_spec(n, make_field(n));
}

/// Both stream directions derive the generator period the same way, so the
/// container alone plus the seed reproduces the keystream: the smallest
/// power of two covering the keystream bits actually consumed, capped at
/// the 2^16 evaluation-point limit.
std::uint64_t canonical_period(std::uint64_t nonce, std::uint64_t blocks, int m) {
  std::uint64_t need = nonce + blocks * std::uint64_t(m);
  if (need > 65536) {
    throw std::invalid_argument("message too long for stream mode (keystream cap 2^16 bits)");
  }
  return std::bit_ceil(std::max<std::uint64_t>(need, 2));
}

struct Emitter {
  std::ostream& out;
  std::string out_dir;
  bool json = false;

  void document(const std::string& text, const std::string& filename) const {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / filename, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write into " + out_dir);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }

  void file_summary(const std::string& path, std::size_t blocks, std::size_t bytes) const {
    if (json) {
      ordered_json doc{{"out", path}, {"blocks", blocks}, {"bytes", bytes}};
      out << doc.dump() << '\n';
    } else {
      out << "wrote " << path << " (" << blocks << " blocks, " << bytes << " bytes)\n";
    }
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantum cipher construction and key-uncertainty analysis", "mubkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::uint64_t seed = 12345;
  bool json = false;
  std::string out_dir;
  app.add_option("--seed", seed, "base seed for randomized search and certification");
  app.add_flag("--json", json, "machine-readable summaries for file subcommands");
  app.add_option("--out-dir", out_dir, "also write emitted documents into this directory");

  Emitter emit{out, "", false};
  auto sync_globals = [&] {
    emit.out_dir = out_dir;
    emit.json = json;
  };

  // mub
  int mub_n = 1;
  bool full_check = false;
  auto* mub = app.add_subcommand("mub", "build a basis family and certify unbiasedness");
  mub->fallthrough();
  mub->add_option("--n", mub_n, "field degree (dimension 2^n)")->required()->check(CLI::Range(1, 6));
  mub->add_flag("--full-check", full_check, "check every vector pair even above n = 3");
  mub->callback([&] {
    sync_globals();
    emit.document(mub_certificate_json(mub_n, full_check, seed).dump(2), "mub.json");
  });

  // encrypt / decrypt
  std::string cipher = "hn", key_hex, in_path, out_path;
  int block_n = 1;
  auto add_block_options = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--cipher", cipher, "cipher family")
        ->required()
        ->check(CLI::IsMember({"hn", "wn"}));
    sub->add_option("--n", block_n, "block size in plaintext bits")->required();
    sub->add_option("--key-hex", key_hex, "per-block keys, ceil((t+n)/4) hex digits each")
        ->required();
    sub->add_option("--in", in_path, "input file")->required();
    sub->add_option("--out", out_path, "output file")->required();
  };

  auto* enc = app.add_subcommand("encrypt", "encrypt a file into a ciphertext container");
  add_block_options(enc);
  enc->callback([&] {
    sync_globals();
    CipherSpec spec = cli_spec(cipher, block_n);
    auto bits = bytes_to_bits(read_file(in_path));
    if (bits.size() % std::size_t(spec.n()) != 0) {
      throw std::invalid_argument("plaintext is " + std::to_string(bits.size()) +
                                  " bits, not a multiple of n = " + std::to_string(spec.n()));
    }
    auto keys = keys_from_hex(spec, key_hex);
    std::size_t blocks = bits.size() / std::size_t(spec.n());
    if (keys.size() != blocks) {
      throw std::invalid_argument("key material covers " + std::to_string(keys.size()) +
                                  " blocks, message needs " + std::to_string(blocks));
    }
    auto container = qct_serialize(spec, encrypt_blocks(spec, keys, bits));
    write_file(out_path, container);
    emit.file_summary(out_path, blocks, container.size());
  });

  auto* dec = app.add_subcommand("decrypt", "decrypt a ciphertext container");
  add_block_options(dec);
  dec->callback([&] {
    sync_globals();
    CipherSpec spec = cli_spec(cipher, block_n);
    QctContent content = qct_parse(read_file(in_path));
    if (content.cipher_id != spec.container_id() || content.n != spec.n() ||
        content.t != spec.t()) {
      throw std::invalid_argument("container was written by a different cipher or size");
    }
    auto keys = keys_from_hex(spec, key_hex);
    if (keys.size() != content.blocks.size()) {
      throw std::invalid_argument("key material covers " + std::to_string(keys.size()) +
                                  " blocks, container holds " +
                                  std::to_string(content.blocks.size()));
    }
    auto bytes = bits_to_bytes(decrypt_blocks(spec, keys, content.blocks));
    write_file(out_path, bytes);
    emit.file_summary(out_path, content.blocks.size(), bytes.size());
  });

  // analyze
  AnalysisOptions analysis;
  auto* ana = app.add_subcommand("analyze", "entropy figures, bounds, and probes for a cipher");
  ana->fallthrough();
  ana->add_option("--cipher", analysis.cipher, "cipher family")
      ->required()
      ->check(CLI::IsMember({"hn", "wn"}));
  ana->add_option("--n", analysis.n, "block size in plaintext bits")->required();
  ana->add_option("--compose", analysis.compose, "blocks per composed key")->check(CLI::Range(1, 8));
  ana->add_option("--restarts", analysis.restarts, "random restarts for the entropy search")
      ->check(CLI::Range(0, 4096));
  ana->add_option("--plaintext", analysis.plaintext, "plaintext index the analysis conditions on");
  ana->callback([&] {
    sync_globals();
    analysis.seed = seed;
    emit.document(analysis_report(analysis).dump(2), "analysis.json");
  });

  // circuit
  int circuit_n = 1;
  bool verify = false;
  auto* circ = app.add_subcommand("circuit", "build the encryption circuit and report costs");
  circ->fallthrough();
  circ->add_option("--n", circuit_n, "data qubits")->required()->check(CLI::Range(1, 3));
  circ->add_flag("--verify", verify, "simulate every (a, c, k) and report worst-case figures");
  circ->callback([&] {
    sync_globals();
    ordered_json doc;
    if (verify) {
      doc = circuit_report_json(circuit_n);
    } else {
      Circuit built = build_encrypt_circuit(circuit_n, make_field(circuit_n));
      doc["schema"] = kReportSchema;
      doc["n"] = circuit_n;
      doc["gate_counts"] = {{"quantum", built.gate_counts.quantum},
                            {"classical_ops", built.gate_counts.classical_ops}};
    }
    emit.document(doc.dump(2), "circuit.json");
  });

  // stream-encrypt / stream-decrypt
  std::string seed_hex;
  int stream_e = 2;
  std::uint64_t nonce = 0;
  auto add_stream_options = [&](CLI::App* sub, bool with_nonce) {
    sub->fallthrough();
    sub->add_option("--cipher", cipher, "cipher family")
        ->required()
        ->check(CLI::IsMember({"hn", "wn"}));
    sub->add_option("--n", block_n, "block size in plaintext bits")->required();
    sub->add_option("--seed-hex", seed_hex, "shared key material as hex bytes")->required();
    sub->add_option("--e", stream_e, "independence degree of the keystream")
        ->required()
        ->check(CLI::Range(1, 64));
    sub->add_option("--in", in_path, "input file")->required();
    sub->add_option("--out", out_path, "output file")->required();
    if (with_nonce) {
      sub->add_option("--nonce", nonce, "keystream bit offset where key material starts");
    }
  };

  auto* senc = app.add_subcommand("stream-encrypt",
                                  "encrypt a file with keys drawn from a seeded keystream");
  add_stream_options(senc, true);
  senc->callback([&] {
    sync_globals();
    CipherSpec spec = cli_spec(cipher, block_n);
    auto bits = bytes_to_bits(read_file(in_path));
    std::uint64_t blocks = (bits.size() + std::size_t(spec.n()) - 1) / std::size_t(spec.n());
    std::uint64_t period = canonical_period(nonce, blocks, spec.m());
    auto gen = KeystreamGenerator::from_key_material(stream_e, period, parse_hex_bytes(seed_hex));
    auto container = stream_encrypt(gen, spec, bits, nonce);
    write_file(out_path, container);
    emit.file_summary(out_path, blocks, container.size());
  });

  auto* sdec = app.add_subcommand("stream-decrypt", "decrypt a stream container");
  add_stream_options(sdec, false);
  sdec->callback([&] {
    sync_globals();
    CipherSpec spec = cli_spec(cipher, block_n);
    auto container = read_file(in_path);
    StreamHeader header = parse_stream_header(container);
    std::uint64_t period = canonical_period(header.nonce, header.block_count, spec.m());
    auto gen = KeystreamGenerator::from_key_material(stream_e, period, parse_hex_bytes(seed_hex));
    auto bytes = bits_to_bytes(stream_decrypt(gen, spec, container));
    write_file(out_path, bytes);
    emit.file_summary(out_path, header.block_count, bytes.size());
  });

  // report
  std::vector<std::string> report_files;
  auto* rep = app.add_subcommand("report", "condense analysis documents into a CSV table");
  rep->fallthrough();
  rep->add_option("files", report_files, "analysis JSON documents");
  rep->callback([&] {
    sync_globals();
    std::vector<ordered_json> docs;
    for (const std::string& path : report_files) {
      auto bytes = read_file(path);
      docs.push_back(ordered_json::parse(bytes.begin(), bytes.end()));
    }
    emit.document(report_table(docs), "report.csv");
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mubkit
