#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelsup/lattice.hpp"
#include "abelsup/outgroup.hpp"
#include "abelsup/semimat.hpp"

namespace abelsup {

inline constexpr int kCertificateVersion = 1;

struct CommutatorEntry {
  int i = 0, j = 0;
  std::optional<std::int64_t> scalar;  // dlog of the central scalar; empty when not central
  bool operator==(const CommutatorEntry&) const = default;
};

struct CheckEntry {
  std::string name;
  bool ok = false;
  bool operator==(const CheckEntry&) const = default;
};

/// What the generator data of a certificate is.
enum class CertKind { Matrix, Character, Abstract };
const char* cert_kind_name(CertKind k);

/// Replayable proof object. The data certifies the subgroup `base`; T itself is
/// covered because conj(T, conjugator) lies in <base>. Direct certificates have
/// base = T and a trivial conjugator.
struct Certificate {
  int version = kCertificateVersion;
  std::string family;
  int n = 0;
  std::int64_t q = 0;
  std::vector<OutElement> T;
  std::string route;
  CertKind kind = CertKind::Abstract;
  bool partial = false;
  std::vector<OutElement> base;
  OutElement conjugator;
  std::vector<std::pair<std::string, std::int64_t>> params;

  // Matrix data.
  std::int64_t field_order = 0;
  std::int64_t center_order = 0;
  std::vector<SemilinearWord> generators;
  // Character data.
  std::optional<CharCertificate> character;

  // Transcript, filled by the verifier.
  std::vector<CommutatorEntry> commutators;
  std::vector<OutElement> rho;
  std::vector<CheckEntry> checks;
  bool pass = false;
  std::string reason;
  std::string digest;
};

/// Builds and verifies a certificate for T (generators in the OutModel of the cell).
/// Throws std::invalid_argument for an unsupported cell or a non-abelian T.
Certificate certify_supplement(const std::string& family, int n, std::int64_t q,
                               const std::vector<OutElement>& T);

/// Re-derives the transcript and verdict from the certificate data alone.
/// Overwrites commutators, rho, checks, pass and reason; leaves the digest alone.
void verify_certificate(Certificate& c);

/// FNV-1a over the canonical serialization without the digest field.
std::string certificate_digest(const Certificate& c);

/// Versioned JSON text. Matrices are row-major dlog arrays with -1 for zero.
std::string certificate_to_json(const Certificate& c, int indent = -1);
/// Throws std::invalid_argument on malformed input.
Certificate certificate_from_json(const std::string& text);

struct ReplayResult {
  bool pass = false;
  std::string reason;
  Certificate recomputed;
};
/// Parses, checks the digest, re-verifies and compares the recorded transcript.
ReplayResult replay_certificate(const std::string& json_text);

/// Perturbs one entry of the generator data (a matrix entry, a character exponent,
/// or the conjugator for abstract certificates). The digest is left stale.
Certificate mutate_certificate(const Certificate& c, std::uint64_t seed);

struct SweepSpec {
  std::vector<std::string> families;
  std::vector<int> ns;
  std::vector<std::int64_t> qs;
  int jobs = 1;
  std::int64_t out_limit = 1024;
};

struct SweepEntry {
  std::string family;
  int n = 0;
  std::int64_t q = 0;
  int t_index = -1;  // -1 for a cell-level error
  std::string t_names;
  std::string route;
  std::string verdict;  // PASS, FAIL or ERROR
  bool partial = false;
  std::string reason;
  std::string digest;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  std::int64_t pass = 0, fail = 0, error = 0, partial = 0, cells = 0;
};

/// One certificate per (family, n, q, maximal T), in the order of the input lists.
/// Cells whose (family, n) pair is meaningless are skipped; other per-cell errors
/// become ERROR entries.
SweepReport sweep(const SweepSpec& spec);
std::string sweep_report_json(const SweepReport& r, int indent = -1);

}  // namespace abelsup
