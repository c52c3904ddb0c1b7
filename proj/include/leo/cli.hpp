#pragma once

// Plumbing behind the leostark command line: input files, unit selection,
// JSON records and the batch runner.

#include "leo/group_chars.hpp"
#include "leo/leopoldt.hpp"
#include "leo/stark.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace leo::cli {

using json = nlohmann::json;

/// Exit codes: everything verified or passing, something undetermined or
/// skipped, and errors or failed checks.
enum ExitCode : int { kOk = 0, kFailure = 1, kUndetermined = 2 };

struct FieldInput {
    std::string label;
    RatPolynomial poly;
};

/// {"label": "...", "poly": [c0, c1, ..., 1]}; coefficients are integers or
/// "a/b" strings. Unknown keys are rejected.
FieldInput parse_field(const json& j);
FieldInput load_field_file(const std::string& path);

/// [[{"coords": [...], "exp": e}, ...], ...]: one inner list per unit, each
/// factor an element in the power basis raised to an integer exponent.
std::vector<FactoredUnit> parse_units(const json& j, const FieldPtr& field);
std::vector<FactoredUnit> load_units_file(const std::string& path, const FieldPtr& field);

struct VerifyConfig {
    unsigned long p = 0;
    long start_precision = 10;
    long max_precision = 0;
    std::optional<std::string> units_file;
    std::uint64_t seed = 1;
};

/// Picks units (units file, quadratic fundamental unit, cyclotomic xi units
/// when the polynomial is that of Q(zeta_n)^+, relation search otherwise) and
/// runs verify_leopoldt. Input problems come back as status error.
LeopoldtCertificate run_verify(const FieldInput& field, const VerifyConfig& cfg);

/// The n with poly = minimal polynomial of 2 cos(2 pi / n), if any.
std::optional<unsigned long> match_real_cyclotomic(const RatPolynomial& poly);

json certificate_json(const LeopoldtCertificate& cert, long elapsed_ms);
json stark_report_json(const StarkReport& r);
json group_table_json(const GroupTable& t);
json artin_json(const GroupTable& t, std::size_t character, const ArtinDecomposition& d);
json perm_rc_json(const GroupTable& t, const PermRcResult& r);

int exit_code(LeopoldtStatus s);
int exit_code(const StarkReport& r);

struct BatchConfig {
    std::string dir;
    VerifyConfig verify;
    unsigned workers = 1;
    std::optional<std::string> out;  ///< JSONL destination; stdout when absent
    bool resume = false;             ///< skip labels already present in out
};

struct BatchSummary {
    std::size_t fields = 0;
    std::size_t skipped = 0;  ///< already present when resuming
    std::size_t verified = 0;
    std::size_t undetermined = 0;
    std::size_t errors = 0;
    int exit_code() const;
};

/// Verifies every *.json field file in dir (sorted by file name) on a worker
/// pool; one writer emits the certificates in input order.
BatchSummary run_batch(const BatchConfig& cfg);

/// Worker count from LEOSTARK_WORKERS, else the hardware concurrency.
unsigned default_workers();

}  // namespace leo::cli
