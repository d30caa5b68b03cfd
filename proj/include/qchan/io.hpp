#pragma once

// Channel files, report files and scan CSV rows.
//
// Channel file (schema "1"):
//   {"schema_version": "1", "n": 2, "m": 2,
//    "kraus": [ [[ [re, im], ... ], ...], ... ]}   one matrix per Kraus operator,
//                                                  rows of [re, im] pairs
//
// Reports are JSON objects with sorted keys; numbers use the shortest
// representation that round-trips to the same double.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qchan/entropy_opt.hpp"
#include "qchan/invariants.hpp"

namespace qchan {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json channel_to_json(const QuantumChannel& tau);

// Throws Error(Parse) on schema problems and NotAChannelError / DimensionMismatch
// when the Kraus list is not a valid channel.
QuantumChannel channel_from_json(const nlohmann::json& j);

// Parses the text first; malformed JSON throws Error(Parse).
QuantumChannel channel_from_text(const std::string& text);
std::string channel_to_text(const QuantumChannel& tau);

// Kraus operators only, without validation (for reporting residuals).
std::vector<ComplexMatrix> kraus_from_json(const nlohmann::json& j);

// SHA-256 over n, m, l as little-endian u64 followed by every Kraus entry
// (re, im) as little-endian IEEE-754 binary64, operators in order, row-major.
std::string channel_sha256(const QuantumChannel& tau);

struct ChannelDigest {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t l = 0;
    std::string sha256;

    friend bool operator==(const ChannelDigest&, const ChannelDigest&) = default;
};

ChannelDigest digest(const QuantumChannel& tau);

struct ReportFile {
    std::string schema_version = kSchemaVersion;
    std::string tool_version = kToolVersion;
    ChannelDigest channel;
    std::string log_base = "nat"; // "nat" or "bits"; applies to every entropy-valued field
    std::optional<std::uint64_t> seed;
    nlohmann::json config = nlohmann::json::object();
    std::optional<InvariantReport> invariants;
    std::optional<MinEntropyResult> min_entropy;
    std::optional<SandwichRow> sandwich;

    friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

nlohmann::json report_to_json(const ReportFile& r);
ReportFile report_from_json(const nlohmann::json& j);
std::string report_to_text(const ReportFile& r);

// Entropy-valued fields rescaled from nats to `base`.
InvariantReport in_log_base(InvariantReport r, LogBase base);
MinEntropyResult in_log_base(MinEntropyResult r, LogBase base);
SandwichRow in_log_base(SandwichRow r, LogBase base);

LogBase parse_log_base(const std::string& name);
std::string log_base_name(LogBase base);

// Shortest round-trip decimal form.
std::string format_double(double v);

} // namespace qchan
