#include "qchan/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>

#include <openssl/evp.h>

namespace qchan {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) parse_fail("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) parse_fail(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t count_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        parse_fail(std::string("field '") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        parse_fail("complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_vector_to_json(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(complex_to_json(z));
    return a;
}

std::vector<Complex> complex_vector_from_json(const json& j) {
    if (!j.is_array()) parse_fail("expected an array of complex numbers");
    std::vector<Complex> v;
    for (const auto& e : j) v.push_back(complex_from_json(e));
    return v;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) parse_fail("a Kraus operator must be a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) parse_fail("Kraus rows must be non-empty arrays");
    const std::size_t cols = j[0].size();
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) parse_fail("Kraus operator rows differ in length");
        for (const auto& e : row) entries.push_back(complex_from_json(e));
    }
    try {
        return ComplexMatrix(rows, cols, std::move(entries));
    } catch (const Error& e) {
        parse_fail(e.what());
    }
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

template <typename T>
T get_field(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        parse_fail(std::string("field '") + key + "': " + e.what());
    }
}

} // namespace

// nlohmann adapters, found by ADL.

void to_json(json& j, const RealSpectrum& s) { j = s.vector(); }
void from_json(const json& j, RealSpectrum& s) { s = RealSpectrum(j.get<std::vector<double>>()); }

void to_json(json& j, const ChannelFlags& f) {
    j = json{{"is_bi_quantum", f.is_bi_quantum},
             {"is_unitary_channel", f.is_unitary_channel},
             {"is_strongly_self_adjoint", f.is_strongly_self_adjoint}};
}
void from_json(const json& j, ChannelFlags& f) {
    f.is_bi_quantum = get_field<bool>(j, "is_bi_quantum");
    f.is_unitary_channel = get_field<bool>(j, "is_unitary_channel");
    f.is_strongly_self_adjoint = get_field<bool>(j, "is_strongly_self_adjoint");
}

void to_json(json& j, const FBound& f) {
    j = json{{"m_prime", f.m_prime}, {"eta", f.eta}, {"value", f.value},
             {"lambda_prefix", f.lambda_prefix}};
}
void from_json(const json& j, FBound& f) {
    f.m_prime = get_field<std::size_t>(j, "m_prime");
    f.eta = get_field<double>(j, "eta");
    f.value = get_field<double>(j, "value");
    f.lambda_prefix = get_field<std::vector<double>>(j, "lambda_prefix");
}

void to_json(json& j, const FBoundSequence& s) {
    json per_p = json::array();
    for (const auto& [p, v] : s.per_p) per_p.push_back(json{{"p", p}, {"value", v}});
    j = json{{"per_p", per_p}, {"running_max", s.running_max}, {"truncated", s.truncated}};
}
void from_json(const json& j, FBoundSequence& s) {
    s.per_p.clear();
    for (const auto& e : field(j, "per_p"))
        s.per_p.emplace_back(get_field<std::size_t>(e, "p"), get_field<double>(e, "value"));
    s.running_max = get_field<std::vector<double>>(j, "running_max");
    s.truncated = get_field<bool>(j, "truncated");
}

void to_json(json& j, const InvariantReport& r) {
    j = json{{"n", r.n},
             {"m", r.m},
             {"l", r.l},
             {"lambda1_A", r.lambda1_A},
             {"sigma", r.sigma},
             {"log_lambda1_A", r.log_lambda1_A},
             {"log_sigma1", r.log_sigma1},
             {"hr_lower", r.hr_lower},
             {"hr_nontrivial", r.hr_nontrivial},
             {"f_bound", r.f_bound},
             {"f_bound_per_p", r.f_bound_per_p},
             {"bi_bound", optional_to_json(r.bi_bound)},
             {"flags", r.flags}};
}
void from_json(const json& j, InvariantReport& r) {
    r.n = get_field<std::size_t>(j, "n");
    r.m = get_field<std::size_t>(j, "m");
    r.l = get_field<std::size_t>(j, "l");
    r.lambda1_A = get_field<double>(j, "lambda1_A");
    r.sigma = get_field<RealSpectrum>(j, "sigma");
    r.log_lambda1_A = get_field<double>(j, "log_lambda1_A");
    r.log_sigma1 = get_field<double>(j, "log_sigma1");
    r.hr_lower = get_field<double>(j, "hr_lower");
    r.hr_nontrivial = get_field<bool>(j, "hr_nontrivial");
    r.f_bound = get_field<FBound>(j, "f_bound");
    r.f_bound_per_p = get_field<FBoundSequence>(j, "f_bound_per_p");
    r.bi_bound = optional_from_json<double>(j, "bi_bound");
    r.flags = get_field<ChannelFlags>(j, "flags");
}

void to_json(json& j, const StartRecord& s) {
    j = json{{"index", s.index}, {"value", s.value}, {"iterations", s.iterations},
             {"converged", s.converged}};
}
void from_json(const json& j, StartRecord& s) {
    s.index = get_field<std::size_t>(j, "index");
    s.value = get_field<double>(j, "value");
    s.iterations = get_field<std::size_t>(j, "iterations");
    s.converged = get_field<bool>(j, "converged");
}

void to_json(json& j, const MinEntropyResult& r) {
    j = json{{"value", r.value},
             {"argmin", complex_vector_to_json(r.argmin)},
             {"output_spectrum", r.output_spectrum},
             {"per_start", r.per_start}};
}
void from_json(const json& j, MinEntropyResult& r) {
    r.value = get_field<double>(j, "value");
    r.argmin = complex_vector_from_json(field(j, "argmin"));
    r.output_spectrum = get_field<RealSpectrum>(j, "output_spectrum");
    r.per_start = get_field<std::vector<StartRecord>>(j, "per_start");
}

void to_json(json& j, const SandwichRow& s) {
    j = json{{"p", s.p},         {"hr_lower", s.hr_lower},
             {"f_bound", s.f_bound}, {"bi_bound", optional_to_json(s.bi_bound)},
             {"lower", s.lower}, {"upper", s.upper},
             {"gap", s.gap},     {"consistent", s.consistent}};
}
void from_json(const json& j, SandwichRow& s) {
    s.p = get_field<std::size_t>(j, "p");
    s.hr_lower = get_field<double>(j, "hr_lower");
    s.f_bound = get_field<double>(j, "f_bound");
    s.bi_bound = optional_from_json<double>(j, "bi_bound");
    s.lower = get_field<double>(j, "lower");
    s.upper = get_field<double>(j, "upper");
    s.gap = get_field<double>(j, "gap");
    s.consistent = get_field<bool>(j, "consistent");
}

void to_json(json& j, const ChannelDigest& d) {
    j = json{{"n", d.n}, {"m", d.m}, {"l", d.l}, {"sha256", d.sha256}};
}
void from_json(const json& j, ChannelDigest& d) {
    d.n = get_field<std::size_t>(j, "n");
    d.m = get_field<std::size_t>(j, "m");
    d.l = get_field<std::size_t>(j, "l");
    d.sha256 = get_field<std::string>(j, "sha256");
}

json channel_to_json(const QuantumChannel& tau) {
    json kraus = json::array();
    for (const auto& a : tau.kraus()) {
        json rows = json::array();
        for (std::size_t r = 0; r < a.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(complex_to_json(a(r, c)));
            rows.push_back(std::move(row));
        }
        kraus.push_back(std::move(rows));
    }
    return json{{"schema_version", kSchemaVersion},
                {"n", tau.input_dim()},
                {"m", tau.output_dim()},
                {"kraus", std::move(kraus)}};
}

std::vector<ComplexMatrix> kraus_from_json(const json& j) {
    const json& version = field(j, "schema_version");
    if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
        parse_fail("unsupported schema_version (expected \"1\")");
    const std::size_t n = count_field(j, "n");
    const std::size_t m = count_field(j, "m");
    const json& list = field(j, "kraus");
    if (!list.is_array() || list.empty()) parse_fail("'kraus' must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const auto& k : list) {
        kraus.push_back(matrix_from_json(k));
        if (kraus.back().rows() != m || kraus.back().cols() != n)
            fail(ErrorKind::DimensionMismatch,
                 "Kraus operator " + std::to_string(kraus.size() - 1) + " is " +
                     std::to_string(kraus.back().rows()) + "x" + std::to_string(kraus.back().cols()) +
                     ", file declares m x n = " + std::to_string(m) + "x" + std::to_string(n));
    }
    return kraus;
}

QuantumChannel channel_from_json(const json& j) { return QuantumChannel(kraus_from_json(j)); }

QuantumChannel channel_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
    return channel_from_json(j);
}

std::string channel_to_text(const QuantumChannel& tau) { return channel_to_json(tau).dump() + "\n"; }

std::string channel_sha256(const QuantumChannel& tau) {
    std::vector<unsigned char> bytes;
    auto put_u64 = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<unsigned char>(v >> (8 * i)));
    };
    put_u64(tau.input_dim());
    put_u64(tau.output_dim());
    put_u64(tau.kraus_count());
    for (const auto& a : tau.kraus())
        for (const Complex& z : a.entries()) {
            put_u64(std::bit_cast<std::uint64_t>(z.real()));
            put_u64(std::bit_cast<std::uint64_t>(z.imag()));
        }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorKind::NumericalFailure, "SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

ChannelDigest digest(const QuantumChannel& tau) {
    return {tau.input_dim(), tau.output_dim(), tau.kraus_count(), channel_sha256(tau)};
}

json report_to_json(const ReportFile& r) {
    json j{{"schema_version", r.schema_version},
           {"tool_version", r.tool_version},
           {"channel", r.channel},
           {"log_base", r.log_base},
           {"seed", optional_to_json(r.seed)},
           {"config", r.config}};
    j["invariants"] = r.invariants ? json(*r.invariants) : json(nullptr);
    j["min_entropy"] = r.min_entropy ? json(*r.min_entropy) : json(nullptr);
    j["sandwich"] = r.sandwich ? json(*r.sandwich) : json(nullptr);
    return j;
}

ReportFile report_from_json(const json& j) {
    ReportFile r;
    r.schema_version = get_field<std::string>(j, "schema_version");
    if (r.schema_version != kSchemaVersion) parse_fail("unsupported report schema_version");
    r.tool_version = get_field<std::string>(j, "tool_version");
    r.channel = get_field<ChannelDigest>(j, "channel");
    r.log_base = get_field<std::string>(j, "log_base");
    r.seed = optional_from_json<std::uint64_t>(j, "seed");
    r.config = field(j, "config");
    r.invariants = optional_from_json<InvariantReport>(j, "invariants");
    r.min_entropy = optional_from_json<MinEntropyResult>(j, "min_entropy");
    r.sandwich = optional_from_json<SandwichRow>(j, "sandwich");
    return r;
}

std::string report_to_text(const ReportFile& r) { return report_to_json(r).dump(2) + "\n"; }

InvariantReport in_log_base(InvariantReport r, LogBase base) {
    auto cv = [base](double& v) { v = from_nats(v, base); };
    cv(r.log_lambda1_A);
    cv(r.log_sigma1);
    cv(r.hr_lower);
    cv(r.f_bound.value);
    for (auto& e : r.f_bound_per_p.per_p) cv(e.second);
    for (auto& v : r.f_bound_per_p.running_max) cv(v);
    if (r.bi_bound) cv(*r.bi_bound);
    return r;
}

MinEntropyResult in_log_base(MinEntropyResult r, LogBase base) {
    r.value = from_nats(r.value, base);
    for (auto& s : r.per_start) s.value = from_nats(s.value, base);
    return r;
}

SandwichRow in_log_base(SandwichRow r, LogBase base) {
    auto cv = [base](double& v) { v = from_nats(v, base); };
    cv(r.hr_lower);
    cv(r.f_bound);
    if (r.bi_bound) cv(*r.bi_bound);
    cv(r.lower);
    cv(r.upper);
    cv(r.gap);
    return r;
}

LogBase parse_log_base(const std::string& name) {
    if (name == "nat" || name == "nats") return LogBase::Natural;
    if (name == "bits" || name == "bit") return LogBase::Two;
    fail(ErrorKind::InvalidInput, "unknown log base '" + name + "' (use nat or bits)");
}

std::string log_base_name(LogBase base) { return base == LogBase::Two ? "bits" : "nat"; }

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf.data(), ptr);
}

} // namespace qchan
