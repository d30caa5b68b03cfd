#include "qchan/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qchan/io.hpp"
#include "qchan/random.hpp"

namespace qchan::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Parse, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Parse, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::Parse, "write to '" + path + "' failed");
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidInput:
        return kParseError;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotAChannel:
    case ErrorKind::CannotRenormalize:
        return kValidationFailure;
    case ErrorKind::CapExceeded:
        return kCapExceeded;
    case ErrorKind::NotPositive:
    case ErrorKind::Inapplicable:
    case ErrorKind::NumericalFailure:
        return kNumericalFailure;
    }
    return kNumericalFailure;
}

QuantumChannel load_channel(const std::string& path) { return channel_from_text(read_file(path)); }

struct Options {
    std::string path;
    std::size_t p_max = 4;
    std::size_t p = 1;
    std::optional<std::size_t> dim_cap;
    std::string log_base = "nat";
    std::string seed = "0";
    std::size_t starts = 32;
    std::size_t max_iters = 500;
    std::size_t threads = 1;
    std::string kind = "unitary";
    std::size_t n = 2;
    std::optional<std::size_t> m;
    std::size_t l = 3;
    std::string out_path;
    std::size_t count = 10;
    std::string csv_path;
};

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    json j;
    try {
        j = json::parse(read_file(o.path));
    } catch (const json::parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    }
    std::vector<ComplexMatrix> kraus;
    try {
        kraus = kraus_from_json(j);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        out << json{{"valid", false}, {"error", e.what()}}.dump(2) << "\n";
        return kValidationFailure;
    }
    const double residual = trace_preservation_residual(kraus);
    try {
        const QuantumChannel tau(std::move(kraus));
        out << json{{"valid", true},
                    {"residual", residual},
                    {"channel", json{{"n", tau.input_dim()},
                                     {"m", tau.output_dim()},
                                     {"l", tau.kraus_count()},
                                     {"sha256", channel_sha256(tau)}}}}
                   .dump(2)
            << "\n";
        return kOk;
    } catch (const NotAChannelError& e) {
        out << json{{"valid", false}, {"residual", e.residual()}, {"error", e.what()}}.dump(2) << "\n";
        return kValidationFailure;
    }
}

int cmd_invariants(const Options& o, std::ostream& out) {
    const LogBase base = parse_log_base(o.log_base);
    const QuantumChannel tau = load_channel(o.path);
    const std::size_t cap = o.dim_cap.value_or(dim_cap_from_env(kDefaultEigenProductCap));
    ReportFile r;
    r.channel = digest(tau);
    r.log_base = log_base_name(base);
    r.config = json{{"command", "invariants"}, {"p_max", o.p_max}, {"dim_cap", cap}};
    r.invariants = in_log_base(full_report(tau, o.p_max, cap), base);
    out << report_to_text(r);
    return kOk;
}

int cmd_minent(const Options& o, std::ostream& out) {
    const LogBase base = parse_log_base(o.log_base);
    const QuantumChannel tau = load_channel(o.path);
    OptimizerConfig cfg;
    cfg.starts = o.starts;
    cfg.max_iters = o.max_iters;
    cfg.seed = parse_seed(o.seed);
    cfg.threads = o.threads;
    cfg.dim_cap = o.dim_cap.value_or(dim_cap_from_env(kDefaultOptimizerDimCap));
    const std::size_t eigen_cap = dim_cap_from_env(kDefaultEigenProductCap);
    const MinEntropyResult result = min_entropy_tensor(tau, o.p, cfg);

    ReportFile r;
    r.channel = digest(tau);
    r.log_base = log_base_name(base);
    r.seed = cfg.seed;
    r.config = json{{"command", "minent"},
                    {"p", o.p},
                    {"starts", cfg.starts},
                    {"max_iters", cfg.max_iters},
                    {"grad_tol", cfg.grad_tol},
                    {"step", cfg.step},
                    {"entropy_log_eps", cfg.entropy_log_eps},
                    {"dim_cap", cfg.dim_cap}};
    r.min_entropy = in_log_base(result, base);
    r.sandwich = in_log_base(sandwich_row(tau, o.p, result.value, eigen_cap), base);
    out << report_to_text(r);
    return kOk;
}

int cmd_random(const Options& o, std::ostream& out) {
    const std::uint64_t seed = parse_seed(o.seed);
    Rng rng(seed);
    QuantumChannel tau = [&] {
        if (o.kind == "unitary") {
            if (o.m && *o.m != o.n)
                fail(ErrorKind::InvalidInput, "--kind unitary requires m = n");
            return random_unitary_channel(o.n, o.l, rng);
        }
        if (o.kind == "general") return random_channel(o.n, o.m.value_or(o.n), o.l, rng);
        fail(ErrorKind::InvalidInput, "unknown --kind '" + o.kind + "' (use unitary or general)");
    }();
    write_file(o.out_path, channel_to_text(tau));
    out << json{{"path", o.out_path}, {"seed", seed}, {"channel", json{{"n", tau.input_dim()},
                                                                       {"m", tau.output_dim()},
                                                                       {"l", tau.kraus_count()},
                                                                       {"sha256", channel_sha256(tau)}}}}
               .dump(2)
        << "\n";
    return kOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
    if (o.kind != "unitary") fail(ErrorKind::InvalidInput, "scan supports --kind unitary only");
    OptimizerConfig cfg;
    cfg.starts = o.starts;
    cfg.max_iters = o.max_iters;
    cfg.threads = o.threads;
    cfg.dim_cap = o.dim_cap.value_or(dim_cap_from_env(kDefaultOptimizerDimCap));
    const auto rows = scan_unitary(o.n, o.l, o.count, parse_seed(o.seed), o.p, cfg);
    std::ostringstream csv;
    csv << scan_csv_header(o.p);
    for (const auto& row : rows) csv << scan_csv_row(row);
    if (o.csv_path.empty())
        out << csv.str();
    else
        write_file(o.csv_path, csv.str());
    return kOk;
}

} // namespace

std::size_t dim_cap_from_env(std::size_t fallback) {
    const char* env = std::getenv("QCHAN_DIM_CAP");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        const std::uint64_t v = parse_seed(env);
        return v > 0 ? static_cast<std::size_t>(v) : fallback;
    } catch (const Error&) {
        return fallback;
    }
}

std::vector<ScanRow> scan_unitary(std::size_t n, std::size_t l, std::size_t count,
                                  std::uint64_t seed, std::size_t p, const OptimizerConfig& cfg) {
    const Rng root(seed);
    std::vector<ScanRow> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = root.child("sample", i);
        const QuantumChannel tau = random_unitary_channel(n, l, rng);
        const RealSpectrum sigma = channel_singular_values(tau);
        ScanRow row;
        row.sample = i;
        row.sigma1 = sigma[0];
        row.sigma2 = sigma.size() > 1 ? sigma[1] : 0.0;
        OptimizerConfig sample_cfg = cfg;
        sample_cfg.seed = root.child("optimizer", i).seed();
        row.min_entropy = min_entropy_tensor(tau, p, sample_cfg).value;
        if (n >= 2 && is_bi_quantum(tau)) {
            row.bi_bound = bi_channel_entropy_bound(row.sigma2, n, p);
            row.gap = row.min_entropy - *row.bi_bound;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string scan_csv_header(std::size_t p) {
    return "# qchan-scan v1 p=" + std::to_string(p) + "\nsample,sigma1,sigma2,bi_bound,min_entropy,gap\n";
}

std::string scan_csv_row(const ScanRow& row) {
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    return std::to_string(row.sample) + "," + format_double(row.sigma1) + "," +
           format_double(row.sigma2) + "," + opt(row.bi_bound) + "," +
           format_double(row.min_entropy) + "," + opt(row.gap) + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Additive invariants and minimum output entropy bounds for quantum channels", "qchan"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Check that a channel file is trace preserving");
    validate->add_option("path", o.path, "Channel file")->required();

    auto* inv = app.add_subcommand("invariants", "Report lambda_1(A), superoperator spectrum and bounds");
    inv->add_option("path", o.path, "Channel file")->required();
    inv->add_option("--p-max", o.p_max, "Largest tensor power for the F-bound sequence")
        ->check(CLI::PositiveNumber);
    inv->add_option("--dim-cap", o.dim_cap, "Cap on eigenvalue products m^p")->check(CLI::PositiveNumber);
    inv->add_option("--log-base", o.log_base, "nat or bits")->check(CLI::IsMember({"nat", "bits"}));

    auto* minent = app.add_subcommand("minent", "Estimate minimum output entropy of a tensor power");
    minent->add_option("path", o.path, "Channel file")->required();
    minent->add_option("--p", o.p, "Tensor power")->check(CLI::PositiveNumber);
    minent->add_option("--starts", o.starts, "Random starts")->check(CLI::PositiveNumber);
    minent->add_option("--seed", o.seed, "Seed, decimal or 0x-hex");
    minent->add_option("--max-iters", o.max_iters, "Iterations per start")->check(CLI::PositiveNumber);
    minent->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    minent->add_option("--dim-cap", o.dim_cap, "Cap on n^p")->check(CLI::PositiveNumber);
    minent->add_option("--log-base", o.log_base, "nat or bits")->check(CLI::IsMember({"nat", "bits"}));

    auto* random = app.add_subcommand("random", "Write a seeded random channel file");
    random->add_option("--kind", o.kind, "unitary or general")->check(CLI::IsMember({"unitary", "general"}));
    random->add_option("--n", o.n, "Input dimension")->check(CLI::PositiveNumber);
    random->add_option("--m", o.m, "Output dimension (general only)")->check(CLI::PositiveNumber);
    random->add_option("--l", o.l, "Kraus count")->check(CLI::PositiveNumber);
    random->add_option("--seed", o.seed, "Seed, decimal or 0x-hex");
    random->add_option("--out", o.out_path, "Output path")->required();

    auto* scan = app.add_subcommand("scan", "Sample random unitary channels into CSV");
    scan->add_option("--kind", o.kind, "unitary")->check(CLI::IsMember({"unitary"}));
    scan->add_option("--n", o.n, "Dimension")->check(CLI::PositiveNumber);
    scan->add_option("--l", o.l, "Kraus count")->check(CLI::PositiveNumber);
    scan->add_option("--count", o.count, "Samples");
    scan->add_option("--seed", o.seed, "Seed, decimal or 0x-hex");
    scan->add_option("--p", o.p, "Tensor power")->check(CLI::PositiveNumber);
    scan->add_option("--starts", o.starts, "Random starts per sample")->check(CLI::PositiveNumber);
    scan->add_option("--max-iters", o.max_iters, "Iterations per start")->check(CLI::PositiveNumber);
    scan->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    scan->add_option("--dim-cap", o.dim_cap, "Cap on n^p")->check(CLI::PositiveNumber);
    scan->add_option("--csv", o.csv_path, "Output CSV path (stdout when omitted)");

    std::vector<std::string> storage = args;
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseError;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out, err);
        if (inv->parsed()) return cmd_invariants(o, out);
        if (minent->parsed()) return cmd_minent(o, out);
        if (random->parsed()) return cmd_random(o, out);
        if (scan->parsed()) return cmd_scan(o, out);
    } catch (const NotAChannelError& e) {
        err << "error: " << e.what() << "\n";
        out << json{{"valid", false}, {"residual", e.residual()}, {"error", e.what()}}.dump(2) << "\n";
        return kValidationFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kNumericalFailure;
    }
    return kParseError;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

} // namespace qchan::cli
