#include "collatz/cli.hpp"

#include "collatz/dynamics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <thread>

namespace collatz::cli {

namespace {

using json = nlohmann::ordered_json;

json envelope(const std::string& command, json inputs, json result) {
    return json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"result", std::move(result)}};
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        if constexpr (std::is_same_v<T, BigInt>) {
            out += to_decimal(xs[i]);
        } else {
            out += std::to_string(xs[i]);
        }
    }
    return out;
}

unsigned worker_count() { return std::clamp(std::thread::hardware_concurrency(), 1U, 8U); }

BigInt parse_odd_positive(const std::string& text) {
    const BigInt m = parse_decimal(text);
    if (m <= 0) {
        throw ValidationError("m must be positive");
    }
    if (!is_odd(m)) {
        throw ValidationError("m must be odd");
    }
    return m;
}

int cmd_verify(const std::string& m_text, const std::string& pattern_text, bool json_out, std::ostream& out) {
    const BigInt m = parse_odd_positive(m_text);
    const Pattern pattern = Pattern::parse(pattern_text);
    const auto check = verify_pattern(DynamicsParams::collatz_map(), m, pattern);
    if (json_out) {
        json result{{"ok", check.ok}, {"failure_index", nullptr}};
        if (check.failure_index) {
            result["failure_index"] = *check.failure_index;
        }
        out << envelope("verify", {{"m", to_decimal(m)}, {"pattern", pattern.runs()}}, result).dump() << '\n';
    } else {
        out << "m: " << m << '\n' << "pattern: " << pattern.to_string() << '\n';
        out << "ok: " << (check.ok ? "true" : "false") << '\n';
        if (check.failure_index) {
            out << "failure_index: " << *check.failure_index << '\n';
        }
    }
    return check.ok ? kSuccess : kPatternFalse;
}

int cmd_trace(const std::string& m_text, std::size_t steps, const std::string& p_text, unsigned long ell,
              const std::string& r_text, bool json_out, std::ostream& out) {
    const DynamicsParams params(parse_decimal(p_text), ell, parse_decimal(r_text));
    const BigInt m = parse_decimal(m_text);
    const auto t = trajectory(params, m, steps);
    const auto rle = run_lengths(t);
    const bool early_stop = t.values.size() - 1 < steps;
    if (json_out) {
        json inputs{{"m", to_decimal(m)},
                    {"steps", steps},
                    {"p", to_decimal(params.p())},
                    {"ell", params.ell()},
                    {"r", to_decimal(params.r())}};
        json result{{"values", to_decimal(t.values)},
                    {"exponents", t.exponents},
                    {"early_stop", early_stop},
                    {"reached_fixed_point", t.reached_fixed_point},
                    {"primality_trusted", params.primality_trusted()},
                    {"pattern",
                     {{"leading", to_string(rle.leading)}, {"runs", rle.runs}, {"truncated", rle.truncated}}}};
        out << envelope("trace", inputs, result).dump() << '\n';
    } else {
        out << "values: " << join(t.values) << '\n';
        out << "exponents: " << join(t.exponents) << '\n';
        out << "early_stop: " << (early_stop ? "true" : "false") << '\n';
        out << "reached_fixed_point: " << (t.reached_fixed_point ? "true" : "false") << '\n';
        out << "leading: " << to_string(rle.leading) << '\n';
        out << "runs: " << join(rle.runs) << '\n';
        out << "truncated: " << (rle.truncated ? "true" : "false") << '\n';
    }
    return kSuccess;
}

int cmd_minimal(const std::string& pattern_text, std::uint64_t bound, bool json_out, std::ostream& out) {
    const Pattern pattern = Pattern::parse(pattern_text);
    if (bound < 1) {
        throw ValidationError("bound must be >= 1");
    }
    const auto hit = minimal_witness(pattern, bound, worker_count());
    if (json_out) {
        json result{{"m", hit ? json(std::to_string(*hit)) : json(nullptr)}};
        out << envelope("minimal", {{"pattern", pattern.runs()}, {"bound", bound}}, result).dump() << '\n';
    } else {
        out << "m: " << (hit ? std::to_string(*hit) : std::string("none")) << '\n';
    }
    return kSuccess;
}

int cmd_scan(std::uint64_t max_m, std::size_t steps, bool json_out, std::ostream& out) {
    if (max_m < 1) {
        throw ValidationError("--max-m must be >= 1");
    }
    if (steps < 1) {
        throw ValidationError("--steps must be >= 1");
    }
    const auto hist = scan_leading_runs(max_m, steps, worker_count());
    const std::uint64_t odd_count = max_m / 2 + max_m % 2;
    if (json_out) {
        json rows = json::array();
        for (const auto& [key, count] : hist) {
            rows.push_back({{"direction", to_string(key.first)}, {"first_run", key.second}, {"count", count}});
        }
        json result{{"odd_count", odd_count}, {"histogram", rows}};
        out << envelope("scan", {{"max_m", max_m}, {"steps", steps}}, result).dump() << '\n';
    } else {
        out << "odd_count: " << odd_count << '\n';
        for (const auto& [key, count] : hist) {
            out << to_string(key.first) << ' ' << key.second << ": " << count << '\n';
        }
    }
    return kSuccess;
}

}  // namespace

int render_forge(const Witness& witness, bool json_out, std::ostream& out) {
    if (json_out) {
        json result{{"m", to_decimal(witness.m)},
                    {"w", to_decimal(witness.w)},
                    {"boundaries", nullptr},
                    {"verified", witness.verified},
                    {"certificate", nullptr}};
        if (witness.verified) {
            result["boundaries"] = to_decimal(segment_boundaries(witness));
        }
        if (witness.certificate) {
            const auto kernel = kernel_primitive(build_system(witness.pattern));
            result["certificate"] = {{"particular", to_decimal(witness.certificate->particular)},
                                     {"kernel", to_decimal(kernel.entries)},
                                     {"shift", to_decimal(witness.certificate->shift)},
                                     {"lifted", to_decimal(witness.certificate->lifted)}};
        }
        out << envelope("forge", {{"pattern", witness.pattern.runs()}}, result).dump() << '\n';
    } else {
        out << "pattern: " << witness.pattern.to_string() << '\n';
        out << "m: " << witness.m << '\n';
        out << "w: " << join(witness.w) << '\n';
        if (witness.verified) {
            out << "boundaries: " << join(segment_boundaries(witness)) << '\n';
        }
        out << "verified: " << (witness.verified ? "true" : "false") << '\n';
    }
    return witness.verified ? kSuccess : kInternalFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Forge and check Collatz increasing-decreasing pattern witnesses", "collatz-forge"};
    app.require_subcommand(1);

    bool json_out = false;
    std::string pattern_text;
    std::string m_text;

    auto* forge_cmd = app.add_subcommand("forge", "Construct an odd m realizing a pattern");
    forge_cmd->add_option("pattern", pattern_text, "Comma-separated run lengths, e.g. 1,2,3")->required();
    forge_cmd->add_flag("--json", json_out, "Emit JSON");

    auto* verify_cmd = app.add_subcommand("verify", "Check that m realizes a pattern");
    verify_cmd->add_option("m", m_text, "Odd positive integer")->required();
    verify_cmd->add_option("pattern", pattern_text, "Comma-separated run lengths")->required();
    verify_cmd->add_flag("--json", json_out, "Emit JSON");

    std::size_t steps = 100;
    std::string p_text = "2";
    std::string r_text = "1";
    unsigned long ell = 2;
    auto* trace_cmd = app.add_subcommand("trace", "Print a trajectory of S_{q,r} (Collatz by default)");
    trace_cmd->add_option("m", m_text, "Starting value")->required();
    trace_cmd->add_option("--steps", steps, "Step budget")->capture_default_str();
    trace_cmd->add_option("--p", p_text, "Prime p")->capture_default_str();
    trace_cmd->add_option("--ell", ell, "Exponent, q = p^ell")->capture_default_str();
    trace_cmd->add_option("--r", r_text, "Offset r, not divisible by p")->capture_default_str();
    trace_cmd->add_flag("--json", json_out, "Emit JSON");

    std::uint64_t bound = 1000000;
    auto* minimal_cmd = app.add_subcommand("minimal", "Least odd m <= bound realizing a pattern");
    minimal_cmd->add_option("pattern", pattern_text, "Comma-separated run lengths")->required();
    minimal_cmd->add_option("--bound", bound, "Search bound")->capture_default_str();
    minimal_cmd->add_flag("--json", json_out, "Emit JSON");

    std::uint64_t max_m = 0;
    std::size_t scan_steps = 0;
    auto* scan_cmd = app.add_subcommand("scan", "Histogram of leading runs over odd m <= max-m");
    scan_cmd->add_option("--max-m", max_m, "Largest m scanned")->required();
    scan_cmd->add_option("--steps", scan_steps, "Step budget per m")->required();
    scan_cmd->add_flag("--json", json_out, "Emit JSON");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (forge_cmd->parsed()) {
            const Pattern pattern = Pattern::parse(pattern_text);
            Witness witness = assemble_witness(pattern);
            witness.verified = verify_pattern(DynamicsParams::collatz_map(), witness.m, pattern).ok;
            const int code = render_forge(witness, json_out, out);
            if (code != kSuccess) {
                err << "error: internal verification failed for pattern " << pattern.to_string() << '\n';
            }
            return code;
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(m_text, pattern_text, json_out, out);
        }
        if (trace_cmd->parsed()) {
            return cmd_trace(m_text, steps, p_text, ell, r_text, json_out, out);
        }
        if (minimal_cmd->parsed()) {
            return cmd_minimal(pattern_text, bound, json_out, out);
        }
        if (scan_cmd->parsed()) {
            return cmd_scan(max_m, scan_steps, json_out, out);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalFailure;
    }
    return kUsage;
}

}  // namespace collatz::cli
