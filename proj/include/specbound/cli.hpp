#pragma once

// Command-line front end. Everything lives here so tests can drive the
// subcommands in-process; tools/specbound.cpp only forwards argv.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specbound/bounds.hpp"
#include "specbound/errors.hpp"
#include "specbound/io.hpp"
#include "specbound/kernel.hpp"
#include "specbound/matrix.hpp"
#include "specbound/oracle.hpp"

namespace specbound::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitNoConvergence = 3,
    kExitInconsistent = 4,
};

struct MatrixFileSource {
    std::filesystem::path path;
    MatrixFormat format = MatrixFormat::Csv;
};

struct KernelSource {
    KernelSpec spec;
};

struct ShiftSource {
    ShiftSpec spec;
};

using Source = std::variant<MatrixFileSource, KernelSource, ShiftSource>;

inline constexpr int kCliDefaultKMax = 12;
inline constexpr int kCliMaxKMax = 30;

struct RunConfig {
    Source source;
    int k_max = kCliDefaultKMax;
    double gap_tol = kDefaultGapTol;
    double eig_tol = kDefaultEigTol;
    OutputFormat format = OutputFormat::Table;
    // All library kernels use a fixed summation order, so output is
    // reproducible whether or not this is set.
    bool deterministic = true;
    /// oracle only: check this saved JSON report instead of recomputing one.
    std::optional<std::filesystem::path> report;
};

inline void validate(const RunConfig& c) {
    if (c.k_max < 0 || c.k_max > kCliMaxKMax) {
        throw InvalidArgument("--kmax must lie in [0, " + std::to_string(kCliMaxKMax) + "]");
    }
    if (!(c.gap_tol > 0.0)) {
        throw InvalidTolerance("--gap-tol must be > 0");
    }
    if (!(c.eig_tol > 0.0)) {
        throw InvalidTolerance("--eig-tol must be > 0");
    }
}

inline NonnegMatrix load_matrix(const Source& source) {
    return std::visit(
        [](const auto& s) -> NonnegMatrix {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, MatrixFileSource>) {
                return parse_matrix_file(s.path, s.format);
            } else if constexpr (std::is_same_v<S, KernelSource>) {
                return discretize(s.spec);
            } else {
                return build_shift(s.spec);
            }
        },
        source);
}

inline BoundsReport compute_report(const RunConfig& c, const NonnegMatrix& a) {
    if (const auto* shift = std::get_if<ShiftSource>(&c.source)) {
        return sandwich(a, std::min(c.k_max, truncation_horizon(shift->spec)), c.gap_tol,
                        c.eig_tol);
    }
    return sandwich(a, c.k_max, c.gap_tol, c.eig_tol);
}

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const NumericalError& e) {
        err << "specbound: error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const InputError& e) {
        err << "specbound: error: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace detail

/// Computes the sandwich report for the configured source and prints it.
/// Exit 0 whether or not the gap closed.
inline int run_bounds(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        validate(c);
        const auto a = load_matrix(c.source);
        write_report(out, compute_report(c, a), c.format);
        return int{kExitOk};
    });
}

/// Cross-checks the sandwich interval against the Gelfand oracle and, for
/// symmetric inputs with n <= 64, the Jacobi maximum. Exit 4 when an oracle
/// value falls outside the interval.
inline int run_oracle(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        validate(c);
        const auto a = load_matrix(c.source);

        BoundsReport report;
        if (c.report) {
            std::ifstream in(*c.report);
            if (!in) {
                throw InputError("cannot open '" + c.report->string() + "'");
            }
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw InputError(std::string("malformed report: ") + e.what());
            }
            report = report_from_json(j);
            if (report.n != a.size()) {
                throw InputError("report dimension " + std::to_string(report.n) +
                                 " does not match matrix dimension " + std::to_string(a.size()));
            }
        } else {
            report = compute_report(c, a);
        }

        // Finite shift sections only reproduce the l^2 values to the
        // truncation tolerance, and their oracle ladder stops at the horizon.
        const auto* shift = std::get_if<ShiftSource>(&c.source);
        const auto [lo, hi] = report.interval;
        const double slack =
            shift ? kShiftTruncationTol : 1e-8 * std::max(1.0, std::abs(hi));
        const auto gelfand = shift ? gelfand_radius(a, truncation_horizon(shift->spec),
                                                    kShiftTruncationTol)
                                   : gelfand_radius(a);

        std::optional<OracleResult> jacobi;
        if (a.size() <= kJacobiMaxDim && a.is_symmetric()) {
            jacobi = jacobi_radius(SymmetricNonnegMatrix::from_symmetric(a));
        }

        auto inside = [&](double v) { return v >= lo - slack && v <= hi + slack; };
        const bool gelfand_ok = inside(gelfand.value);
        const bool jacobi_ok = !jacobi || inside(jacobi->value);

        if (c.format == OutputFormat::Json) {
            nlohmann::json j = {
                {"n", a.size()},
                {"interval", {lo, hi}},
                {"gelfand", {{"value", gelfand.value},
                             {"levels", gelfand.iterations},
                             {"consistent", gelfand_ok}}},
                {"consistent", gelfand_ok && jacobi_ok},
            };
            if (jacobi) {
                j["jacobi"] = {{"value", jacobi->value},
                               {"sweeps", jacobi->iterations},
                               {"consistent", jacobi_ok}};
            }
            out << j.dump() << '\n';
        } else {
            const int digits = c.format == OutputFormat::Table ? 9 : 17;
            out << "interval: [" << format_real(lo, digits) << ", " << format_real(hi, digits)
                << "]\n";
            out << "gelfand: " << format_real(gelfand.value, digits) << " (levels "
                << gelfand.iterations << ") " << (gelfand_ok ? "ok" : "INCONSISTENT") << '\n';
            if (jacobi) {
                out << "jacobi: " << format_real(jacobi->value, digits) << " (sweeps "
                    << jacobi->iterations << ") " << (jacobi_ok ? "ok" : "INCONSISTENT")
                    << '\n';
            }
        }

        if (!gelfand_ok || !jacobi_ok) {
            err << "specbound: INCONSISTENT: oracle value outside interval [" << format_real(lo)
                << ", " << format_real(hi) << "]\n";
            return int{kExitInconsistent};
        }
        return int{kExitOk};
    });
}

namespace detail {

struct CommonOptions {
    int k_max = kCliDefaultKMax;
    double gap_tol = kDefaultGapTol;
    double eig_tol = kDefaultEigTol;
    OutputFormat format = OutputFormat::Table;
    bool deterministic = true;
};

inline void add_common(CLI::App& sub, CommonOptions& o) {
    static const std::map<std::string, OutputFormat> formats{
        {"table", OutputFormat::Table}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};
    sub.add_option("--kmax", o.k_max, "Highest squaring level k (A^(2^k))")
        ->check(CLI::Range(0, kCliMaxKMax))
        ->capture_default_str();
    sub.add_option("--gap-tol", o.gap_tol, "Stop once the relative interval width is below this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub.add_option("--eig-tol", o.eig_tol, "Relative tolerance of the Perron root iteration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub.add_option("--format", o.format, "Output format: table, json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->capture_default_str();
    sub.add_flag("--deterministic,!--no-deterministic", o.deterministic,
                 "Fixed-order reductions (always on in this build)");
}

struct FileOptions {
    std::string csv;
    std::string mtx;
};

inline CLI::Option_group* add_file_sources(CLI::App& sub, FileOptions& f) {
    auto* g = sub.add_option_group("matrix file");
    g->add_option("--csv", f.csv, "Matrix as CSV, one row per line")->check(CLI::ExistingFile);
    g->add_option("--mtx", f.mtx, "Matrix Market file (array or coordinate, real general)")
        ->check(CLI::ExistingFile);
    return g;
}

inline std::optional<Source> file_source(const FileOptions& f) {
    if (!f.csv.empty()) {
        return MatrixFileSource{f.csv, MatrixFormat::Csv};
    }
    if (!f.mtx.empty()) {
        return MatrixFileSource{f.mtx, detect_market_format(f.mtx)};
    }
    return std::nullopt;
}

inline RunConfig make_config(Source source, const CommonOptions& o) {
    RunConfig c;
    c.source = std::move(source);
    c.k_max = o.k_max;
    c.gap_tol = o.gap_tol;
    c.eig_tol = o.eig_tol;
    c.format = o.format;
    c.deterministic = o.deterministic;
    return c;
}

}  // namespace detail

/// Parses arguments (without the program name) and runs one subcommand.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monotone lower and upper bounds for the spectral radius of nonnegative "
                 "matrices and positive kernel operators",
                 "specbound"};
    app.require_subcommand(1);

    detail::CommonOptions common;

    auto* bounds = app.add_subcommand("bounds", "Bound sequences for a matrix read from a file");
    detail::FileOptions bounds_files;
    detail::add_file_sources(*bounds, bounds_files)->require_option(1);
    detail::add_common(*bounds, common);

    auto* kernel = app.add_subcommand("kernel", "Bound sequences for a discretized kernel on [0,1]^2");
    std::string kernel_name;
    std::string kernel_table;
    std::size_t grid = 1000;
    auto* kernel_src = kernel->add_option_group("kernel");
    kernel_src->add_option("--name", kernel_name, "Builtin kernel: min or min-twisted:<alpha>");
    kernel_src->add_option("--table", kernel_table, "CSV of samples k(x_i, x_j) on the midpoint grid")
        ->check(CLI::ExistingFile);
    kernel_src->require_option(1);
    kernel->add_option("--grid", grid, "Grid size n of the midpoint rule")->capture_default_str();
    detail::add_common(*kernel, common);

    auto* shift = app.add_subcommand("shift", "Bound sequences for a truncated weighted shift");
    std::string shift_name;
    shift->add_option("--name", shift_name, "Shift family as shift:p=<p>,n=<n>")->required();
    detail::add_common(*shift, common);

    auto* oracle = app.add_subcommand("oracle", "Check the bound interval against reference values");
    detail::FileOptions oracle_files;
    std::string oracle_kernel;
    std::string oracle_shift;
    std::string report_path;
    auto* oracle_src = detail::add_file_sources(*oracle, oracle_files);
    oracle_src->add_option("--kernel", oracle_kernel, "Builtin kernel name (with --grid)");
    oracle_src->add_option("--shift", oracle_shift, "Shift family as shift:p=<p>,n=<n>");
    oracle_src->require_option(1);
    oracle->add_option("--grid", grid, "Grid size for --kernel")->capture_default_str();
    oracle->add_option("--report", report_path, "Saved JSON report to check instead of recomputing")
        ->check(CLI::ExistingFile);
    detail::add_common(*oracle, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "specbound: error: " << e.what() << '\n';
        return kExitInputError;
    }

    return detail::guarded(err, [&] {
        if (bounds->parsed()) {
            return run_bounds(detail::make_config(*detail::file_source(bounds_files), common), out,
                              err);
        }
        if (kernel->parsed()) {
            const auto spec = kernel_name.empty()
                                  ? KernelSpec::table(parse_matrix_file(kernel_table, MatrixFormat::Csv))
                                  : parse_kernel_name(kernel_name, grid);
            return run_bounds(detail::make_config(KernelSource{spec}, common), out, err);
        }
        if (shift->parsed()) {
            return run_bounds(detail::make_config(ShiftSource{parse_shift_name(shift_name)}, common),
                              out, err);
        }
        Source src = MatrixFileSource{};
        if (auto f = detail::file_source(oracle_files)) {
            src = *f;
        } else if (!oracle_kernel.empty()) {
            src = KernelSource{parse_kernel_name(oracle_kernel, grid)};
        } else {
            src = ShiftSource{parse_shift_name(oracle_shift)};
        }
        auto cfg = detail::make_config(std::move(src), common);
        if (!report_path.empty()) {
            cfg.report = report_path;
        }
        return run_oracle(cfg, out, err);
    });
}

}  // namespace specbound::cli
