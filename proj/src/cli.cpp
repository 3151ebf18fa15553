#include "bis/cli.hpp"

#include "bis/baselines.hpp"
#include "bis/dirichlet.hpp"
#include "bis/engine.hpp"
#include "bis/error.hpp"
#include "bis/estimators.hpp"
#include "bis/io.hpp"
#include "bis/pbox.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace bis::cli {

using nlohmann::ordered_json;

namespace {

// Thrown for problems with the command line or input files.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json extended_json(ExtendedReal x) {
    if (std::isinf(x)) return io::format_extended(x);
    return x;
}

BoundingInterval parse_bounds(const std::vector<std::string>& tokens) {
    if (tokens.size() != 2) throw UsageError("--bounds takes exactly two values: LO HI");
    return BoundingInterval(io::parse_extended(tokens[0]), io::parse_extended(tokens[1]));
}

ordered_json bounds_json(const BoundingInterval& b) {
    return ordered_json::array({io::format_extended(b.lo), io::format_extended(b.hi)});
}

ordered_json manifest(std::string command) {
    ordered_json m;
    m["command"] = std::move(command);
    m["version"] = kVersion;
    return m;
}

void write_csv_manifest(std::ostream& os, const ordered_json& m) {
    os << "# manifest: " << m.dump() << '\n';
}

// Runs `emit` against --out when given, otherwise against stdout.
void with_output(const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + path + "'");
    emit(file);
    if (!file) throw UsageError("failed writing '" + path + "'");
}

std::optional<std::string> optional_column(const std::string& column) {
    if (column.empty()) return std::nullopt;
    return column;
}

// ---------------------------------------------------------------- infer

struct InferOptions {
    std::string input;
    std::string column;
    std::vector<std::string> bounds;
    std::string param = "median";
    double credibility = 0.9;
    std::size_t resamples = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string qbox_csv;
    std::string out;
};

void cmd_infer(const InferOptions& o, std::ostream& out) {
    const BoundingInterval interval = parse_bounds(o.bounds);
    const std::vector<double> data = io::read_observations_file(o.input, optional_column(o.column));

    BisConfig cfg;
    cfg.functional = Functional::parse(o.param);
    cfg.credibility = o.credibility;
    cfg.n_resample = o.resamples > 0 ? o.resamples : default_n_resample(o.credibility);
    cfg.seed = o.seed;
    cfg.threads = o.threads;

    ordered_json m = manifest("infer");
    m["input"] = o.input;
    m["column"] = o.column.empty() ? ordered_json() : ordered_json(o.column);
    m["bounds"] = bounds_json(interval);
    m["functional"] = cfg.functional.to_string();
    m["credibility"] = cfg.credibility;
    m["n_resample"] = cfg.n_resample;
    m["seed"] = cfg.seed;

    const QSamples qs = bis_run(data, interval, cfg);
    const IntervalEstimate est = interval_estimate(qs, cfg.credibility);

    ordered_json result;
    result["interval"] = {{"lo", extended_json(est.lo)}, {"hi", extended_json(est.hi)}};
    result["unbounded"] = est.unbounded();
    result["functional"] = cfg.functional.to_string();
    result["credibility"] = cfg.credibility;
    result["n_resample"] = cfg.n_resample;
    result["seed"] = cfg.seed;
    result["n_obs"] = data.size();
    ordered_json warnings = ordered_json::array();
    if (qs.low_tail_resolution) {
        warnings.push_back("n_resample below " + std::to_string(default_n_resample(cfg.credibility)) +
                           "; tail quantiles are poorly resolved");
    }
    result["warnings"] = std::move(warnings);
    result["manifest"] = m;

    if (!o.qbox_csv.empty()) {
        with_output(o.qbox_csv, out, [&](std::ostream& os) {
            write_csv_manifest(os, m);
            os << "value,F_lower,F_upper\n";
            for (const QBoxRow& row : q_probability_box(qs)) {
                os << io::format_extended(row.value) << ',' << io::format_extended(row.f_lower)
                   << ',' << io::format_extended(row.f_upper) << '\n';
            }
        });
    }
    with_output(o.out, out, [&](std::ostream& os) { os << result.dump(2) << '\n'; });
}

// ---------------------------------------------------------------- pbox

struct PboxOptions {
    std::string input;
    std::string column;
    std::vector<std::string> bounds;
    std::size_t realisations = 0;
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_pbox(const PboxOptions& o, std::ostream& out) {
    const BoundingInterval interval = parse_bounds(o.bounds);
    const std::vector<double> data = io::read_observations_file(o.input, optional_column(o.column));
    const ExtendedOrderStats stats = make_extended_order_stats(data, interval);
    const ProbabilityBox expected = expected_pbox(stats);

    const MergedPoints merged = merge_duplicates(stats);
    std::vector<ProbabilityBox> draws;
    draws.reserve(o.realisations);
    for (std::size_t k = 0; k < o.realisations; ++k) {
        Rng rng = Rng::substream(o.seed, k);
        draws.push_back(sample_realization(merged.points, merged.params, rng).box);
    }

    ordered_json m = manifest("pbox");
    m["input"] = o.input;
    m["column"] = o.column.empty() ? ordered_json() : ordered_json(o.column);
    m["bounds"] = bounds_json(interval);
    m["realisations"] = o.realisations;
    m["seed"] = o.seed;

    with_output(o.out, out, [&](std::ostream& os) {
        write_csv_manifest(os, m);
        os << "x,F_lower,F_upper";
        for (std::size_t k = 1; k <= draws.size(); ++k) os << ",lower_" << k << ",upper_" << k;
        os << '\n';
        for (ExtendedReal x : expected.breakpoints()) {
            os << io::format_extended(x) << ',' << io::format_extended(expected.lower().cdf(x))
               << ',' << io::format_extended(expected.upper().cdf(x));
            for (const ProbabilityBox& box : draws) {
                os << ',' << io::format_extended(box.lower().cdf(x)) << ','
                   << io::format_extended(box.upper().cdf(x));
            }
            os << '\n';
        }
    });
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
    std::string preset = "table3";
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::size_t resamples = 2000;
    std::vector<std::string> methods{"student_t", "bootstrap", "bis"};
    std::string format = "csv";
    std::size_t threads = 1;
    std::size_t n_sample = 0;
    double credibility = 0.0;
    std::vector<std::string> bounds;
    std::string param;
    std::vector<double> lognormal;
    std::vector<double> atom;
    std::string true_q;
    std::string out;
};

CoverageSetup build_setup(const CompareOptions& o) {
    std::optional<CoverageSetup> setup;
    if (o.preset == "table3" || o.preset == "truncated-lognormal") {
        setup = preset_truncated_lognormal();
    } else if (o.preset == "table4" || o.preset == "extreme-events") {
        setup = preset_extreme_events();
    } else if (o.preset != "custom") {
        throw UsageError("unknown preset '" + o.preset + "'");
    }

    if (!o.lognormal.empty()) {
        if (o.true_q.empty()) throw UsageError("--lognormal needs --true-q");
        Generator gen = Generator::truncated_lognormal(o.lognormal[0], o.lognormal[1],
                                                       o.lognormal[2], o.lognormal[3]);
        if (!o.atom.empty()) gen = Generator::extreme_mixture(std::move(gen), o.atom[0], o.atom[1]);
        setup = CoverageSetup{std::move(gen), 0.0};
    } else if (!o.atom.empty()) {
        throw UsageError("--atom requires --lognormal");
    }
    if (!setup) throw UsageError("preset 'custom' requires --lognormal and --true-q");

    if (!o.true_q.empty()) setup->true_q = io::parse_extended(o.true_q);
    if (o.n_sample > 0) setup->n_sample = o.n_sample;
    if (o.credibility != 0.0) setup->credibility = o.credibility;
    if (!o.bounds.empty()) setup->interval = parse_bounds(o.bounds);
    if (!o.param.empty()) setup->functional = Functional::parse(o.param);
    setup->n_trials = o.trials;
    setup->n_resample = o.resamples;
    setup->seed = o.seed;
    setup->threads = o.threads;
    return *setup;
}

void cmd_compare(const CompareOptions& o, std::ostream& out) {
    if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
    const CoverageSetup setup = build_setup(o);
    std::vector<Method> methods;
    for (const auto& name : o.methods) methods.push_back(parse_method(name));

    ordered_json m = manifest("compare");
    m["preset"] = o.preset;
    m["generator"] = setup.generator.describe();
    m["true_q"] = setup.true_q;
    m["functional"] = setup.functional.to_string();
    m["n_sample"] = setup.n_sample;
    m["credibility"] = setup.credibility;
    m["bounds"] = bounds_json(setup.interval);
    m["n_trials"] = setup.n_trials;
    m["n_resample"] = setup.n_resample;
    m["seed"] = setup.seed;

    std::vector<CoverageReport> reports;
    for (Method method : methods) reports.push_back(coverage_experiment(setup, method));

    with_output(o.out, out, [&](std::ostream& os) {
        if (o.format == "json") {
            ordered_json rows = ordered_json::array();
            for (const auto& r : reports) {
                rows.push_back({{"method", method_name(r.method)},
                                {"credibility", r.credibility},
                                {"n_trials", r.n_trials},
                                {"hit_rate", r.hit_rate},
                                {"median_lo", extended_json(r.median_lo)},
                                {"median_hi", extended_json(r.median_hi)}});
            }
            ordered_json doc;
            doc["reports"] = std::move(rows);
            doc["manifest"] = m;
            os << doc.dump(2) << '\n';
            return;
        }
        write_csv_manifest(os, m);
        os << "method,credibility,n_trials,hit_rate,median_lo,median_hi\n";
        for (const auto& r : reports) {
            os << method_name(r.method) << ',' << io::format_extended(r.credibility) << ','
               << r.n_trials << ',' << io::format_extended(r.hit_rate) << ','
               << io::format_extended(r.median_lo) << ',' << io::format_extended(r.median_hi)
               << '\n';
        }
    });
}

// ---------------------------------------------------------------- udp-sample

struct UdpOptions {
    double alpha = 0.0;
    std::size_t cells = 200;
    std::size_t count = 1;
    std::string method = "grid";
    std::size_t terms = 1000;
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_udp_sample(const UdpOptions& o, std::ostream& out) {
    if (o.method != "grid" && o.method != "stick") throw UsageError("--method must be grid or stick");
    if (o.cells == 0) throw UsageError("--cells must be at least 1");
    std::vector<WeightedStepCdf> draws;
    draws.reserve(o.count);
    for (std::size_t k = 0; k < o.count; ++k) {
        Rng rng = Rng::substream(o.seed, k);
        draws.push_back(o.method == "grid" ? sample_unit_dp_grid(o.alpha, o.cells, rng)
                                           : sample_unit_dp_stick(o.alpha, o.terms, rng));
    }

    ordered_json m = manifest("udp-sample");
    m["alpha"] = o.alpha;
    m["method"] = o.method;
    m["cells"] = o.cells;
    if (o.method == "stick") m["terms"] = o.terms;
    m["count"] = o.count;
    m["seed"] = o.seed;

    with_output(o.out, out, [&](std::ostream& os) {
        write_csv_manifest(os, m);
        os << 'x';
        for (std::size_t k = 1; k <= draws.size(); ++k) os << ",F_" << k;
        os << '\n';
        const auto n = static_cast<double>(o.cells);
        for (std::size_t i = 1; i <= o.cells; ++i) {
            const double x = static_cast<double>(i) / n;
            os << io::format_extended(x);
            for (const auto& d : draws) os << ',' << io::format_extended(d.cdf(x));
            os << '\n';
        }
    });
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Robust nonparametric interval estimates by Bayesian interval sampling", "bis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    InferOptions infer;
    auto* sub_infer = app.add_subcommand("infer", "Credible interval for a population parameter");
    sub_infer->add_option("input", infer.input, "Observation file")->required();
    sub_infer->add_option("--column", infer.column, "CSV column holding the observations");
    sub_infer->add_option("--bounds", infer.bounds, "Bounding interval LO HI (inf allowed)")
        ->expected(2)->required()->delimiter(',');
    sub_infer->add_option("--param", infer.param,
                          "mean | median | quantile:p | trunc-mean:p | cvar:p")
        ->capture_default_str();
    sub_infer->add_option("--credibility", infer.credibility)->capture_default_str();
    sub_infer->add_option("--resamples", infer.resamples, "Default: ceil(100 / (1 - c))");
    sub_infer->add_option("--seed", infer.seed)->capture_default_str();
    sub_infer->add_option("--threads", infer.threads)->capture_default_str()->check(CLI::PositiveNumber);
    sub_infer->add_option("--qbox-csv", infer.qbox_csv, "Write the parameter p-box ECDFs here");
    sub_infer->add_option("--out", infer.out, "Write the JSON result here instead of stdout");

    PboxOptions pbox;
    auto* sub_pbox = app.add_subcommand("pbox", "Expected probability box and sampled realisations");
    sub_pbox->add_option("input", pbox.input, "Observation file")->required();
    sub_pbox->add_option("--column", pbox.column);
    sub_pbox->add_option("--bounds", pbox.bounds)->expected(2)->required()->delimiter(',');
    sub_pbox->add_option("--realisations", pbox.realisations)->capture_default_str();
    sub_pbox->add_option("--seed", pbox.seed)->capture_default_str();
    sub_pbox->add_option("--out", pbox.out);

    CompareOptions cmp;
    auto* sub_cmp = app.add_subcommand("compare", "Coverage comparison against baseline methods");
    sub_cmp->add_option("--preset", cmp.preset, "table3 | table4 | custom")->capture_default_str();
    sub_cmp->add_option("--trials", cmp.trials)->capture_default_str()->check(CLI::PositiveNumber);
    sub_cmp->add_option("--seed", cmp.seed)->capture_default_str();
    sub_cmp->add_option("--resamples", cmp.resamples)->capture_default_str()->check(CLI::PositiveNumber);
    sub_cmp->add_option("--methods", cmp.methods, "student_t,bootstrap,bayesian_bootstrap,bis")
        ->delimiter(',');
    sub_cmp->add_option("--format", cmp.format, "csv | json")->capture_default_str();
    sub_cmp->add_option("--threads", cmp.threads)->capture_default_str()->check(CLI::PositiveNumber);
    sub_cmp->add_option("--n-sample", cmp.n_sample, "Observations per trial");
    sub_cmp->add_option("--credibility", cmp.credibility);
    sub_cmp->add_option("--bounds", cmp.bounds, "Bounding interval for bis")->expected(2)->delimiter(',');
    sub_cmp->add_option("--param", cmp.param);
    sub_cmp->add_option("--lognormal", cmp.lognormal, "MU SIGMA LO HI")->expected(4);
    sub_cmp->add_option("--atom", cmp.atom, "VALUE PROB")->expected(2);
    sub_cmp->add_option("--true-q", cmp.true_q, "True parameter value");
    sub_cmp->add_option("--out", cmp.out);

    UdpOptions udp;
    auto* sub_udp = app.add_subcommand("udp-sample", "Realisations of the unit Dirichlet process");
    sub_udp->add_option("--alpha", udp.alpha)->required();
    sub_udp->add_option("--cells", udp.cells)->capture_default_str();
    sub_udp->add_option("--count", udp.count)->capture_default_str();
    sub_udp->add_option("--method", udp.method, "grid | stick")->capture_default_str();
    sub_udp->add_option("--terms", udp.terms, "Stick-breaking truncation depth")->capture_default_str();
    sub_udp->add_option("--seed", udp.seed)->capture_default_str();
    sub_udp->add_option("--out", udp.out);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*sub_infer) cmd_infer(infer, out);
        else if (*sub_pbox) cmd_pbox(pbox, out);
        else if (*sub_cmp) cmd_compare(cmp, out);
        else if (*sub_udp) cmd_udp_sample(udp, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::IndeterminateSum ? kNumericFailure : kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    }
    return kSuccess;
}

} // namespace bis::cli
