// Command-line front end: certificates, initialization parameters, dataset
// generation, stability experiments, and region scans.
//
// Exit codes: 0 success (certify: stable), 1 usage or runtime error,
// 2 certificate unstable, 3 assumption violation.

#include "kmstab/certify.hpp"
#include "kmstab/init_params.hpp"
#include "kmstab/init_schemes.hpp"
#include "kmstab/io.hpp"
#include "kmstab/models.hpp"
#include "kmstab/population.hpp"
#include "kmstab/rng.hpp"
#include "kmstab/stability.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kmstab;

namespace {

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string default_outdir() {
    if (const char* env = std::getenv("KMSTAB_OUTDIR")) return env;
    return ".";
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Flat key=value config, one entry per line; '#' starts a comment, a bare key
// means true, quotes around values are stripped.
std::vector<std::string> load_config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto eq = entry.find('=');
        const std::string key = trim(eq == std::string::npos ? entry : entry.substr(0, eq));
        std::string value = eq == std::string::npos ? "true" : trim(entry.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw std::runtime_error("bad config line: " + line);
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

// Expands `--config FILE` into option tokens placed directly after the
// subcommand name, so everything typed on the command line still overrides
// the file (every option keeps only its last value).
void expand_config(std::vector<std::string>& args) {
    if (args.empty() || args[0].empty() || args[0][0] == '-') return;
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string path;
        std::size_t span = 0;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            span = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            span = 1;
        }
        if (span == 0) continue;
        const std::vector<std::string> tokens = load_config_tokens(path);
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                   args.begin() + static_cast<std::ptrdiff_t>(i + span));
        args.insert(args.begin() + 1, tokens.begin(), tokens.end());
        return;
    }
}

fs::path resolve_out(const std::string& outdir, const std::string& explicit_path,
                     const std::string& fallback_name) {
    fs::path p = explicit_path.empty() ? fs::path(outdir) / fallback_name
                                       : fs::path(explicit_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(std::stod(field));
    return out;
}

// "2..7" or "2,3,5".
std::vector<std::size_t> parse_k_range(const std::string& text) {
    std::vector<std::size_t> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const long lo = std::stol(text.substr(0, dots));
        const long hi = std::stol(text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw CLI::ValidationError("--k-range", "bad range " + text);
        for (long k = lo; k <= hi; ++k) out.push_back(static_cast<std::size_t>(k));
        return out;
    }
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(static_cast<std::size_t>(std::stoul(field)));
    if (out.empty()) throw CLI::ValidationError("--k-range", "empty range");
    return out;
}

// "lo:hi:step" inclusive sweep.
std::vector<double> parse_sweep(const std::string& text, const std::string& flag) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ':')) parts.push_back(std::stod(field));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
        throw CLI::ValidationError(flag, "expected lo:hi:step, got " + text);
    std::vector<double> out;
    for (double v = parts[0]; v <= parts[1] + 1e-12; v += parts[2]) out.push_back(v);
    return out;
}

ModelSpec model_from_flags(const std::string& name, const std::string& means_csv,
                           const std::string& weights_csv) {
    if (name != "mixture1d") return model_by_name(name);
    std::vector<double> means = parse_doubles(means_csv);
    std::vector<double> weights = weights_csv.empty()
                                      ? std::vector<double>(means.size(), 1.0 / means.size())
                                      : parse_doubles(weights_csv);
    return mixture1d(std::move(weights), std::move(means));
}

json certificate_json(const Certificate& cert) {
    json checks = json::array();
    for (const auto& c : cert.checks)
        checks.push_back({{"label", c.label}, {"slack", c.slack}, {"holds", c.slack >= 0.0}});
    json region = {{"a", cert.region.a}};
    const char* kind = "square_k2";
    if (cert.region.kind == RegionSpec::Kind::prism_k3) kind = "prism_k3";
    if (cert.region.kind == RegionSpec::Kind::prism_k3_mirrored) kind = "prism_k3_mirrored";
    if (cert.region.kind != RegionSpec::Kind::square_k2) {
        region["b"] = cert.region.b;
        region["eps"] = cert.region.eps;
    }
    return {{"kind", kind},
            {"mode", cert.mode == CertificateMode::corrected ? "corrected" : "as-printed"},
            {"w1", cert.w1},
            {"delta", cert.delta},
            {"region", region},
            {"stable", cert.stable},
            {"min_slack", cert.min_slack()},
            {"checks", checks}};
}

void emit_json(const json& j, const std::string& path) {
    std::cout << j.dump(2) << '\n';
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

struct CertifyArgs {
    bool k2 = false, k3 = false, k3_mirror = false;
    double w1 = 0.0, delta = 0.0, a = 0.0, b = 0.0, eps = 0.0;
    std::string mode = "corrected";
    std::string json_path;
};

int run_certify(const CertifyArgs& args) {
    if (!args.k2 && !args.k3 && !args.k3_mirror)
        throw CLI::ValidationError("certify", "one of --k2, --k3, --k3-mirror is required");
    const CertificateMode mode =
        args.mode == "as-printed" ? CertificateMode::as_printed : CertificateMode::corrected;
    Certificate cert;
    if (args.k2) {
        cert = certify_square_k2(args.w1, args.delta, args.a, mode);
    } else if (args.k3_mirror) {
        cert = certify_prism_k3_mirrored(args.w1, args.delta, args.a, args.b, args.eps, mode);
    } else {
        cert = certify_prism_k3(args.w1, args.delta, args.a, args.b, args.eps, mode);
    }
    emit_json(certificate_json(cert), args.json_path);
    return cert.stable ? 0 : 2;
}

struct InitParamsArgs {
    double wmin = 0.0, delta = 0.0, dmiss = 0.0, tau = 0.015, delta_max = 0.0;
    int K = 2;
    double w1 = 0.0, w2 = 0.0; // optional evaluation point for the impurity bound
    std::string formula = "corrected";
    std::string means_csv, weights_csv;
    std::string json_path;
};

int run_init_params(const InitParamsArgs& args) {
    const InitParams p =
        compute_init_params(args.wmin, args.delta, args.dmiss, args.tau, args.K, args.delta_max);
    const ImpurityFormula formula =
        args.formula == "as-printed" ? ImpurityFormula::as_printed : ImpurityFormula::corrected;

    json j = {{"w_min", p.w_min}, {"delta", p.delta},  {"delta_max", p.delta_max},
              {"d_miss", p.d_miss}, {"tau", p.tau},    {"K", p.K},
              {"L", p.L},          {"p0", p.p0},       {"t", p.t}};

    try {
        const PurityBounds pb =
            (args.w1 > 0.0 && args.w2 > 0.0)
                ? impurity_bound(args.w1, args.w2, p.delta, p.tau, p.p0, p.L, formula)
                : impurity_bound_worst_case(p.w_min, p.K, p.delta, p.tau, p.p0, p.L, 0.005,
                                            formula);
        j["impurity"] = {{"delta_z0", pb.delta_z0}, {"p1", pb.p1},
                         {"delta_impure", pb.delta_impure}, {"w1", pb.w1}, {"w2", pb.w2},
                         {"formula", args.formula}};
    } catch (const std::domain_error& e) {
        j["impurity"] = {{"error", e.what()}};
    }

    const double w_max = 1.0 - (p.K - 1) * p.w_min;
    j["radii"] = {{"R_wmin", pure_radius(p.w_min, p.tau, p.p0)},
                  {"R_wmax", pure_radius(w_max, p.tau, p.p0)}};

    // Mixture for the landing intervals and assumption slacks: explicit means
    // and weights when given, otherwise equal weights at spacing delta.
    std::vector<double> means =
        args.means_csv.empty() ? std::vector<double>() : parse_doubles(args.means_csv);
    if (means.empty())
        for (int k = 0; k < p.K; ++k) means.push_back(k * p.delta);
    std::vector<double> weights =
        args.weights_csv.empty() ? std::vector<double>(means.size(), 1.0 / means.size())
                                 : parse_doubles(args.weights_csv);
    const GaussianMixture1D m(weights, means, 1.0);

    j["landing_halfwidth"] = landing_halfwidth(p);
    json intervals = json::array();
    for (const Interval& iv : landing_intervals(m, p))
        intervals.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
    j["landing_intervals"] = intervals;

    const AssumptionReport rep = check_assumptions(m, p);
    json assumptions = json::array();
    for (const auto& item : rep.items)
        assumptions.push_back({{"label", item.label}, {"slack", item.slack}, {"holds", item.holds}});
    j["assumptions"] = assumptions;
    j["all_assumptions_hold"] = rep.all_hold;

    emit_json(j, args.json_path);
    return rep.all_hold ? 0 : 3;
}

struct DatasetArgs {
    std::string model = "balanced2d";
    std::string means_csv, weights_csv;
    std::size_t n = 100;
    std::string out;
    std::string outdir = default_outdir();
    std::uint64_t seed = 0;
};

int run_dataset(const DatasetArgs& args) {
    const ModelSpec model = model_from_flags(args.model, args.means_csv, args.weights_csv);
    Rng rng(args.seed);
    const Dataset data = generate_dataset(model, args.n, rng);
    const fs::path path = resolve_out(args.outdir, args.out,
                                      model.name + "_n" + std::to_string(args.n) + "_seed" +
                                          std::to_string(args.seed) + ".csv");
    write_dataset_csv_file(path.string(), data);
    std::cout << "wrote " << path.string() << " (" << data.n << " x " << data.d << ")\n";
    return 0;
}

struct ExperimentArgs {
    std::string model = "balanced2d";
    std::string means_csv, weights_csv;
    std::string modes = "randomization,resampling,both";
    std::string init = "pruned";
    std::string k_range = "2..7";
    int reps = 100;
    std::size_t n = 100;
    int restarts = 1;
    std::size_t eval_n = 2000;
    bool normalize = false;
    int max_iter = 200;
    // pruned-init parameters: either the analytic route or explicit L/p0
    double wmin = 0.0, delta = 0.0, dmiss = 0.02, tau = 0.015;
    int L = 0;
    double p0 = 0.0;
    std::string init_points; // deterministic: "x,y;x,y;..."
    std::string out_prefix;
    std::string outdir = default_outdir();
    std::uint64_t seed = 0;
};

InitScheme scheme_from_args(const ExperimentArgs& args, std::size_t dim) {
    InitScheme scheme;
    if (args.init == "uniform") {
        scheme.kind = InitKind::uniform;
    } else if (args.init == "mindiam") {
        scheme.kind = InitKind::min_diam;
    } else if (args.init == "pruned") {
        scheme.kind = InitKind::pruned_min_diam;
        if (args.L > 0 && args.p0 > 0.0) {
            scheme.params.L = args.L;
            scheme.params.p0 = args.p0;
            scheme.params.w_min = args.wmin;
            scheme.params.tau = args.tau;
        } else if (args.wmin > 0.0 && args.delta > 0.0) {
            scheme.params = compute_init_params(args.wmin, args.delta, args.dmiss, args.tau);
        } else {
            throw CLI::ValidationError("--init",
                                       "pruned init needs --L and --p0, or --wmin and --delta");
        }
    } else if (args.init == "deterministic") {
        scheme.kind = InitKind::deterministic;
        Centers pts;
        pts.d = dim;
        std::stringstream ss(args.init_points);
        std::string point;
        while (std::getline(ss, point, ';')) {
            const std::vector<double> coords = parse_doubles(point);
            if (coords.size() != dim)
                throw CLI::ValidationError("--init-points", "point dimension mismatch");
            pts.c.insert(pts.c.end(), coords.begin(), coords.end());
            ++pts.k;
        }
        if (pts.k == 0) throw CLI::ValidationError("--init-points", "no points given");
        scheme.points = std::move(pts);
    } else {
        throw CLI::ValidationError("--init", "unknown scheme " + args.init);
    }
    return scheme;
}

std::vector<ProtocolMode> modes_from_csv(const std::string& csv) {
    std::vector<ProtocolMode> out;
    std::stringstream ss(csv);
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (field == "randomization" || field == "randomization_only")
            out.push_back(ProtocolMode::randomization_only);
        else if (field == "resampling" || field == "resampling_only")
            out.push_back(ProtocolMode::resampling_only);
        else if (field == "both")
            out.push_back(ProtocolMode::both);
        else
            throw CLI::ValidationError("--modes", "unknown mode " + field);
    }
    if (out.empty()) throw CLI::ValidationError("--modes", "no modes given");
    return out;
}

json report_json(const StabilityReport& report, const std::string& init_name) {
    json cells = json::array();
    for (const StabilityCell& cell : report.cells) {
        json records = json::array();
        for (const RepetitionRecord& rec : cell.records) {
            json r = {{"success", rec.success},
                      {"good_init", rec.good_init},
                      {"border_crossings", rec.border_crossings},
                      {"iterations", rec.iterations},
                      {"converged", rec.converged},
                      {"cost", rec.cost}};
            if (!rec.error.empty()) r["error"] = rec.error;
            if (rec.success) {
                r["init_configuration"] = rec.init_configuration;
                r["final_configuration"] = rec.final_configuration;
            }
            records.push_back(std::move(r));
        }
        cells.push_back({{"mode", to_string(cell.mode)},
                         {"k", cell.k_prime},
                         {"instability", cell.instability},
                         {"mean_mmd", cell.mean_mmd},
                         {"baseline", cell.baseline},
                         {"good_init_fraction", cell.good_init_fraction},
                         {"mean_crossings", cell.mean_crossings},
                         {"failures", cell.failures},
                         {"records", std::move(records)}});
    }
    json modes = json::array();
    for (ProtocolMode m : report.spec.modes) modes.push_back(to_string(m));
    return {{"model", report.model.name},
            {"seed", report.spec.seed},
            {"spec",
             {{"repetitions", report.spec.repetitions},
              {"n", report.spec.n},
              {"k_values", report.spec.k_values},
              {"modes", modes},
              {"init", init_name},
              {"restarts", report.spec.restarts},
              {"eval_n", report.spec.eval_n},
              {"normalize", report.spec.normalize},
              {"max_iter", report.spec.max_iter}}},
            {"cells", cells}};
}

void write_report_csv(const std::string& path, const StabilityReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "mode,k,instability,mean_mmd,baseline,good_init_fraction,mean_crossings,failures\n";
    for (const StabilityCell& cell : report.cells) {
        out << to_string(cell.mode) << ',' << cell.k_prime << ','
            << format_double(cell.instability) << ',' << format_double(cell.mean_mmd) << ','
            << format_double(cell.baseline) << ',' << format_double(cell.good_init_fraction)
            << ',' << format_double(cell.mean_crossings) << ',' << cell.failures << '\n';
    }
}

int run_experiment(const ExperimentArgs& args) {
    const ModelSpec model = model_from_flags(args.model, args.means_csv, args.weights_csv);
    ProtocolSpec spec;
    spec.modes = modes_from_csv(args.modes);
    spec.repetitions = args.reps;
    spec.n = args.n;
    spec.k_values = parse_k_range(args.k_range);
    spec.init = scheme_from_args(args, model.dim);
    spec.restarts = args.restarts;
    spec.eval_n = args.eval_n;
    spec.normalize = args.normalize;
    spec.max_iter = args.max_iter;
    spec.seed = args.seed;

    const StabilityReport report = run_protocol(model, spec);

    const std::string prefix = args.out_prefix.empty()
                                   ? model.name + "_seed" + std::to_string(args.seed)
                                   : args.out_prefix;
    const fs::path json_path = resolve_out(args.outdir, "", prefix + "_report.json");
    const fs::path csv_path = resolve_out(args.outdir, "", prefix + "_curve.csv");
    {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open for writing: " + json_path.string());
        out << report_json(report, args.init).dump(2) << '\n';
    }
    write_report_csv(csv_path.string(), report);

    std::cout << "mode                 k  instability  good_init  crossings  failures\n";
    for (const StabilityCell& cell : report.cells) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-20s %2zu  %10.5f  %9.3f  %9.3f  %8d\n",
                      to_string(cell.mode).c_str(), cell.k_prime, cell.instability,
                      cell.good_init_fraction, cell.mean_crossings, cell.failures);
        std::cout << line;
    }
    std::cout << "wrote " << json_path.string() << " and " << csv_path.string() << '\n';
    return 0;
}

struct RegionScanArgs {
    std::string w1_sweep = "0.1:0.9:0.1";
    std::string delta_sweep = "1:15:1";
    std::string a_sweep = "0.5:4:0.5";
    std::string mode = "corrected";
    std::string out;
    std::string outdir = default_outdir();
};

int run_region_scan(const RegionScanArgs& args) {
    const CertificateMode mode =
        args.mode == "as-printed" ? CertificateMode::as_printed : CertificateMode::corrected;
    const std::vector<double> w1s = parse_sweep(args.w1_sweep, "--w1-range");
    const std::vector<double> deltas = parse_sweep(args.delta_sweep, "--delta-range");
    const std::vector<double> as = parse_sweep(args.a_sweep, "--a-range");

    const fs::path path = resolve_out(args.outdir, args.out, "region_scan.csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "w1,delta,a,stable,min_slack\n";
    std::size_t stable_count = 0, total = 0;
    for (double w1 : w1s) {
        for (double delta : deltas) {
            for (double a : as) {
                const Certificate cert = certify_square_k2(w1, delta, a, mode);
                out << format_double(w1) << ',' << format_double(delta) << ','
                    << format_double(a) << ',' << (cert.stable ? 1 : 0) << ','
                    << format_double(cert.min_slack()) << '\n';
                stable_count += cert.stable ? 1 : 0;
                ++total;
            }
        }
    }
    std::cout << "wrote " << path.string() << " (" << stable_count << "/" << total
              << " stable)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-means stability toolkit: certificates, initialization analysis, experiments"};
    app.require_subcommand(1);

    bool seed_given = false;
    std::uint64_t seed = 0;

    CertifyArgs cert_args;
    CLI::App* certify = app.add_subcommand("certify", "evaluate a stable-region certificate");
    auto* k2 = certify->add_flag("--k2", cert_args.k2, "two-center square region");
    auto* k3 = certify->add_flag("--k3", cert_args.k3, "three-center prism region");
    auto* k3m = certify->add_flag("--k3-mirror", cert_args.k3_mirror, "mirrored prism region");
    k2->excludes(k3)->excludes(k3m);
    k3->excludes(k3m);
    certify->add_option("--w1", cert_args.w1, "weight of the left component")->required();
    certify->add_option("--delta", cert_args.delta, "gap between the means, sigma units")
        ->required();
    certify->add_option("--a", cert_args.a, "half side of the square / prism extent")->required();
    certify->add_option("--b", cert_args.b, "prism extent around the right mean");
    certify->add_option("--eps", cert_args.eps, "prism asymmetry");
    certify->add_option("--mode", cert_args.mode, "corrected | as-printed")
        ->check(CLI::IsMember({"corrected", "as-printed"}));
    certify->add_option("--json", cert_args.json_path, "also write the certificate to this file");

    InitParamsArgs ip_args;
    CLI::App* init_params = app.add_subcommand("init-params", "initialization parameter formulas");
    init_params->add_option("--wmin", ip_args.wmin, "lower bound on component weights")
        ->required();
    init_params->add_option("--delta", ip_args.delta, "lower bound on the mean gap")->required();
    init_params->add_option("--dmiss", ip_args.dmiss, "acceptable miss probability")->required();
    init_params->add_option("--tau", ip_args.tau, "impurity tolerance");
    init_params->add_option("--k", ip_args.K, "number of clusters");
    init_params->add_option("--delta-max", ip_args.delta_max, "largest adjacent gap");
    init_params->add_option("--w1", ip_args.w1, "impurity bound: left weight");
    init_params->add_option("--w2", ip_args.w2, "impurity bound: right weight");
    init_params->add_option("--formula", ip_args.formula, "corrected | as-printed")
        ->check(CLI::IsMember({"corrected", "as-printed"}));
    init_params->add_option("--means", ip_args.means_csv, "mixture means, comma separated");
    init_params->add_option("--weights", ip_args.weights_csv, "mixture weights, comma separated");
    init_params->add_option("--json", ip_args.json_path, "also write the report to this file");

    DatasetArgs ds_args;
    CLI::App* dataset = app.add_subcommand("dataset", "generate a sample and write it as CSV");
    dataset->add_option("--model", ds_args.model, "balanced2d | imbalanced2d | tendim | mixture1d");
    dataset->add_option("--means", ds_args.means_csv, "mixture1d means");
    dataset->add_option("--weights", ds_args.weights_csv, "mixture1d weights");
    dataset->add_option("--n", ds_args.n, "sample size");
    dataset->add_option("--out", ds_args.out, "output file");
    dataset->add_option("--outdir", ds_args.outdir, "output directory");

    ExperimentArgs ex_args;
    CLI::App* experiment = app.add_subcommand("experiment", "run stability protocols");
    experiment->add_option("--model", ex_args.model,
                           "balanced2d | imbalanced2d | tendim | mixture1d");
    experiment->add_option("--means", ex_args.means_csv, "mixture1d means");
    experiment->add_option("--weights", ex_args.weights_csv, "mixture1d weights");
    experiment->add_option("--modes", ex_args.modes, "randomization,resampling,both");
    experiment->add_option("--init", ex_args.init, "uniform | deterministic | mindiam | pruned")
        ->check(CLI::IsMember({"uniform", "deterministic", "mindiam", "pruned"}));
    experiment->add_option("--k-range", ex_args.k_range, "e.g. 2..7 or 2,4,6");
    experiment->add_option("--reps", ex_args.reps, "repetitions per cell");
    experiment->add_option("--n", ex_args.n, "sample size per repetition");
    experiment->add_option("--restarts", ex_args.restarts, "k-means restarts per repetition");
    experiment->add_option("--eval-n", ex_args.eval_n, "evaluation sample size");
    experiment->add_flag("--normalize", ex_args.normalize,
                         "divide by the random-labeling distance");
    experiment->add_option("--max-iter", ex_args.max_iter, "iteration cap per k-means run");
    experiment->add_option("--wmin", ex_args.wmin, "pruned init: weight lower bound");
    experiment->add_option("--delta", ex_args.delta, "pruned init: gap lower bound");
    experiment->add_option("--dmiss", ex_args.dmiss, "pruned init: miss probability");
    experiment->add_option("--tau", ex_args.tau, "pruned init: impurity tolerance");
    experiment->add_option("--L", ex_args.L, "pruned init: candidate count override");
    experiment->add_option("--p0", ex_args.p0, "pruned init: pruning threshold override");
    experiment->add_option("--init-points", ex_args.init_points,
                           "deterministic init, e.g. 0,0;3,3");
    experiment->add_option("--out-prefix", ex_args.out_prefix, "output file prefix");
    experiment->add_option("--outdir", ex_args.outdir, "output directory");

    RegionScanArgs rs_args;
    CLI::App* region_scan =
        app.add_subcommand("region-scan", "sweep the square certificate over (w1, delta, a)");
    region_scan->add_option("--w1-range", rs_args.w1_sweep, "lo:hi:step");
    region_scan->add_option("--delta-range", rs_args.delta_sweep, "lo:hi:step");
    region_scan->add_option("--a-range", rs_args.a_sweep, "lo:hi:step");
    region_scan->add_option("--mode", rs_args.mode, "corrected | as-printed")
        ->check(CLI::IsMember({"corrected", "as-printed"}));
    region_scan->add_option("--out", rs_args.out, "output file");
    region_scan->add_option("--outdir", rs_args.outdir, "output directory");

    std::string config_path;
    for (CLI::App* sub : {certify, init_params, dataset, experiment, region_scan}) {
        sub->add_option("--seed", seed, "master seed; omitted: drawn from entropy and printed")
            ->each([&seed_given](const std::string&) { seed_given = true; });
        sub->add_option("--config", config_path, "flat key=value config; flags override");
        for (CLI::Option* opt : sub->get_options())
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        expand_config(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (!seed_given && (dataset->parsed() || experiment->parsed())) {
        seed = entropy_seed();
        std::cerr << "seed: " << seed << '\n';
    }
    ds_args.seed = seed;
    ex_args.seed = seed;

    try {
        if (certify->parsed()) return run_certify(cert_args);
        if (init_params->parsed()) return run_init_params(ip_args);
        if (dataset->parsed()) return run_dataset(ds_args);
        if (experiment->parsed()) return run_experiment(ex_args);
        if (region_scan->parsed()) return run_region_scan(rs_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
