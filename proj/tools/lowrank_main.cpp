// lowrank: generate test matrices, run low-rank factorizations, benchmark
// them against the SVD baseline, and verify the factorization error bounds.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lowrank/lowrank.hpp"
#include "svg.hpp"

namespace {

using json = nlohmann::json;
using lowrank::Index;
using lowrank::MatrixX;
using Mat = MatrixX<double>;

// ---------------------------------------------------------------------------
// shared option blocks

struct GeneratorOptions {
    std::string family;  // "logspace" or "se"
    Index m = 0;
    Index n = 0;
    double b = -4.0;
    int variant = 2;
    Index nnz = 0;
    std::uint64_t seed = 1;

    std::string describe() const {
        if (family == "logspace")
            return "logspace_m" + std::to_string(m) + "_n" + std::to_string(n) + "_b" +
                   std::to_string(b).substr(0, 6) + "_s" + std::to_string(seed);
        return "se" + std::to_string(variant) + "_m" + std::to_string(m) + "_n" +
               std::to_string(n) + "_s" + std::to_string(seed);
    }
};

Mat generate(const GeneratorOptions& g) {
    if (g.family == "logspace") return lowrank::gen_logspace({g.m, g.n, g.b, g.seed});
    if (g.family == "se") return lowrank::gen_sorensen_embree(g.variant, g.m, g.n, g.nnz, g.seed);
    throw CLI::ValidationError("--gen", "unknown generator family '" + g.family + "'");
}

struct MatrixSource {
    std::string input_path;
    GeneratorOptions gen;
    std::string id_override;

    void attach(CLI::App* cmd) {
        auto* input = cmd->add_option("--input,-i", input_path, "Matrix file (.mtx or .bin)");
        auto* family = cmd->add_option("--gen", gen.family,
                                       "Generate the input instead: 'logspace' or 'se'")
                           ->check(CLI::IsMember({"logspace", "se"}));
        family->excludes(input);
        input->excludes(family);
        cmd->add_option("--m", gen.m, "Generated row count");
        cmd->add_option("--n", gen.n, "Generated column count");
        cmd->add_option("--b", gen.b, "Logspace decay exponent (negative)");
        cmd->add_option("--variant", gen.variant, "Sparse family variant (1 or 2)");
        cmd->add_option("--nnz", gen.nnz, "Nonzeros per sparse factor vector (0: 5%)");
        cmd->add_option("--gen-seed", gen.seed, "Generator seed");
        cmd->add_option("--id", id_override, "Matrix id used in reports");
    }

    Mat load() const {
        if (!input_path.empty()) {
            if (input_path.ends_with(".bin")) return lowrank::read_matrix_binary(input_path);
            return lowrank::read_matrix_market(input_path);
        }
        if (gen.family.empty())
            throw CLI::RequiredError("--input or --gen");
        return generate(gen);
    }

    std::string matrix_id() const {
        if (!id_override.empty()) return id_override;
        if (!input_path.empty()) return std::filesystem::path(input_path).stem().string();
        return gen.describe();
    }
};

struct SketchOptions {
    std::string kind = "gaussian";
    int oversample = 10;
    Index srft_samples = 0;
    int power = 0;
    bool no_reorth = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sketch", kind, "Sketch kind: gaussian or srft")
            ->check(CLI::IsMember({"gaussian", "srft"}));
        cmd->add_option("--p", oversample, "Gaussian oversampling");
        cmd->add_option("--ell", srft_samples, "Structured sample count (0: 2k)");
        cmd->add_option("--q", power, "Power-iteration rounds");
        cmd->add_flag("--no-reorth", no_reorth, "Skip re-orthonormalization between powers");
    }

    lowrank::SketchConfig config(std::uint64_t seed) const {
        lowrank::SketchConfig cfg;
        cfg.kind = kind == "srft" ? lowrank::SketchKind::Srft : lowrank::SketchKind::Gaussian;
        cfg.oversample = oversample;
        cfg.srft_samples = srft_samples;
        cfg.power = power;
        cfg.reorthonormalize = !no_reorth;
        cfg.seed = seed;
        return cfg;
    }
};

struct StrategyOptions {
    std::string name = "auto";
    double threshold = 1e-12;
    double ridge = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--strategy", name, "Coefficient solve: auto, backsub, pinv, tikhonov")
            ->check(CLI::IsMember({"auto", "backsub", "pinv", "tikhonov"}));
        cmd->add_option("--solve-threshold", threshold, "Relative cutoff for stabilized solves");
        cmd->add_option("--ridge", ridge, "Tikhonov regularization weight");
    }

    lowrank::SolveStrategy strategy() const {
        if (name == "backsub") return lowrank::SolveStrategy::back_substitution(threshold);
        if (name == "pinv") return lowrank::SolveStrategy::truncated_pinv(threshold);
        if (name == "tikhonov") return lowrank::SolveStrategy::tikhonov(ridge, threshold);
        lowrank::SolveStrategy s = lowrank::SolveStrategy::automatic();
        s.threshold = threshold;
        return s;
    }
};

const std::vector<std::string> kMethods = {"svd",    "rsvd",        "id",      "tsid",
                                           "cur-id", "cur-id-rand", "cur-pinv"};

// ---------------------------------------------------------------------------
// method execution shared by factor and bench

struct CurArtifacts {
    lowrank::TwoSidedId<double> tsid;
    lowrank::CurDecomposition<double> cur;
};

struct MethodRun {
    Mat approx;
    double elapsed_ms = 0.0;
    std::int64_t storage = 0;
    std::vector<std::pair<std::string, Mat>> factors;
    std::optional<CurArtifacts> cur_artifacts;
};

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

MethodRun run_method(const Mat& a, const std::string& method, Index k,
                     const lowrank::SolveStrategy& strategy, const lowrank::SketchConfig& sketch,
                     double pinv_threshold) {
    const Index m = a.rows(), n = a.cols();
    MethodRun run;
    const auto start = std::chrono::steady_clock::now();

    if (method == "svd" || method == "rsvd") {
        lowrank::Svd<double> f;
        if (method == "svd") {
            f = lowrank::svd(a);
            f.u = Mat(f.u.leftCols(k));
            f.sigma = lowrank::VectorX<double>(f.sigma.head(k));
            f.v = Mat(f.v.leftCols(k));
        } else {
            f = lowrank::randomized_svd(a, k, sketch);
        }
        run.elapsed_ms = ms_since(start);
        run.approx = f.u * f.sigma.asDiagonal() * f.v.transpose();
        run.storage = m * k + k + n * k;
        run.factors = {{"U", f.u}, {"SIGMA", Mat(f.sigma)}, {"V", f.v}};
    } else if (method == "id") {
        const auto id = lowrank::id_column(a, k, strategy);
        run.elapsed_ms = ms_since(start);
        run.approx = lowrank::reconstruct(a, id);
        run.storage = lowrank::storage_units(lowrank::FactorKind::ColumnId, m, n, k);
        run.factors = {{"C", lowrank::skeleton_columns(a, id)}, {"V", id.basis()}};
    } else if (method == "tsid") {
        const auto tsid = lowrank::id_two_sided(a, k, strategy);
        run.elapsed_ms = ms_since(start);
        run.approx = lowrank::reconstruct(tsid);
        run.storage = lowrank::storage_units(lowrank::FactorKind::TwoSidedId, m, n, k);
        run.factors = {{"W", tsid.row_basis()}, {"SKEL", tsid.skeleton}, {"V", tsid.col_basis()}};
    } else if (method == "cur-id" || method == "cur-id-rand") {
        lowrank::ColumnId<double> cid = method == "cur-id"
                                            ? lowrank::id_column(a, k, strategy)
                                            : lowrank::randomized_id(a, k, sketch, strategy);
        auto tsid = lowrank::tsid_from_column_id(a, std::move(cid), strategy);
        auto cur = lowrank::cur_from_two_sided(a, tsid, pinv_threshold);
        run.elapsed_ms = ms_since(start);
        run.approx = lowrank::reconstruct(cur);
        run.storage = lowrank::storage_units(lowrank::FactorKind::Cur, m, n, k);
        run.factors = {{"C", cur.c}, {"U", cur.u}, {"R", cur.r}};
        run.cur_artifacts = CurArtifacts{std::move(tsid), std::move(cur)};
    } else if (method == "cur-pinv") {
        // comparison point only: same skeletons as cur-id, but the linking
        // matrix is formed from both pseudoinverses
        auto tsid = lowrank::id_two_sided(a, k, strategy);
        auto cur = lowrank::cur_from_two_sided(a, tsid, pinv_threshold);
        cur.u = lowrank::pinv(cur.c, pinv_threshold) * a * lowrank::pinv(cur.r, pinv_threshold);
        run.elapsed_ms = ms_since(start);
        run.approx = lowrank::reconstruct(cur);
        run.storage = lowrank::storage_units(lowrank::FactorKind::Cur, m, n, k);
        run.factors = {{"C", cur.c}, {"U", cur.u}, {"R", cur.r}};
        run.cur_artifacts = CurArtifacts{std::move(tsid), std::move(cur)};
    } else {
        throw CLI::ValidationError("--method", "unknown method '" + method + "'");
    }
    return run;
}

json error_json(const lowrank::ErrorReport& rep) {
    return {{"abs_spectral", rep.abs_spectral}, {"rel_spectral", rep.rel_spectral},
            {"abs_frob", rep.abs_frob},         {"rel_frob", rep.rel_frob},
            {"rel_is_absolute", rep.rel_is_absolute}};
}

json lemma1_json(const lowrank::Lemma1Report& r) {
    return {{"lhs", r.lhs},       {"rhs", r.rhs}, {"e_norm", r.e_norm},
            {"etilde_norm", r.etilde_norm}, {"holds", r.holds}};
}

json lemma2_json(const lowrank::Lemma2Report& r) {
    return {{"etilde_norm", r.etilde_norm}, {"fe_norm", r.fe_norm},
            {"entry_diff", r.entry_diff},   {"e_norm", r.e_norm},
            {"t_norm", r.t_norm},           {"bound_rhs", r.bound_rhs},
            {"holds", r.holds},             {"bound_holds", r.bound_holds}};
}

json corollary_json(const lowrank::CorollaryReport& r) {
    return {{"lhs", r.lhs},       {"bound", r.bound},     {"t_norm", r.t_norm},
            {"e_norm", r.e_norm}, {"ceiling", r.ceiling}, {"holds", r.holds}};
}

unsigned thread_cap() {
    const char* env = std::getenv("LOWRANK_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return v > 1 ? static_cast<unsigned>(v) : 1u;
}

std::vector<Index> parse_ranks(const std::string& text) {
    std::vector<Index> ranks;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const auto colon2 = text.find(':', colon + 1);
        const Index from = std::stoll(text.substr(0, colon));
        const Index to = std::stoll(text.substr(colon + 1, colon2 - colon - 1));
        const Index step = colon2 == std::string::npos ? 1 : std::stoll(text.substr(colon2 + 1));
        if (step < 1 || to < from)
            throw CLI::ValidationError("--ranks", "bad range '" + text + "'");
        for (Index k = from; k <= to; k += step) ranks.push_back(k);
    } else {
        std::string::size_type pos = 0;
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            ranks.push_back(std::stoll(text.substr(pos, comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    if (ranks.empty() || ranks.front() < 1)
        throw CLI::ValidationError("--ranks", "need at least one positive rank");
    return ranks;
}

std::vector<std::string> parse_methods(const std::string& text) {
    std::vector<std::string> methods;
    std::string::size_type pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        std::string name =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (std::find(kMethods.begin(), kMethods.end(), name) == kMethods.end())
            throw CLI::ValidationError("--methods", "unknown method '" + name + "'");
        methods.push_back(std::move(name));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (methods.empty()) throw CLI::ValidationError("--methods", "need at least one method");
    return methods;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const GeneratorOptions& opts, const std::string& out_path) {
    const Mat a = generate(opts);
    if (out_path.ends_with(".bin")) {
        lowrank::write_matrix_binary(out_path, a);
    } else {
        const auto format = opts.family == "se" ? lowrank::MarketFormat::Coordinate
                                                : lowrank::MarketFormat::Array;
        lowrank::write_matrix_market(out_path, a, format);
    }
    const auto f = lowrank::svd(a);
    const double cond = f.sigma(f.sigma.size() - 1) > 0
                            ? f.sigma(0) / f.sigma(f.sigma.size() - 1)
                            : std::numeric_limits<double>::infinity();
    std::cout << opts.describe() << ": " << a.rows() << " x " << a.cols() << " written to "
              << out_path << "\n";
    std::cout << "condition number (sigma_1 / sigma_r): " << cond << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// factor

int cmd_factor(const MatrixSource& source, const std::string& method, Index k,
               const StrategyOptions& strategy_opts, const SketchOptions& sketch_opts,
               std::uint64_t seed, double pinv_threshold, const std::string& out_dir) {
    const Mat a = source.load();
    const MethodRun run = run_method(a, method, k, strategy_opts.strategy(),
                                     sketch_opts.config(seed), pinv_threshold);

    std::filesystem::create_directories(out_dir);
    for (const auto& [name, factor] : run.factors)
        lowrank::write_matrix_market((std::filesystem::path(out_dir) / (name + ".mtx")).string(),
                                     factor);

    const lowrank::ErrorReport err = lowrank::error_report(a, run.approx);
    json line = {{"matrix_id", source.matrix_id()},
                 {"method", method},
                 {"k", k},
                 {"m", a.rows()},
                 {"n", a.cols()},
                 {"seed", seed},
                 {"elapsed_ms", run.elapsed_ms},
                 {"storage_units", run.storage},
                 {"error", error_json(err)}};
    if (run.cur_artifacts) {
        const auto& art = *run.cur_artifacts;
        line["lemma1"] =
            lemma1_json(lowrank::verify_lemma1(a, art.cur, art.tsid.col_id, art.tsid.row_basis()));
        line["lemma2"] = lemma2_json(lowrank::verify_lemma2(a, art.tsid.col_id, art.tsid.row_id));
        line["corollary"] = corollary_json(
            lowrank::verify_corollary(a, art.cur, art.tsid.col_id, strategy_opts.strategy()));
    }

    std::ofstream report((std::filesystem::path(out_dir) / "report.jsonl").string());
    report << line.dump() << "\n";
    std::cout << line.dump() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchPlan {
    MatrixSource source;
    std::vector<std::string> methods;
    std::vector<Index> ranks;
    int trials = 5;
    std::uint64_t base_seed = 1;
    StrategyOptions strategy;
    SketchOptions sketch;
    double pinv_threshold = 1e-12;
    std::string csv_path;
    std::string errors_svg;
    std::string times_svg;
};

int cmd_bench(const BenchPlan& plan) {
    const Mat a = plan.source.load();
    const std::string matrix_id = plan.source.matrix_id();
    const lowrank::MatrixNorms norms = lowrank::matrix_norms(a);
    const lowrank::SolveStrategy strategy = plan.strategy.strategy();

    auto run_trial = [&](const std::string& method, Index k,
                         int trial) -> lowrank::ResultRecord {
        const std::uint64_t seed = plan.base_seed + static_cast<std::uint64_t>(trial);
        const MethodRun run =
            run_method(a, method, k, strategy, plan.sketch.config(seed), plan.pinv_threshold);
        const lowrank::ErrorReport err = lowrank::error_report(a, run.approx, norms);
        lowrank::ResultRecord rec;
        rec.matrix_id = matrix_id;
        rec.method = method;
        rec.k = static_cast<int>(k);
        rec.trial_seed = seed;
        rec.rel_spectral = err.rel_spectral;
        rec.rel_frob = err.rel_frob;
        rec.elapsed_ms = run.elapsed_ms;
        rec.storage_units = run.storage;
        return rec;
    };

    std::vector<lowrank::ResultRecord> records;
    const unsigned cap = thread_cap();
    bool failed = false;
    std::string failure;
    for (const std::string& method : plan.methods) {
        for (Index k : plan.ranks) {
            try {
                if (cap <= 1) {
                    for (int t = 0; t < plan.trials; ++t)
                        records.push_back(run_trial(method, k, t));
                } else {
                    for (int t0 = 0; t0 < plan.trials; t0 += static_cast<int>(cap)) {
                        std::vector<std::future<lowrank::ResultRecord>> batch;
                        for (int t = t0;
                             t < std::min(plan.trials, t0 + static_cast<int>(cap)); ++t)
                            batch.push_back(
                                std::async(std::launch::async, run_trial, method, k, t));
                        for (auto& fut : batch) records.push_back(fut.get());
                    }
                }
            } catch (const std::exception& e) {
                failed = true;
                failure = e.what();
                break;
            }
        }
        if (failed) break;
    }

    // flush whatever completed, even when a cell failed mid-sweep
    lowrank::write_results_csv(plan.csv_path, records);

    if (!records.empty()) {
        std::vector<lowrank::plot::Series> error_series, time_series;
        for (const std::string& method : plan.methods) {
            lowrank::plot::Series errs{method, {}}, times{method, {}};
            for (Index k : plan.ranks) {
                std::vector<double> cell_err, cell_time;
                for (const auto& rec : records)
                    if (rec.method == method && rec.k == k) {
                        cell_err.push_back(rec.rel_spectral);
                        cell_time.push_back(rec.elapsed_ms);
                    }
                if (cell_err.empty()) continue;
                errs.points.emplace_back(static_cast<double>(k), median_of(cell_err));
                times.points.emplace_back(static_cast<double>(k), median_of(cell_time));
            }
            if (!errs.points.empty()) {
                error_series.push_back(std::move(errs));
                time_series.push_back(std::move(times));
            }
        }
        if (!error_series.empty()) {
            lowrank::plot::write_line_chart(plan.errors_svg,
                                            matrix_id + ": median relative error", "rank k",
                                            "relative spectral error", error_series, true);
            lowrank::plot::write_line_chart(plan.times_svg, matrix_id + ": median runtime",
                                            "rank k", "elapsed ms", time_series, false);
        }
    }

    if (failed) {
        std::cerr << "bench: sweep aborted: " << failure << "\n";
        return 1;
    }
    std::cout << "bench: " << records.size() << " records written to " << plan.csv_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const MatrixSource& source, const std::string& method,
               const std::vector<Index>& ranks, const StrategyOptions& strategy_opts,
               const SketchOptions& sketch_opts, std::uint64_t seed, double pinv_threshold,
               const std::string& report_path) {
    const Mat a = source.load();
    const lowrank::SolveStrategy strategy = strategy_opts.strategy();
    const auto f = lowrank::svd(a);

    bool all_hold = true;
    std::vector<json> lines;
    std::cout << "k     eps(k)        denom_ok  lemma1  lemma2  bound   corollary\n";
    for (Index k : ranks) {
        lowrank::ColumnId<double> cid =
            method == "cur-id-rand"
                ? lowrank::randomized_id(a, k, sketch_opts.config(seed), strategy)
                : lowrank::id_column(a, k, strategy);
        const auto tsid = lowrank::tsid_from_column_id(a, std::move(cid), strategy);
        const auto cur = lowrank::cur_from_two_sided(a, tsid, pinv_threshold);

        const auto l1 = lowrank::verify_lemma1(a, cur, tsid.col_id, tsid.row_basis());
        const auto l2 = lowrank::verify_lemma2(a, tsid.col_id, tsid.row_id);
        const auto cor = lowrank::verify_corollary(a, cur, tsid.col_id, strategy_opts.strategy());
        all_hold = all_hold && l1.holds && l2.holds && l2.bound_holds && cor.holds;

        // optimistic Frobenius headroom against the rank-k optimum
        const double cur_frob_sq = (a - lowrank::reconstruct(cur)).squaredNorm();
        const double denom =
            f.sigma.size() > k ? f.sigma.tail(f.sigma.size() - k).squaredNorm() : 0.0;
        const bool denom_ok = denom > 1e-12;
        const double eps =
            denom_ok ? cur_frob_sq / denom - 1.0 : std::numeric_limits<double>::quiet_NaN();

        // row skeleton quality: direct row decomposition of A versus the rows
        // inherited from the column-skeleton factorization
        const auto direct_row = lowrank::id_row(a, k, strategy);
        const double row_err_direct =
            lowrank::frobenius_norm(a - lowrank::reconstruct(a, direct_row));
        const double row_err_via_skeleton = lowrank::frobenius_norm(
            a - tsid.row_basis() * lowrank::select_rows(a, tsid.row_pivots(), k));

        json line = {{"matrix_id", source.matrix_id()},
                     {"method", method},
                     {"k", k},
                     {"eps", denom_ok ? json(eps) : json()},
                     {"eps_denominator", denom},
                     {"denominator_above_threshold", denom_ok},
                     {"lemma1", lemma1_json(l1)},
                     {"lemma2", lemma2_json(l2)},
                     {"corollary", corollary_json(cor)},
                     {"row_id_error_direct", row_err_direct},
                     {"row_id_error_via_skeleton", row_err_via_skeleton}};
        lines.push_back(std::move(line));

        char eps_text[32];
        if (denom_ok)
            std::snprintf(eps_text, sizeof(eps_text), "%-12.5g", eps);
        else
            std::snprintf(eps_text, sizeof(eps_text), "%-12s", "undefined");
        std::printf("%-5lld %s  %-8s  %-6s  %-6s  %-6s  %s\n", static_cast<long long>(k),
                    eps_text, denom_ok ? "yes" : "no", l1.holds ? "pass" : "FAIL",
                    l2.holds ? "pass" : "FAIL", l2.bound_holds ? "pass" : "FAIL",
                    cor.holds ? "pass" : "FAIL");
    }

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        for (const json& line : lines) out << line.dump() << "\n";
    }
    if (!all_hold) std::cerr << "verify: at least one asserted bound failed\n";
    return all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-rank ID / CUR factorization toolkit"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate a test matrix");
    gen->require_subcommand(1);
    GeneratorOptions gen_opts;
    std::string gen_out;

    auto* gen_logspace = gen->add_subcommand("logspace", "Logspaced singular spectrum");
    gen_logspace->add_option("--m", gen_opts.m, "Rows")->required();
    gen_logspace->add_option("--n", gen_opts.n, "Columns")->required();
    gen_logspace->add_option("--b", gen_opts.b, "Decay exponent (negative)")->required();
    gen_logspace->add_option("--seed", gen_opts.seed, "Seed");
    gen_logspace->add_option("--out,-o", gen_out, "Output path (.mtx or .bin)")->required();

    auto* gen_se = gen->add_subcommand("se", "Sparse sum-of-outer-products family");
    gen_se->add_option("--variant", gen_opts.variant, "1 or 2")->required();
    gen_se->add_option("--m", gen_opts.m, "Rows")->required();
    gen_se->add_option("--n", gen_opts.n, "Columns")->required();
    gen_se->add_option("--nnz", gen_opts.nnz, "Nonzeros per factor vector (0: 5%)");
    gen_se->add_option("--seed", gen_opts.seed, "Seed");
    gen_se->add_option("--out,-o", gen_out, "Output path (.mtx or .bin)")->required();

    // --- factor ------------------------------------------------------------
    auto* factor = app.add_subcommand("factor", "Factorize a matrix and write the factors");
    MatrixSource factor_source;
    std::string factor_input_positional;
    std::string factor_method;
    Index factor_k = 0;
    StrategyOptions factor_strategy;
    SketchOptions factor_sketch;
    std::uint64_t factor_seed = 1;
    double factor_pinv_threshold = 1e-12;
    std::string factor_out_dir = ".";
    factor_source.attach(factor);
    factor->add_option("matrix", factor_input_positional, "Matrix file (same as --input)");
    factor
        ->add_option("--method", factor_method,
                     "One of svd rsvd id tsid cur-id cur-id-rand cur-pinv")
        ->required()
        ->check(CLI::IsMember(kMethods));
    factor->add_option("--k", factor_k, "Target rank")->required();
    factor_strategy.attach(factor);
    factor_sketch.attach(factor);
    factor->add_option("--seed", factor_seed, "Sketch seed");
    factor->add_option("--pinv-threshold", factor_pinv_threshold, "Pseudoinverse cutoff");
    factor->add_option("--out-dir", factor_out_dir, "Directory for factor files and report");

    // --- bench -------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Sweep methods and ranks, write CSV and SVG plots");
    BenchPlan plan;
    std::string bench_methods_text, bench_ranks_text;
    plan.source.attach(bench);
    bench->add_option("--methods", bench_methods_text, "Comma-separated method list")->required();
    bench->add_option("--ranks", bench_ranks_text, "Ranks: 'a,b,c' or 'from:to[:step]'")
        ->required();
    bench->add_option("--trials", plan.trials, "Trials per cell (seeds base+0..base+trials-1)");
    bench->add_option("--seed", plan.base_seed, "Base seed for trials");
    plan.strategy.attach(bench);
    plan.sketch.attach(bench);
    bench->add_option("--pinv-threshold", plan.pinv_threshold, "Pseudoinverse cutoff");
    bench->add_option("--out,-o", plan.csv_path, "Results CSV path")->required();
    bench->add_option("--plot-errors", plan.errors_svg,
                      "Error chart path (default <csv>_errors.svg)");
    bench->add_option("--plot-times", plan.times_svg,
                      "Timing chart path (default <csv>_times.svg)");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Check the factorization error bounds");
    MatrixSource verify_source;
    std::string verify_method = "cur-id";
    std::string verify_ranks_text;
    StrategyOptions verify_strategy;
    SketchOptions verify_sketch;
    std::uint64_t verify_seed = 1;
    double verify_pinv_threshold = 1e-12;
    std::string verify_report;
    verify_source.attach(verify);
    verify->add_option("--method", verify_method, "cur-id or cur-id-rand")
        ->check(CLI::IsMember({"cur-id", "cur-id-rand"}));
    verify->add_option("--ranks", verify_ranks_text, "Ranks to check")->required();
    verify_strategy.attach(verify);
    verify_sketch.attach(verify);
    verify->add_option("--seed", verify_seed, "Sketch seed");
    verify->add_option("--pinv-threshold", verify_pinv_threshold, "Pseudoinverse cutoff");
    verify->add_option("--out,-o", verify_report, "JSON-lines report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        if (gen_logspace->parsed()) {
            gen_opts.family = "logspace";
            return cmd_gen(gen_opts, gen_out);
        }
        if (gen_se->parsed()) {
            gen_opts.family = "se";
            return cmd_gen(gen_opts, gen_out);
        }
        if (factor->parsed()) {
            if (!factor_input_positional.empty())
                factor_source.input_path = factor_input_positional;
            return cmd_factor(factor_source, factor_method, factor_k, factor_strategy,
                              factor_sketch, factor_seed, factor_pinv_threshold, factor_out_dir);
        }
        if (bench->parsed()) {
            plan.methods = parse_methods(bench_methods_text);
            plan.ranks = parse_ranks(bench_ranks_text);
            if (plan.trials < 1) throw CLI::ValidationError("--trials", "must be at least 1");
            if (plan.errors_svg.empty()) plan.errors_svg = plan.csv_path + "_errors.svg";
            if (plan.times_svg.empty()) plan.times_svg = plan.csv_path + "_times.svg";
            return cmd_bench(plan);
        }
        if (verify->parsed())
            return cmd_verify(verify_source, verify_method, parse_ranks(verify_ranks_text),
                              verify_strategy, verify_sketch, verify_seed, verify_pinv_threshold,
                              verify_report);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
