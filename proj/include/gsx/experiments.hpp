#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gsx/decomposition.hpp"
#include "gsx/errors.hpp"
#include "gsx/fourier.hpp"
#include "gsx/generators.hpp"
#include "gsx/graph.hpp"
#include "gsx/io.hpp"
#include "gsx/rng.hpp"
#include "gsx/shift.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"
#include "gsx/wiener.hpp"

namespace gsx {

enum class ExperimentKind { EnergyVsShift, EnergyShiftVsFourier, WienerTapSweep, SpectrumReport };

inline const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::EnergyVsShift: return "energy_vs_shift";
        case ExperimentKind::EnergyShiftVsFourier: return "energy_shift_vs_fourier";
        case ExperimentKind::WienerTapSweep: return "wiener_tap_sweep";
        case ExperimentKind::SpectrumReport: return "spectrum_report";
    }
    return "unknown";
}

inline ExperimentKind parse_experiment(std::string name) {
    for (char& c : name)
        if (c == '-') c = '_';
    if (name == "energy_vs_shift") return ExperimentKind::EnergyVsShift;
    if (name == "energy_shift_vs_fourier") return ExperimentKind::EnergyShiftVsFourier;
    if (name == "wiener_tap_sweep") return ExperimentKind::WienerTapSweep;
    if (name == "spectrum_report") return ExperimentKind::SpectrumReport;
    throw ConfigError("unknown experiment '" + name + "'");
}

inline ShiftKind parse_shift_kind(const std::string& name) {
    if (name == "generic_phi") return ShiftKind::GenericPhi;
    if (name == "canonical_e") return ShiftKind::CanonicalE;
    if (name == "raw_adjacency") return ShiftKind::RawAdjacency;
    if (name == "normalized_adjacency") return ShiftKind::NormalizedAdjacency;
    throw ConfigError("unknown shift kind '" + name + "'");
}

/// Which graph to run on. subsample_prob > 0 turns the generated graph into
/// a directed subsample.
struct GraphSpec {
    std::string generator = "knn"; // cyclic | knn | exp_weighted
    Index n = 20;
    Index k = 6;
    double theta = 0.1;
    std::uint64_t seed = 42;
    double subsample_prob = 0.0;
    std::uint64_t subsample_seed = 1;

    Graph build() const {
        Graph g = [&] {
            if (generator == "cyclic") return cyclic_graph(n);
            if (generator == "knn") return knn_sensor_graph(n, k, seed).graph;
            if (generator == "exp_weighted") return exp_weighted_graph(n, seed, theta, k).graph;
            throw ConfigError("unknown graph generator '" + generator + "'");
        }();
        if (subsample_prob > 0.0) g = directed_subsample(g, subsample_prob, subsample_seed);
        return g;
    }
};

struct SignalSpec {
    Index sparsity = 10;
    std::uint64_t seed = 7;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::EnergyVsShift;
    GraphSpec graph;
    SignalSpec signal;
    std::vector<ShiftKind> shift_kinds = {ShiftKind::CanonicalE, ShiftKind::RawAdjacency,
                                          ShiftKind::NormalizedAdjacency};
    Index max_shifts = 50;
    Index taps_min = 1;
    Index taps_max = 20;
    std::vector<double> noise_sigmas = {0.0126, 0.126};
    Index trials = 50;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
};

/// Checks the fields the configured experiment actually uses.
inline void validate(const ExperimentConfig& cfg) {
    if (cfg.graph.n < 1) throw ConfigError("graph.n must be positive");
    if (cfg.graph.generator != "cyclic" && cfg.graph.generator != "knn" &&
        cfg.graph.generator != "exp_weighted")
        throw ConfigError("unknown graph generator '" + cfg.graph.generator + "'");
    if (cfg.graph.generator != "cyclic" && (cfg.graph.k < 1 || cfg.graph.k >= cfg.graph.n))
        throw ConfigError("graph.k must satisfy 1 <= k < n");
    if (cfg.graph.generator == "exp_weighted" && cfg.graph.theta <= 0.0)
        throw ConfigError("graph.theta must be positive");
    if (cfg.graph.subsample_prob < 0.0 || cfg.graph.subsample_prob > 1.0)
        throw ConfigError("graph.subsample_prob must be in [0, 1]");
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");

    const bool uses_signal = cfg.experiment != ExperimentKind::SpectrumReport;
    if (uses_signal && (cfg.signal.sparsity < 1 || cfg.signal.sparsity > cfg.graph.n))
        throw ConfigError("signal.sparsity must be in [1, n]");

    if (cfg.experiment == ExperimentKind::EnergyVsShift ||
        cfg.experiment == ExperimentKind::EnergyShiftVsFourier) {
        if (cfg.max_shifts < 1) throw ConfigError("max_shifts must be positive");
    }
    if (cfg.experiment == ExperimentKind::EnergyVsShift && cfg.shift_kinds.empty())
        throw ConfigError("shift_kinds must be non-empty");

    if (cfg.experiment == ExperimentKind::WienerTapSweep) {
        if (cfg.shift_kinds.empty()) throw ConfigError("shift_kinds must be non-empty");
        if (cfg.taps_min < 1 || cfg.taps_max < cfg.taps_min || cfg.taps_max > cfg.graph.n)
            throw ConfigError("tap range must satisfy 1 <= taps_min <= taps_max <= n");
        if (cfg.noise_sigmas.empty())
            throw ConfigError("noise_sigmas must be non-empty for the tap sweep");
        for (double s : cfg.noise_sigmas)
            if (s < 0.0) throw ConfigError("noise sigmas must be non-negative");
    }
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    try {
        ExperimentConfig cfg;
        if (j.contains("experiment")) cfg.experiment = parse_experiment(j.at("experiment"));
        if (j.contains("graph")) {
            const auto& g = j.at("graph");
            if (g.contains("generator")) cfg.graph.generator = g.at("generator");
            if (g.contains("n")) cfg.graph.n = g.at("n");
            if (g.contains("k")) cfg.graph.k = g.at("k");
            if (g.contains("theta")) cfg.graph.theta = g.at("theta");
            if (g.contains("seed")) cfg.graph.seed = g.at("seed");
            if (g.contains("subsample_prob")) cfg.graph.subsample_prob = g.at("subsample_prob");
            if (g.contains("subsample_seed")) cfg.graph.subsample_seed = g.at("subsample_seed");
        }
        if (j.contains("signal")) {
            const auto& s = j.at("signal");
            if (s.contains("sparsity")) cfg.signal.sparsity = s.at("sparsity");
            if (s.contains("seed")) cfg.signal.seed = s.at("seed");
        }
        if (j.contains("shift_kinds")) {
            cfg.shift_kinds.clear();
            for (const auto& name : j.at("shift_kinds"))
                cfg.shift_kinds.push_back(parse_shift_kind(name));
        }
        if (j.contains("max_shifts")) cfg.max_shifts = j.at("max_shifts");
        if (j.contains("taps_min")) cfg.taps_min = j.at("taps_min");
        if (j.contains("taps_max")) cfg.taps_max = j.at("taps_max");
        if (j.contains("noise_sigmas"))
            cfg.noise_sigmas = j.at("noise_sigmas").get<std::vector<double>>();
        if (j.contains("trials")) cfg.trials = j.at("trials");
        if (j.contains("seed")) cfg.seed = j.at("seed");
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir");
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json kinds = nlohmann::json::array();
    for (ShiftKind k : cfg.shift_kinds) kinds.push_back(to_string(k));
    return nlohmann::json{
        {"experiment", to_string(cfg.experiment)},
        {"graph",
         {{"generator", cfg.graph.generator},
          {"n", cfg.graph.n},
          {"k", cfg.graph.k},
          {"theta", cfg.graph.theta},
          {"seed", cfg.graph.seed},
          {"subsample_prob", cfg.graph.subsample_prob},
          {"subsample_seed", cfg.graph.subsample_seed}}},
        {"signal", {{"sparsity", cfg.signal.sparsity}, {"seed", cfg.signal.seed}}},
        {"shift_kinds", kinds},
        {"max_shifts", cfg.max_shifts},
        {"taps_min", cfg.taps_min},
        {"taps_max", cfg.taps_max},
        {"noise_sigmas", cfg.noise_sigmas},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
        {"out_dir", cfg.out_dir}};
}

// ---- Parallel helpers ----------------------------------------------------------

/// GSX_THREADS caps worker count; defaults to hardware concurrency.
inline Index thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("GSX_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return static_cast<Index>(hw);
}

/// Runs fn(i) for i in [0, count) over a small worker pool. Each index owns
/// its output slot, so results are independent of scheduling.
template <typename Fn>
inline void parallel_for(Index count, Fn&& fn) {
    const Index workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (Index i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<Index> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (Index w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            try {
                for (Index i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---- Shift construction shared by the runners -----------------------------------

namespace detail {

// Distinct random phases for the GenericPhi comparison column.
inline RVector random_phases(Index n, std::uint64_t seed) {
    Rng rng(seed);
    RVector phases(n);
    bool ok = false;
    while (!ok) {
        for (Index i = 0; i < n; ++i) phases(i) = rng.uniform01() * kTwoPi;
        ok = true;
        for (Index i = 0; ok && i < n; ++i)
            for (Index j = i + 1; ok && j < n; ++j) {
                double diff = std::abs(phases(i) - phases(j));
                diff = std::min(diff, kTwoPi - diff);
                if (diff <= 1e-6) ok = false;
            }
    }
    return phases;
}

inline ShiftOperator build_shift(ShiftKind kind, const DecompPtr& d, const Graph& g,
                                 std::uint64_t seed) {
    switch (kind) {
        case ShiftKind::GenericPhi: return make_a_phi(d, random_phases(d->n(), seed));
        case ShiftKind::CanonicalE: return make_a_e(d);
        case ShiftKind::RawAdjacency: return raw_shift(d, g);
        case ShiftKind::NormalizedAdjacency: return normalized_shift(d, g);
    }
    throw ConfigError("unknown shift kind");
}

} // namespace detail

// ---- Runners --------------------------------------------------------------------

struct EnergyVsShiftResult {
    std::vector<ShiftKind> kinds;
    std::vector<std::vector<double>> fourier_energy; ///< [kind][k], k = 0..max_shifts
};

/// Fourier-domain energy of S^k·x for each configured shift kind.
inline EnergyVsShiftResult run_energy_vs_shift(const ExperimentConfig& cfg) {
    validate(cfg);
    const Graph g = cfg.graph.build();
    const DecompPtr d = decompose_shared(g);
    const GraphSignal x = k_sparse_signal(*d, cfg.signal.sparsity, cfg.signal.seed);
    const CVector u = d->v_inv * x.values;

    EnergyVsShiftResult out;
    out.kinds = cfg.shift_kinds;
    for (ShiftKind kind : cfg.shift_kinds) {
        const ShiftOperator s = detail::build_shift(kind, d, g, derive_seed(cfg.seed, 0x9e));
        const CVector e = s.eigenvalues();
        RVector gain = RVector::Ones(d->n());
        std::vector<double> column;
        column.reserve(static_cast<std::size_t>(cfg.max_shifts + 1));
        for (Index k = 0; k <= cfg.max_shifts; ++k) {
            double acc = 0.0;
            for (Index i = 0; i < d->n(); ++i) acc += gain(i) * std::norm(u(i));
            column.push_back(acc);
            for (Index i = 0; i < d->n(); ++i) gain(i) *= std::norm(e(i));
        }
        out.fourier_energy.push_back(std::move(column));
    }
    return out;
}

struct EnergyShiftVsFourierResult {
    std::vector<double> shift_energy;   ///< ‖S^k·x‖² in the vertex domain
    std::vector<double> fourier_energy; ///< ‖(S^k·x)_F‖²
    FrameBounds bounds;
};

/// Vertex- vs Fourier-domain energy of A_e^k·x; the vertex column
/// oscillates inside the frame-bound band and returns at multiples of n.
inline EnergyShiftVsFourierResult run_energy_shift_vs_fourier(const ExperimentConfig& cfg) {
    validate(cfg);
    const Graph g = cfg.graph.build();
    const DecompPtr d = decompose_shared(g);
    const GraphSignal x = k_sparse_signal(*d, cfg.signal.sparsity, cfg.signal.seed);
    const ShiftOperator s = make_a_e(d);
    const CVector u = d->v_inv * x.values;
    const CVector e = s.eigenvalues();

    EnergyShiftVsFourierResult out;
    out.bounds = frame_bounds(*d);
    CVector mult = CVector::Ones(d->n());
    for (Index k = 0; k <= cfg.max_shifts; ++k) {
        const CVector uf = mult.cwiseProduct(u);
        out.fourier_energy.push_back(uf.squaredNorm());
        out.shift_energy.push_back((d->v * uf).squaredNorm());
        mult.array() *= e.array();
    }
    return out;
}

struct WienerSweepResult {
    std::vector<double> sigmas;
    std::vector<ShiftKind> kinds;
    Index taps_min = 1;
    /// mean_error[sigma][kind][L - taps_min]
    std::vector<std::vector<std::vector<double>>> mean_error;
};

/// Per-snapshot optimal-filter denoising error, averaged over trials, for
/// every (shift kind, tap count, noise level) cell. Trials run in parallel
/// with derived seeds; the reduction order is fixed.
inline WienerSweepResult run_wiener_tap_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    const Graph g = cfg.graph.build();
    const DecompPtr d = decompose_shared(g);
    std::vector<ShiftOperator> shifts;
    for (ShiftKind kind : cfg.shift_kinds)
        shifts.push_back(detail::build_shift(kind, d, g, derive_seed(cfg.seed, 0x9e)));

    const Index l_count = cfg.taps_max - cfg.taps_min + 1;
    WienerSweepResult out;
    out.sigmas = cfg.noise_sigmas;
    out.kinds = cfg.shift_kinds;
    out.taps_min = cfg.taps_min;
    out.mean_error.assign(cfg.noise_sigmas.size(),
                          std::vector<std::vector<double>>(
                              cfg.shift_kinds.size(),
                              std::vector<double>(static_cast<std::size_t>(l_count), 0.0)));

    for (std::size_t sigma_idx = 0; sigma_idx < cfg.noise_sigmas.size(); ++sigma_idx) {
        const double sigma = cfg.noise_sigmas[sigma_idx];
        // errors[trial][kind][L]
        std::vector<std::vector<std::vector<double>>> errors(
            static_cast<std::size_t>(cfg.trials));
        parallel_for(cfg.trials, [&](Index trial) {
            const GraphSignal x =
                k_sparse_signal(*d, cfg.signal.sparsity,
                                derive_seed(cfg.signal.seed, static_cast<std::uint64_t>(trial)));
            const std::uint64_t noise_seed = derive_seed(
                cfg.seed, (sigma_idx * static_cast<std::size_t>(cfg.trials) +
                           static_cast<std::size_t>(trial)) * 2 + 1);
            const GraphSignal y = add_noise(x, sigma, noise_seed);
            auto& per_kind = errors[static_cast<std::size_t>(trial)];
            per_kind.assign(cfg.shift_kinds.size(),
                            std::vector<double>(static_cast<std::size_t>(l_count), 0.0));
            const double ref = x.values.norm();
            for (std::size_t ki = 0; ki < shifts.size(); ++ki)
                for (Index L = cfg.taps_min; L <= cfg.taps_max; ++L) {
                    WienerProblem p{shifts[ki], x, y, L, /*allow_pinv=*/true};
                    const WienerSolution sol = wiener_taps_ls(p);
                    per_kind[ki][static_cast<std::size_t>(L - cfg.taps_min)] =
                        sol.residual / ref;
                }
        });
        for (Index trial = 0; trial < cfg.trials; ++trial)
            for (std::size_t ki = 0; ki < cfg.shift_kinds.size(); ++ki)
                for (std::size_t li = 0; li < static_cast<std::size_t>(l_count); ++li)
                    out.mean_error[sigma_idx][ki][li] +=
                        errors[static_cast<std::size_t>(trial)][ki][li] /
                        static_cast<double>(cfg.trials);
    }
    return out;
}

struct SpectrumReportResult {
    CVector lambda; ///< canonical order
    bool directed;
};

inline SpectrumReportResult run_spectrum_report(const ExperimentConfig& cfg) {
    validate(cfg);
    const Graph g = cfg.graph.build();
    const EigenDecomposition d = eigendecompose(g);
    return SpectrumReportResult{d.lambda, g.directed};
}

// ---- CSV + manifest emission ----------------------------------------------------

namespace detail {

inline std::string kind_file_tag(ShiftKind k) { return to_string(k); }

} // namespace detail

/// Runs the configured experiment and writes its plot-ready CSV tables plus
/// a manifest.json (config echo, library version, wall time) into out_dir.
/// Returns the written file names.
inline std::vector<std::string> run_and_write(const ExperimentConfig& cfg) {
    validate(cfg);
    namespace fs = std::filesystem;
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(cfg.out_dir);
    std::vector<std::string> written;
    auto out_path = [&](const std::string& name) {
        written.push_back(name);
        return (fs::path(cfg.out_dir) / name).string();
    };

    switch (cfg.experiment) {
        case ExperimentKind::EnergyVsShift: {
            const EnergyVsShiftResult res = run_energy_vs_shift(cfg);
            for (std::size_t ki = 0; ki < res.kinds.size(); ++ki) {
                auto out = detail::open_out(
                    out_path("energy_vs_shift_" + detail::kind_file_tag(res.kinds[ki]) + ".csv"));
                out << "shift_kind,k,fourier_energy\n";
                for (std::size_t k = 0; k < res.fourier_energy[ki].size(); ++k)
                    out << to_string(res.kinds[ki]) << "," << k << ","
                        << detail::format_double(res.fourier_energy[ki][k]) << "\n";
            }
            break;
        }
        case ExperimentKind::EnergyShiftVsFourier: {
            const EnergyShiftVsFourierResult res = run_energy_shift_vs_fourier(cfg);
            auto out = detail::open_out(out_path("energy_shift_vs_fourier.csv"));
            out << "k,shift_energy,fourier_energy\n";
            for (std::size_t k = 0; k < res.shift_energy.size(); ++k)
                out << k << "," << detail::format_double(res.shift_energy[k]) << ","
                    << detail::format_double(res.fourier_energy[k]) << "\n";
            break;
        }
        case ExperimentKind::WienerTapSweep: {
            const WienerSweepResult res = run_wiener_tap_sweep(cfg);
            for (std::size_t ki = 0; ki < res.kinds.size(); ++ki) {
                auto out = detail::open_out(
                    out_path("wiener_tap_sweep_" + detail::kind_file_tag(res.kinds[ki]) + ".csv"));
                out << "shift_kind,sigma,L,mean_reconstruction_error\n";
                for (std::size_t si = 0; si < res.sigmas.size(); ++si)
                    for (std::size_t li = 0; li < res.mean_error[si][ki].size(); ++li)
                        out << to_string(res.kinds[ki]) << ","
                            << detail::format_double(res.sigmas[si]) << ","
                            << (res.taps_min + static_cast<Index>(li)) << ","
                            << detail::format_double(res.mean_error[si][ki][li]) << "\n";
            }
            break;
        }
        case ExperimentKind::SpectrumReport: {
            const SpectrumReportResult res = run_spectrum_report(cfg);
            auto out = detail::open_out(out_path("spectrum_report.csv"));
            out << "index,re,im,abs\n";
            for (Index i = 0; i < res.lambda.size(); ++i)
                out << i << "," << detail::format_double(res.lambda(i).real()) << ","
                    << detail::format_double(res.lambda(i).imag()) << ","
                    << detail::format_double(std::abs(res.lambda(i))) << "\n";
            break;
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json manifest{{"config", config_to_json(cfg)},
                            {"version", kVersion},
                            {"wall_time_seconds", wall},
                            {"outputs", written}};
    auto mf = detail::open_out((fs::path(cfg.out_dir) / "manifest.json").string());
    mf << manifest.dump(2) << "\n";
    written.push_back("manifest.json");
    return written;
}

} // namespace gsx
