#include "qrelax/run.hpp"

#include <cmath>
#include <complex>
#include <ctime>
#include <stdexcept>

#include "qrelax/analytic.hpp"
#include "qrelax/boson.hpp"
#include "qrelax/goe.hpp"
#include "qrelax/matrix_io.hpp"
#include "qrelax/kernels.hpp"
#include "qrelax/oscillator.hpp"
#include "qrelax/spectral.hpp"

namespace qrelax {

const char* version() { return "0.1.0"; }

void RunConfig::validate() const {
    if (tau_steps < 2) throw ConfigError("tau-steps must be >= 2");
    if (!(tau_max > 0.0)) throw ConfigError("tau-max must be > 0");
    if (out_path.empty()) throw ConfigError("an output path is required (--out)");
    if (realizations == 0) throw ConfigError("realizations must be >= 1");
    switch (mode) {
        case RunMode::Goe:
            if (dim == 0) throw ConfigError("goe: --dim must be >= 1");
            if (!(lambda > 0.0)) throw ConfigError("goe: --lambda must be > 0");
            break;
        case RunMode::Boson:
            if (n_bosons == 0 || n_levels == 0)
                throw ConfigError("boson: --n-bosons and --n-levels must be >= 1");
            break;
        case RunMode::Oscillator:
            if (n_max < 2) throw ConfigError("oscillator: --n-max must be >= 2");
            if (!(omega > 0.0)) throw ConfigError("oscillator: --omega must be > 0");
            break;
        case RunMode::External:
            if (hamiltonian_file.empty())
                throw ConfigError(
                    "external: --hamiltonian-file is required\n"
                    "usage: qrelax external --hamiltonian-file H.qrxm --observable-file Q.qrxm "
                    "--out run.csv");
            if (observable_file.empty())
                throw ConfigError("external: --observable-file is required");
            break;
    }
}

namespace {

std::vector<std::size_t> select_initial(const ObservableSpectrum& q,
                                        const std::vector<InitialSelector>& sel,
                                        const InitialSelector& fallback) {
    std::vector<std::size_t> out;
    const auto pick = [&](const InitialSelector& s) {
        if (s.kind == InitialSelector::Kind::Index) {
            if (s.index >= q.dim()) throw ConfigError("initial index out of range");
            return s.index;
        }
        return nearest_index(q, s.q_value);
    };
    if (sel.empty()) {
        out.push_back(pick(fallback));
        return out;
    }
    for (const auto& s : sel) out.push_back(pick(s));
    return out;
}

std::string state_suffix(std::size_t a0, bool multi) {
    return multi ? "_a" + std::to_string(a0) : std::string();
}

void append_record(TimeSeries& ts, const RelaxationRecord& rec, const std::string& sfx,
                   bool debug) {
    ts.add_channel("survival" + sfx, rec.survival);
    ts.add_channel("q" + sfx, rec.q);
    ts.add_channel("dq2" + sfx, rec.dq2);
    if (!rec.p.empty()) ts.add_channel("p" + sfx, rec.p);
    if (!rec.p2.empty()) ts.add_channel("p2" + sfx, rec.p2);
    ts.add_channel("npc" + sfx, rec.npc);
    ts.add_channel("re_f" + sfx, rec.re_f);
    ts.add_channel("im_f" + sfx, rec.im_f);
    if (debug && !rec.p.empty()) {
        // finite-difference cross-check of the momentum channel
        std::vector<double> fd(rec.q.size(), 0.0);
        const double dtau = rec.tau.size() > 1 ? rec.tau[1] - rec.tau[0] : 1.0;
        for (std::size_t j = 1; j + 1 < rec.q.size(); ++j)
            fd[j] = (rec.q[j + 1] - rec.q[j - 1]) / (2.0 * dtau);
        if (rec.q.size() > 1) {
            fd[0] = (rec.q[1] - rec.q[0]) / dtau;
            fd.back() = (rec.q[rec.q.size() - 1] - rec.q[rec.q.size() - 2]) / dtau;
        }
        ts.add_channel("p_fd" + sfx, std::move(fd));
    }
}

void append_analytic(TimeSeries& ts, const std::vector<double>& tau, double q0,
                     std::size_t dim, double trq2, const std::string& sfx) {
    const UniversalChannels u = universal_channels(tau, q0, dim, trq2);
    ts.add_channel("survival_analytic" + sfx, u.survival);
    ts.add_channel("q_analytic" + sfx, u.q);
    ts.add_channel("dq2_analytic" + sfx, u.dq2);
    ts.add_channel("p_analytic" + sfx, u.p);
    ts.add_channel("p2_analytic" + sfx, u.p2);
    ts.add_channel("npc_analytic" + sfx, u.npc);
}

void accumulate(std::vector<double>& acc, const std::vector<double>& v) {
    if (acc.empty()) acc.assign(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
}

void scale(std::vector<double>& v, double s) {
    for (double& x : v) x *= s;
}

void average_into(RelaxationRecord& mean, const RelaxationRecord& rec) {
    accumulate(mean.survival, rec.survival);
    accumulate(mean.q, rec.q);
    accumulate(mean.dq2, rec.dq2);
    accumulate(mean.p, rec.p);
    accumulate(mean.p2, rec.p2);
    accumulate(mean.npc, rec.npc);
    accumulate(mean.re_f, rec.re_f);
    accumulate(mean.im_f, rec.im_f);
    accumulate(mean.off_re2, rec.off_re2);
    accumulate(mean.off_im2, rec.off_im2);
}

void finish_average(RelaxationRecord& mean, double inv) {
    scale(mean.survival, inv);
    scale(mean.q, inv);
    scale(mean.dq2, inv);
    scale(mean.p, inv);
    scale(mean.p2, inv);
    scale(mean.npc, inv);
    scale(mean.re_f, inv);
    scale(mean.im_f, inv);
    scale(mean.off_re2, inv);
    scale(mean.off_im2, inv);
}

std::string stem_of(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

std::string tau_tag(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", tau);
    return buf;
}

void write_snapshot_files(const std::string& stem, const ObservableSpectrum& q,
                          const RelaxationRecord& rec, const std::string& sfx) {
    for (const auto& [tau, col] : rec.snapshots) {
        const std::string tag = sfx + "_tau" + tau_tag(tau);
        {
            const StrengthFunction g = strength_function(q, col);
            TimeSeries ts;
            ts.grid_name = "q";
            ts.grid = g.centers;
            ts.add_channel("mass", g.mass);
            write_csv(ts, stem + "_strength" + tag + ".csv");
            TimeSeries sm;
            sm.grid_name = "q";
            sm.grid = g.smoothed_q;
            sm.add_channel("smoothed_offdiag", g.smoothed_offdiag);
            write_csv(sm, stem + "_strength_smooth" + tag + ".csv");
        }
        for (const auto part : {AmplitudePart::Real, AmplitudePart::Imag}) {
            if (col.entries.size() < 101) continue;
            const Histogram h = amplitude_histogram(col, part);
            TimeSeries ts;
            ts.grid_name = "x";
            ts.grid = h.centers;
            ts.add_channel("density", h.density);
            ts.add_channel("scaled_x", h.scaled_x);
            ts.add_channel("scaled_density", h.scaled_density);
            const char* pname = part == AmplitudePart::Real ? "re" : "im";
            write_csv(ts, stem + "_amp_hist_" + pname + tag + ".csv");
        }
    }
}

void add_common_metadata(TimeSeries& ts, const RunConfig& cfg, const char* mode) {
    ts.metadata.emplace_back("mode", mode);
    ts.metadata.emplace_back("version", version());
    ts.metadata.emplace_back("seed", std::to_string(cfg.seed));
    ts.metadata.emplace_back("tau_max", format_double(cfg.tau_max));
    ts.metadata.emplace_back("tau_steps", std::to_string(cfg.tau_steps));
    ts.metadata.emplace_back("kernels", kernels().name);
    if (!cfg.deterministic) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc;
        gmtime_r(&now, &tm_utc);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        ts.metadata.emplace_back("timestamp", buf);
    }
}

RelaxationOptions options_from(const RunConfig& cfg) {
    RelaxationOptions opt;
    opt.tau_max = cfg.tau_max;
    opt.tau_steps = cfg.tau_steps;
    opt.snapshot_taus = cfg.snapshot_taus;
    return opt;
}

TimeSeries goe_series(const RunConfig& cfg) {
    const ObservableSpectrum q = uniform_traceless_observable(cfg.dim, cfg.q_scale);
    const auto states = select_initial(q, cfg.initial, InitialSelector{});
    const RelaxationOptions opt = options_from(cfg);

    TimeSeries ts;
    add_common_metadata(ts, cfg, "goe");
    ts.metadata.emplace_back("dim", std::to_string(cfg.dim));
    ts.metadata.emplace_back("lambda_param", format_double(cfg.lambda));
    ts.metadata.emplace_back("realizations", std::to_string(cfg.realizations));

    std::vector<RelaxationRecord> means(states.size());
    double lambda_emp = 0.0;
    for (std::size_t r = 0; r < cfg.realizations; ++r) {
        const HermitianOperator h =
            sample_goe({cfg.dim, cfg.lambda, cfg.seed + static_cast<std::uint64_t>(r)});
        const double lam = spectral_width(h);
        lambda_emp += lam;
        std::vector<double> widths(states.size());
        for (std::size_t s = 0; s < states.size(); ++s) widths[s] = state_width(h, states[s]);
        const Spectrum spec = diagonalize(h);
        for (std::size_t s = 0; s < states.size(); ++s) {
            RelaxationRecord rec = run_relaxation(spec, q, states[s], lam, widths[s], opt);
            if (cfg.realizations == 1) {
                means[s] = std::move(rec);
            } else {
                average_into(means[s], rec);
                means[s].tau = rec.tau;
                means[s].a0 = rec.a0;
                means[s].q0 = rec.q0;
                means[s].lambda = rec.lambda;
                means[s].lambda_a = rec.lambda_a;
            }
        }
    }
    lambda_emp /= static_cast<double>(cfg.realizations);
    ts.metadata.emplace_back("lambda", format_double(lambda_emp));

    ts.grid = means.front().tau;
    const bool multi = states.size() > 1;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (cfg.realizations > 1) finish_average(means[s], 1.0 / static_cast<double>(cfg.realizations));
        const std::string sfx = state_suffix(states[s], multi);
        ts.metadata.emplace_back("a0" + sfx, std::to_string(means[s].a0));
        ts.metadata.emplace_back("q0" + sfx, format_double(means[s].q0));
        ts.metadata.emplace_back("lambda_a" + sfx, format_double(means[s].lambda_a));
        append_record(ts, means[s], sfx, cfg.debug);
        append_analytic(ts, ts.grid, means[s].q0, cfg.dim, q.trace_sq_over_dim(), sfx);
        if (cfg.realizations == 1) write_snapshot_files(stem_of(cfg.out_path), q, means[s], sfx);
    }
    return ts;
}

TimeSeries boson_series(const RunConfig& cfg) {
    BosonModelParams params;
    params.n_bosons = cfg.n_bosons;
    params.n_levels = cfg.n_levels;
    params.v = cfg.v;
    params.seed = cfg.seed;

    // Initial-state fallback for the boson mode is the lowest configuration.
    InitialSelector fallback;
    fallback.kind = InitialSelector::Kind::Index;
    fallback.index = 0;

    const std::size_t dim = boson_dimension(cfg.n_bosons, cfg.n_levels);
    const ObservableSpectrum q = uniform_traceless_observable(dim, cfg.q_scale);
    const auto states = select_initial(q, cfg.initial, fallback);
    const RelaxationOptions opt = options_from(cfg);

    TimeSeries ts;
    add_common_metadata(ts, cfg, "boson");
    ts.metadata.emplace_back("n_bosons", std::to_string(cfg.n_bosons));
    ts.metadata.emplace_back("n_levels", std::to_string(cfg.n_levels));
    ts.metadata.emplace_back("dim", std::to_string(dim));
    ts.metadata.emplace_back("v", format_double(cfg.v));

    if (!cfg.export_hamiltonian.empty()) {
        const OccupationBasis basis = enumerate_basis(params);
        const HermitianOperator h = build_hamiltonian(params, basis);
        write_matrix(h, cfg.export_hamiltonian, MatrixKind::Coordinate, true);
    }

    const bool multi = states.size() > 1;
    bool first = true;
    for (const std::size_t a0 : states) {
        const BosonRelaxation br = run_boson_relaxation(params, a0, opt);
        const std::string sfx = state_suffix(a0, multi);
        if (first) {
            ts.grid = br.record.tau;
            ts.metadata.emplace_back("lambda", format_double(br.lambda));
            ts.metadata.emplace_back("lambda0", format_double(br.lambda0));
            ts.add_channel("form_factor_re", br.form_factor.re);
            ts.add_channel("form_factor_im", br.form_factor.im);
            ts.add_channel("form_factor_sq", br.form_factor.abs2);
            first = false;
        }
        ts.metadata.emplace_back("a0" + sfx, std::to_string(a0));
        ts.metadata.emplace_back("lambda_a" + sfx, format_double(br.record.lambda_a));
        // per-state rescaled time tau_a = lambda_a t
        std::vector<double> tau_a(br.record.tau.size());
        for (std::size_t j = 0; j < tau_a.size(); ++j)
            tau_a[j] = br.record.tau[j] * br.record.lambda_a / br.lambda;
        ts.add_channel("tau_a" + sfx, std::move(tau_a));
        append_record(ts, br.record, sfx, cfg.debug);
        write_snapshot_files(stem_of(cfg.out_path), q, br.record, sfx);
    }
    return ts;
}

TimeSeries oscillator_series(const RunConfig& cfg) {
    TimeSeries ts;
    add_common_metadata(ts, cfg, "oscillator");
    ts.metadata.emplace_back("omega", format_double(cfg.omega));
    ts.metadata.emplace_back("n_max", std::to_string(cfg.n_max));

    // grid in scaled time tau = omega t
    std::vector<double> t_grid(cfg.tau_steps);
    const double dtau = cfg.tau_max / static_cast<double>(cfg.tau_steps - 1);
    ts.grid.resize(cfg.tau_steps);
    for (std::size_t j = 0; j < cfg.tau_steps; ++j) {
        ts.grid[j] = dtau * static_cast<double>(j);
        t_grid[j] = ts.grid[j] / cfg.omega;
    }

    if (cfg.squeezed) {
        SqueezedParams p{cfg.a_position, cfg.omega, cfg.n_max};
        ts.metadata.emplace_back("a_position", format_double(cfg.a_position));
        const OscillatorSeries s = squeezed_dynamics(p, t_grid);
        ts.add_channel("q", s.q);
        ts.add_channel("p", s.p);
        ts.add_channel("dq2", s.dq2);
        ts.add_channel("dp2", s.dp2);
        ts.add_channel("cov_qp", s.cov_qp);
        ts.add_channel("survival", s.survival);
        // classical oscillation of the regularized initial moments
        std::vector<double> qc(t_grid.size()), pc(t_grid.size());
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            qc[j] = s.q[0] * std::cos(cfg.omega * t_grid[j]);
            pc[j] = -s.q[0] * cfg.omega * std::sin(cfg.omega * t_grid[j]);
        }
        ts.add_channel("q_closed", std::move(qc));
        ts.add_channel("p_closed", std::move(pc));
        return ts;
    }

    CoherentParams p{{cfg.alpha_re, cfg.alpha_im}, cfg.omega, cfg.n_max};
    ts.metadata.emplace_back("alpha_re", format_double(cfg.alpha_re));
    ts.metadata.emplace_back("alpha_im", format_double(cfg.alpha_im));
    const OscillatorSeries num = coherent_numeric(p, t_grid);
    const OscillatorSeries closed = coherent_dynamics(p, t_grid);
    ts.add_channel("q", num.q);
    ts.add_channel("p", num.p);
    ts.add_channel("dq2", num.dq2);
    ts.add_channel("dp2", num.dp2);
    ts.add_channel("survival", num.survival);
    ts.add_channel("q_closed", closed.q);
    ts.add_channel("p_closed", closed.p);
    ts.add_channel("dq2_closed", closed.dq2);
    ts.add_channel("dp2_closed", closed.dp2);
    ts.add_channel("survival_closed", closed.survival);
    return ts;
}

TimeSeries external_series(const RunConfig& cfg) {
    const HermitianOperator h = ingest_matrix(cfg.hamiltonian_file);
    const HermitianOperator qop = ingest_matrix(cfg.observable_file);
    if (h.dim() != qop.dim())
        throw IngestError("hamiltonian and observable dimensions differ (" +
                          std::to_string(h.dim()) + " vs " + std::to_string(qop.dim()) + ")");

    RelaxationOptions opt = options_from(cfg);
    if (opt.snapshot_taus.empty()) opt.snapshot_taus = {1.0, 6.0};

    const ExternalAnalysis ea = external_analysis(h, qop, cfg.initial, opt);

    TimeSeries ts;
    add_common_metadata(ts, cfg, "external");
    ts.metadata.emplace_back("dim", std::to_string(h.dim()));
    ts.metadata.emplace_back("lambda", format_double(ea.lambda));
    ts.metadata.emplace_back("var_diag", format_double(ea.var_diag));
    ts.metadata.emplace_back("mean_state_width_sq", format_double(ea.mean_state_width_sq));
    ts.metadata.emplace_back("rotation_offdiag", format_double(ea.rotation_offdiag));

    ts.grid = ea.records.front().tau;
    const bool multi = ea.records.size() > 1;
    for (const auto& rec : ea.records) {
        const std::string sfx = state_suffix(rec.a0, multi);
        ts.metadata.emplace_back("a0" + sfx, std::to_string(rec.a0));
        ts.metadata.emplace_back("q0" + sfx, format_double(rec.q0));
        ts.metadata.emplace_back("lambda_a" + sfx, format_double(rec.lambda_a));
        append_record(ts, rec, sfx, cfg.debug);
        write_snapshot_files(stem_of(cfg.out_path), ea.q, rec, sfx);
    }
    return ts;
}

} // namespace

ExternalAnalysis external_analysis(const HermitianOperator& h, const HermitianOperator& q_op,
                                   const std::vector<InitialSelector>& initial,
                                   const RelaxationOptions& opt) {
    const std::size_t n = h.dim();
    if (q_op.dim() != n)
        throw IngestError("external_analysis: operator dimensions differ");

    // Observable eigenbasis: ascending eigenvalues define the state ordering.
    const Spectrum qspec = diagonalize(q_op);
    ExternalAnalysis ea;
    ea.q.values = qspec.energies;
    ea.q.basis_label = "observable";

    // distance of the rotation from the identity, up to column signs
    double maxdev = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double dev = (i == j) ? std::fabs(std::fabs(qspec.vectors(j, j)) - 1.0)
                                        : std::fabs(qspec.vectors(i, j));
            maxdev = std::max(maxdev, dev);
        }
    ea.rotation_offdiag = maxdev;

    // H' = V^T H V in the observable eigenbasis
    HermitianOperator hq;
    hq.basis_label = "observable";
    {
        Matrix tmp(n, n);
        gemm('N', 1.0, h.mat, qspec.vectors.data(), n, n, 0.0, tmp.data());
        hq.mat = Matrix(n, n);
        gemm('T', 1.0, qspec.vectors, tmp.data(), n, n, 0.0, hq.mat.data());
        // the rotation of an exactly symmetric matrix is symmetric up to
        // rounding; restore exactness
        symmetrize(hq.mat);
    }

    ea.lambda = spectral_width(hq);
    ea.var_diag = diagonal_variance(hq);
    {
        double acc = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            const double w = state_width(hq, a);
            acc += w * w;
        }
        ea.mean_state_width_sq = acc / static_cast<double>(n);
    }

    std::vector<std::size_t> states;
    {
        const auto pick = [&](const InitialSelector& s) -> std::size_t {
            if (s.kind == InitialSelector::Kind::Index) {
                if (s.index >= n) throw ConfigError("initial index out of range");
                return s.index;
            }
            return nearest_index(ea.q, s.q_value);
        };
        if (initial.empty()) {
            states.push_back(pick(InitialSelector{}));
        } else {
            for (const auto& s : initial) states.push_back(pick(s));
        }
    }

    const Spectrum spec = diagonalize(hq);
    ea.h_q = std::move(hq);
    for (const std::size_t a0 : states) {
        const double la = state_width(ea.h_q, a0);
        ea.records.push_back(run_relaxation(spec, ea.q, a0, ea.lambda, la, opt));
    }
    return ea;
}

void run(const RunConfig& cfg) {
    cfg.validate();
    TimeSeries ts;
    switch (cfg.mode) {
        case RunMode::Goe: ts = goe_series(cfg); break;
        case RunMode::Boson: ts = boson_series(cfg); break;
        case RunMode::Oscillator: ts = oscillator_series(cfg); break;
        case RunMode::External: ts = external_series(cfg); break;
    }
    if (cfg.format == OutputFormat::Csv)
        write_csv(ts, cfg.out_path);
    else
        write_json(ts, cfg.out_path);
}

} // namespace qrelax
