#include "skewrd/simulator.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <string>

#include "skewrd/bvp_oracle.hpp"
#include "skewrd/error.hpp"
#include "skewrd/sampling.hpp"
#include "skewrd/sine_transform.hpp"

namespace skewrd {

FieldState zero_state(const ModelParameters& params, Eigen::Index nx_I, Eigen::Index nx_S,
                      Eigen::Index ny) {
    FieldState s;
    for (auto& f : s.fields) f = RealField(params.ell, params.L, nx_I, nx_S, ny);
    return s;
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::imex: return "imex";
        case Scheme::crank_nicolson: return "crank-nicolson";
        case Scheme::fully_implicit_linear: return "fully-implicit-linear";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "imex") return Scheme::imex;
    if (name == "crank-nicolson") return Scheme::crank_nicolson;
    if (name == "fully-implicit-linear") return Scheme::fully_implicit_linear;
    fail(ErrorCode::config_value,
         "scheme '" + name + "' is not one of imex, crank-nicolson, fully-implicit-linear");
}

const char* to_string(InterfaceForm f) {
    return f == InterfaceForm::direct ? "direct" : "substituted";
}

InterfaceForm parse_interface_form(const std::string& name) {
    if (name == "direct") return InterfaceForm::direct;
    if (name == "substituted") return InterfaceForm::substituted;
    fail(ErrorCode::config_value, "interface form '" + name + "' is not direct or substituted");
}

void validate(const RunConfig& cfg) {
    if (!(cfg.dt > 0.0)) fail(ErrorCode::config_value, "dt must be > 0");
    if (!(cfg.t_end >= 0.0)) fail(ErrorCode::config_value, "t_end must be >= 0");
    if (cfg.nx_I < 16 || cfg.nx_S < 16 || cfg.ny < 16) {
        fail(ErrorCode::config_value, "nx_I, nx_S and ny must each be >= 16");
    }
    if (cfg.output_every < 1) fail(ErrorCode::config_value, "output_every must be >= 1");
    if (!(cfg.max_growth > 1.0)) fail(ErrorCode::config_value, "max_growth must be > 1");
    const double steps = cfg.t_end / cfg.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
        fail(ErrorCode::config_value, "t_end must be an integer multiple of dt");
    }
}

namespace {

long step_count(const RunConfig& cfg) { return std::lround(cfg.t_end / cfg.dt); }

RealField smooth_noise(std::uint64_t seed, const ModelParameters& p, const RunConfig& cfg) {
    Rng rng(seed);
    RealField f(p.ell, p.L, cfg.nx_I, cfg.nx_S, cfg.ny);
    for (int k = 1; k <= 3; ++k) {
        const double a = uniform(rng, -1.0, 1.0), b = uniform(rng, -1.0, 1.0);
        for (Eigen::Index j = 0; j <= cfg.ny; ++j) {
            const double sy = std::sin(k * pi * f.I.y(j));
            for (Eigen::Index i = 0; i <= cfg.nx_I; ++i)
                f.I.values(i, j) += a * sy * std::sin(pi * (f.I.x(i) + p.ell) / (p.ell + p.L));
            for (Eigen::Index i = 0; i <= cfg.nx_S; ++i)
                f.S.values(i, j) += b * sy * std::sin(pi * (f.S.x(i) + p.ell) / (p.ell + p.L));
        }
    }
    return f;
}

void zero_outer_boundary(RealField& f) {
    f.I.values.row(0).setZero();
    f.S.values.row(f.S.nx()).setZero();
    for (auto* g : {&f.I, &f.S}) {
        g->values.col(0).setZero();
        g->values.col(g->ny()).setZero();
    }
}

}  // namespace

FieldState initial_state(const InitialCondition& ic, const ModelParameters& params,
                         const RunConfig& cfg) {
    validate(params);
    validate(cfg);
    FieldState s = zero_state(params, cfg.nx_I, cfg.nx_S, cfg.ny);
    for (int e = 0; e < 6; ++e) {
        const Expression expr = Expression::parse(ic.expressions[static_cast<std::size_t>(e)]);
        RealField& f = s.fields[static_cast<std::size_t>(e % 3)];
        GridFunction2D<double>& g = e < 3 ? f.I : f.S;
        for (Eigen::Index i = 0; i <= g.nx(); ++i)
            for (Eigen::Index j = 0; j <= g.ny(); ++j) g.values(i, j) = expr(g.x(i), g.y(j));
    }
    if (ic.noise != 0.0) {
        for (int sp = 0; sp < 3; ++sp) {
            const RealField n = smooth_noise(cfg.seed + 7919ULL * static_cast<std::uint64_t>(sp), params, cfg);
            s.fields[static_cast<std::size_t>(sp)].I.values += ic.noise * n.I.values;
            s.fields[static_cast<std::size_t>(sp)].S.values += ic.noise * n.S.values;
        }
    }
    for (auto& f : s.fields) zero_outer_boundary(f);
    return s;
}

struct Stepper::Impl {
    ModelParameters params;
    RunConfig cfg;
    Eigen::Index nI, nS, ny;
    int K;
    double hI, hS;
    double theta;
    std::array<SpeciesCoefficients, 3> coeffs;
    Eigen::MatrixXd sines;
    Eigen::ArrayXd kk;  // k^2 pi^2 per mode
    Eigen::VectorXd mass_y;
    Eigen::Matrix<double, 6, 6> source_map;
    Eigen::Matrix3d couple_I = Eigen::Matrix3d::Zero(), couple_S = Eigen::Matrix3d::Zero();
    std::array<Eigen::MatrixXd, 3> mI, mS;  // mode coefficients, rows are x nodes
    std::vector<TwoIntervalSolver<double>> solvers;  // species-major, K per species
    std::vector<std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>>> coupled;

    Impl(const ModelParameters& p, const RunConfig& c) : params(p), cfg(c) {
        validate(params);
        validate(cfg);
        nI = cfg.nx_I;
        nS = cfg.nx_S;
        ny = cfg.ny;
        K = static_cast<int>(ny - 1);
        hI = params.ell / static_cast<double>(nI);
        hS = params.L / static_cast<double>(nS);
        theta = cfg.scheme == Scheme::crank_nicolson ? 0.5 : 1.0;
        for (int s = 0; s < 3; ++s) coeffs[s] = species_coefficients(params, static_cast<Species>(s));
        sines = sine_matrix(ny, K);
        kk.resize(K);
        for (int k = 1; k <= K; ++k) kk(k - 1) = static_cast<double>(k) * k * pi_sq;
        mass_y = sines.colwise().sum().transpose() / static_cast<double>(ny);

        for (int q = 0; q < 6; ++q) {
            double unit[6] = {0, 0, 0, 0, 0, 0};
            unit[q] = 1.0;
            const InterfaceDerivatives d{unit[0], unit[1], unit[2], unit[3], unit[4], unit[5]};
            const InterfaceSources src = cfg.interface_form == InterfaceForm::direct
                                             ? interface_sources(params, d)
                                             : interface_sources_substituted(params, d);
            for (int e = 0; e < 6; ++e) source_map(e, q) = src[static_cast<std::size_t>(e)];
        }
        couple_I(0, 1) = params.sigma_A_minus * params.f_A_minus;
        couple_I(1, 0) = params.tau_minus * params.sigma_J_minus;
        couple_S(0, 1) = params.f_A_plus * params.sigma_A_plus;
        couple_S(1, 0) = params.tau_plus * params.sigma_J_plus;

        for (int s = 0; s < 3; ++s) {
            mI[s] = Eigen::MatrixXd::Zero(nI + 1, K);
            mS[s] = Eigen::MatrixXd::Zero(nS + 1, K);
        }
        if (cfg.scheme == Scheme::fully_implicit_linear) {
            for (int k = 1; k <= K; ++k) coupled.push_back(factor_coupled(k));
        } else {
            const double td = theta * cfg.dt;
            solvers.reserve(static_cast<std::size_t>(3 * K));
            for (int s = 0; s < 3; ++s) {
                const SpeciesCoefficients& c = coeffs[s];
                for (int k = 1; k <= K; ++k) {
                    const double wm = kk(k - 1) + c.c_minus / c.d_minus + 1.0 / (td * c.d_minus);
                    const double wp = kk(k - 1) + c.c_plus / c.d_plus + 1.0 / (td * c.d_plus);
                    solvers.emplace_back(wm, wp, c.weight_I, c.weight_S, params.ell, params.L, nI, nS);
                }
            }
        }
    }

    Eigen::Index block() const { return nI + nS; }

    // One-sided interface derivatives per mode, rows ordered J_I A_I H_I J_S A_S H_S.
    Eigen::MatrixXd interface_derivatives() const {
        Eigen::MatrixXd d(6, K);
        for (int s = 0; s < 3; ++s) {
            d.row(s) = (3.0 * mI[s].row(nI) - 4.0 * mI[s].row(nI - 1) + mI[s].row(nI - 2)) / (2.0 * hI);
            d.row(3 + s) = (-3.0 * mS[s].row(0) + 4.0 * mS[s].row(1) - mS[s].row(2)) / (2.0 * hS);
        }
        return d;
    }

    Eigen::MatrixXd sources() const { return source_map * interface_derivatives(); }

    // d (D2 - k^2 pi^2) u - c u on interior rows; boundary and trace rows zero.
    Eigen::MatrixXd apply_diagonal(const Eigen::MatrixXd& u, double d, double c, double h) const {
        const Eigen::Index n = u.rows() - 1;
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(u.rows(), u.cols());
        out.middleRows(1, n - 1) =
            (d / (h * h)) * (u.topRows(n - 1) - 2.0 * u.middleRows(1, n - 1) + u.bottomRows(n - 1));
        out.middleRows(1, n - 1).array() -=
            u.middleRows(1, n - 1).array().rowwise() * (d * kk.transpose() + c);
        return out;
    }

    // Explicit coupling plus interface sources for species s.
    void explicit_forcing(int s, const Eigen::MatrixXd& src, Eigen::MatrixXd& fI,
                          Eigen::MatrixXd& fS) const {
        fI = Eigen::MatrixXd::Zero(nI + 1, K);
        fS = Eigen::MatrixXd::Zero(nS + 1, K);
        for (int q = 0; q < 3; ++q) {
            if (couple_I(s, q) != 0.0) fI += couple_I(s, q) * mI[q];
            if (couple_S(s, q) != 0.0) fS += couple_S(s, q) * mS[q];
        }
        fI.rowwise() += src.row(s);
        fS.rowwise() += src.row(3 + s);
    }

    void step_split() {
        const double dt = cfg.dt;
        const Eigen::MatrixXd src = sources();
        std::array<Eigen::MatrixXd, 3> nextI, nextS;
        for (int s = 0; s < 3; ++s) {
            const SpeciesCoefficients& c = coeffs[s];
            Eigen::MatrixXd fI, fS;
            explicit_forcing(s, src, fI, fS);
            Eigen::MatrixXd rI = mI[s] + dt * fI, rS = mS[s] + dt * fS;
            if (theta < 1.0) {
                rI += (1.0 - theta) * dt * apply_diagonal(mI[s], c.d_minus, c.c_minus, hI);
                rS += (1.0 - theta) * dt * apply_diagonal(mS[s], c.d_plus, c.c_plus, hS);
            }
            rI *= -1.0 / (theta * dt * c.d_minus);
            rS *= -1.0 / (theta * dt * c.d_plus);
            nextI[s].resize(nI + 1, K);
            nextS[s].resize(nS + 1, K);
            for (int k = 0; k < K; ++k) {
                const auto [hIk, hSk] = solvers[static_cast<std::size_t>(s * K + k)].solve(rI.col(k), rS.col(k));
                nextI[s].col(k) = hIk;
                nextS[s].col(k) = hSk;
            }
        }
        mI = std::move(nextI);
        mS = std::move(nextS);
    }

    std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> factor_coupled(int k) const {
        const Eigen::Index n = block();
        const double dt = cfg.dt, k2 = static_cast<double>(k) * k * pi_sq;
        std::vector<Eigen::Triplet<double>> t;
        auto add = [&](Eigen::Index r, Eigen::Index c, double v) {
            if (v != 0.0) t.emplace_back(r, c, v);
        };
        auto add_derivative = [&](Eigen::Index row, int q, double scale) {
            if (q < 3) {
                const Eigen::Index b = q * n;
                add(row, b + nI - 1, scale * 3.0 / (2.0 * hI));
                add(row, b + nI - 2, scale * -4.0 / (2.0 * hI));
                add(row, b + nI - 3, scale * 1.0 / (2.0 * hI));
            } else {
                const Eigen::Index b = (q - 3) * n;
                add(row, b + nI, scale * -3.0 / (2.0 * hS));
                add(row, b + nI + 1, scale * 4.0 / (2.0 * hS));
                add(row, b + nI + 2, scale * -1.0 / (2.0 * hS));
            }
        };
        for (int s = 0; s < 3; ++s) {
            const SpeciesCoefficients& c = coeffs[s];
            const Eigen::Index b = s * n;
            const double iI = c.d_minus / (hI * hI), iS = c.d_plus / (hS * hS);
            for (Eigen::Index i = 1; i < nI; ++i) {
                const Eigen::Index r = b + i - 1;
                add(r, r, 1.0 + dt * (2.0 * iI + c.d_minus * k2 + c.c_minus));
                if (i > 1) add(r, r - 1, -dt * iI);
                add(r, r + 1, -dt * iI);
                for (int q = 0; q < 3; ++q) add(r, q * n + i - 1, -dt * couple_I(s, q));
                for (int q = 0; q < 6; ++q) {
                    if (source_map(s, q) != 0.0) add_derivative(r, q, -dt * source_map(s, q));
                }
            }
            for (Eigen::Index i = 1; i < nS; ++i) {
                const Eigen::Index r = b + nI + i;
                add(r, r, 1.0 + dt * (2.0 * iS + c.d_plus * k2 + c.c_plus));
                add(r, r - 1, -dt * iS);
                if (i < nS - 1) add(r, r + 1, -dt * iS);
                for (int q = 0; q < 3; ++q) add(r, q * n + nI + i, -dt * couple_S(s, q));
                for (int q = 0; q < 6; ++q) {
                    if (source_map(3 + s, q) != 0.0) add_derivative(r, q, -dt * source_map(3 + s, q));
                }
            }
            const Eigen::Index tI = b + nI - 1, tS = b + nI;
            add(tI, tI - 2, c.weight_I / (2.0 * hI));
            add(tI, tI - 1, -4.0 * c.weight_I / (2.0 * hI));
            add(tI, tI, 3.0 * c.weight_I / (2.0 * hI));
            add(tI, tS, 3.0 * c.weight_S / (2.0 * hS));
            add(tI, tS + 1, -4.0 * c.weight_S / (2.0 * hS));
            add(tI, tS + 2, c.weight_S / (2.0 * hS));
            add(tS, tI, 1.0);
            add(tS, tS, -1.0);
        }
        Eigen::SparseMatrix<double> A(3 * n, 3 * n);
        A.setFromTriplets(t.begin(), t.end());
        auto lu = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
        lu->compute(A);
        if (lu->info() != Eigen::Success) {
            fail(ErrorCode::singular_system, "coupled system for mode " + std::to_string(k) + " is singular");
        }
        return lu;
    }

    void step_coupled() {
        const Eigen::Index n = block();
        for (int k = 0; k < K; ++k) {
            Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * n);
            for (int s = 0; s < 3; ++s) {
                b.segment(s * n, nI - 1) = mI[s].col(k).segment(1, nI - 1);
                b.segment(s * n + nI + 1, nS - 1) = mS[s].col(k).segment(1, nS - 1);
            }
            const Eigen::VectorXd x = coupled[static_cast<std::size_t>(k)]->solve(b);
            for (int s = 0; s < 3; ++s) {
                mI[s].col(k).segment(1, nI) = x.segment(s * n, nI);
                mS[s].col(k).segment(0, nS) = x.segment(s * n + nI, nS);
            }
        }
    }

    void project_interface() {
        for (int s = 0; s < 3; ++s) {
            const double bI = coeffs[s].weight_I / (2.0 * hI), bS = coeffs[s].weight_S / (2.0 * hS);
            mI[s].row(0).setZero();
            mS[s].row(nS).setZero();
            const Eigen::RowVectorXd trace =
                (bI * (4.0 * mI[s].row(nI - 1) - mI[s].row(nI - 2)) +
                 bS * (4.0 * mS[s].row(1) - mS[s].row(2))) /
                (3.0 * (bI + bS));
            mI[s].row(nI) = trace;
            mS[s].row(0) = trace;
        }
    }

    double mode_norm() const {
        double acc = 0.0;
        for (int s = 0; s < 3; ++s) {
            for (const auto* m : {&mI[s], &mS[s]}) {
                const double h = m == &mI[s] ? hI : hS;
                const Eigen::Index n = m->rows() - 1;
                const Eigen::VectorXd rows = m->rowwise().squaredNorm();
                acc += 0.5 * h * (rows.sum() - 0.5 * (rows(0) + rows(n)));
            }
        }
        return std::sqrt(acc);
    }

    StepDiagnostics diagnostics() const {
        StepDiagnostics d;
        for (int s = 0; s < 3; ++s) {
            const Eigen::VectorXd cont = sines * (mI[s].row(nI) - mS[s].row(0)).transpose();
            const Eigen::RowVectorXd dI =
                (3.0 * mI[s].row(nI) - 4.0 * mI[s].row(nI - 1) + mI[s].row(nI - 2)) / (2.0 * hI);
            const Eigen::RowVectorXd dS =
                (-3.0 * mS[s].row(0) + 4.0 * mS[s].row(1) - mS[s].row(2)) / (2.0 * hS);
            const Eigen::VectorXd flux =
                sines * (coeffs[s].weight_I * dI - coeffs[s].weight_S * dS).transpose();
            d.continuity_defect = std::max(d.continuity_defect, cont.cwiseAbs().maxCoeff());
            d.flux_defect = std::max(d.flux_defect, flux.cwiseAbs().maxCoeff());
        }
        d.norm = mode_norm();
        return d;
    }
};

Stepper::Stepper(const ModelParameters& params, const RunConfig& cfg)
    : impl_(std::make_unique<Impl>(params, cfg)) {}
Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

void Stepper::set_state(const FieldState& state) {
    Impl& m = *impl_;
    for (int s = 0; s < 3; ++s) {
        const RealField& f = state.fields[static_cast<std::size_t>(s)];
        if (f.I.nx() != m.nI || f.S.nx() != m.nS || f.I.ny() != m.ny || f.S.ny() != m.ny) {
            fail(ErrorCode::invalid_argument, "state grid does not match the run configuration");
        }
        m.mI[s] = sine_transform(f.I, m.K);
        m.mS[s] = sine_transform(f.S, m.K);
    }
    m.project_interface();
    t0_ = t_ = state.t;
    steps_ = 0;
}

FieldState Stepper::state() const {
    const Impl& m = *impl_;
    FieldState s;
    s.t = t_;
    for (int sp = 0; sp < 3; ++sp) {
        RealField& f = s.fields[static_cast<std::size_t>(sp)];
        f.I = inverse_sine_transform<double>(m.mI[sp], -m.params.ell, 0.0, m.ny);
        f.S = inverse_sine_transform<double>(m.mS[sp], 0.0, m.params.L, m.ny);
    }
    return s;
}

StepDiagnostics Stepper::step() {
    Impl& m = *impl_;
    const double before = m.mode_norm();
    if (m.cfg.scheme == Scheme::fully_implicit_linear) m.step_coupled();
    else m.step_split();
    t_ = t0_ + static_cast<double>(++steps_) * m.cfg.dt;
    const StepDiagnostics d = m.diagnostics();
    if (!std::isfinite(d.norm) || (before > 0.0 && d.norm > m.cfg.max_growth * before)) {
        fail(ErrorCode::step_instability,
             "norm grew from " + std::to_string(before) + " to " + std::to_string(d.norm) +
                 " at t = " + std::to_string(t_) + "; reduce dt or raise max_growth");
    }
    return d;
}

StepDiagnostics Stepper::diagnostics() const { return impl_->diagnostics(); }

std::array<double, 6> Stepper::masses() const {
    const Impl& m = *impl_;
    std::array<double, 6> out{};
    for (int s = 0; s < 3; ++s) {
        for (int side = 0; side < 2; ++side) {
            const Eigen::MatrixXd& u = side == 0 ? m.mI[s] : m.mS[s];
            const double h = side == 0 ? m.hI : m.hS;
            const Eigen::Index n = u.rows() - 1;
            const Eigen::RowVectorXd col = h * (u.colwise().sum() - 0.5 * (u.row(0) + u.row(n)));
            out[static_cast<std::size_t>(3 * side + s)] = col.dot(m.mass_y.transpose());
        }
    }
    return out;
}

Eigen::MatrixXd Stepper::interface_source_modes() const { return impl_->sources(); }

long count_negative(const FieldState& s) {
    long n = 0;
    for (const auto& f : s.fields) n += (f.I.values.array() < 0.0).count() + (f.S.values.array() < 0.0).count();
    return n;
}

double state_norm(const FieldState& s) {
    double acc = 0.0;
    for (const auto& f : s.fields) {
        const double v = l2_norm(f);
        acc += v * v;
    }
    return std::sqrt(acc);
}

Trajectory run(const FieldState& initial, const ModelParameters& params, const RunConfig& cfg) {
    Stepper stepper(params, cfg);
    stepper.set_state(initial);
    Trajectory tr;
    tr.r0 = default_r0(params);
    tr.hypothesis_holds = check_hypothesis(params, tr.r0).holds;
    auto record = [&](const StepDiagnostics& d) {
        tr.times.push_back(stepper.time());
        tr.continuity_defect.push_back(d.continuity_defect);
        tr.flux_defect.push_back(d.flux_defect);
        const auto m = stepper.masses();
        for (int e = 0; e < 6; ++e) tr.mass[static_cast<std::size_t>(e)].push_back(m[static_cast<std::size_t>(e)]);
    };
    auto snapshot = [&] {
        tr.snapshots.push_back(stepper.state());
        tr.negative_nodes.push_back(count_negative(tr.snapshots.back()));
    };
    record(stepper.diagnostics());
    snapshot();
    const long steps = step_count(cfg);
    for (long n = 1; n <= steps; ++n) {
        record(stepper.step());
        if (n % cfg.output_every == 0 || n == steps) snapshot();
    }
    return tr;
}

ConvergenceReport temporal_convergence(const FieldState& initial, const ModelParameters& params,
                                       RunConfig cfg, const std::vector<double>& dts) {
    if (dts.size() < 3) {
        fail(ErrorCode::invalid_argument,
             "temporal convergence needs at least three step sizes, got " + std::to_string(dts.size()));
    }
    for (std::size_t i = 1; i < dts.size(); ++i) {
        if (!(dts[i] < dts[i - 1])) fail(ErrorCode::invalid_argument, "step sizes must decrease");
    }
    ConvergenceReport r;
    r.dts = dts;
    std::vector<FieldState> finals;
    for (const double dt : dts) {
        cfg.dt = dt;
        Stepper stepper(params, cfg);
        stepper.set_state(initial);
        const long steps = step_count(cfg);
        for (long n = 0; n < steps; ++n) stepper.step();
        finals.push_back(stepper.state());
    }
    for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
        FieldState diff = finals[i];
        for (int s = 0; s < 3; ++s) {
            diff.fields[static_cast<std::size_t>(s)] =
                finals[i].fields[static_cast<std::size_t>(s)] - finals[i + 1].fields[static_cast<std::size_t>(s)];
        }
        r.differences.push_back(state_norm(diff));
    }
    for (std::size_t i = 0; i + 1 < r.differences.size(); ++i) {
        r.orders.push_back(std::log(r.differences[i] / r.differences[i + 1]) /
                           std::log(dts[i] / dts[i + 1]));
    }
    return r;
}

}  // namespace skewrd
