#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "skewrd/expression.hpp"
#include "skewrd/grid.hpp"
#include "skewrd/model.hpp"

namespace skewrd {

using RealField = SpeciesField<double>;

// Six densities: juvenile, adult, host, each on both habitats.
struct FieldState {
    double t = 0.0;
    std::array<RealField, 3> fields;

    const RealField& operator[](Species s) const { return fields[static_cast<int>(s)]; }
    RealField& operator[](Species s) { return fields[static_cast<int>(s)]; }
};

FieldState zero_state(const ModelParameters& params, Eigen::Index nx_I, Eigen::Index nx_S,
                      Eigen::Index ny);

enum class Scheme { imex, crank_nicolson, fully_implicit_linear };
enum class InterfaceForm { direct, substituted };

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& name);
const char* to_string(InterfaceForm f);
InterfaceForm parse_interface_form(const std::string& name);

struct RunConfig {
    double dt = 1e-3;
    double t_end = 0.1;
    Eigen::Index nx_I = 64;
    Eigen::Index nx_S = 64;
    Eigen::Index ny = 64;
    Scheme scheme = Scheme::imex;
    InterfaceForm interface_form = InterfaceForm::direct;
    long output_every = 10;
    std::uint64_t seed = 1;
    double max_growth = 10.0;  // per-step norm growth factor that aborts the run
};

void validate(const RunConfig& cfg);

// Initial densities as expressions in (x, y); values on the outer boundary are zeroed.
// noise adds a seeded smooth perturbation of that amplitude to every species.
struct InitialCondition {
    std::array<std::string, 6> expressions{"0", "0", "0", "0", "0", "0"};  // J_I A_I H_I J_S A_S H_S
    double noise = 0.0;
};

FieldState initial_state(const InitialCondition& ic, const ModelParameters& params,
                         const RunConfig& cfg);

struct StepDiagnostics {
    double continuity_defect = 0.0;  // max over species and y
    double flux_defect = 0.0;
    double norm = 0.0;
};

// Advances the six-species system in the y-sine basis. The interface-coupled x
// discretization matches the oracle; each stored state satisfies continuity and the
// discrete skew flux relation.
class Stepper {
public:
    Stepper(const ModelParameters& params, const RunConfig& cfg);
    ~Stepper();
    Stepper(Stepper&&) noexcept;
    Stepper& operator=(Stepper&&) noexcept;

    // Projects the interface traces onto the discrete transmission conditions.
    void set_state(const FieldState& state);
    FieldState state() const;
    double time() const { return t_; }

    StepDiagnostics step();
    StepDiagnostics diagnostics() const;

    // Integral of each density over its habitat, ordered J_I A_I H_I J_S A_S H_S.
    std::array<double, 6> masses() const;

    // Interface sources per mode for the current state, rows ordered as masses().
    Eigen::MatrixXd interface_source_modes() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    double t_ = 0.0;
    double t0_ = 0.0;
    long steps_ = 0;
};

struct Trajectory {
    std::vector<FieldState> snapshots;
    std::vector<double> times;  // every step, initial time included
    std::vector<double> continuity_defect;
    std::vector<double> flux_defect;
    std::array<std::vector<double>, 6> mass;
    std::vector<long> negative_nodes;  // per snapshot
    bool hypothesis_holds = false;
    double r0 = 0.0;
};

long count_negative(const FieldState& s);

Trajectory run(const FieldState& initial, const ModelParameters& params, const RunConfig& cfg);

struct ConvergenceReport {
    std::vector<double> dts;
    std::vector<double> differences;  // ||u(dt_i) - u(dt_{i+1})||
    std::vector<double> orders;
    double observed_order() const { return orders.empty() ? 0.0 : orders.back(); }
};

// Self-convergence in time; needs at least three step sizes in decreasing order.
ConvergenceReport temporal_convergence(const FieldState& initial, const ModelParameters& params,
                                       RunConfig cfg, const std::vector<double>& dts);

// Discrete L2 norm over all six densities.
double state_norm(const FieldState& s);

}  // namespace skewrd
