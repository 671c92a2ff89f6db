#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace impulsectl {

using ValueFunction = Eigen::VectorXd;
using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Finite-state continuous-time Markov chain with a reference time step.
/// The generator is a rate matrix: rows sum to zero, off-diagonals >= 0.
struct MarkovModel {
    std::vector<std::string> labels;
    Eigen::VectorXd coords;   // optional grid coordinate per state (empty if none)
    SparseMat generator;
    double delta = 0.0;       // discretization time step, > 0

    int size() const { return static_cast<int>(generator.rows()); }
    bool has_coords() const { return coords.size() == size(); }
    double rate_out(int x) const { return -generator.coeff(x, x); }
    Eigen::MatrixXd dense_generator() const { return Eigen::MatrixXd(generator); }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Boolean mask over states; true marks membership in the open set O.
struct Domain {
    std::vector<uint8_t> interior;

    int size() const { return static_cast<int>(interior.size()); }
    bool contains(int x) const { return interior[static_cast<size_t>(x)] != 0; }
    int interior_count() const;
    bool is_full() const { return interior_count() == size(); }
    std::vector<int> interior_indices() const;
    std::vector<int> exterior_indices() const;

    static Domain full(int n);
    static Domain of(int n, const std::vector<int>& interior_states);

    /// require_exterior: the domain is about to be used as a stopped domain.
    void validate(int n, bool require_exterior) const;
    bool nested_in(const Domain& larger) const;
};

struct InvariantMeasure {
    Eigen::VectorXd weights;
};

struct PoissonSolution {
    Eigen::VectorXd q;   // normalized so that mu(q) = 0
    double mu_f = 0.0;   // mu(f)
};

struct ExitMoments {
    Eigen::VectorXd first;    // E_x[tau_O], zero on exterior states
    Eigen::VectorXd second;   // E_x[tau_O^2]
};

// ---------------------------------------------------------------------------
// Declarative process descriptions accepted by build_model.
// ---------------------------------------------------------------------------

enum class BoundaryRule { Reflect, Absorb };

struct GeneratorSpec {
    Eigen::MatrixXd q;
    double delta = 0.0;                // 0 = choose 0.1 / max |Q_ii|
    std::vector<std::string> labels;   // optional
    Eigen::VectorXd coords;            // optional
};

struct DriftSpec {
    double xmin = 0.0;
    double xmax = 1.0;
    double step = 0.1;
    std::function<double(double)> drift;   // b(x), discretized upwind
    BoundaryRule left = BoundaryRule::Reflect;
    BoundaryRule right = BoundaryRule::Reflect;
    double delta = 0.0;
};

struct BirthDeathSpec {
    Eigen::VectorXd birth;   // birth[i] = rate i -> i+1 (last entry ignored)
    Eigen::VectorXd death;   // death[i] = rate i -> i-1 (first entry ignored)
    double delta = 0.0;
    Eigen::VectorXd coords;  // optional
};

using ProblemSpec = std::variant<GeneratorSpec, DriftSpec, BirthDeathSpec>;

MarkovModel build_model(const ProblemSpec& spec);

// ---------------------------------------------------------------------------
// Kernels (uniformization with Poisson tail truncated at relative 1e-12).
// ---------------------------------------------------------------------------

/// exp(Q * horizon) as a dense row-stochastic matrix.
Eigen::MatrixXd transition_kernel(const MarkovModel& model, double horizon);

/// Kernel of the process killed at the first exit from the domain:
/// exterior rows are zero, columns into the exterior carry no mass.
Eigen::MatrixXd stopped_kernel(const MarkovModel& model, const Domain& domain,
                               double horizon);

/// Matrix-free forms, usable on large models.
Eigen::VectorXd kernel_apply(const MarkovModel& model, double horizon,
                             const Eigen::VectorXd& v);
Eigen::VectorXd stopped_kernel_apply(const MarkovModel& model, const Domain& domain,
                                     double horizon, const Eigen::VectorXd& v);

/// P_x(tau_O <= horizon) for every state (1 on the exterior).
Eigen::VectorXd exit_probability_by(const MarkovModel& model, const Domain& domain,
                                    double horizon);

// ---------------------------------------------------------------------------
// Ergodic quantities.
// ---------------------------------------------------------------------------

/// Unique stationary distribution of a unichain generator.
/// Throws std::invalid_argument listing the closed communicating classes when
/// the chain has more than one (the measure would not be unique).
InvariantMeasure invariant_measure(const MarkovModel& model);

/// Solves Q q = -(f - mu(f) 1) with the normalization mu(q) = 0.
PoissonSolution poisson_solve(const MarkovModel& model, const Eigen::VectorXd& f);

/// First and second moments of the exit time from the domain.
/// Throws when the exterior is unreachable from some interior state.
ExitMoments exit_time_moments(const MarkovModel& model, const Domain& domain);

// ---------------------------------------------------------------------------
// Structure helpers.
// ---------------------------------------------------------------------------

struct ChainStructure {
    std::vector<int> component;            // SCC id per state
    int num_components = 0;
    std::vector<uint8_t> component_closed; // per SCC: no rate leaves it
    std::vector<std::vector<int>> closed_classes;
    bool unichain() const { return closed_classes.size() == 1; }
};

ChainStructure chain_structure(const SparseMat& generator);

/// States from which the exterior of the domain cannot be reached.
std::vector<int> interior_states_not_reaching_exterior(const MarkovModel& model,
                                                       const Domain& domain);

}  // namespace impulsectl
