#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrelax/constants.hpp"
#include "qrelax/linalg.hpp"
#include "qrelax/observables.hpp"
#include "qrelax/timeseries.hpp"

namespace qrelax {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { Goe, Boson, Oscillator, External };
enum class OutputFormat { Csv, Json };

// Initial-state selector: an explicit basis index or the state whose
// observable eigenvalue is nearest to a target (ties toward lower index).
struct InitialSelector {
    enum class Kind { Index, NearestQ } kind = Kind::NearestQ;
    std::size_t index = 0;
    double q_value = -1.5;
};

struct RunConfig {
    RunMode mode = RunMode::Goe;

    double tau_max = 20.0;
    std::size_t tau_steps = 2001;
    std::uint64_t seed = 1;
    std::string out_path;
    OutputFormat format = OutputFormat::Csv;
    bool deterministic = false;
    bool debug = false;
    std::size_t realizations = 1;

    // goe / external
    std::size_t dim = 2000;
    double lambda = 1.0;
    std::vector<InitialSelector> initial;  // empty = nearest q = -1.5
    double q_scale = 1.0;

    // boson
    std::size_t n_bosons = 6;
    std::size_t n_levels = 11;
    double v = 1.0;
    std::string export_hamiltonian;

    // oscillator
    double alpha_re = 1.0, alpha_im = 0.0;
    double omega = 1.0;
    std::size_t n_max = 40;
    bool squeezed = false;
    double a_position = 1.0;

    // external
    std::string hamiltonian_file;
    std::string observable_file;
    std::vector<double> snapshot_taus;

    // tolerance overrides
    double ingest_symmetry_tol = tol::kSymmetryIngest;

    void validate() const;  // throws ConfigError
};

// Executes one run and writes the artifact files. Throws ConfigError,
// IngestError or NumericalError; the CLI maps these to exit codes 2/3/4.
void run(const RunConfig& cfg);

// The external-mode pipeline on already-ingested operators: diagonalizes Q,
// rotates H into the Q eigenbasis, selects initial states by Q-eigenvalue
// rank and produces the relaxation records plus width scalars.
struct ExternalAnalysis {
    ObservableSpectrum q;      // ascending eigenvalues of the observable
    HermitianOperator h_q;     // H in the Q eigenbasis
    double rotation_offdiag = 0.0;  // max |V - I| of the Q eigenvector matrix
    double lambda = 0.0;
    double var_diag = 0.0;          // Var[H_aa]
    double mean_state_width_sq = 0.0;  // average of lambda_a^2
    std::vector<RelaxationRecord> records;
};

ExternalAnalysis external_analysis(const HermitianOperator& h, const HermitianOperator& q_op,
                                   const std::vector<InitialSelector>& initial,
                                   const RelaxationOptions& opt);

// version string reported in metadata
const char* version();

} // namespace qrelax
