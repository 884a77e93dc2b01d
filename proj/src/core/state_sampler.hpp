#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace negm {

using Complex = std::complex<double>;

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pure state on C^mu (x) C^nu. Amplitude index = i * nu + j with i on A.
class PureState {
public:
    /// Throws std::invalid_argument unless size == mu * nu and the norm is 1 within 1e-12.
    PureState(Eigen::VectorXcd amplitudes, unsigned mu, unsigned nu);
    /// Normalizes first; throws for the zero vector.
    static PureState normalized(Eigen::VectorXcd amplitudes, unsigned mu, unsigned nu);

    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    unsigned mu() const { return mu_; }
    unsigned nu() const { return nu_; }
    /// mu x nu coefficient matrix.
    Eigen::MatrixXcd amplitude_matrix() const;

private:
    Eigen::VectorXcd amplitudes_;
    unsigned mu_;
    unsigned nu_;
};

/// Squared Schmidt coefficients in descending order.
struct SchmidtSpectrum {
    std::vector<double> p;
};

class DensityMatrix {
public:
    /// Validates Hermiticity (1e-12), unit trace (1e-10) and positivity (floor -1e-10).
    DensityMatrix(Eigen::MatrixXcd entries, unsigned mu, unsigned nu);
    static DensityMatrix from_pure(const PureState& state);
    static DensityMatrix maximally_mixed(unsigned mu, unsigned nu);

    const Eigen::MatrixXcd& entries() const { return entries_; }
    unsigned mu() const { return mu_; }
    unsigned nu() const { return nu_; }

private:
    Eigen::MatrixXcd entries_;
    unsigned mu_;
    unsigned nu_;
};

PureState haar_pure_state(unsigned mu, unsigned nu, std::uint64_t seed);
SchmidtSpectrum schmidt_spectrum(const PureState& state);
double negativity_pure(const SchmidtSpectrum& spectrum);

/// (ij, kl) -> (kj, il). Throws std::invalid_argument on a size mismatch.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, unsigned mu, unsigned nu);
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho);
double negativity_general(const DensityMatrix& rho);

/// rho_A = tr_B |psi><psi|.
Eigen::MatrixXcd reduced_density_a(const PureState& state);

/// `rounds` layers of independent Haar single-qubit unitaries followed by
/// controlled-Z couplings along the open nearest-neighbour chain, applied to |0...0>.
/// The first n/2 qubits form subsystem A.
PureState pseudorandom_circuit_state(unsigned n_qubits, unsigned rounds, std::uint64_t seed);

enum class Generator { Haar, Circuit };

struct SampleBatch {
    std::uint64_t master_seed = 0;
    std::size_t count = 0;
    Generator generator = Generator::Haar;
    unsigned mu = 2;        // Haar: local dimensions
    unsigned nu = 2;
    unsigned n_qubits = 4;  // Circuit: register size and round count
    unsigned rounds = 40;
};

/// Per-sample seed; a pure function of (master, index).
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

/// Local dimensions the batch samples on.
unsigned batch_mu(const SampleBatch& batch);
unsigned batch_nu(const SampleBatch& batch);

/// Negativity of every sample, in index order.
std::vector<double> sample_negativities(const SampleBatch& batch, unsigned threads = 1);

} // namespace negm
