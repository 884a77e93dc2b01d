#include "state_sampler.hpp"

#include "parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace negm {

PureState::PureState(Eigen::VectorXcd amplitudes, unsigned mu, unsigned nu)
    : amplitudes_(std::move(amplitudes)), mu_(mu), nu_(nu) {
    if (mu == 0 || nu == 0) throw std::invalid_argument("local dimensions must be positive");
    if (static_cast<std::size_t>(amplitudes_.size()) != static_cast<std::size_t>(mu) * nu) {
        throw std::invalid_argument("amplitude count does not match mu * nu");
    }
    if (std::fabs(amplitudes_.squaredNorm() - 1.0) > 1e-12) {
        throw std::invalid_argument("state is not normalized");
    }
}

PureState PureState::normalized(Eigen::VectorXcd amplitudes, unsigned mu, unsigned nu) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    amplitudes /= norm;
    return PureState(std::move(amplitudes), mu, nu);
}

Eigen::MatrixXcd PureState::amplitude_matrix() const {
    Eigen::MatrixXcd m(mu_, nu_);
    for (unsigned i = 0; i < mu_; ++i)
        for (unsigned j = 0; j < nu_; ++j) m(i, j) = amplitudes_(i * nu_ + j);
    return m;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, unsigned mu, unsigned nu)
    : entries_(std::move(entries)), mu_(mu), nu_(nu) {
    const Eigen::Index dim = static_cast<Eigen::Index>(mu) * nu;
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw std::invalid_argument("density matrix size does not match mu * nu");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::fabs(entries_.trace().real() - 1.0) > 1e-10) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    const Eigen::VectorXcd& a = state.amplitudes();
    Eigen::MatrixXcd rho = a * a.adjoint();
    // Exact Hermitian symmetry for the validation check.
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(std::move(rho), state.mu(), state.nu());
}

DensityMatrix DensityMatrix::maximally_mixed(unsigned mu, unsigned nu) {
    const Eigen::Index dim = static_cast<Eigen::Index>(mu) * nu;
    return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim), mu, nu);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Complex complex_gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

PureState haar_pure_state(unsigned mu, unsigned nu, std::uint64_t seed) {
    if (mu == 0 || nu == 0) throw std::invalid_argument("local dimensions must be positive");
    std::mt19937_64 rng(seed);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(mu) * nu);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_gaussian(rng);
    return PureState::normalized(std::move(v), mu, nu);
}

SchmidtSpectrum schmidt_spectrum(const PureState& state) {
    const Eigen::MatrixXcd m = state.amplitude_matrix();
    std::vector<double> p;
    if (state.nu() >= 8 * state.mu()) {
        // Very unbalanced split: the small reduced matrix is cheaper than an SVD.
        const Eigen::MatrixXcd rho_a = m * m.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_a, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) p.push_back(solver.eigenvalues()(i));
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        const auto& s = svd.singularValues();
        for (Eigen::Index i = 0; i < s.size(); ++i) p.push_back(s(i) * s(i));
    }
    for (double& x : p) {
        if (x < 1e-15) x = 0.0;
    }
    std::sort(p.begin(), p.end(), std::greater<>());
    return SchmidtSpectrum{std::move(p)};
}

double negativity_pure(const SchmidtSpectrum& spectrum) {
    double s = 0.0;
    for (const double x : spectrum.p) s += std::sqrt(std::max(0.0, x));
    return std::max(0.0, (s * s - 1.0) / 2.0);
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, unsigned mu, unsigned nu) {
    const Eigen::Index dim = static_cast<Eigen::Index>(mu) * nu;
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("matrix size " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + " does not match mu * nu = " +
                                    std::to_string(dim));
    }
    Eigen::MatrixXcd out(dim, dim);
    for (unsigned i = 0; i < mu; ++i)
        for (unsigned j = 0; j < nu; ++j)
            for (unsigned k = 0; k < mu; ++k)
                for (unsigned l = 0; l < nu; ++l) out(i * nu + j, k * nu + l) = rho(k * nu + j, i * nu + l);
    return out;
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho) {
    return partial_transpose(rho.entries(), rho.mu(), rho.nu());
}

double negativity_general(const DensityMatrix& rho) {
    const Eigen::MatrixXcd pt = partial_transpose(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed on the partial transpose");
    const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
    return std::max(0.0, (trace_norm - 1.0) / 2.0);
}

Eigen::MatrixXcd reduced_density_a(const PureState& state) {
    const Eigen::MatrixXcd m = state.amplitude_matrix();
    Eigen::MatrixXcd rho = m * m.adjoint();
    return 0.5 * (rho + rho.adjoint());
}

namespace {

// (-1)^(number of chain edges with both ends set), indexed by basis state.
// The closed ring is not universal at n = 4: with single-qubit gates it only
// generates a 120-dimensional subalgebra of su(16).
std::vector<double> chain_cz_signs(unsigned n) {
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (unsigned q = 0; q + 1 < n; ++q) edges.emplace_back(q, q + 1);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> sign(dim, 1.0);
    for (std::size_t b = 0; b < dim; ++b) {
        int parity = 0;
        for (const auto& [u, v] : edges) {
            const bool bu = (b >> (n - 1 - u)) & 1u;
            const bool bv = (b >> (n - 1 - v)) & 1u;
            parity ^= (bu && bv);
        }
        sign[b] = parity ? -1.0 : 1.0;
    }
    return sign;
}

// Haar-random SU(2) from a uniform point on S^3: [[a, -b*], [b, a*]].
void apply_random_rotation(Eigen::VectorXcd& psi, unsigned n, unsigned qubit, std::mt19937_64& rng) {
    Complex a = complex_gaussian(rng);
    Complex b = complex_gaussian(rng);
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    const Complex u00 = a, u01 = -std::conj(b), u10 = b, u11 = std::conj(a);
    const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const Complex x0 = psi(static_cast<Eigen::Index>(i0));
            const Complex x1 = psi(static_cast<Eigen::Index>(i1));
            psi(static_cast<Eigen::Index>(i0)) = u00 * x0 + u01 * x1;
            psi(static_cast<Eigen::Index>(i1)) = u10 * x0 + u11 * x1;
        }
    }
}

} // namespace

PureState pseudorandom_circuit_state(unsigned n_qubits, unsigned rounds, std::uint64_t seed) {
    if (n_qubits < 2 || n_qubits % 2 != 0 || n_qubits > 24) {
        throw std::invalid_argument("circuit register must have an even qubit count in [2, 24]");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    const unsigned local = 1u << (n_qubits / 2);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    psi(0) = 1.0;
    if (rounds > 0) {
        const std::vector<double> sign = chain_cz_signs(n_qubits);
        std::mt19937_64 rng(seed);
        for (unsigned r = 0; r < rounds; ++r) {
            for (unsigned q = 0; q < n_qubits; ++q) apply_random_rotation(psi, n_qubits, q, rng);
            for (std::size_t b = 0; b < dim; ++b) psi(static_cast<Eigen::Index>(b)) *= sign[b];
        }
        // Strip accumulated rounding from the norm.
        psi.normalize();
    }
    return PureState(std::move(psi), local, local);
}

unsigned batch_mu(const SampleBatch& batch) {
    return batch.generator == Generator::Haar ? batch.mu : 1u << (batch.n_qubits / 2);
}

unsigned batch_nu(const SampleBatch& batch) {
    return batch.generator == Generator::Haar ? batch.nu : 1u << (batch.n_qubits / 2);
}

std::vector<double> sample_negativities(const SampleBatch& batch, unsigned threads) {
    if (batch.generator == Generator::Haar && (batch.mu == 0 || batch.nu == 0)) {
        throw std::invalid_argument("local dimensions must be positive");
    }
    if (batch.generator == Generator::Circuit &&
        (batch.n_qubits < 2 || batch.n_qubits % 2 != 0 || batch.n_qubits > 24)) {
        throw std::invalid_argument("circuit register must have an even qubit count in [2, 24]");
    }
    std::vector<double> out(batch.count);
    parallel_for(batch.count, threads, [&](std::size_t i) {
        const std::uint64_t seed = sample_seed(batch.master_seed, i);
        const PureState state = batch.generator == Generator::Haar
                                    ? haar_pure_state(batch.mu, batch.nu, seed)
                                    : pseudorandom_circuit_state(batch.n_qubits, batch.rounds, seed);
        out[i] = negativity_pure(schmidt_spectrum(state));
    });
    return out;
}

} // namespace negm
