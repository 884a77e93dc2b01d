#include <doctest.h>

#include "moment_engine.hpp"
#include "state_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace negm;

namespace {

template <class Cdf>
double ks_statistic(std::vector<double> x, Cdf cdf) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

struct Stats {
    double mean;
    double var;
};

Stats stats(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, ss / (n - 1)};
}

Eigen::VectorXcd bell() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

std::vector<SchmidtSpectrum> haar_spectra(unsigned mu, unsigned nu, std::size_t count, std::uint64_t master) {
    std::vector<SchmidtSpectrum> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(schmidt_spectrum(haar_pure_state(mu, nu, sample_seed(master, i))));
    return out;
}

Eigen::MatrixXcd random_unitary(unsigned d, std::uint64_t seed) {
    const Eigen::VectorXcd g = haar_pure_state(d * d, 1, seed).amplitudes();
    Eigen::MatrixXcd m(d, d);
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) m(i, j) = g(i * d + j);
    return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

} // namespace

TEST_CASE("pure state validation") {
    CHECK_THROWS_AS(PureState(Eigen::VectorXcd::Ones(4), 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(PureState(bell(), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(PureState::normalized(Eigen::VectorXcd::Zero(4), 2, 2), std::invalid_argument);
    CHECK_NOTHROW(PureState(bell(), 2, 2));
}

TEST_CASE("haar state basics") {
    const PureState one = haar_pure_state(1, 1, 99);
    CHECK(std::abs(one.amplitudes()(0)) == doctest::Approx(1.0).epsilon(1e-15));
    const PureState a = haar_pure_state(2, 2, 1234);
    const PureState b = haar_pure_state(2, 2, 1234);
    CHECK(a.amplitudes() == b.amplitudes());
    CHECK(a.amplitudes() != haar_pure_state(2, 2, 1235).amplitudes());
}

TEST_CASE("schmidt spectra of known states") {
    Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(4);
    prod(0) = 1.0;
    const SchmidtSpectrum s0 = schmidt_spectrum(PureState(prod, 2, 2));
    REQUIRE(s0.p.size() == 2);
    CHECK(s0.p[0] == doctest::Approx(1.0));
    CHECK(s0.p[1] == 0.0);
    const SchmidtSpectrum s1 = schmidt_spectrum(PureState(bell(), 2, 2));
    CHECK(s1.p[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s1.p[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(negativity_pure(s0) == 0.0);
    CHECK(negativity_pure(s1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(negativity_pure(SchmidtSpectrum{{0.25, 0.25, 0.25, 0.25}}) == doctest::Approx(1.5).epsilon(1e-14));

    for (const auto& [mu, nu] : {std::pair{3u, 5u}, {2u, 32u}, {6u, 6u}, {7u, 2u}}) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const SchmidtSpectrum sp = schmidt_spectrum(haar_pure_state(mu, nu, s));
            CHECK(sp.p.size() == std::min(mu, nu));
            CHECK(std::fabs(std::accumulate(sp.p.begin(), sp.p.end(), 0.0) - 1.0) < 1e-10);
            CHECK(std::is_sorted(sp.p.rbegin(), sp.p.rend()));
            CHECK(*std::min_element(sp.p.begin(), sp.p.end()) >= 0.0);
        }
    }
}

TEST_CASE("largest schmidt coefficient of 2x2 haar states") {
    // Joint density on the simplex is proportional to (p1 - p2)^2, so the
    // larger coefficient p has density 6(2p-1)^2 on [1/2, 1] and CDF (2p-1)^3.
    std::vector<double> largest;
    for (const auto& sp : haar_spectra(2, 2, 100000, 31)) largest.push_back(sp.p[0]);
    const double d = ks_statistic(largest, [](double p) { return std::pow(std::clamp(2 * p - 1, 0.0, 1.0), 3); });
    CHECK(d < 0.01);
}

TEST_CASE("partial transpose") {
    const DensityMatrix bell_rho = DensityMatrix::from_pure(PureState(bell(), 2, 2));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(partial_transpose(bell_rho));
    const Eigen::VectorXd ev = solver.eigenvalues();
    CHECK(ev(0) == doctest::Approx(-0.5).epsilon(1e-14));
    for (int i = 1; i < 4; ++i) CHECK(ev(i) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(negativity_general(bell_rho) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(negativity_general(DensityMatrix::maximally_mixed(3, 4)) == doctest::Approx(0.0));

    // Product state: (rho_A (x) rho_B)^{T_A} = rho_A^T (x) rho_B.
    const Eigen::MatrixXcd ra = reduced_density_a(haar_pure_state(2, 3, 5));
    const Eigen::MatrixXcd rb = reduced_density_a(haar_pure_state(3, 4, 6));
    Eigen::MatrixXcd prod(6, 6), expected(6, 6);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    prod(i * 3 + j, k * 3 + l) = ra(i, k) * rb(j, l);
                    expected(i * 3 + j, k * 3 + l) = ra(k, i) * rb(j, l);
                }
    CHECK((partial_transpose(prod, 2, 3) - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((partial_transpose(partial_transpose(prod, 2, 3), 2, 3) - prod).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(partial_transpose(prod, 2, 2), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
    m(0, 1) = Complex(0.0, 0.1);
    CHECK_THROWS_AS(DensityMatrix(m, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4), 2, 2), std::invalid_argument);
    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(neg, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix(Eigen::MatrixXcd::Identity(3, 3) / 3.0, 2, 2), std::invalid_argument);
}

TEST_CASE("pure-state negativity agrees with the partial transpose") {
    for (const auto& [mu, nu] : {std::pair{2u, 2u}, {4u, 4u}, {2u, 8u}, {3u, 2u}}) {
        const std::size_t count = (mu == 2 && nu == 2) ? 1000 : 100;
        for (std::size_t i = 0; i < count; ++i) {
            const PureState psi = haar_pure_state(mu, nu, sample_seed(777, i));
            const double a = negativity_general(DensityMatrix::from_pure(psi));
            const double b = negativity_pure(schmidt_spectrum(psi));
            CHECK(std::fabs(a - b) < 1e-8);
        }
    }
}

TEST_CASE("local unitaries leave the spectrum unchanged") {
    const unsigned mu = 3, nu = 4;
    const Eigen::MatrixXcd ua = random_unitary(mu, 11);
    const Eigen::MatrixXcd ub = random_unitary(nu, 12);
    std::vector<double> plain, rotated;
    for (std::size_t i = 0; i < 10000; ++i) {
        const PureState psi = haar_pure_state(mu, nu, sample_seed(3, i));
        const Eigen::MatrixXcd m = ua * psi.amplitude_matrix() * ub.transpose();
        Eigen::VectorXcd v(mu * nu);
        for (unsigned r = 0; r < mu; ++r)
            for (unsigned c = 0; c < nu; ++c) v(r * nu + c) = m(r, c);
        plain.push_back(schmidt_spectrum(psi).p[0]);
        rotated.push_back(schmidt_spectrum(PureState::normalized(v, mu, nu)).p[0]);
    }
    std::sort(plain.begin(), plain.end());
    std::sort(rotated.begin(), rotated.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < plain.size(); ++i) worst = std::max(worst, std::fabs(plain[i] - rotated[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("unbalanced splits use the reduced matrix") {
    const PureState psi = haar_pure_state(2, 64, 8);
    const SchmidtSpectrum fast = schmidt_spectrum(psi);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(psi.amplitude_matrix());
    for (int i = 0; i < 2; ++i) CHECK(fast.p[i] == doctest::Approx(std::pow(svd.singularValues()(i), 2)).epsilon(1e-12));
}

TEST_CASE("sample batches") {
    SampleBatch batch;
    batch.master_seed = 2024;
    batch.count = 0;
    CHECK(sample_negativities(batch).empty());

    batch.count = 3000;
    batch.mu = 3;
    batch.nu = 5;
    const auto one = sample_negativities(batch, 1);
    CHECK(one == sample_negativities(batch, 1));
    CHECK(one == sample_negativities(batch, 4));
    CHECK(one == sample_negativities(batch, 7));
    for (double x : one) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0 + 1e-9);
    }

    batch.generator = Generator::Circuit;
    batch.n_qubits = 4;
    batch.rounds = 5;
    batch.count = 200;
    const auto circ = sample_negativities(batch, 1);
    CHECK(circ == sample_negativities(batch, 3));
    for (double x : circ) CHECK(x <= 1.5 + 1e-9);

    batch.n_qubits = 5;
    CHECK_THROWS_AS(sample_negativities(batch), std::invalid_argument);
}

TEST_CASE("haar mean negativity at mu = 2") {
    SampleBatch batch;
    batch.master_seed = 17;
    batch.count = 100000;
    const Stats s = stats(sample_negativities(batch));
    const double exact = 3 * M_PI / 32;
    CHECK(std::fabs(s.mean - exact) < 4 * std::sqrt(s.var / batch.count));
}

TEST_CASE("exact moments against Monte Carlo") {
    // <sum_{i!=j} p_i p_j> at mu = 4.
    {
        std::vector<double> v;
        for (const auto& sp : haar_spectra(4, 4, 50000, 41)) {
            double s1 = 0, s2 = 0;
            for (double p : sp.p) {
                s1 += p;
                s2 += p * p;
            }
            v.push_back(s1 * s1 - s2);
        }
        const Stats s = stats(v);
        CHECK(std::fabs(s.mean - eval_double(mean_pair_product(4))) < 4 * std::sqrt(s.var / v.size()));
    }
    // <S^4>, S = sum sqrt(p_i), at mu = 3.
    {
        std::vector<double> v;
        for (const auto& sp : haar_spectra(3, 3, 50000, 42)) {
            double s = 0;
            for (double p : sp.p) s += std::sqrt(p);
            v.push_back(s * s * s * s);
        }
        const Stats s = stats(v);
        CHECK(std::fabs(s.mean - eval_double(fourth_moment(3))) < 4 * std::sqrt(s.var / v.size()));
    }
    // Variance of N at mu = 4; standard error of the sample variance from the fourth central moment.
    {
        std::vector<double> v;
        for (const auto& sp : haar_spectra(4, 4, 50000, 43)) v.push_back(negativity_pure(sp));
        const Stats s = stats(v);
        double m4 = 0;
        for (double x : v) m4 += std::pow(x - s.mean, 4);
        m4 /= v.size();
        const double se = std::sqrt((m4 - s.var * s.var) / v.size());
        CHECK(std::fabs(s.var - eval_double(variance_negativity(4))) < 4 * se);
    }
}

TEST_CASE("pseudorandom circuits") {
    const PureState fid = pseudorandom_circuit_state(4, 0, 1);
    CHECK(fid.amplitudes()(0) == Complex(1.0, 0.0));
    CHECK(negativity_pure(schmidt_spectrum(fid)) == 0.0);
    CHECK(fid.mu() == 4);

    const PureState a = pseudorandom_circuit_state(6, 40, 9);
    CHECK(a.amplitudes() == pseudorandom_circuit_state(6, 40, 9).amplitudes());
    CHECK(std::fabs(a.amplitudes().squaredNorm() - 1.0) < 1e-12);
    CHECK_NOTHROW(pseudorandom_circuit_state(2, 3, 1));
    CHECK_THROWS_AS(pseudorandom_circuit_state(3, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(pseudorandom_circuit_state(0, 3, 1), std::invalid_argument);

    SampleBatch batch;
    batch.generator = Generator::Circuit;
    batch.n_qubits = 4;
    batch.rounds = 40;
    batch.count = 10000;
    batch.master_seed = 5;
    const Stats s = stats(sample_negativities(batch));
    CHECK(std::fabs(s.mean / 1.5 - 0.65368) < 0.01);
}
