#include <doctest.h>

#include <limits>

#include "qpac/measurement.hpp"
#include "qpac/operators.hpp"
#include "support.hpp"

using namespace qpac;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

} // namespace

TEST_CASE("hermitian operator validation") {
    CHECK_NOTHROW(HermitianOperator{pauli_x()});

    ComplexMatrix skew(2, 2);
    skew << 0.0, 1.0, -1.0, 0.0;
    CHECK_THROWS_AS(HermitianOperator{skew}, ValidationError);

    ComplexMatrix inf_mat = ComplexMatrix::Identity(2, 2);
    inf_mat(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(HermitianOperator{inf_mat}, ValidationError);

    CHECK_THROWS_AS(HermitianOperator(ComplexMatrix::Identity(2, 3)),
                    ValidationError);
}

TEST_CASE("density operator validation") {
    CHECK_NOTHROW(DensityOperator(ComplexMatrix::Identity(4, 4) / 4.0));
    // trace 2
    CHECK_THROWS_AS(DensityOperator(ComplexMatrix::Identity(2, 2)),
                    ValidationError);
    // unit trace but indefinite
    ComplexMatrix indefinite(2, 2);
    indefinite << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityOperator{indefinite}, ValidationError);
}

TEST_CASE("povm validation catches incompleteness and duplicates") {
    std::vector<HermitianOperator> halves{
        HermitianOperator(ComplexMatrix::Identity(2, 2) / 2.0),
        HermitianOperator(ComplexMatrix::Identity(2, 2) / 2.0)};
    CHECK_NOTHROW(Povm({"a", "b"}, halves));
    CHECK_THROWS_AS(Povm({"a", "a"}, halves), ValidationError);
    CHECK_THROWS_AS(Povm({"a"}, halves), ValidationError);

    std::vector<HermitianOperator> short_sum{
        HermitianOperator(ComplexMatrix::Identity(2, 2) / 2.0),
        HermitianOperator(ComplexMatrix::Identity(2, 2) / 4.0)};
    CHECK_THROWS_AS(Povm({"a", "b"}, short_sum), ValidationError);

    // Complete but not idempotent: fine as a POVM, rejected as sharp.
    CHECK_NOTHROW(Povm({"a", "b"}, halves));
    CHECK_THROWS_AS(ProjectivePovm({"a", "b"}, halves), ValidationError);
}

TEST_CASE("projective povm accepts zero elements") {
    // {I, 0} is a legitimate sharp measurement: one label never fires.
    std::vector<HermitianOperator> elements{
        HermitianOperator(ComplexMatrix::Identity(2, 2)),
        HermitianOperator(ComplexMatrix::Zero(2, 2))};
    CHECK_NOTHROW(ProjectivePovm({"0", "1"}, elements));
}

TEST_CASE("tensor of identities and basis projectors") {
    const HermitianOperator i2(ComplexMatrix::Identity(2, 2));
    const HermitianOperator result = tensor(i2, i2);
    CHECK((result.matrix() - ComplexMatrix::Identity(4, 4)).norm() == 0.0);

    const HermitianOperator p0(basis_projector(2, 0));
    const HermitianOperator p1(basis_projector(2, 1));
    const HermitianOperator prod = tensor(p0, p1);
    // |0><0| (x) |1><1| = diag(0,1,0,0) in the {00,01,10,11} order.
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK((prod.matrix() - expected).norm() == 0.0);
}

TEST_CASE("tensor eigenvalues are products of factor eigenvalues") {
    RngStream rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const DensityOperator a = test::random_density(2, rng);
        const DensityOperator b = test::random_density(2, rng);
        const HermitianOperator joint = tensor(a.op(), b.op());
        CHECK(std::abs(joint.matrix().trace().real() - 1.0) < 1e-12);

        // Oracle: independent eigensolves of the factors, outer product
        // of the spectra.
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> ea(a.matrix());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eb(b.matrix());
        std::vector<double> expected;
        for (Eigen::Index i = 0; i < 2; ++i) {
            for (Eigen::Index j = 0; j < 2; ++j) {
                expected.push_back(ea.eigenvalues()(i) *
                                   eb.eigenvalues()(j));
            }
        }
        std::sort(expected.begin(), expected.end());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> ej(joint.matrix());
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(ej.eigenvalues()(static_cast<Eigen::Index>(k)) ==
                  doctest::Approx(expected[k]).epsilon(1e-10));
        }
    }
}

TEST_CASE("tensor rejects oversized results") {
    const HermitianOperator big(ComplexMatrix::Identity(32, 32));
    CHECK_THROWS_AS(tensor(big, big, 256), ValidationError);
    CHECK_NOTHROW(tensor(big, big, 1024));
}

TEST_CASE("tensor is associative") {
    // Entries from a small dyadic set keep every triple product exact in
    // binary floating point, so associativity holds bit for bit.
    RngStream rng(7);
    auto dyadic_matrix = [&](Eigen::Index d) {
        ComplexMatrix m(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = i; j < d; ++j) {
                const double re =
                    std::floor(rng.uniform() * 33.0 - 16.0) / 16.0;
                const double im =
                    std::floor(rng.uniform() * 33.0 - 16.0) / 16.0;
                m(i, j) = std::complex<double>(re, i == j ? 0.0 : im);
                m(j, i) = std::conj(m(i, j));
            }
        }
        return m;
    };
    for (int rep = 0; rep < 10; ++rep) {
        const HermitianOperator a(dyadic_matrix(2));
        const HermitianOperator b(dyadic_matrix(3));
        const HermitianOperator c(dyadic_matrix(2));
        const ComplexMatrix left =
            tensor(tensor(a, b), c).matrix();
        const ComplexMatrix right =
            tensor(a, tensor(b, c)).matrix();
        CHECK((left - right).norm() == 0.0);
    }

    // Generic entries: equal to within a relative ulp-level bound.
    RngStream grng(8);
    const HermitianOperator a(test::random_density(2, grng).matrix());
    const HermitianOperator b(test::random_density(2, grng).matrix());
    const HermitianOperator c(test::random_density(2, grng).matrix());
    CHECK((tensor(tensor(a, b), c).matrix() -
           tensor(a, tensor(b, c)).matrix())
              .norm() < 1e-15);
}

TEST_CASE("born distribution closed forms") {
    const Povm trivial(
        {"only"}, {HermitianOperator(ComplexMatrix::Identity(2, 2))});
    RngStream rng(3);
    const DensityOperator rho = test::random_density(2, rng);
    const auto p_trivial = born_distribution(trivial, rho);
    REQUIRE(p_trivial.size() == 1);
    CHECK(p_trivial[0] == doctest::Approx(1.0).epsilon(1e-12));

    const ProjectivePovm basis = basis_measurement(2);
    const DensityOperator plus = pure_state(test::ket_plus());
    const auto p_plus = born_distribution(basis, plus);
    // tr(|0><0| |+><+|) = |<0|+>|^2 = 1/2.
    CHECK(p_plus[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p_plus[1] == doctest::Approx(0.5).epsilon(1e-12));

    const auto p_zero =
        born_distribution(basis, pure_state(test::ket0()));
    CHECK(p_zero[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p_zero[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("born distribution rejects dimension mismatch") {
    const ProjectivePovm basis = basis_measurement(2);
    CHECK_THROWS_AS(
        born_distribution(basis,
                          DensityOperator(ComplexMatrix::Identity(4, 4) /
                                          4.0)),
        ValidationError);
}

TEST_CASE("born distribution sums to one on random instances") {
    RngStream rng(17);
    for (Eigen::Index d : {2, 4, 8, 16}) {
        for (int rep = 0; rep < 25; ++rep) {
            const Povm m = test::random_povm(d, 3, rng);
            const DensityOperator rho = test::random_density(d, rng);
            const auto p = born_distribution(m, rho);
            double sum = 0.0;
            for (double v : p) {
                CHECK(v >= 0.0);
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("born_sample is deterministic on eigenstates and seeded") {
    const ProjectivePovm basis = basis_measurement(2);
    const DensityOperator zero = pure_state(test::ket0());
    RngStream rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        CHECK(born_sample(basis, zero, rng) == 0);
    }

    RngStream a(99);
    RngStream b(99);
    const DensityOperator plus = pure_state(test::ket_plus());
    for (int rep = 0; rep < 100; ++rep) {
        CHECK(born_sample(basis, plus, a) == born_sample(basis, plus, b));
    }
}

TEST_CASE("born_sample frequencies match the distribution") {
    const ProjectivePovm basis = basis_measurement(2);
    const DensityOperator plus = pure_state(test::ket_plus());
    const std::size_t n = 100000;
    RngStream rng(42);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ones += born_sample(basis, plus, rng);
    }
    // Hoeffding radius at 99.9%, times the safety factor.
    const double bound =
        4.0 * std::sqrt(std::log(2.0 / 0.001) /
                        (2.0 * static_cast<double>(n)));
    const double freq = static_cast<double>(ones) / static_cast<double>(n);
    CHECK(std::abs(freq - 0.5) <= bound);
}

TEST_CASE("projective elements are mutually orthogonal") {
    RngStream rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const Predictor p = test::random_predictor(0, 4, 3, rng);
        for (std::size_t a = 0; a < p.povm.size(); ++a) {
            for (std::size_t b = a + 1; b < p.povm.size(); ++b) {
                const double cross = (p.povm.element(a).matrix() *
                                      p.povm.element(b).matrix())
                                         .norm();
                CHECK(cross < tol::projector * 10.0);
            }
        }
    }
}

TEST_CASE("validation suite over random instances per dimension") {
    RngStream rng(31);
    for (Eigen::Index d : {2, 4, 8, 16}) {
        for (int rep = 0; rep < 10; ++rep) {
            const DensityOperator rho = test::random_density(d, rng);
            for (const auto &check : density_checks(rho.matrix())) {
                CHECK(check.pass);
                CHECK(check.residual <= 1e-9);
            }
            const Predictor p = test::random_predictor(0, d, 2, rng);
            std::vector<ComplexMatrix> mats;
            for (const auto &e : p.povm.elements()) {
                mats.push_back(e.matrix());
            }
            for (const auto &check : povm_checks(mats, true)) {
                CHECK(check.pass);
            }
        }
    }
}
