// Shared test fixtures: random instance factories and the independent
// oracles the suites check the implementation against. Everything here
// recomputes from first principles (direct formula expansion, explicit
// operator products, classical enumeration) rather than calling the
// implementation paths under test.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "qpac/concept_class.hpp"
#include "qpac/environment.hpp"
#include "qpac/loss.hpp"
#include "qpac/operators.hpp"
#include "qpac/rng.hpp"
#include "qpac/synthetic.hpp"

namespace qpac::test {

inline Eigen::VectorXcd ket0() {
    Eigen::VectorXcd v(2);
    v << 1.0, 0.0;
    return v;
}

inline Eigen::VectorXcd ket1() {
    Eigen::VectorXcd v(2);
    v << 0.0, 1.0;
    return v;
}

inline Eigen::VectorXcd ket_plus() {
    Eigen::VectorXcd v(2);
    v << 1.0, 1.0;
    return v;
}

/// Random mixed state: Haar basis with exponentially distributed
/// weights, normalized.
inline DensityOperator random_density(Eigen::Index dim, RngStream &rng) {
    const ComplexMatrix basis = haar_random_unitary(dim, rng);
    Eigen::VectorXd weights(dim);
    double total = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        weights(i) = -std::log(1.0 - rng.uniform());
        total += weights(i);
    }
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        rho += (weights(i) / total) * basis.col(i) *
               basis.col(i).adjoint();
    }
    return DensityOperator(ComplexMatrix((rho + rho.adjoint()) / 2.0));
}

/// Random general POVM with `outcomes` elements: Gram operators
/// whitened by the inverse square root of their sum.
inline Povm random_povm(Eigen::Index dim, std::size_t outcomes,
                        RngStream &rng) {
    std::vector<ComplexMatrix> gram;
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (std::size_t v = 0; v < outcomes; ++v) {
        ComplexMatrix g(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                g(i, j) = std::complex<double>(rng.normal(), rng.normal());
            }
        }
        ComplexMatrix a = g * g.adjoint();
        a = (a + a.adjoint()) / 2.0;
        gram.push_back(a);
        sum += a;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sum);
    const ComplexMatrix inv_sqrt =
        es.eigenvectors() *
        es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().adjoint();
    std::vector<std::string> labels;
    std::vector<HermitianOperator> elements;
    for (std::size_t v = 0; v < outcomes; ++v) {
        labels.push_back(std::to_string(v));
        ComplexMatrix m = inv_sqrt * gram[v] * inv_sqrt;
        elements.emplace_back(ComplexMatrix((m + m.adjoint()) / 2.0));
    }
    return Povm(std::move(labels), std::move(elements));
}

inline std::vector<std::string> numbered_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t y = 0; y < n; ++y) {
        labels.push_back(std::to_string(y));
    }
    return labels;
}

/// Random sharp predictor in a Haar basis.
inline Predictor random_predictor(std::size_t id, Eigen::Index dim,
                                  std::size_t n_labels, RngStream &rng) {
    const ComplexMatrix basis = haar_random_unitary(dim, rng);
    std::vector<std::size_t> labeling(static_cast<std::size_t>(dim));
    for (auto &l : labeling) {
        l = static_cast<std::size_t>(rng.uniform() *
                                     static_cast<double>(n_labels));
        l = std::min(l, n_labels - 1);
    }
    return Predictor{id, labeled_basis_measurement(
                             basis, labeling, numbered_labels(n_labels))};
}

/// Random loss table with at most `max_distinct` distinct values (always
/// includes 0 so the image is interesting but bounded).
inline LossFunction random_loss(std::size_t n_labels,
                                std::size_t max_distinct, RngStream &rng) {
    std::vector<double> pool{0.0};
    while (pool.size() < max_distinct) {
        pool.push_back(rng.uniform());
    }
    const auto n = static_cast<Eigen::Index>(n_labels);
    Eigen::MatrixXd table(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
        for (Eigen::Index h = 0; h < n; ++h) {
            const auto pick = static_cast<std::size_t>(
                rng.uniform() * static_cast<double>(pool.size()));
            table(y, h) = pool[std::min(pick, pool.size() - 1)];
        }
    }
    return LossFunction(numbered_labels(n_labels), table);
}

/// Random environment: mixed states with a strictly positive random
/// joint distribution.
inline Environment random_environment(Eigen::Index dim,
                                      std::size_t n_features,
                                      std::size_t n_labels,
                                      RngStream &rng) {
    std::vector<DensityOperator> states;
    for (std::size_t x = 0; x < n_features; ++x) {
        states.push_back(random_density(dim, rng));
    }
    Eigen::MatrixXd dist(static_cast<Eigen::Index>(n_features),
                         static_cast<Eigen::Index>(n_labels));
    double total = 0.0;
    for (Eigen::Index x = 0; x < dist.rows(); ++x) {
        for (Eigen::Index y = 0; y < dist.cols(); ++y) {
            dist(x, y) = rng.uniform() + 1e-3;
            total += dist(x, y);
        }
    }
    dist /= total;
    return Environment({}, numbered_labels(n_labels), std::move(states),
                       std::move(dist));
}

// --- Independent oracles ---

/// Direct expansion of the loss-valued operators for one predictor:
/// L_z = sum_{(y, y_hat) : loss(y, y_hat) = z} M_{y_hat} (x) |y><y|.
/// Returns one matrix per value of the loss image, in image order.
inline std::vector<ComplexMatrix>
oracle_loss_operators(const Predictor &p, const LossFunction &loss) {
    const Eigen::Index d = p.povm.dim();
    const auto ny = static_cast<Eigen::Index>(loss.n_labels());
    std::vector<ComplexMatrix> ops(
        loss.image().size(), ComplexMatrix::Zero(d * ny, d * ny));
    for (std::size_t y = 0; y < loss.n_labels(); ++y) {
        for (std::size_t yh = 0; yh < loss.n_labels(); ++yh) {
            const double z = loss.value(y, yh);
            const auto zi = static_cast<std::size_t>(
                std::lower_bound(loss.image().begin(), loss.image().end(),
                                 z) -
                loss.image().begin());
            ops[zi] += kron(p.povm.element(yh).matrix(),
                            basis_projector(ny,
                                            static_cast<Eigen::Index>(y)));
        }
    }
    return ops;
}

/// Joint loss-vector distribution of a compatible subclass computed the
/// expensive way: materialize every product operator over Z^k and take
/// Born traces against the joint sample state.
/// Key: vector of loss-image indices, one per predictor.
inline std::map<std::vector<std::size_t>, double>
oracle_joint_loss_distribution(const std::vector<Predictor> &predictors,
                               const LossFunction &loss,
                               const ComplexMatrix &joint_state) {
    std::vector<std::vector<ComplexMatrix>> ops;
    for (const auto &p : predictors) {
        ops.push_back(oracle_loss_operators(p, loss));
    }
    const std::size_t n_z = loss.image().size();
    const std::size_t k = predictors.size();
    std::map<std::vector<std::size_t>, double> dist;
    std::vector<std::size_t> index(k, 0);
    for (;;) {
        ComplexMatrix product =
            ComplexMatrix::Identity(joint_state.rows(), joint_state.cols());
        for (std::size_t j = 0; j < k; ++j) {
            product = product * ops[j][index[j]];
        }
        dist[index] = (product * joint_state).trace().real();
        std::size_t pos = 0;
        while (pos < k && ++index[pos] == n_z) {
            index[pos] = 0;
            ++pos;
        }
        if (pos == k) {
            break;
        }
    }
    return dist;
}

/// Classical expected loss E_D[loss(Y, f(X))] by direct enumeration.
inline double oracle_classical_risk(const Eigen::MatrixXd &dist,
                                    const std::vector<std::size_t> &f,
                                    const LossFunction &loss) {
    double risk = 0.0;
    for (Eigen::Index x = 0; x < dist.rows(); ++x) {
        for (Eigen::Index y = 0; y < dist.cols(); ++y) {
            risk += dist(x, y) *
                    loss.value(static_cast<std::size_t>(y),
                               f[static_cast<std::size_t>(x)]);
        }
    }
    return risk;
}

/// Classical empirical risk minimization over an outcome sequence:
/// argmin_j (1/n) sum_i loss(y_i, f_j(x_i)), ties to the lowest index.
inline std::size_t
oracle_classical_erm(const std::vector<std::vector<std::size_t>> &functions,
                     const LossFunction &loss,
                     const std::vector<std::pair<std::size_t, std::size_t>>
                         &samples) {
    std::size_t best = 0;
    double best_loss = 0.0;
    for (std::size_t j = 0; j < functions.size(); ++j) {
        double sum = 0.0;
        for (const auto &[x, y] : samples) {
            sum += loss.value(y, functions[j][x]);
        }
        const double emp = sum / static_cast<double>(samples.size());
        if (j == 0 || emp < best_loss) {
            best = j;
            best_loss = emp;
        }
    }
    return best;
}

} // namespace qpac::test
