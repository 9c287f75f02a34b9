#include <doctest.h>

#include <random>

#include "ergot/errors.hpp"
#include "ergot/oracle.hpp"
#include "ergot/transfer.hpp"
#include "support.hpp"

using namespace ergot;
using doctest::Approx;

namespace {

LocallyConstantPotential random_potential(std::mt19937_64& rng, int depth) {
    const Alphabet a(2);
    Vector t(static_cast<Eigen::Index>(a.word_count(depth)));
    for (Eigen::Index k = 0; k < t.size(); ++k) t(k) = testing::uniform(rng, -1.0, 1.0);
    return LocallyConstantPotential(a, depth, t);
}

}  // namespace

TEST_CASE("potential construction") {
    const Alphabet a(2);
    const auto p = LocallyConstantPotential::from_exp_matrix(testing::exp_1234());
    CHECK(p.depth() == 2);
    CHECK(p(Word::parse("21", a)) == Approx(std::log(3.0)));
    CHECK_THROWS_AS(LocallyConstantPotential(a, 2, Vector::Zero(3)), DomainError);
    Vector bad = Vector::Zero(4);
    bad(1) = std::nan("");
    CHECK_THROWS_AS(LocallyConstantPotential(a, 2, bad), DomainError);
    Matrix neg = testing::exp_1234();
    neg(0, 1) = 0.0;
    CHECK_THROWS_AS(LocallyConstantPotential::from_exp_matrix(neg), DomainError);

    const auto map = LocallyConstantPotential::from_word_map(a, {{"11", 0.0}, {"12", 1.0}, {"21", 2.0}, {"22", 3.0}});
    CHECK(map.at(2) == 2.0);
    CHECK_THROWS_AS(LocallyConstantPotential::from_word_map(a, {{"11", 0.0}, {"12", 1.0}, {"2", 2.0}}), DomainError);

    const auto padded = p.padded(3);
    for (std::uint64_t c = 0; c < 8; ++c) CHECK(padded.at(c) == p.at(c / 2));
}

TEST_CASE("build_transfer_matrix") {
    const Alphabet a(2);
    const auto zero = LocallyConstantPotential(a, 2, Vector::Zero(4));
    CHECK(build_transfer_matrix(zero).entries().isApprox(Matrix::Ones(2, 2)));

    Matrix b(2, 2);
    b << 0.4197, 0.566751, 0.431512, 0.578563;
    CHECK(build_transfer_matrix(LocallyConstantPotential::from_exp_matrix(b)).entries().isApprox(b, 1e-15));

    const auto constant = LocallyConstantPotential::constant(a, std::log(0.5));
    CHECK(build_transfer_matrix(constant).entries().isApprox(Matrix::Constant(2, 2, 0.5)));
}

TEST_CASE("depth-3 transfer matrix acts like preimage enumeration") {
    std::mt19937_64 rng(11);
    const Alphabet a(2);
    for (int trial = 0; trial < 5; ++trial) {
        const auto pot = random_potential(rng, 3);
        const auto u = random_potential(rng, 2);
        const Matrix m = build_transfer_matrix(pot).entries();
        const Vector lu = m.transpose() * u.table();
        for (std::uint64_t y = 0; y < 4; ++y)
            CHECK(lu(static_cast<Eigen::Index>(y)) ==
                  Approx(naive_transfer_power(pot, u, 1, Word::decode(y, 2, a))).epsilon(1e-13));
    }
}

TEST_CASE("dominant eigenpair") {
    Matrix half = Matrix::Constant(2, 2, 0.5);
    auto e = dominant_eigenpair(half);
    CHECK(e.lambda == Approx(1.0).epsilon(1e-14));
    CHECK(e.h(0) == Approx(M_SQRT1_2).epsilon(1e-14));
    CHECK(e.h(1) == Approx(M_SQRT1_2).epsilon(1e-14));

    e = dominant_eigenpair(Matrix::Ones(2, 2));
    CHECK(e.lambda == Approx(2.0).epsilon(1e-14));
    CHECK(e.h(0) == Approx(M_SQRT1_2).epsilon(1e-14));

    Matrix b(2, 2);
    b << 0.4197, 0.566751, 0.431512, 0.578563;
    e = dominant_eigenpair(b);
    CHECK(std::abs(e.lambda - 1.0) < 1e-5);
    CHECK(std::abs(e.h(0) - 0.596709) < 1e-5);
    CHECK(std::abs(e.h(1) - 0.802458) < 1e-5);

    // power iteration path agrees with a general eigensolver
    std::mt19937_64 rng(5);
    Matrix m(4, 4);
    for (Eigen::Index k = 0; k < 16; ++k) m(k) = testing::uniform(rng, 0.1, 2.0);
    e = dominant_eigenpair(m);
    Eigen::EigenSolver<Matrix> es(m.transpose());
    double rho = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k) rho = std::max(rho, es.eigenvalues()(k).real());
    CHECK(e.lambda == Approx(rho).epsilon(1e-11));
    CHECK((m.transpose() * e.h - e.lambda * e.h).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((e.h.array() > 0).all());
    CHECK(e.h.norm() == Approx(1.0));

    CHECK_THROWS_AS(dominant_eigenpair(m, PerronOptions{1e-30, 3}), NumericalError);
    CHECK_THROWS_AS(dominant_eigenpair(Matrix(-Matrix::Ones(2, 2))), DomainError);
}

TEST_CASE("normalize_potential") {
    const Alphabet a(2);
    auto n = normalize_potential(LocallyConstantPotential(a, 2, Vector::Zero(4)));
    CHECK(n.eigen.lambda == Approx(2.0));
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(std::exp(n.potential.table()(k)) == Approx(0.5).epsilon(1e-14));

    const auto once = normalize_potential(LocallyConstantPotential::from_exp_matrix(testing::exp_1234()));
    CHECK(once.deviation < 1e-14);
    const auto twice = normalize_potential(once.potential);
    CHECK(twice.eigen.lambda == Approx(1.0).epsilon(1e-14));
    CHECK((twice.potential.table() - once.potential.table()).cwiseAbs().maxCoeff() < 1e-14);

    // Gibbs stationary distribution matches brute-force iteration of L
    const auto u = LocallyConstantPotential::cylinder(a, Word::parse("1", a));
    const auto dist = stationary(finite_chain(gibbs_kernel(once.potential), 1));
    double brute = naive_transfer_power(once.potential, u, 18, Word::parse("2", a));
    CHECK(brute == Approx(dist.probabilities(0)).epsilon(1e-9));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pot = random_potential(rng, 1 + trial % 3);
        const auto norm = normalize_potential(pot);
        CHECK(norm.deviation < 1e-12);
        CHECK(normalization_deviation(norm.potential) == Approx(norm.deviation));
    }
}

TEST_CASE("gibbs_kernel rejects unnormalized potentials") {
    const auto raw = LocallyConstantPotential::from_exp_matrix(testing::exp_1234());
    CHECK_THROWS_AS(gibbs_kernel(raw), DomainError);
    const auto norm = normalize_potential(raw);
    const BranchKernel k = gibbs_kernel(norm.potential);
    CHECK(k.x_count() == 1);
    CHECK(k.context_depth() == 1);
    CHECK(k.normalization_deviation() < 1e-14);
}

TEST_CASE("transfer_iterate") {
    const Alphabet a(2);
    const auto norm = normalize_potential(LocallyConstantPotential::from_exp_matrix(testing::exp_1234()));
    const auto one = LocallyConstantPotential::constant(a, 1.0);
    auto it = transfer_iterate(norm.potential, one, 10);
    CHECK(it.lambda == Approx(1.0).epsilon(1e-14));
    CHECK((it.table.table().array() - 1.0).abs().maxCoeff() < 1e-13);
    for (double d : it.distances) CHECK(d < 1e-13);

    const auto uniform = LocallyConstantPotential(a, 2, Vector::Zero(4));
    const auto u1 = LocallyConstantPotential::cylinder(a, Word::parse("1", a));
    it = transfer_iterate(uniform, u1, 5);
    CHECK(it.lambda == Approx(2.0));
    CHECK((it.table.table().array() - 0.5).abs().maxCoeff() < 1e-14);

    const auto raw = LocallyConstantPotential::from_exp_matrix(testing::exp_1234());
    it = transfer_iterate(raw, u1, 12);
    CHECK(it.distances.size() == 12);
    CHECK(it.distances.back() < 1e-6);
    CHECK(it.limit.at(0) == Approx(0.23888).epsilon(1e-4));
    CHECK(it.limit.at(1) == Approx(0.34816).epsilon(1e-4));

    // lambda^-n L^n u against the preimage sum
    for (int n : {1, 3, 6}) {
        it = transfer_iterate(raw, u1, n);
        for (std::uint64_t y = 0; y < 2; ++y)
            CHECK(it.table.at(y) * std::pow(it.lambda, n) ==
                  Approx(naive_transfer_power(raw, u1, n, Word::decode(y, 1, a))).epsilon(1e-12));
    }

    // transfer_apply: single step by definition
    const auto applied = transfer_apply(raw, u1);
    CHECK(applied.at(0) == Approx(1.0));
    CHECK(applied.at(1) == Approx(2.0));

    const auto too_deep = LocallyConstantPotential::cylinder(a, Word::parse("121", a));
    CHECK_THROWS_AS(transfer_apply(raw, too_deep), DomainError);
    CHECK_THROWS_AS(transfer_apply(raw, LocallyConstantPotential::constant(Alphabet(3), 1.0)), DomainError);
}
