#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "netsync/eigensolve.hpp"
#include "netsync/errors.hpp"
#include "netsync/linalg.hpp"
#include "netsync/rng.hpp"
#include "support/oracles.hpp"

using namespace netsync;

namespace {
Matrix make(std::size_t n, std::initializer_list<double> vals) {
    Matrix m(n, n);
    std::size_t k = 0;
    for (double v : vals) m.data()[k++] = v;
    return m;
}
} // namespace

TEST_CASE("jacobi: diagonal matrix is its own decomposition") {
    const SymmetricEigen e = jacobi_eigensolve(make(3, {3, 0, 0, 0, 1, 0, 0, 0, 2}));
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(e.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("jacobi: 2x2 closed form") {
    // [[2,1],[1,2]] has eigenvalues 1 and 3, eigenvectors (1,-1)/sqrt2, (1,1)/sqrt2
    const SymmetricEigen e = jacobi_eigensolve(make(2, {2, 1, 1, 2}));
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(e.eigenvectors(0, 1)) == doctest::Approx(s));
    CHECK(std::abs(e.eigenvectors(1, 1)) == doctest::Approx(s));
}

TEST_CASE("jacobi: reconstruction and orthogonality on seeded random symmetric matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 6);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                a(i, j) = a(j, i) = uniform_in(rng, -2.0, 2.0);
        const SymmetricEigen e = jacobi_eigensolve(a);

        // columns orthonormal
        const Matrix vtv = e.eigenvectors.transposed() * e.eigenvectors;
        Matrix err = vtv;
        err -= Matrix::identity(n);
        CHECK(max_abs(err) < 1e-10);

        // A v_k = lambda_k v_k
        for (std::size_t k = 0; k < n; ++k) {
            Vec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = e.eigenvectors(i, k);
            const Vec av = a * v;
            for (std::size_t i = 0; i < n; ++i)
                CHECK(av[i] == doctest::Approx(e.eigenvalues[k] * v[i]).epsilon(1e-9));
        }

        // ascending order
        CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    }
}

TEST_CASE("jacobi agrees with the characteristic-polynomial oracle") {
    std::mt19937_64 rng(11);
    int compared = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng() % 3);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                a(i, j) = a(j, i) = uniform_in(rng, -2.0, 2.0);
        const Vec ours = jacobi_eigensolve(a).eigenvalues;
        // bisection only resolves simple roots; skip near-degenerate draws
        bool simple = true;
        for (std::size_t k = 1; k < n; ++k)
            if (ours[k] - ours[k - 1] < 1e-3) simple = false;
        if (!simple) continue;
        const Vec ref = oracle::symmetric_eigenvalues(a);
        REQUIRE(ref.size() == n);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(ours[k] == doctest::Approx(ref[k]).epsilon(1e-8));
        ++compared;
    }
    CHECK(compared >= 5);
}

TEST_CASE("jacobi rejects asymmetric input") {
    CHECK_THROWS_AS(jacobi_eigensolve(make(2, {1, 2, 3, 4})), InvalidArgument);
}

TEST_CASE("jacobi is deterministic") {
    const Matrix a = make(3, {1, 2, 0, 2, -1, 3, 0, 3, 2});
    const SymmetricEigen e1 = jacobi_eigensolve(a);
    const SymmetricEigen e2 = jacobi_eigensolve(a);
    CHECK(e1.eigenvalues == e2.eigenvalues);
    CHECK(e1.eigenvectors.data() == e2.eigenvectors.data());
}

TEST_CASE("general eigenvalues: rotation matrix gives a unit-circle pair") {
    const double th = 0.3;
    const Matrix r = make(2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)});
    const auto evs = general_eigenvalues(r);
    REQUIRE(evs.size() == 2);
    CHECK(std::abs(evs[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(evs[0].real() == doctest::Approx(std::cos(th)).epsilon(1e-12));
    CHECK(std::abs(evs[0].imag()) == doctest::Approx(std::sin(th)).epsilon(1e-12));
    // conjugate pair
    CHECK(evs[0].real() == doctest::Approx(evs[1].real()));
    CHECK(evs[0].imag() == doctest::Approx(-evs[1].imag()));
}

TEST_CASE("general eigenvalues: companion matrix of (x-1)(x-2)(x-3)(x+4)") {
    // x^4 - 2x^3 - 13x^2 + 38x - 24
    const Vec c{1, -2, -13, 38, -24};
    const std::size_t n = 4;
    Matrix comp(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) comp(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -c[n - i];
    auto evs = general_eigenvalues(comp);
    std::vector<double> re;
    for (const auto& ev : evs) {
        CHECK(std::abs(ev.imag()) < 1e-8);
        re.push_back(ev.real());
    }
    std::sort(re.begin(), re.end());
    const Vec expected{-4, 1, 2, 3};
    for (std::size_t k = 0; k < n; ++k)
        CHECK(re[k] == doctest::Approx(expected[k]).epsilon(1e-9));
}

TEST_CASE("general eigenvalues: defective Jordan block") {
    const auto evs = general_eigenvalues(make(2, {1, 1, 0, 1}));
    CHECK(evs[0].real() == doctest::Approx(1.0));
    CHECK(evs[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(evs[0].imag()) < 1e-12);
}

TEST_CASE("general eigenvalues agree with jacobi on symmetric input") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 5);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                a(i, j) = a(j, i) = uniform_in(rng, -3.0, 3.0);
        const Vec sym = jacobi_eigensolve(a).eigenvalues;
        auto gen = general_eigenvalues(a);
        std::vector<double> re;
        for (const auto& ev : gen) {
            CHECK(std::abs(ev.imag()) < 1e-8);
            re.push_back(ev.real());
        }
        std::sort(re.begin(), re.end());
        for (std::size_t k = 0; k < n; ++k)
            CHECK(re[k] == doctest::Approx(sym[k]).epsilon(1e-8));
    }
}

TEST_CASE("general eigenvalues sorted by modulus descending") {
    const auto evs = general_eigenvalues(make(3, {1, 0, 0, 0, -5, 0, 0, 0, 3}));
    CHECK(std::abs(evs[0]) == doctest::Approx(5.0));
    CHECK(std::abs(evs[1]) == doctest::Approx(3.0));
    CHECK(std::abs(evs[2]) == doctest::Approx(1.0));
}
