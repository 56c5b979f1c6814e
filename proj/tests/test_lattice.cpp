#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "sigmalab/error.hpp"
#include "sigmalab/lattice.hpp"

using namespace sigmalab;

namespace {

// Counts (Z/rho)^d points in the domain by scanning a generous box.
std::uint64_t brute_count(Shape shape, double m, int d, int rho)
{
    const long K = static_cast<long>(std::ceil(m * rho)) + 1;
    std::vector<long> w(d, -K);
    std::uint64_t n = 0;
    while (true) {
        bool in = true;
        if (shape == Shape::Cube) {
            for (long v : w) in = in && std::abs(static_cast<double>(v) / rho) <= m;
        } else {
            double s = 0;
            for (long v : w) s += static_cast<double>(v) * v;
            in = std::sqrt(s) / rho <= m;
        }
        n += in;
        int l = 0;
        while (l < d && w[l] == K) w[l++] = -K;
        if (l == d) break;
        ++w[l];
    }
    return n;
}

}  // namespace

TEST_SUITE("lattice")
{
TEST_CASE("enumeration examples")
{
    const Lattice C = enumerate_lattice(FrequencyDomain::discrete(Shape::Cube, 1, 2));
    CHECK(C.size() == 9);
    const Lattice B = enumerate_lattice(FrequencyDomain::discrete(Shape::Ball, 1, 2));
    CHECK(B.size() == 5);
    std::set<std::pair<int, int>> pts;
    for (std::size_t i = 0; i < B.size(); ++i) pts.insert({B.index[2 * i], B.index[2 * i + 1]});
    CHECK(pts == std::set<std::pair<int, int>>{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    CHECK(enumerate_lattice(FrequencyDomain::discrete(Shape::Ball, 5, 2)).size() == brute_count(Shape::Ball, 5, 2, 1));
    CHECK(brute_count(Shape::Ball, 5, 2, 1) == 81);
}

TEST_CASE("enumeration is lexicographic and oversampled correctly")
{
    const Lattice L = enumerate_lattice(FrequencyDomain::discrete(Shape::Cube, 1, 1, 2));
    REQUIRE(L.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(L.omega(i, 0) == doctest::Approx(-1 + 0.5 * i));
    const Lattice M = enumerate_lattice(FrequencyDomain::discrete(Shape::Ball, 2.3, 3, 2));
    for (std::size_t i = 1; i < M.size(); ++i) {
        const std::vector<int> a(M.index.begin() + (i - 1) * 3, M.index.begin() + i * 3);
        const std::vector<int> b(M.index.begin() + i * 3, M.index.begin() + (i + 1) * 3);
        CHECK(a < b);
    }
}

TEST_CASE("counts agree with brute force")
{
    for (Shape shape : {Shape::Ball, Shape::Cube})
        for (int d = 2; d <= 4; ++d)
            for (int rho = 1; rho <= 3; ++rho)
                for (double m : {0.5, 1.0, 2.5, 3.7, 5.0}) {
                    if (d == 4 && m * rho > 6) continue;
                    const auto D = FrequencyDomain::discrete(shape, m, d, rho);
                    CHECK(lattice_count(D) == brute_count(shape, m, d, rho));
                }
    CHECK(lattice_count(FrequencyDomain::discrete(Shape::Cube, 20, 2)) == 1681);
    CHECK(lattice_count(FrequencyDomain::discrete(Shape::Cube, 2.5, 2)) == 25);
}

TEST_CASE("lattice radius tolerates rounding")
{
    CHECK(lattice_radius(3.0, 1) == 3);
    CHECK(lattice_radius(0.1 * 30, 1) == 3);
    CHECK(lattice_radius(2.5, 2) == 5);
    CHECK(lattice_radius(2.49, 2) == 4);
}

TEST_CASE("budget is enforced")
{
    CHECK_THROWS_AS(enumerate_lattice(FrequencyDomain::discrete(Shape::Cube, 100, 4), 1000), Error);
    try {
        lattice_count(FrequencyDomain::discrete(Shape::Cube, 100, 4), 1000);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget);
    }
}

TEST_CASE("volumes and Gram diagonals")
{
    const double pi = std::numbers::pi;
    CHECK(volume(FrequencyDomain::continuous(Shape::Cube, 1, 3)) == doctest::Approx(8));
    CHECK(volume(FrequencyDomain::continuous(Shape::Ball, 1, 2)) == doctest::Approx(pi));
    CHECK(volume(FrequencyDomain::continuous(Shape::Ball, 2, 3)) == doctest::Approx(32 * pi / 3));
    CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2));
    CHECK(gram_diagonal(FrequencyDomain::discrete(Shape::Cube, 2, 2)) == doctest::Approx(25));
    CHECK(gram_diagonal(FrequencyDomain::discrete(Shape::Cube, 1, 1, 2)) == doctest::Approx(5.0 / 2));
    CHECK(gram_diagonal(FrequencyDomain::continuous(Shape::Cube, 2, 2)) == doctest::Approx(16));
}
}
