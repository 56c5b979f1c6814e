#include "sigmalab/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sigmalab/error.hpp"

namespace sigmalab {

namespace {

constexpr double kRadiusSlack = 1e-12;

void check_domain(const FrequencyDomain& D)
{
    require(D.m > 0 && std::isfinite(D.m), "frequency radius must be positive");
    require(D.d >= 1, "dimension must be positive");
    require(D.rho >= 1, "oversampling factor must be at least 1");
}

double cube_points(long K, int d)
{
    return std::pow(2.0 * static_cast<double>(K) + 1.0, d);
}

bool inside_ball(long sum_sq, double R)
{
    return static_cast<double>(sum_sq) <= R * R * (1 + kRadiusSlack);
}

std::uint64_t count_ball(int dims, double R2, long K)
{
    if (dims == 0) return 1;
    std::uint64_t total = 0;
    for (long k = -K; k <= K; ++k) {
        double rest = R2 - static_cast<double>(k) * static_cast<double>(k);
        if (rest < -R2 * kRadiusSlack) continue;
        long Kr = static_cast<long>(std::floor(std::sqrt(std::max(rest, 0.0)) * (1 + kRadiusSlack)));
        total += count_ball(dims - 1, rest, std::min(Kr, K));
    }
    return total;
}

}  // namespace

FrequencyDomain FrequencyDomain::discrete(Shape shape, double m, int d, int rho)
{
    FrequencyDomain D{shape, m, Sampling::Discrete, rho, d};
    check_domain(D);
    return D;
}

FrequencyDomain FrequencyDomain::continuous(Shape shape, double m, int d)
{
    FrequencyDomain D{shape, m, Sampling::Continuous, 1, d};
    check_domain(D);
    return D;
}

FrequencyDomain FrequencyDomain::with_radius(double radius) const
{
    FrequencyDomain D = *this;
    D.m = radius;
    check_domain(D);
    return D;
}

long lattice_radius(double m, int rho)
{
    return static_cast<long>(std::floor(m * rho * (1 + kRadiusSlack)));
}

Lattice enumerate_lattice(const FrequencyDomain& D, std::uint64_t budget)
{
    check_domain(D);
    require(D.discrete_mode(), "lattice enumeration needs a discrete domain");
    const long K = lattice_radius(D.m, D.rho);
    const double need = cube_points(K, D.d);
    if (need > static_cast<double>(budget))
        throw Error(ErrorKind::budget, "lattice enumeration needs " + std::to_string(static_cast<long long>(need)) +
                                           " candidates, budget is " + std::to_string(budget));
    const double R = D.m * D.rho;
    Lattice L;
    L.d = D.d;
    L.rho = D.rho;
    std::vector<int> idx(D.d, static_cast<int>(-K));
    for (;;) {
        bool keep = true;
        if (D.shape == Shape::Ball) {
            long s2 = 0;
            for (int v : idx) s2 += static_cast<long>(v) * v;
            keep = inside_ball(s2, R);
        }
        if (keep) L.index.insert(L.index.end(), idx.begin(), idx.end());
        int l = D.d - 1;
        while (l >= 0 && idx[l] == K) idx[l--] = static_cast<int>(-K);
        if (l < 0) break;
        ++idx[l];
    }
    return L;
}

std::uint64_t lattice_count(const FrequencyDomain& D, std::uint64_t budget)
{
    check_domain(D);
    const long K = lattice_radius(D.m, D.rho);
    if (D.shape == Shape::Cube) return static_cast<std::uint64_t>(std::llround(cube_points(K, D.d)));
    const double work = cube_points(K, D.d - 1);
    if (work > static_cast<double>(budget))
        throw Error(ErrorKind::budget, "ball lattice count needs " + std::to_string(static_cast<long long>(work)) +
                                           " steps, budget is " + std::to_string(budget));
    const double R = D.m * D.rho;
    return count_ball(D.d, R * R, K);
}

double unit_ball_volume(int d)
{
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double volume(const FrequencyDomain& D)
{
    check_domain(D);
    if (D.shape == Shape::Cube) return std::pow(2.0 * D.m, D.d);
    return unit_ball_volume(D.d) * std::pow(D.m, D.d);
}

double gram_diagonal(const FrequencyDomain& D)
{
    if (D.discrete_mode()) return static_cast<double>(lattice_count(D)) / std::pow(D.rho, D.d);
    return volume(D);
}

}  // namespace sigmalab
