#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "theta/symbols.hpp"

using namespace theta;

static CyclotomicInt eis(long a, long b) { return {Ring::Eisenstein, a, b}; }
static CyclotomicInt gau(long a, long b) { return {Ring::Gaussian, a, b}; }

static std::complex<double> embed(const CyclotomicInt& z) {
    std::complex<double> root = z.ring == Ring::Eisenstein
                                    ? std::complex<double>(-0.5, std::sqrt(3.0) / 2)
                                    : std::complex<double>(0.0, 1.0);
    return z.a.convert_to<double>() + z.b.convert_to<double>() * root;
}

static std::vector<PrimaryPrime> split_primes(Ring r, long bound) {
    long m = r == Ring::Eisenstein ? 3 : 4;
    std::vector<PrimaryPrime> out;
    for (long p = 2; p <= bound; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (prime && p % m == 1) out.push_back(prime_above(r, p));
    }
    return out;
}

TEST_CASE("cubic residue symbol of w mod 2+3w") {
    PrimaryPrime p = make_primary_prime(eis(2, 3));
    REQUIRE(p.q == 7);
    CHECK(residue_symbol_prime(eis(0, 1), p, 3) == RootOfUnity(3, 2));
    // cube powers are trivial; the symbol is multiplicative
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> dist(-50, 50);
    for (int i = 0; i < 500; ++i) {
        CyclotomicInt x = eis(dist(rng), dist(rng));
        CyclotomicInt y = eis(dist(rng), dist(rng));
        if (p.reduce(x) == 0 || p.reduce(y) == 0) continue;
        CHECK(residue_symbol_prime(x * y, p, 3) ==
              residue_symbol_prime(x, p, 3) * residue_symbol_prime(y, p, 3));
        CHECK(residue_symbol_prime(x * x * x, p, 3).is_one());
    }
    CHECK_THROWS_AS(residue_symbol_prime(eis(2, 3), p, 3), Error);
    CHECK_THROWS_AS(residue_symbol_prime(eis(1, 0), p, 4), Error);
}

TEST_CASE("inert prime symbol via ring residues") {
    // 2 is primary and inert in Z[w]; residue field has 4 elements
    PrimaryPrime two = make_primary_prime(eis(2, 0));
    CHECK(!two.split());
    CHECK(two.q == 4);
    CHECK(residue_symbol_prime(eis(0, 1), two, 3) == RootOfUnity(3, 1));
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            CyclotomicInt z = eis(a, b);
            if (norm(z) % 2 == 0 || z.is_zero()) continue;
            CHECK(residue_symbol_prime(z * z * z, two, 3).is_one());
        }
}

TEST_CASE("composite symbol is the product of prime symbols") {
    PrimaryPrime p7 = prime_above(Ring::Eisenstein, 7);
    PrimaryPrime p13 = prime_above(Ring::Eisenstein, 13);
    ModulusElement m = modulus_from_primes(Ring::Eisenstein, {{p7, 1}, {p13, 1}});
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> dist(-80, 80);
    for (int i = 0; i < 300; ++i) {
        CyclotomicInt x = eis(dist(rng), dist(rng));
        if (p7.reduce(x) == 0 || p13.reduce(x) == 0) continue;
        CHECK(residue_symbol(x, m, 3) ==
              residue_symbol_prime(x, p7, 3) * residue_symbol_prime(x, p13, 3));
    }
}

TEST_CASE("normalized cubic gauss sums have modulus one") {
    for (const auto& p : split_primes(Ring::Eisenstein, 200)) {
        auto g = gauss_sum_prime(p, 3, 1, eis(1, 0));
        CHECK(std::abs(std::abs(g.value) - 1.0) < 1e-12);
        auto g2 = gauss_sum_prime(p, 3, 2, eis(1, 0));
        CHECK(std::abs(std::abs(g2.value) - 1.0) < 1e-12);
    }
    for (const auto& p : split_primes(Ring::Gaussian, 200)) {
        for (long long j : {1, 3}) {
            auto g = gauss_sum_prime(p, 4, j, gau(1, 0));
            CHECK(std::abs(std::abs(g.value) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("gauss sum vanishes when the twist shares the prime") {
    PrimaryPrime p = prime_above(Ring::Eisenstein, 13);
    auto g = gauss_sum_prime(p, 3, 1, p.generator * eis(2, 5));
    CHECK(std::abs(g.value) == 0.0);
}

TEST_CASE("unit shift of the twist") {
    // G_j(u b, p) = (u/p)^{-j} G_j(b, p)
    PrimaryPrime p = prime_above(Ring::Eisenstein, 31);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> dist(-40, 40);
    for (int i = 0; i < 100; ++i) {
        CyclotomicInt u = eis(dist(rng), dist(rng));
        CyclotomicInt b = eis(dist(rng), dist(rng));
        if (p.reduce(u) == 0 || p.reduce(b) == 0) continue;
        for (long long j : {1, 2}) {
            auto lhs = gauss_sum_prime(p, 3, j, u * b).value;
            auto rhs = residue_symbol_prime(u, p, 3, -j).value() *
                       gauss_sum_prime(p, 3, j, b).value;
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("complex conjugation swaps the character power") {
    for (const auto& p : split_primes(Ring::Eisenstein, 100)) {
        auto g1 = gauss_sum_prime(p, 3, 1, eis(1, 0)).value;
        auto g2 = gauss_sum_prime(p, 3, 2, eis(1, 0)).value;
        CHECK(std::abs(std::conj(g1) - g2) < 1e-12);
    }
    // quartic: chi(-1) = 1 requires q == 1 mod 8
    for (const auto& p : split_primes(Ring::Gaussian, 200)) {
        if (p.q % 8 != 1) continue;
        auto g1 = gauss_sum_prime(p, 4, 1, gau(1, 0)).value;
        auto g3 = gauss_sum_prime(p, 4, 3, gau(1, 0)).value;
        CHECK(std::abs(std::conj(g1) - g3) < 1e-12);
    }
}

TEST_CASE("jacobi sum witness and the cube identity") {
    for (const auto& p : split_primes(Ring::Eisenstein, 200)) {
        auto g = gauss_sum_prime(p, 3, 1, eis(1, 0));
        REQUIRE(g.jacobi_witness.has_value());
        const CyclotomicInt& J = *g.jacobi_witness;
        CHECK(norm(J) == p.q);
        // (sqrt(q) G)^3 = q J
        double q = p.q.convert_to<double>();
        std::complex<double> cube = std::pow(g.value * std::sqrt(q), 3.0);
        std::complex<double> qJ = q * embed(J);
        CHECK(std::abs(cube - qJ) / std::abs(qJ) < 1e-10);
    }
    for (const auto& p : split_primes(Ring::Gaussian, 100)) {
        auto J = jacobi_sum(p, 4, 1);
        CHECK(norm(J) == p.q);
    }
    CHECK_THROWS_AS(jacobi_sum(prime_above(Ring::Eisenstein, 7), 4, 1), Error);
}

TEST_CASE("composite rule matches the brute-force oracle") {
    auto check_pair = [](const PrimaryPrime& p, const PrimaryPrime& r, unsigned n,
                         long long j, const CyclotomicInt& b) {
        ModulusElement m = modulus_from_primes(p.ring(), {{p, 1}, {r, 1}});
        auto fast = gauss_sum_composite(m, n, j, b).value;
        auto slow = gauss_sum_bruteforce(m, n, j, b).value;
        CHECK(std::abs(fast - slow) < 1e-9);
    };
    auto e7 = prime_above(Ring::Eisenstein, 7);
    auto e13 = prime_above(Ring::Eisenstein, 13);
    auto e19 = prime_above(Ring::Eisenstein, 19);
    for (long long j : {1, 2}) {
        check_pair(e7, e13, 3, j, eis(1, 0));
        check_pair(e7, e19, 3, j, eis(2, 1));
        check_pair(e13, e19, 3, j, eis(1, 0));
    }
    // three prime factors
    ModulusElement m3 = modulus_from_primes(Ring::Eisenstein, {{e7, 1}, {e13, 1}, {e19, 1}});
    CHECK(std::abs(gauss_sum_composite(m3, 3, 1, eis(1, 0)).value -
                   gauss_sum_bruteforce(m3, 3, 1, eis(1, 0)).value) < 1e-9);

    auto g5 = prime_above(Ring::Gaussian, 5);
    auto g13 = prime_above(Ring::Gaussian, 13);
    auto g17 = prime_above(Ring::Gaussian, 17);
    for (long long j : {1, 3}) {
        check_pair(g5, g13, 4, j, gau(1, 0));
        check_pair(g5, g17, 4, j, gau(1, 0));
        check_pair(g13, g17, 4, j, gau(3, 2));
    }
}

TEST_CASE("oracle agrees with the direct prime sum") {
    for (const auto& p : split_primes(Ring::Eisenstein, 60)) {
        ModulusElement m = modulus_from_primes(Ring::Eisenstein, {{p, 1}});
        CHECK(std::abs(gauss_sum_bruteforce(m, 3, 1, eis(1, 0)).value -
                       gauss_sum_prime(p, 3, 1, eis(1, 0)).value) < 1e-12);
    }
}

TEST_CASE("oracle input validation") {
    auto p = prime_above(Ring::Eisenstein, 7);
    ModulusElement sq = modulus_from_primes(Ring::Eisenstein, {{p, 2}});
    CHECK_THROWS_AS(gauss_sum_bruteforce(sq, 3, 1, eis(1, 0)), Error);
    ModulusElement m = modulus_from_primes(Ring::Eisenstein, {{p, 1}});
    CHECK_THROWS_AS(gauss_sum_bruteforce(m, 3, 1, eis(1, 0), Integer(5)), Error);
}

TEST_CASE("cubic reciprocity is symmetric for primary primes") {
    auto primes = split_primes(Ring::Eisenstein, 150);
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t l = i + 1; l < primes.size(); ++l) {
            auto rep = check_reciprocity(primes[i], primes[l], 3);
            CHECK(rep.expected_symmetric);
            CHECK(rep.symmetric);
        }
}

TEST_CASE("quartic reciprocity sign") {
    auto primes = split_primes(Ring::Gaussian, 150);
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t l = i + 1; l < primes.size(); ++l) {
            const auto& pi = primes[i];
            const auto& th = primes[l];
            auto rep = check_reciprocity(pi, th, 4);
            // (pi/th) = (th/pi) * (-1)^{((N pi - 1)/4)((N th - 1)/4)}
            Integer e = (pi.q - 1) / 4 * ((th.q - 1) / 4);
            RootOfUnity sign(4, e % 2 == 0 ? 0 : 2);
            CHECK(rep.pi_over_theta == rep.theta_over_pi * sign);
            CHECK(rep.expected_symmetric == (pi.q % 8 == 1 || th.q % 8 == 1));
            CHECK(rep.symmetric == rep.expected_symmetric);
        }
}

TEST_CASE("reciprocity input validation") {
    auto p = prime_above(Ring::Eisenstein, 7);
    auto r = prime_above(Ring::Eisenstein, 13);
    CHECK_THROWS_AS(check_reciprocity(p, p, 3), Error);
    CHECK_THROWS_AS(check_reciprocity(p, r, 4), Error);
    CHECK_THROWS_AS(check_reciprocity(p, prime_above(Ring::Gaussian, 5), 3), Error);
}
