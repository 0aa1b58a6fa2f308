#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "theta/theta_coeff.hpp"

using namespace theta;

static ModulusElement mf(Ring r, std::vector<std::pair<PrimaryPrime, unsigned>> fs) {
    return modulus_from_primes(r, std::move(fs));
}

static std::vector<std::vector<int>> subsets(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

TEST_CASE("gamma token depends only on the squarefree kernel") {
    auto p = prime_above(Ring::Eisenstein, 7);
    auto q = prime_above(Ring::Eisenstein, 13);
    CHECK(gamma_token(modulus_one(Ring::Eisenstein)).is_identity());
    CHECK(gamma_token(mf(Ring::Eisenstein, {{p, 2}})).is_identity());
    CHECK(gamma_token(mf(Ring::Eisenstein, {{p, 1}, {q, 2}})) ==
          gamma_token(mf(Ring::Eisenstein, {{p, 1}})));
    CHECK(gamma_token(mf(Ring::Eisenstein, {{p, 3}})) ==
          gamma_token(mf(Ring::Eisenstein, {{p, 1}})));
}

TEST_CASE("cubic theta coefficients") {
    auto p = prime_above(Ring::Eisenstein, 7);
    CHECK(cubic_gl2_coeff(modulus_one(Ring::Eisenstein)) ==
          ThetaCoefficient::one(Ring::Eisenstein));

    ThetaCoefficient tp = cubic_gl2_coeff(mf(Ring::Eisenstein, {{p, 1}}));
    ThetaCoefficient expect = ThetaCoefficient::one(Ring::Eisenstein);
    expect.terms[0].factors = {{1, 3, mf(Ring::Eisenstein, {{p, 1}})}};
    CHECK(tp == expect);
    CHECK(std::abs(std::abs(numeric(tp)) - 1.0) < 1e-12);

    CHECK(cubic_gl2_coeff(mf(Ring::Eisenstein, {{p, 2}})).is_zero());

    ThetaCoefficient cube = cubic_gl2_coeff(mf(Ring::Eisenstein, {{p, 3}}));
    ThetaCoefficient wexp = ThetaCoefficient::one(Ring::Eisenstein);
    wexp.weight_sqrt = 7;
    CHECK(cube == wexp);
}

TEST_CASE("sextic descent frozen values") {
    auto p = prime_above(Ring::Eisenstein, 7);
    auto q = prime_above(Ring::Eisenstein, 13);
    ModulusElement mp = mf(Ring::Eisenstein, {{p, 1}});
    ModulusElement mq = mf(Ring::Eisenstein, {{q, 1}});

    // tau(p) = 2 gamma(p) G(1,p)
    ThetaCoefficient expect = ThetaCoefficient::one(Ring::Eisenstein);
    expect.terms[0].scalar = 2;
    expect.terms[0].factors = {{1, 3, mp}};
    expect.gamma = gamma_token(mp);
    CHECK(sextic_descent_recursive(mp) == expect);
    CHECK(sextic_descent_closed(mp, modulus_one(Ring::Eisenstein)) == expect);

    // tau(p^2) = G(1,p)^2, no gamma
    ThetaCoefficient sq = ThetaCoefficient::one(Ring::Eisenstein);
    sq.terms[0].factors = {{1, 3, mp}, {1, 3, mp}};
    CHECK(sextic_descent_recursive(mf(Ring::Eisenstein, {{p, 2}})) == sq);

    // tau(p q^2) = 2 gamma(p) G(1,q) G(1,pq)
    ThetaCoefficient pq2 = ThetaCoefficient::one(Ring::Eisenstein);
    pq2.terms[0].scalar = 2;
    pq2.terms[0].factors = {{1, 3, mq}, {1, 3, mf(Ring::Eisenstein, {{p, 1}, {q, 1}})}};
    pq2.gamma = gamma_token(mp);
    CHECK(sextic_descent_recursive(mf(Ring::Eisenstein, {{p, 1}, {q, 2}})) == pq2);
}

TEST_CASE("sextic recursion matches the closed form numerically") {
    std::vector<PrimaryPrime> primes = {prime_above(Ring::Eisenstein, 7),
                                        prime_above(Ring::Eisenstein, 13),
                                        prime_above(Ring::Eisenstein, 19)};
    for (const auto& s1 : subsets(3))
        for (const auto& s2 : subsets(3)) {
            bool disjoint = true;
            for (int i : s1)
                for (int l : s2)
                    if (i == l) disjoint = false;
            if (!disjoint) continue;
            std::vector<std::pair<PrimaryPrime, unsigned>> f1, f2, fm;
            for (int i : s1) f1.push_back({primes[i], 1});
            for (int i : s2) f2.push_back({primes[i], 1});
            for (int i : s1) fm.push_back({primes[i], 1});
            for (int i : s2) fm.push_back({primes[i], 2});
            ModulusElement m1 = mf(Ring::Eisenstein, f1);
            ModulusElement m2 = mf(Ring::Eisenstein, f2);
            ThetaCoefficient rec = sextic_descent_recursive(mf(Ring::Eisenstein, fm));
            ThetaCoefficient clo = sextic_descent_closed(m1, m2);
            CHECK(rec.gamma == clo.gamma);
            CHECK(std::abs(numeric(rec) - numeric(clo)) < 1e-9);
        }
}

TEST_CASE("quartic theta coefficients") {
    auto p = prime_above(Ring::Gaussian, 17);
    auto q = prime_above(Ring::Gaussian, 41);
    ModulusElement mp = mf(Ring::Gaussian, {{p, 1}});
    ModulusElement mq = mf(Ring::Gaussian, {{q, 1}});

    ThetaCoefficient gp = quartic_gl3_coeff(mp);
    ThetaCoefficient expect = ThetaCoefficient::one(Ring::Gaussian);
    expect.terms[0].factors = {{3, 4, mp}};
    CHECK(gp == expect);
    CHECK(quartic_gl3_coeff(mf(Ring::Gaussian, {{p, 2}})).is_zero());
    CHECK_THROWS_AS(quartic_gl3_coeff(mf(Ring::Gaussian, {{p, 3}})), Error);

    // p^4 p' -> |p| G(1,p')
    ThetaCoefficient shifted = quartic_gl3_coeff(mf(Ring::Gaussian, {{p, 4}, {q, 1}}));
    ThetaCoefficient wexp = ThetaCoefficient::one(Ring::Gaussian);
    wexp.terms[0].factors = {{3, 4, mq}};
    wexp.weight_mult = 17;
    CHECK(shifted == wexp);

    // descent values
    ThetaCoefficient two = ThetaCoefficient::one(Ring::Gaussian);
    two.terms[0].scalar = 2;
    two.terms[0].factors = {{3, 4, mp}};
    CHECK(quartic_so4_recursive(mp) == two);

    ThetaCoefficient sq = ThetaCoefficient::one(Ring::Gaussian);
    sq.terms[0].factors = {{3, 4, mp}, {3, 4, mp}};
    CHECK(quartic_so4_recursive(mf(Ring::Gaussian, {{p, 2}})) == sq);

    // a = pq -> 2(G(p)G(q) + G(pq))
    ThetaCoefficient apq = quartic_so4_recursive(mf(Ring::Gaussian, {{p, 1}, {q, 1}}));
    ThetaCoefficient exp2 = ThetaCoefficient::zero(Ring::Gaussian);
    exp2.terms.push_back({Rational(2), RootOfUnity(1, 0), {{3, 4, mp}, {3, 4, mq}}});
    exp2.terms.push_back(
        {Rational(2), RootOfUnity(1, 0), {{3, 4, mf(Ring::Gaussian, {{p, 1}, {q, 1}})}}});
    CHECK(apq == exp2);
}

TEST_CASE("quartic recursion matches the closed form numerically") {
    std::vector<PrimaryPrime> primes = {prime_above(Ring::Gaussian, 17),
                                        prime_above(Ring::Gaussian, 41),
                                        prime_above(Ring::Gaussian, 73)};
    for (const auto& s : subsets(3)) {
        std::vector<std::pair<PrimaryPrime, unsigned>> fs;
        for (int i : s) fs.push_back({primes[i], 1});
        ModulusElement a = mf(Ring::Gaussian, fs);
        ThetaCoefficient rec = quartic_so4_recursive(a);
        ThetaCoefficient clo = quartic_so4_closed(a);
        CHECK(rec.gamma == clo.gamma);
        CHECK(std::abs(numeric(rec) - numeric(clo)) < 1e-9);
    }
}

TEST_CASE("twisted divisor sums") {
    auto p = prime_above(Ring::Eisenstein, 7);
    auto q = prime_above(Ring::Eisenstein, 13);
    CHECK(twisted_divisor_sum(modulus_one(Ring::Eisenstein), 3, 1, Orientation::D2OverD1) ==
          ThetaCoefficient::one(Ring::Eisenstein));

    ThetaCoefficient two = ThetaCoefficient::one(Ring::Eisenstein);
    two.terms[0].scalar = 2;
    CHECK(twisted_divisor_sum(mf(Ring::Eisenstein, {{p, 1}}), 3, 1, Orientation::D2OverD1) == two);

    ModulusElement mpq = mf(Ring::Eisenstein, {{p, 1}, {q, 1}});
    ThetaCoefficient s = twisted_divisor_sum(mpq, 3, 1, Orientation::D2OverD1);
    // 2 + (q/p) + (p/q), kept exact as roots of unity
    auto v = numeric(s);
    auto expect_v = 2.0 + residue_symbol_prime(q.generator, p, 3).value() +
                    residue_symbol_prime(p.generator, q, 3).value();
    CHECK(std::abs(v - expect_v) < 1e-12);
    CHECK(std::abs(v) <= 4.0 + 1e-12);
    CHECK_THROWS_AS(twisted_divisor_sum(mf(Ring::Eisenstein, {{p, 2}}), 3, 1,
                                        Orientation::D2OverD1),
                    Error);
}

TEST_CASE("periodicity at the symbolic level") {
    auto p = prime_above(Ring::Eisenstein, 7);
    ThetaCoefficient base = sextic_descent_recursive(mf(Ring::Eisenstein, {{p, 1}}));
    ThetaCoefficient lifted = sextic_descent_recursive(mf(Ring::Eisenstein, {{p, 4}}));
    base.weight_sqrt *= 7;
    CHECK(lifted == base);

    auto gp = prime_above(Ring::Gaussian, 17);
    ThetaCoefficient qbase = quartic_so4_recursive(mf(Ring::Gaussian, {{gp, 1}}));
    ThetaCoefficient qlift = quartic_so4_recursive(mf(Ring::Gaussian, {{gp, 5}}));
    qbase.weight_mult *= 17;
    CHECK(qlift == qbase);

    auto red = apply_periodicity(mf(Ring::Eisenstein, {{p, 3}}), ThetaFamily::Sextic);
    CHECK(red.reduced.is_one());
    CHECK(red.weight_mult == 1);
    CHECK(red.weight_sqrt == 7);
    auto red2 = apply_periodicity(mf(Ring::Gaussian, {{gp, 5}}), ThetaFamily::QuarticSo4);
    CHECK(red2.reduced == mf(Ring::Gaussian, {{gp, 1}}));
    CHECK(red2.weight_mult == 17);
}

TEST_CASE("triangle bound for squarefree sextic values") {
    std::vector<PrimaryPrime> primes = {prime_above(Ring::Eisenstein, 7),
                                        prime_above(Ring::Eisenstein, 13),
                                        prime_above(Ring::Eisenstein, 19)};
    for (const auto& s : subsets(3)) {
        std::vector<std::pair<PrimaryPrime, unsigned>> fs;
        for (int i : s) fs.push_back({primes[i], 1});
        auto c = sextic_descent_recursive(mf(Ring::Eisenstein, fs));
        CHECK(std::abs(numeric(c)) <= (double)(1 << s.size()) + 1e-9);
    }
}

TEST_CASE("family names round trip") {
    for (ThetaFamily f : {ThetaFamily::Sextic, ThetaFamily::QuarticSo4, ThetaFamily::CubicGl2,
                          ThetaFamily::QuarticGl3})
        CHECK(parse_family(family_name(f)) == f);
    CHECK_THROWS_AS(parse_family("octic"), Error);
    CHECK(symbolic(ThetaCoefficient::zero(Ring::Eisenstein)) == "0");
}
