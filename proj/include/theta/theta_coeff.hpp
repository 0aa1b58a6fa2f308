#pragma once

#include <complex>
#include <string>
#include <vector>

#include "theta/symbols.hpp"

namespace theta {

/// Symbolic Weil-factor token: depends only on the squarefree kernel of its
/// argument (tokens of perfect squares are trivial).
struct GammaToken {
    ModulusElement kernel;

    bool is_identity() const { return kernel.is_one(); }
    bool operator==(const GammaToken& o) const { return kernel == o.kernel; }
};

GammaToken gamma_token(const ModulusElement& m);

/// One normalized Gauss-sum symbol G_j^(n)(1, modulus).
struct GaussFactor {
    long long j;
    unsigned n;
    ModulusElement modulus;
};

/// scalar * zeta * product of Gauss factors.
struct ThetaTerm {
    Rational scalar;
    RootOfUnity zeta;
    std::vector<GaussFactor> factors;
};

/// A Whittaker-coefficient value: a sum of terms sharing one gamma token and
/// one magnitude weight weight_mult * sqrt(weight_sqrt) from periodicity.
struct ThetaCoefficient {
    Ring ring;
    std::vector<ThetaTerm> terms;
    GammaToken gamma;
    Integer weight_mult = 1;
    Integer weight_sqrt = 1;

    bool is_zero() const { return terms.empty(); }
    static ThetaCoefficient zero(Ring r);
    static ThetaCoefficient one(Ring r);

    bool operator==(const ThetaCoefficient& o) const;
};

/// Canonical form: factors sorted, like terms merged, zero scalars dropped.
void normalize(ThetaCoefficient& c);

std::string symbolic(const ThetaCoefficient& c);

/// Numeric value of the gamma-free part (times the magnitude weight); the
/// optional flag multiplies in a local model of gamma on the kernel primes.
std::complex<double> numeric(const ThetaCoefficient& c, bool numeric_gamma = false);

enum class ThetaFamily { Sextic, QuarticSo4, CubicGl2, QuarticGl3 };

const char* family_name(ThetaFamily f);
ThetaFamily parse_family(const std::string& name);
Ring family_ring(ThetaFamily f);

struct PeriodicityReduction {
    ModulusElement reduced;
    Integer weight_mult;
    Integer weight_sqrt;
};

/// Strip period-th powers: period 3 with weight |k|^(1/2) for the cubic and
/// sextic families, period 4 with weight |k| for the quartic families.
PeriodicityReduction apply_periodicity(const ModulusElement& m, ThetaFamily family);

/// Hecke-determined cubic GL2 theta coefficient.
ThetaCoefficient cubic_gl2_coeff(const ModulusElement& m);

/// Hecke-determined quartic GL3 theta coefficient; exponent 3 mod 4 is an
/// unsupported pattern.
ThetaCoefficient quartic_gl3_coeff(const ModulusElement& m);

/// Sextic descent coefficient via the divisor-sum recursion over the radical.
ThetaCoefficient sextic_descent_recursive(const ModulusElement& m);

/// Closed form at m1*m2^2 for squarefree coprime m1, m2.
ThetaCoefficient sextic_descent_closed(const ModulusElement& m1, const ModulusElement& m2);

/// Quartic descent coefficient via the divisor-sum recursion.
ThetaCoefficient quartic_so4_recursive(const ModulusElement& a);

/// Closed form for squarefree a.
ThetaCoefficient quartic_so4_closed(const ModulusElement& a);

enum class Orientation { D2OverD1, D1OverD2 };

/// Sum over ordered factorizations d1 d2 = m of the oriented residue symbol,
/// kept exact as a sum of roots of unity.
ThetaCoefficient twisted_divisor_sum(const ModulusElement& m, unsigned n, long long j,
                                     Orientation orientation);

/// Coefficient of the family at modulus m (dispatch helper for the CLI).
ThetaCoefficient family_coefficient(ThetaFamily f, const ModulusElement& m);

} // namespace theta
