#pragma once

#include <complex>
#include <optional>

#include "theta/cyclotomic.hpp"
#include "theta/local_field.hpp"

namespace theta {

/// Residue field of a split primary prime, with the n-th roots of unity
/// matched to the ring embedding (w resp. i maps to the stored root image).
/// Tables are built once per prime and shared read-only.
FieldPtr residue_field(const PrimaryPrime& p);

/// Power residue symbol (a/p)_n^j by the Euler criterion.
RootOfUnity residue_symbol_prime(const CyclotomicInt& a, const PrimaryPrime& p,
                                 unsigned n, long long j = 1);

/// Multiplicative (Jacobi-style) extension to composite moduli.
RootOfUnity residue_symbol(const CyclotomicInt& a, const ModulusElement& m,
                           unsigned n, long long j = 1);

struct GaussValue {
    std::complex<double> value;
    /// Exact Jacobi-sum witness J(chi,chi), available for prime moduli.
    std::optional<CyclotomicInt> jacobi_witness;
};

/// Normalized Gauss sum G_j^(n)(b,p) = q^{-1/2} sum over units e mod p of
/// chi^j(e) psi(b e / p), with psi(x/p) = exp(2 pi i lift(x)/q).
GaussValue gauss_sum_prime(const PrimaryPrime& p, unsigned n, long long j,
                           const CyclotomicInt& b);

/// Composite-modulus extension: recursion over the prime factors with the
/// two local Hilbert-symbol prefactors, realized by the tame formula.
GaussValue gauss_sum_composite(const ModulusElement& m, unsigned n, long long j,
                               const CyclotomicInt& b);

/// Independent brute-force oracle: direct sum over units mod m with the
/// adelic additive character.  Squarefree moduli, |m| <= budget.
GaussValue gauss_sum_bruteforce(const ModulusElement& m, unsigned n, long long j,
                                const CyclotomicInt& b,
                                const Integer& budget = Integer(100000));

/// Exact Jacobi sum J(chi^j, chi^j) = sum_t chi^j(t) chi^j(1-t) in the
/// working ring (n = 3 or 4 only).
CyclotomicInt jacobi_sum(const PrimaryPrime& p, unsigned n, long long j);

/// Fingerprint of the additive-character convention baked into the sums;
/// cache files carrying a different fingerprint are ignored.
std::string psi_fingerprint();

/// Disk cache for prime Gauss sums: one file per (ring, n, j, norm bucket)
/// under dir, self-describing header with the psi fingerprint.
void load_gauss_cache(const std::string& dir);
void save_gauss_cache(const std::string& dir);
void clear_gauss_cache();

struct ReciprocityReport {
    RootOfUnity pi_over_theta;
    RootOfUnity theta_over_pi;
    bool expected_symmetric;
    bool symmetric;
};

/// Compare (pi/theta)_n with (theta/pi)_n for primary primes.
ReciprocityReport check_reciprocity(const PrimaryPrime& pi, const PrimaryPrime& theta,
                                    unsigned n);

} // namespace theta
