#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "theta/errors.hpp"
#include "theta/integers.hpp"

namespace theta {

enum class Ring { Eisenstein, Gaussian };

const char* ring_name(Ring r);

/// Element a + b*w of Z[w] (w^2+w+1=0) or a + b*i of Z[i].
/// The ring tag is fixed at construction; mixed-ring arithmetic throws.
struct CyclotomicInt {
    Ring ring;
    Integer a;
    Integer b;

    CyclotomicInt(Ring r, Integer a_, Integer b_)
        : ring(r), a(std::move(a_)), b(std::move(b_)) {}
    static CyclotomicInt integer(Ring r, Integer v) { return {r, std::move(v), 0}; }

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const CyclotomicInt& o) const {
        return ring == o.ring && a == o.a && b == o.b;
    }
};

CyclotomicInt operator+(const CyclotomicInt& x, const CyclotomicInt& y);
CyclotomicInt operator-(const CyclotomicInt& x, const CyclotomicInt& y);
CyclotomicInt operator-(const CyclotomicInt& x);
CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y);

Integer norm(const CyclotomicInt& z);
CyclotomicInt conjugate(const CyclotomicInt& z);
bool is_unit(const CyclotomicInt& z);

/// All units of the ring: six for Z[w], four for Z[i].
std::vector<CyclotomicInt> units_of(Ring r);

/// The ramified prime: 1-w for Z[w], 1+i for Z[i].
CyclotomicInt ramified_prime(Ring r);

/// Euclidean division z = q*w + r with norm(r) < norm(w).
std::pair<CyclotomicInt, CyclotomicInt> div_rem(const CyclotomicInt& z,
                                                const CyclotomicInt& w);

/// Exact quotient z/w, or nullopt if w does not divide z.
std::optional<CyclotomicInt> exact_div(const CyclotomicInt& z,
                                       const CyclotomicInt& w);

CyclotomicInt gcd(CyclotomicInt x, CyclotomicInt y);

/// g = s*x + t*y with g a gcd of x and y.
struct ExtGcd {
    CyclotomicInt g, s, t;
};
ExtGcd ext_gcd(const CyclotomicInt& x, const CyclotomicInt& y);

bool is_prime_element(const CyclotomicInt& z);

/// Primary normalization: the unique associate with z == -1 (mod 3) in Z[w],
/// z == 1 (mod (1+i)^3) in Z[i].  Throws NotPrime / RamifiedPrime.
CyclotomicInt primary_associate(const CyclotomicInt& z);

bool is_primary(const CyclotomicInt& z);

/// A primary prime together with its residue-field order.
struct PrimaryPrime {
    CyclotomicInt generator;
    Integer q; // norm of the generator
    /// Residue of w (resp. i) mod the prime, as an integer 0..q-1.
    /// Present only for split primes (q a rational prime).
    std::optional<Integer> root_image;

    Ring ring() const { return generator.ring; }
    bool split() const { return root_image.has_value(); }

    /// Reduce z to an integer residue 0..q-1.  Split primes only.
    Integer reduce(const CyclotomicInt& z) const;

    bool operator==(const PrimaryPrime& o) const { return generator == o.generator; }
};

/// Deterministic order: by norm, then by (a, b) of the generator.
bool prime_less(const PrimaryPrime& x, const PrimaryPrime& y);

PrimaryPrime make_primary_prime(const CyclotomicInt& generator);

/// A finite multiset of primary primes with exponents.
struct ModulusElement {
    Ring ring_tag;
    std::vector<std::pair<PrimaryPrime, unsigned>> factors; // sorted, non-associate

    Ring ring() const { return ring_tag; }
    CyclotomicInt value() const;
    Integer abs() const; // product of q^e
    bool is_one() const { return factors.empty(); }
    bool squarefree() const;
    unsigned exponent_of(const PrimaryPrime& p) const;

    bool operator==(const ModulusElement& o) const;
};

ModulusElement modulus_from_primes(Ring ring, std::vector<std::pair<PrimaryPrime, unsigned>> fs);
ModulusElement modulus_one(Ring r);
ModulusElement operator*(const ModulusElement& x, const ModulusElement& y);
bool coprime(const ModulusElement& x, const ModulusElement& y);

struct Factorization {
    CyclotomicInt unit;
    ModulusElement modulus;
};

/// Complete factorization into primary primes; norm cap defaults to 10^6.
Factorization factor(const CyclotomicInt& m, const Integer& norm_cap = Integer(1000000));

/// Canonical residue arithmetic mod a nonzero element, via the HNF basis of
/// the ideal lattice in coordinates (a, b).
class ResidueRing {
public:
    explicit ResidueRing(CyclotomicInt modulus);

    const CyclotomicInt& modulus() const { return m_; }
    const Integer& size() const { return n_; }

    CyclotomicInt canonical(const CyclotomicInt& z) const;
    bool is_unit_residue(const CyclotomicInt& z) const;

    /// All canonical residues; throws BudgetExceeded past the budget.
    std::vector<CyclotomicInt> residues(const Integer& budget = Integer(1000000)) const;

    CyclotomicInt pow(const CyclotomicInt& base, Integer exp) const;

private:
    CyclotomicInt m_;
    Integer n_;      // lattice index = norm(m)
    Integer d_, e_, f_; // HNF rows (d, e), (0, f)
};

/// Componentwise reduction of a modulo coprime m1, m2.
std::pair<CyclotomicInt, CyclotomicInt> crt_split(const CyclotomicInt& a,
                                                  const ModulusElement& m1,
                                                  const ModulusElement& m2);

/// Inverse of crt_split: the residue mod m1*m2 reducing to (r1, r2).
CyclotomicInt crt_recombine(const CyclotomicInt& r1, const CyclotomicInt& r2,
                            const ModulusElement& m1, const ModulusElement& m2);

/// Text syntax "a+b*w" / "a+b*i" (optional spaces); print/parse round-trip exactly.
std::string to_string(const CyclotomicInt& z);
CyclotomicInt parse_cyclotomic(const std::string& text, Ring ring);

/// The prime above a split rational prime p, primary-normalized.
PrimaryPrime prime_above(Ring ring, const Integer& p);

} // namespace theta
