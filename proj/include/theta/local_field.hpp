#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "theta/errors.hpp"
#include "theta/integers.hpp"

namespace theta {

/// Exact n-th root of unity as an exponent mod n, with the fixed embedding
/// zeta_n -> exp(2*pi*i/n).
struct RootOfUnity {
    unsigned order;
    unsigned exponent; // reduced mod order

    RootOfUnity(unsigned n, long long k)
        : order(n), exponent(static_cast<unsigned>(((k % n) + n) % n)) {}
    static RootOfUnity one(unsigned n = 1) { return {n, 0}; }

    bool is_one() const { return exponent == 0; }
    RootOfUnity inverse() const { return {order, -(long long)exponent}; }
    RootOfUnity pow(long long e) const { return {order, (long long)exponent * e}; }
    std::complex<double> value() const;

    /// Rescale to order m (m must be a multiple of order).
    RootOfUnity in_order(unsigned m) const;

    bool operator==(const RootOfUnity& o) const;
};

RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y);

/// Prime residue field F_q with a generator of the multiplicative group and a
/// discrete-log table, built once at construction and read-only afterwards.
class FiniteField {
public:
    explicit FiniteField(uint64_t q, unsigned precision = 32);

    uint64_t q() const { return q_; }
    uint64_t generator() const { return g_; }
    unsigned precision() const { return precision_; }

    uint64_t add(uint64_t x, uint64_t y) const { return (x + y) % q_; }
    uint64_t sub(uint64_t x, uint64_t y) const { return (x + q_ - y % q_) % q_; }
    uint64_t mul(uint64_t x, uint64_t y) const { return x * y % q_; }
    uint64_t neg(uint64_t x) const { return x == 0 ? 0 : q_ - x; }
    uint64_t inv(uint64_t x) const;
    uint64_t pow(uint64_t x, long long e) const;
    uint64_t dlog(uint64_t x) const;

    /// Distinguished primitive n-th root of unity (defaults to g^((q-1)/n)).
    uint64_t unit_root(unsigned n) const;
    /// Override the distinguished n-th root (to match a global embedding).
    void set_unit_root(unsigned n, uint64_t zeta);

    /// x -> x^((q-1)/n) mapped into mu_n under the fixed embedding.
    RootOfUnity power_residue(uint64_t x, unsigned n) const;
    /// Match an element of mu_n subset F_q to its exponent.
    RootOfUnity to_root_of_unity(uint64_t x, unsigned n) const;

private:
    uint64_t q_;
    uint64_t g_;
    unsigned precision_;
    std::vector<uint32_t> dlog_;
    std::map<unsigned, uint64_t> roots_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Truncated Laurent series over F_q.  A nonzero element stores its valuation
/// and a coefficient window of length <= precision whose leading entry is
/// nonzero; the window length records how many coefficients are trusted.
class LocalElement {
public:
    static LocalElement zero(FieldPtr f);
    static LocalElement one(FieldPtr f);
    static LocalElement constant(FieldPtr f, uint64_t c);
    static LocalElement uniformizer(FieldPtr f, long long power = 1);
    /// t^v * (coeffs[0] + coeffs[1] t + ...); coeffs[0] != 0.
    static LocalElement make(FieldPtr f, long long v, std::vector<uint64_t> coeffs);

    bool is_zero() const { return zero_; }
    long long valuation() const; // throws on zero
    uint64_t leading() const;    // throws on zero
    const std::vector<uint64_t>& coeffs() const { return c_; }
    const FieldPtr& field() const { return f_; }

    bool operator==(const LocalElement& o) const;

private:
    LocalElement(FieldPtr f, bool zero, long long v, std::vector<uint64_t> c)
        : f_(std::move(f)), zero_(zero), v_(v), c_(std::move(c)) {}
    FieldPtr f_;
    bool zero_;
    long long v_;
    std::vector<uint64_t> c_;

    friend LocalElement operator+(const LocalElement&, const LocalElement&);
    friend LocalElement operator*(const LocalElement&, const LocalElement&);
    friend LocalElement inverse(const LocalElement&);
};

LocalElement operator+(const LocalElement& x, const LocalElement& y);
LocalElement operator-(const LocalElement& x, const LocalElement& y);
LocalElement operator-(const LocalElement& x);
LocalElement operator*(const LocalElement& x, const LocalElement& y);
LocalElement inverse(const LocalElement& x);

/// Tame n-th Hilbert symbol: residue of (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}
/// raised to (q-1)/n.
RootOfUnity tame_hilbert(const LocalElement& a, const LocalElement& b, unsigned n);

/// Local Weil factor: gamma(unit) = 1, gamma(t) = the normalized quadratic
/// Gauss sum, extended by gamma(ab) = gamma(a) gamma(b) (a,b)_2.
std::complex<double> weil_gamma_local(const LocalElement& a);

/// Normalized quadratic Gauss sum of F_q against exp(2 pi i x / q).
std::complex<double> quadratic_gauss_sum(const FiniteField& f);

/// Nearest-root recognition: match z to a power of exp(2 pi i / n) within tol;
/// throws AmbiguousRoot when no power is within tolerance.
RootOfUnity recognize_root(std::complex<double> z, unsigned n, double tol = 1e-6);

/// "Fq((t))" descriptor syntax.
FieldPtr parse_field(const std::string& descriptor, unsigned precision = 32);
std::string field_descriptor(const FiniteField& f);

/// "t^v*(c0+c1*t+...)" element syntax.
std::string to_string(const LocalElement& x);
LocalElement parse_local(const std::string& text, FieldPtr f);

} // namespace theta
