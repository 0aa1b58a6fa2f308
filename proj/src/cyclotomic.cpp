#include "theta/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace theta {

const char* ring_name(Ring r) {
    return r == Ring::Eisenstein ? "eisenstein" : "gaussian";
}

static void require_same_ring(const CyclotomicInt& x, const CyclotomicInt& y) {
    if (x.ring != y.ring)
        fail(ErrorCode::MixedRing, "mixed-ring arithmetic rejected");
}

CyclotomicInt operator+(const CyclotomicInt& x, const CyclotomicInt& y) {
    require_same_ring(x, y);
    return {x.ring, x.a + y.a, x.b + y.b};
}

CyclotomicInt operator-(const CyclotomicInt& x, const CyclotomicInt& y) {
    require_same_ring(x, y);
    return {x.ring, x.a - y.a, x.b - y.b};
}

CyclotomicInt operator-(const CyclotomicInt& x) {
    return {x.ring, -x.a, -x.b};
}

CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y) {
    require_same_ring(x, y);
    Integer ac = x.a * y.a, bd = x.b * y.b;
    Integer cross = x.a * y.b + x.b * y.a;
    if (x.ring == Ring::Eisenstein) {
        // w^2 = -1 - w
        return {x.ring, ac - bd, cross - bd};
    }
    return {x.ring, ac - bd, cross};
}

Integer norm(const CyclotomicInt& z) {
    if (z.ring == Ring::Eisenstein) return z.a * z.a - z.a * z.b + z.b * z.b;
    return z.a * z.a + z.b * z.b;
}

CyclotomicInt conjugate(const CyclotomicInt& z) {
    if (z.ring == Ring::Eisenstein) return {z.ring, z.a - z.b, -z.b};
    return {z.ring, z.a, -z.b};
}

bool is_unit(const CyclotomicInt& z) { return norm(z) == 1; }

std::vector<CyclotomicInt> units_of(Ring r) {
    std::vector<CyclotomicInt> us;
    if (r == Ring::Eisenstein) {
        us.push_back({r, 1, 0});
        us.push_back({r, -1, 0});
        us.push_back({r, 0, 1});  // w
        us.push_back({r, 0, -1});
        us.push_back({r, -1, -1}); // w^2
        us.push_back({r, 1, 1});
    } else {
        us.push_back({r, 1, 0});
        us.push_back({r, -1, 0});
        us.push_back({r, 0, 1});
        us.push_back({r, 0, -1});
    }
    return us;
}

CyclotomicInt ramified_prime(Ring r) {
    if (r == Ring::Eisenstein) return {r, 1, -1}; // 1 - w, norm 3
    return {r, 1, 1};                             // 1 + i, norm 2
}

std::pair<CyclotomicInt, CyclotomicInt> div_rem(const CyclotomicInt& z,
                                                const CyclotomicInt& w) {
    require_same_ring(z, w);
    if (w.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
    Integer n = norm(w);
    CyclotomicInt t = z * conjugate(w);
    CyclotomicInt q{z.ring, round_div(t.a, n), round_div(t.b, n)};
    CyclotomicInt r = z - q * w;
    return {q, r};
}

std::optional<CyclotomicInt> exact_div(const CyclotomicInt& z,
                                       const CyclotomicInt& w) {
    require_same_ring(z, w);
    if (w.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
    Integer n = norm(w);
    CyclotomicInt t = z * conjugate(w);
    if (t.a % n != 0 || t.b % n != 0) return std::nullopt;
    return CyclotomicInt{z.ring, t.a / n, t.b / n};
}

CyclotomicInt gcd(CyclotomicInt x, CyclotomicInt y) {
    require_same_ring(x, y);
    while (!y.is_zero()) {
        auto [q, r] = div_rem(x, y);
        x = y;
        y = r;
    }
    return x;
}

ExtGcd ext_gcd(const CyclotomicInt& x, const CyclotomicInt& y) {
    require_same_ring(x, y);
    Ring ring = x.ring;
    CyclotomicInt r0 = x, r1 = y;
    CyclotomicInt s0{ring, 1, 0}, s1{ring, 0, 0};
    CyclotomicInt t0{ring, 0, 0}, t1{ring, 1, 0};
    while (!r1.is_zero()) {
        auto [q, r2] = div_rem(r0, r1);
        CyclotomicInt s2 = s0 - q * s1;
        CyclotomicInt t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    return {r0, s0, t0};
}

static bool rational_prime(const Integer& n) {
    if (n < 2) return false;
    for (Integer d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static bool inert_rational(Ring r, const Integer& p) {
    if (r == Ring::Eisenstein) return p % 3 == 2;
    return p % 4 == 3;
}

bool is_prime_element(const CyclotomicInt& z) {
    Integer n = norm(z);
    if (n <= 1) return false;
    if (rational_prime(n)) return true;
    Integer p = boost::multiprecision::sqrt(n);
    if (p * p != n || !rational_prime(p) || !inert_rational(z.ring, p))
        return false;
    return exact_div(z, CyclotomicInt::integer(z.ring, p)).has_value();
}

bool is_primary(const CyclotomicInt& z) {
    if (z.ring == Ring::Eisenstein)
        return floor_mod(z.a + 1, 3) == 0 && floor_mod(z.b, 3) == 0;
    // z == 1 mod (1+i)^3 = -2+2i
    CyclotomicInt one{z.ring, 1, 0};
    CyclotomicInt pi3{z.ring, -2, 2};
    return exact_div(z - one, pi3).has_value();
}

CyclotomicInt primary_associate(const CyclotomicInt& z) {
    if (!is_prime_element(z))
        fail(ErrorCode::NotPrime, "primary_associate: input is not prime: " + to_string(z));
    Integer ram = z.ring == Ring::Eisenstein ? 3 : 2;
    if (norm(z) == ram)
        fail(ErrorCode::RamifiedPrime,
             "primary_associate: no primary normalization for the ramified prime");
    for (const auto& u : units_of(z.ring)) {
        CyclotomicInt t = u * z;
        if (is_primary(t)) return t;
    }
    fail(ErrorCode::NotPrime, "primary_associate: no primary associate found");
}

Integer PrimaryPrime::reduce(const CyclotomicInt& z) const {
    if (!root_image)
        fail(ErrorCode::DegreeNotDividing, "residue-field reduction requires a split prime");
    return floor_mod(z.a + z.b * *root_image, q);
}

bool prime_less(const PrimaryPrime& x, const PrimaryPrime& y) {
    if (x.q != y.q) return x.q < y.q;
    if (x.generator.a != y.generator.a) return x.generator.a < y.generator.a;
    return x.generator.b < y.generator.b;
}

PrimaryPrime make_primary_prime(const CyclotomicInt& generator) {
    if (!is_primary(generator))
        fail(ErrorCode::NotPrime, "generator is not primary: " + to_string(generator));
    if (!is_prime_element(generator))
        fail(ErrorCode::NotPrime, "generator is not prime: " + to_string(generator));
    PrimaryPrime p{generator, norm(generator), std::nullopt};
    if (rational_prime(p.q)) {
        // split (or degree one): w (resp. i) has an integer image mod the prime
        Integer binv = inv_mod(floor_mod(generator.b, p.q), p.q);
        p.root_image = floor_mod(-generator.a * binv, p.q);
    }
    return p;
}

CyclotomicInt ModulusElement::value() const {
    CyclotomicInt v{ring_tag, 1, 0};
    for (const auto& [p, e] : factors)
        for (unsigned k = 0; k < e; ++k) v = v * p.generator;
    return v;
}

Integer ModulusElement::abs() const {
    Integer v = 1;
    for (const auto& [p, e] : factors)
        for (unsigned k = 0; k < e; ++k) v *= p.q;
    return v;
}

bool ModulusElement::squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const auto& f) { return f.second == 1; });
}

unsigned ModulusElement::exponent_of(const PrimaryPrime& p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

bool ModulusElement::operator==(const ModulusElement& o) const {
    return ring_tag == o.ring_tag && factors == o.factors;
}

ModulusElement modulus_from_primes(Ring ring,
                                   std::vector<std::pair<PrimaryPrime, unsigned>> fs) {
    std::sort(fs.begin(), fs.end(),
              [](const auto& x, const auto& y) { return prime_less(x.first, y.first); });
    std::vector<std::pair<PrimaryPrime, unsigned>> merged;
    for (auto& f : fs) {
        if (f.second == 0) continue;
        if (f.first.ring() != ring)
            fail(ErrorCode::MixedRing, "modulus factors must share one ring");
        if (!merged.empty() && merged.back().first == f.first)
            merged.back().second += f.second;
        else
            merged.push_back(std::move(f));
    }
    return {ring, std::move(merged)};
}

ModulusElement modulus_one(Ring r) { return {r, {}}; }

ModulusElement operator*(const ModulusElement& x, const ModulusElement& y) {
    auto fs = x.factors;
    fs.insert(fs.end(), y.factors.begin(), y.factors.end());
    return modulus_from_primes(x.ring_tag, std::move(fs));
}

bool coprime(const ModulusElement& x, const ModulusElement& y) {
    for (const auto& [p, e] : x.factors)
        if (y.exponent_of(p) > 0) return false;
    return true;
}

static Integer find_generator_mod(const Integer& p) {
    // factor p-1
    std::vector<Integer> prime_divisors;
    Integer m = p - 1;
    for (Integer d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_divisors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_divisors.push_back(m);
    for (Integer g = 2;; ++g) {
        bool ok = true;
        for (const auto& r : prime_divisors)
            if (pow_mod(g, (p - 1) / r, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
}

PrimaryPrime prime_above(Ring ring, const Integer& p) {
    if (!rational_prime(p))
        fail(ErrorCode::NotPrime, "prime_above: not a rational prime");
    Integer split_mod = ring == Ring::Eisenstein ? 3 : 4;
    if (p % split_mod != 1)
        fail(ErrorCode::NotPrime, "prime_above: rational prime does not split");
    Integer g = find_generator_mod(p);
    Integer ord = ring == Ring::Eisenstein ? 3 : 4;
    Integer c = pow_mod(g, (p - 1) / ord, p); // image of w (resp. i)
    CyclotomicInt pi = gcd(CyclotomicInt::integer(ring, p), CyclotomicInt{ring, -c, 1});
    return make_primary_prime(primary_associate(pi));
}

// ---- residue ring -------------------------------------------------------

ResidueRing::ResidueRing(CyclotomicInt modulus) : m_(std::move(modulus)) {
    if (m_.is_zero()) fail(ErrorCode::DivisionByZero, "zero modulus");
    n_ = norm(m_);
    // Ideal lattice rows in (a, b) coordinates: m*1 and m*w (resp. m*i).
    Integer x1 = m_.a, y1 = m_.b, x2, y2;
    if (m_.ring == Ring::Eisenstein) {
        x2 = -m_.b; y2 = m_.a - m_.b;
    } else {
        x2 = -m_.b; y2 = m_.a;
    }
    // HNF: rows (d, e), (0, f) with d*f = n_.
    // Extended gcd on the first column.
    Integer a0 = x1, a1 = x2, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (a1 != 0) {
        Integer q = floor_div(a0, a1);
        Integer a2 = a0 - q * a1, s2 = s0 - q * s1, t2 = t0 - q * t1;
        a0 = a1; a1 = a2; s0 = s1; s1 = s2; t0 = t1; t1 = t2;
    }
    d_ = a0;
    e_ = s0 * y1 + t0 * y2;
    if (d_ < 0) { d_ = -d_; e_ = -e_; }
    f_ = n_ / d_;
    e_ = floor_mod(e_, f_);
}

CyclotomicInt ResidueRing::canonical(const CyclotomicInt& z) const {
    if (z.ring != m_.ring) fail(ErrorCode::MixedRing, "mixed-ring reduction");
    Integer x = z.a, y = z.b;
    Integer k = floor_div(x, d_);
    x -= k * d_;
    y -= k * e_;
    y = floor_mod(y, f_);
    return {z.ring, x, y};
}

bool ResidueRing::is_unit_residue(const CyclotomicInt& z) const {
    return is_unit(gcd(z, m_));
}

std::vector<CyclotomicInt> ResidueRing::residues(const Integer& budget) const {
    if (n_ > budget)
        fail(ErrorCode::BudgetExceeded, "residue enumeration over budget");
    std::vector<CyclotomicInt> out;
    out.reserve(static_cast<size_t>(n_));
    for (Integer x = 0; x < d_; ++x)
        for (Integer y = 0; y < f_; ++y)
            out.push_back({m_.ring, x, y});
    return out;
}

CyclotomicInt ResidueRing::pow(const CyclotomicInt& base, Integer exp) const {
    CyclotomicInt r{m_.ring, 1, 0};
    CyclotomicInt b = canonical(base);
    while (exp > 0) {
        if ((exp & 1) != 0) r = canonical(r * b);
        b = canonical(b * b);
        exp >>= 1;
    }
    return canonical(r);
}

// ---- factorization ------------------------------------------------------

Factorization factor(const CyclotomicInt& m, const Integer& norm_cap) {
    if (m.is_zero()) fail(ErrorCode::ConfigInvalid, "factor: zero input");
    Integer n = norm(m);
    if (n > norm_cap) fail(ErrorCode::BudgetExceeded, "factor: norm above cap");

    Ring ring = m.ring;
    std::vector<std::pair<PrimaryPrime, unsigned>> fs;
    CyclotomicInt rest = m;

    std::vector<Integer> rational_ps;
    Integer nn = n;
    for (Integer d = 2; d * d <= nn; ++d) {
        if (nn % d == 0) {
            rational_ps.push_back(d);
            while (nn % d == 0) nn /= d;
        }
    }
    if (nn > 1) rational_ps.push_back(nn);

    Integer ram = ring == Ring::Eisenstein ? 3 : 2;
    for (const auto& p : rational_ps) {
        if (p == ram)
            fail(ErrorCode::RamifiedDivisor, "factor: ramified prime divides input");
        std::vector<PrimaryPrime> above;
        if (inert_rational(ring, p)) {
            above.push_back(make_primary_prime(
                primary_associate(CyclotomicInt::integer(ring, p))));
        } else {
            PrimaryPrime pi = prime_above(ring, p);
            PrimaryPrime pibar =
                make_primary_prime(primary_associate(conjugate(pi.generator)));
            above.push_back(pi);
            above.push_back(pibar);
        }
        for (const auto& pp : above) {
            unsigned e = 0;
            while (true) {
                auto q = exact_div(rest, pp.generator);
                if (!q) break;
                rest = *q;
                ++e;
            }
            if (e > 0) fs.emplace_back(pp, e);
        }
    }
    if (!is_unit(rest))
        fail(ErrorCode::NotPrime, "factor: incomplete factorization");
    return {rest, modulus_from_primes(ring, std::move(fs))};
}

// ---- CRT ----------------------------------------------------------------

std::pair<CyclotomicInt, CyclotomicInt> crt_split(const CyclotomicInt& a,
                                                  const ModulusElement& m1,
                                                  const ModulusElement& m2) {
    if (!coprime(m1, m2)) fail(ErrorCode::NotCoprime, "crt_split: moduli not coprime");
    ResidueRing r1(m1.value()), r2(m2.value());
    return {r1.canonical(a), r2.canonical(a)};
}

CyclotomicInt crt_recombine(const CyclotomicInt& r1, const CyclotomicInt& r2,
                            const ModulusElement& m1, const ModulusElement& m2) {
    if (!coprime(m1, m2)) fail(ErrorCode::NotCoprime, "crt_recombine: moduli not coprime");
    CyclotomicInt v1 = m1.value(), v2 = m2.value();
    ExtGcd eg = ext_gcd(v1, v2);
    if (!is_unit(eg.g)) fail(ErrorCode::NotCoprime, "crt_recombine: values not coprime");
    CyclotomicInt ginv = conjugate(eg.g); // unit inverse
    CyclotomicInt x = (r2 * eg.s * v1 + r1 * eg.t * v2) * ginv;
    return ResidueRing(v1 * v2).canonical(x);
}

// ---- text syntax --------------------------------------------------------

std::string to_string(const CyclotomicInt& z) {
    std::ostringstream os;
    os << z.a;
    os << (z.b < 0 ? "-" : "+");
    Integer ab = z.b < 0 ? Integer(-z.b) : z.b;
    os << ab << "*" << (z.ring == Ring::Eisenstein ? "w" : "i");
    return os.str();
}

CyclotomicInt parse_cyclotomic(const std::string& text, Ring ring) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) fail(ErrorCode::ParseError, "empty element");

    char sym = ring == Ring::Eisenstein ? 'w' : 'i';
    Integer a = 0, b = 0;
    size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail(ErrorCode::ParseError, "expected sign in: " + text);
        }
        first = false;
        std::string digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            digits.push_back(s[pos++]);
        bool has_sym = false;
        if (pos < s.size() && (s[pos] == sym || s[pos] == '*')) {
            if (s[pos] == '*') {
                ++pos;
                if (pos >= s.size() || s[pos] != sym)
                    fail(ErrorCode::ParseError, "expected '" + std::string(1, sym) +
                                                    "' in: " + text);
            }
            ++pos;
            has_sym = true;
        }
        if (digits.empty() && !has_sym)
            fail(ErrorCode::ParseError, "malformed element: " + text);
        Integer coeff = digits.empty() ? Integer(1) : Integer(digits);
        if (has_sym)
            b += sign * coeff;
        else
            a += sign * coeff;
    }
    return {ring, a, b};
}

} // namespace theta
