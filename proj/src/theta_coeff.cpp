#include "theta/theta_coeff.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace theta {

namespace {

CyclotomicInt one_of(Ring r) { return {r, 1, 0}; }

ModulusElement radical(const ModulusElement& m) {
    std::vector<std::pair<PrimaryPrime, unsigned>> fs;
    for (const auto& [p, e] : m.factors) {
        (void)e;
        fs.push_back({p, 1});
    }
    return modulus_from_primes(m.ring(), std::move(fs));
}

ModulusElement mod_div(const ModulusElement& m, const ModulusElement& d) {
    std::vector<std::pair<PrimaryPrime, unsigned>> fs;
    for (const auto& [p, e] : m.factors) {
        unsigned q = d.exponent_of(p);
        if (q > e) fail(ErrorCode::NotCoprime, "divisor exceeds modulus");
        if (e > q) fs.push_back({p, e - q});
    }
    return modulus_from_primes(m.ring(), std::move(fs));
}

/// All divisors of a squarefree modulus, by ascending subset mask of the
/// sorted prime list (deterministic).
std::vector<ModulusElement> squarefree_divisors(const ModulusElement& m) {
    size_t r = m.factors.size();
    std::vector<ModulusElement> out;
    for (size_t mask = 0; mask < (size_t(1) << r); ++mask) {
        std::vector<std::pair<PrimaryPrime, unsigned>> fs;
        for (size_t i = 0; i < r; ++i)
            if (mask & (size_t(1) << i)) fs.push_back({m.factors[i].first, 1});
        out.push_back(modulus_from_primes(m.ring(), std::move(fs)));
    }
    return out;
}

RootOfUnity canonical_root(const RootOfUnity& z) {
    if (z.exponent == 0) return RootOfUnity(1, 0);
    unsigned g = std::gcd(z.order, z.exponent);
    return RootOfUnity(z.order / g, z.exponent / g);
}

std::string factor_key(const GaussFactor& f) {
    std::ostringstream os;
    os << f.n << "|" << f.j << "|" << f.modulus.abs() << "|" << to_string(f.modulus.value());
    return os.str();
}

std::string term_key(const ThetaTerm& t) {
    RootOfUnity z = canonical_root(t.zeta);
    std::string key = "z" + std::to_string(z.order) + "^" + std::to_string(z.exponent);
    for (const auto& f : t.factors) key += ";" + factor_key(f);
    return key;
}

bool factor_eq(const GaussFactor& a, const GaussFactor& b) {
    return a.j == b.j && a.n == b.n && a.modulus == b.modulus;
}

} // namespace

GammaToken gamma_token(const ModulusElement& m) {
    std::vector<std::pair<PrimaryPrime, unsigned>> fs;
    for (const auto& [p, e] : m.factors)
        if (e % 2 == 1) fs.push_back({p, 1});
    return {modulus_from_primes(m.ring(), std::move(fs))};
}

ThetaCoefficient ThetaCoefficient::zero(Ring r) {
    return {r, {}, {modulus_one(r)}, 1, 1};
}

ThetaCoefficient ThetaCoefficient::one(Ring r) {
    ThetaCoefficient c = zero(r);
    c.terms.push_back({Rational(1), RootOfUnity(1, 0), {}});
    return c;
}

void normalize(ThetaCoefficient& c) {
    for (auto& t : c.terms)
        std::sort(t.factors.begin(), t.factors.end(),
                  [](const GaussFactor& a, const GaussFactor& b) {
                      return factor_key(a) < factor_key(b);
                  });
    std::stable_sort(c.terms.begin(), c.terms.end(),
                     [](const ThetaTerm& a, const ThetaTerm& b) {
                         return term_key(a) < term_key(b);
                     });
    std::vector<ThetaTerm> merged;
    for (auto& t : c.terms) {
        if (!merged.empty() && term_key(merged.back()) == term_key(t))
            merged.back().scalar += t.scalar;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const ThetaTerm& t) { return t.scalar == Rational(0); });
    c.terms = std::move(merged);
    if (c.terms.empty()) c = ThetaCoefficient::zero(c.ring);
}

bool ThetaCoefficient::operator==(const ThetaCoefficient& o) const {
    ThetaCoefficient a = *this, b = o;
    normalize(a);
    normalize(b);
    if (a.ring != b.ring || !(a.gamma == b.gamma) || a.weight_mult != b.weight_mult ||
        a.weight_sqrt != b.weight_sqrt || a.terms.size() != b.terms.size())
        return false;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        const auto& x = a.terms[i];
        const auto& y = b.terms[i];
        if (x.scalar != y.scalar || !(x.zeta == y.zeta) || x.factors.size() != y.factors.size())
            return false;
        for (size_t k = 0; k < x.factors.size(); ++k)
            if (!factor_eq(x.factors[k], y.factors[k])) return false;
    }
    return true;
}

std::string symbolic(const ThetaCoefficient& c) {
    ThetaCoefficient n = c;
    normalize(n);
    if (n.is_zero()) return "0";
    std::ostringstream os;
    if (n.weight_mult != 1) os << n.weight_mult << "*";
    if (n.weight_sqrt != 1) os << "sqrt(" << n.weight_sqrt << ")*";
    if (!n.gamma.is_identity()) os << "gamma(" << to_string(n.gamma.kernel.value()) << ")*";
    os << "(";
    for (size_t i = 0; i < n.terms.size(); ++i) {
        if (i) os << " + ";
        const auto& t = n.terms[i];
        std::vector<std::string> pieces;
        if (t.scalar != Rational(1)) {
            std::ostringstream ss;
            ss << t.scalar.numerator();
            if (t.scalar.denominator() != 1) ss << "/" << t.scalar.denominator();
            pieces.push_back(ss.str());
        }
        RootOfUnity z = canonical_root(t.zeta);
        if (!z.is_one())
            pieces.push_back("z" + std::to_string(z.order) + "^" + std::to_string(z.exponent));
        for (const auto& f : t.factors)
            pieces.push_back("G[" + std::to_string(f.j) + "/" + std::to_string(f.n) + "](" +
                             to_string(f.modulus.value()) + ")");
        if (pieces.empty()) pieces.push_back("1");
        for (size_t k = 0; k < pieces.size(); ++k) os << (k ? "*" : "") << pieces[k];
    }
    os << ")";
    return os.str();
}

std::complex<double> numeric(const ThetaCoefficient& c, bool numeric_gamma) {
    std::complex<double> sum = 0.0;
    for (const auto& t : c.terms) {
        std::complex<double> v = t.scalar.numerator().convert_to<double>() /
                                 t.scalar.denominator().convert_to<double>();
        v *= t.zeta.value();
        for (const auto& f : t.factors)
            v *= gauss_sum_composite(f.modulus, f.n, f.j, one_of(c.ring)).value;
        sum += v;
    }
    double w = c.weight_mult.convert_to<double>() * std::sqrt(c.weight_sqrt.convert_to<double>());
    sum *= w;
    if (numeric_gamma)
        for (const auto& [p, e] : c.gamma.kernel.factors) {
            (void)e;
            sum *= quadratic_gauss_sum(*residue_field(p));
        }
    return sum;
}

const char* family_name(ThetaFamily f) {
    switch (f) {
        case ThetaFamily::Sextic: return "sextic";
        case ThetaFamily::QuarticSo4: return "quartic_so4";
        case ThetaFamily::CubicGl2: return "cubic_gl2";
        case ThetaFamily::QuarticGl3: return "quartic_gl3";
    }
    return "?";
}

ThetaFamily parse_family(const std::string& name) {
    if (name == "sextic") return ThetaFamily::Sextic;
    if (name == "quartic_so4") return ThetaFamily::QuarticSo4;
    if (name == "cubic_gl2") return ThetaFamily::CubicGl2;
    if (name == "quartic_gl3") return ThetaFamily::QuarticGl3;
    fail(ErrorCode::ParseError, "unknown family: " + name);
}

Ring family_ring(ThetaFamily f) {
    return (f == ThetaFamily::Sextic || f == ThetaFamily::CubicGl2) ? Ring::Eisenstein
                                                                    : Ring::Gaussian;
}

PeriodicityReduction apply_periodicity(const ModulusElement& m, ThetaFamily family) {
    bool quartic = family == ThetaFamily::QuarticSo4 || family == ThetaFamily::QuarticGl3;
    unsigned period = quartic ? 4 : 3;
    PeriodicityReduction out{modulus_one(m.ring()), 1, 1};
    std::vector<std::pair<PrimaryPrime, unsigned>> fs;
    for (const auto& [p, e] : m.factors) {
        unsigned r = e % period;
        unsigned k = e / period;
        if (r) fs.push_back({p, r});
        if (k == 0) continue;
        if (quartic) {
            for (unsigned i = 0; i < k; ++i) out.weight_mult *= p.q;
        } else {
            // weight |p^k|^(1/2) = sqrt(q^k)
            for (unsigned i = 0; i + 1 < k; i += 2) out.weight_mult *= p.q;
            if (k % 2 == 1) out.weight_sqrt *= p.q;
        }
    }
    out.reduced = modulus_from_primes(m.ring(), std::move(fs));
    return out;
}

namespace {

void require_ring(const ModulusElement& m, Ring r, const char* what) {
    if (m.ring() != r)
        fail(ErrorCode::MixedRing, std::string(what) + " expects the " +
                                       ring_name(r) + " ring");
}

/// Single-term coefficient 1 * G_j^(n)(1, m), with modulus 1 meaning no factor.
ThetaCoefficient pure_gauss(Ring r, long long j, unsigned n, const ModulusElement& m) {
    ThetaCoefficient c = ThetaCoefficient::one(r);
    if (!m.is_one()) c.terms[0].factors.push_back({j, n, m});
    return c;
}

} // namespace

ThetaCoefficient cubic_gl2_coeff(const ModulusElement& m) {
    require_ring(m, Ring::Eisenstein, "cubic_gl2_coeff");
    PeriodicityReduction red = apply_periodicity(m, ThetaFamily::CubicGl2);
    for (const auto& [p, e] : red.reduced.factors) {
        (void)p;
        if (e == 2) return ThetaCoefficient::zero(m.ring());
    }
    ThetaCoefficient c = pure_gauss(m.ring(), 1, 3, red.reduced);
    c.weight_mult = red.weight_mult;
    c.weight_sqrt = red.weight_sqrt;
    return c;
}

ThetaCoefficient quartic_gl3_coeff(const ModulusElement& m) {
    require_ring(m, Ring::Gaussian, "quartic_gl3_coeff");
    PeriodicityReduction red = apply_periodicity(m, ThetaFamily::QuarticGl3);
    for (const auto& [p, e] : red.reduced.factors) {
        (void)p;
        if (e == 3)
            fail(ErrorCode::UnsupportedExponentPattern,
                 "no pinned value at exponent 3 mod 4");
    }
    for (const auto& [p, e] : red.reduced.factors) {
        (void)p;
        if (e == 2) return ThetaCoefficient::zero(m.ring());
    }
    ThetaCoefficient c = pure_gauss(m.ring(), 3, 4, red.reduced);
    c.weight_mult = red.weight_mult;
    c.weight_sqrt = red.weight_sqrt;
    return c;
}

namespace {

/// Divisor-sum engine shared by both descents:
/// sum over d | rad(reduced) of G_j^(n)(1,d) * base(reduced / d).
ThetaCoefficient divisor_recursion(const ModulusElement& m, ThetaFamily fam,
                                   long long j, unsigned n,
                                   ThetaCoefficient (*base)(const ModulusElement&),
                                   bool with_gamma) {
    PeriodicityReduction red = apply_periodicity(m, fam);
    ThetaCoefficient out = ThetaCoefficient::zero(m.ring());
    for (const auto& d : squarefree_divisors(radical(red.reduced))) {
        ThetaCoefficient c = base(mod_div(red.reduced, d));
        if (c.is_zero()) continue;
        for (auto t : c.terms) {
            if (!d.is_one()) t.factors.push_back({j, n, d});
            out.terms.push_back(std::move(t));
        }
    }
    if (with_gamma) out.gamma = gamma_token(red.reduced);
    out.weight_mult = red.weight_mult;
    out.weight_sqrt = red.weight_sqrt;
    normalize(out);
    return out;
}

} // namespace

ThetaCoefficient sextic_descent_recursive(const ModulusElement& m) {
    require_ring(m, Ring::Eisenstein, "sextic_descent_recursive");
    return divisor_recursion(m, ThetaFamily::Sextic, 1, 3, cubic_gl2_coeff, true);
}

ThetaCoefficient quartic_so4_recursive(const ModulusElement& a) {
    require_ring(a, Ring::Gaussian, "quartic_so4_recursive");
    return divisor_recursion(a, ThetaFamily::QuarticSo4, 3, 4, quartic_gl3_coeff, false);
}

ThetaCoefficient sextic_descent_closed(const ModulusElement& m1, const ModulusElement& m2) {
    require_ring(m1, Ring::Eisenstein, "sextic_descent_closed");
    require_ring(m2, Ring::Eisenstein, "sextic_descent_closed");
    if (!m1.squarefree() || !m2.squarefree())
        fail(ErrorCode::NotSquarefree, "closed form needs squarefree arguments");
    if (!coprime(m1, m2)) fail(ErrorCode::NotCoprime, "closed form needs coprime arguments");

    RootOfUnity twist = residue_symbol(m2.value(), m1, 3, 2); // (m2/m1)_3^2
    ThetaCoefficient out = ThetaCoefficient::zero(m1.ring());
    for (const auto& d1 : squarefree_divisors(m1)) {
        ModulusElement d2 = mod_div(m1, d1);
        ThetaTerm t{Rational(1), twist * residue_symbol(d2.value(), d1, 3, 1), {}};
        if (!m1.is_one()) t.factors.push_back({1, 3, m1});
        if (!m2.is_one()) {
            t.factors.push_back({1, 3, m2});
            t.factors.push_back({1, 3, m2});
        }
        out.terms.push_back(std::move(t));
    }
    out.gamma = gamma_token(m1);
    normalize(out);
    return out;
}

ThetaCoefficient quartic_so4_closed(const ModulusElement& a) {
    require_ring(a, Ring::Gaussian, "quartic_so4_closed");
    if (!a.squarefree()) fail(ErrorCode::NotSquarefree, "closed form needs a squarefree argument");
    ThetaCoefficient out = ThetaCoefficient::zero(a.ring());
    for (const auto& d1 : squarefree_divisors(a)) {
        ModulusElement d2 = mod_div(a, d1);
        ThetaTerm t{Rational(1), residue_symbol(d1.value(), d2, 2, 1), {}};
        if (!a.is_one()) t.factors.push_back({3, 4, a});
        out.terms.push_back(std::move(t));
    }
    normalize(out);
    return out;
}

ThetaCoefficient twisted_divisor_sum(const ModulusElement& m, unsigned n, long long j,
                                     Orientation orientation) {
    if (!m.squarefree()) fail(ErrorCode::NotSquarefree, "divisor sum needs a squarefree argument");
    ThetaCoefficient out = ThetaCoefficient::zero(m.ring());
    for (const auto& d1 : squarefree_divisors(m)) {
        ModulusElement d2 = mod_div(m, d1);
        RootOfUnity z = orientation == Orientation::D2OverD1
                            ? residue_symbol(d2.value(), d1, n, j)
                            : residue_symbol(d1.value(), d2, n, j);
        out.terms.push_back({Rational(1), z, {}});
    }
    normalize(out);
    return out;
}

ThetaCoefficient family_coefficient(ThetaFamily f, const ModulusElement& m) {
    switch (f) {
        case ThetaFamily::Sextic: return sextic_descent_recursive(m);
        case ThetaFamily::QuarticSo4: return quartic_so4_recursive(m);
        case ThetaFamily::CubicGl2: return cubic_gl2_coeff(m);
        case ThetaFamily::QuarticGl3: return quartic_gl3_coeff(m);
    }
    fail(ErrorCode::ConfigInvalid, "unknown family");
}

} // namespace theta
