#include "theta/local_field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace theta {

static constexpr double kPi = 3.14159265358979323846;

std::complex<double> RootOfUnity::value() const {
    double t = 2.0 * kPi * exponent / order;
    return {std::cos(t), std::sin(t)};
}

RootOfUnity RootOfUnity::in_order(unsigned m) const {
    if (m % order != 0)
        fail(ErrorCode::DegreeNotDividing, "root order does not divide target order");
    return {m, (long long)exponent * (m / order)};
}

bool RootOfUnity::operator==(const RootOfUnity& o) const {
    return (unsigned long long)exponent * o.order ==
           (unsigned long long)o.exponent * order;
}

RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y) {
    unsigned m = std::lcm(x.order, y.order);
    return {m, (long long)x.exponent * (m / x.order) +
                   (long long)y.exponent * (m / y.order)};
}

FiniteField::FiniteField(uint64_t q, unsigned precision)
    : q_(q), precision_(precision) {
    if (q < 2) fail(ErrorCode::ConfigInvalid, "field order must be >= 2");
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0)
            fail(ErrorCode::ConfigInvalid,
                 "only prime residue fields are supported, got q=" + std::to_string(q));
    if (precision_ < 1) fail(ErrorCode::ConfigInvalid, "precision must be positive");

    // smallest generator of the cyclic group
    std::vector<uint64_t> pd;
    uint64_t m = q - 1;
    for (uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            pd.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) pd.push_back(m);
    for (uint64_t g = 1; g < q; ++g) {
        bool ok = g > 1 || q == 2;
        for (uint64_t r : pd)
            if (pow(g, (long long)((q - 1) / r)) == 1) { ok = false; break; }
        if (ok) { g_ = g; break; }
    }

    dlog_.assign(q, 0);
    uint64_t x = 1;
    for (uint64_t k = 0; k < q - 1; ++k) {
        dlog_[x] = static_cast<uint32_t>(k);
        x = mul(x, g_);
    }
}

uint64_t FiniteField::pow(uint64_t x, long long e) const {
    x %= q_;
    if (e < 0) {
        x = inv(x);
        e = -e;
    }
    uint64_t r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

uint64_t FiniteField::inv(uint64_t x) const {
    x %= q_;
    if (x == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_q");
    return pow(x, (long long)(q_ - 2));
}

uint64_t FiniteField::dlog(uint64_t x) const {
    x %= q_;
    if (x == 0) fail(ErrorCode::DivisionByZero, "dlog of zero");
    return dlog_[x];
}

uint64_t FiniteField::unit_root(unsigned n) const {
    if (n == 0 || (q_ - 1) % n != 0)
        fail(ErrorCode::DegreeNotDividing,
             "n=" + std::to_string(n) + " does not divide q-1=" + std::to_string(q_ - 1));
    auto it = roots_.find(n);
    if (it != roots_.end()) return it->second;
    return pow(g_, (long long)((q_ - 1) / n));
}

void FiniteField::set_unit_root(unsigned n, uint64_t zeta) {
    if ((q_ - 1) % n != 0)
        fail(ErrorCode::DegreeNotDividing, "n does not divide q-1");
    // must be a primitive n-th root
    uint64_t x = 1;
    for (unsigned k = 1; k < n; ++k) {
        x = mul(x, zeta);
        if (x == 1) fail(ErrorCode::ConfigInvalid, "not a primitive n-th root");
    }
    if (mul(x, zeta) != 1) fail(ErrorCode::ConfigInvalid, "not an n-th root of unity");
    roots_[n] = zeta;
}

RootOfUnity FiniteField::to_root_of_unity(uint64_t x, unsigned n) const {
    uint64_t zeta = unit_root(n);
    uint64_t y = 1;
    for (unsigned k = 0; k < n; ++k) {
        if (y == x % q_) return {n, (long long)k};
        y = mul(y, zeta);
    }
    fail(ErrorCode::AmbiguousRoot, "element is not an n-th root of unity");
}

RootOfUnity FiniteField::power_residue(uint64_t x, unsigned n) const {
    return to_root_of_unity(pow(x, (long long)((q_ - 1) / n)), n);
}

// ---- Laurent series -----------------------------------------------------

LocalElement LocalElement::zero(FieldPtr f) { return {std::move(f), true, 0, {}}; }

LocalElement LocalElement::one(FieldPtr f) { return constant(std::move(f), 1); }

LocalElement LocalElement::constant(FieldPtr f, uint64_t c) {
    c %= f->q();
    if (c == 0) return zero(std::move(f));
    std::vector<uint64_t> cs(f->precision(), 0);
    cs[0] = c;
    return {std::move(f), false, 0, std::move(cs)};
}

LocalElement LocalElement::uniformizer(FieldPtr f, long long power) {
    std::vector<uint64_t> cs(f->precision(), 0);
    cs[0] = 1;
    return {std::move(f), false, power, std::move(cs)};
}

LocalElement LocalElement::make(FieldPtr f, long long v, std::vector<uint64_t> coeffs) {
    for (auto& c : coeffs) c %= f->q();
    size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
    if (lead == coeffs.size()) return zero(std::move(f));
    coeffs.erase(coeffs.begin(), coeffs.begin() + (long)lead);
    v += (long long)lead;
    // an element built from explicit data is exact up to precision
    if (coeffs.size() > f->precision()) coeffs.resize(f->precision());
    coeffs.resize(f->precision(), 0);
    return {std::move(f), false, v, std::move(coeffs)};
}

long long LocalElement::valuation() const {
    if (zero_) fail(ErrorCode::DivisionByZero, "valuation of zero");
    return v_;
}

uint64_t LocalElement::leading() const {
    if (zero_) fail(ErrorCode::DivisionByZero, "leading coefficient of zero");
    return c_[0];
}

bool LocalElement::operator==(const LocalElement& o) const {
    if (zero_ || o.zero_) return zero_ == o.zero_;
    return v_ == o.v_ && c_ == o.c_;
}

LocalElement operator+(const LocalElement& x, const LocalElement& y) {
    if (x.field()->q() != y.field()->q())
        fail(ErrorCode::GroupMismatch, "elements of different fields");
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const FiniteField& f = *x.field();
    const LocalElement& lo = x.v_ <= y.v_ ? x : y;
    const LocalElement& hi = x.v_ <= y.v_ ? y : x;
    long long v = lo.v_;
    long long end = std::min(lo.v_ + (long long)lo.c_.size(),
                             hi.v_ + (long long)hi.c_.size());
    if (lo.v_ == hi.v_) {
        long long n = end - v;
        std::vector<uint64_t> c((size_t)n);
        for (long long k = 0; k < n; ++k)
            c[(size_t)k] = f.add(lo.c_[(size_t)k], hi.c_[(size_t)k]);
        size_t lead = 0;
        while (lead < c.size() && c[lead] == 0) ++lead;
        if (lead == c.size())
            fail(ErrorCode::PrecisionExhausted,
                 "cancellation consumed all tracked coefficients");
        c.erase(c.begin(), c.begin() + (long)lead);
        return {x.f_, false, v + (long long)lead, std::move(c)};
    }
    long long n = end - v; // hi.v_ > v, so lo's leading survives
    std::vector<uint64_t> c((size_t)n);
    for (long long k = 0; k < n; ++k) c[(size_t)k] = lo.c_[(size_t)k];
    for (long long k = hi.v_ - v; k < n; ++k)
        c[(size_t)k] = f.add(c[(size_t)k], hi.c_[(size_t)(k - (hi.v_ - v))]);
    return {x.f_, false, v, std::move(c)};
}

LocalElement operator-(const LocalElement& x) {
    if (x.is_zero()) return x;
    // multiply by -1 so the trusted window length is preserved
    return LocalElement::constant(x.field(), x.field()->q() - 1) * x;
}

LocalElement operator-(const LocalElement& x, const LocalElement& y) {
    return x + (-y);
}

LocalElement operator*(const LocalElement& x, const LocalElement& y) {
    if (x.field()->q() != y.field()->q())
        fail(ErrorCode::GroupMismatch, "elements of different fields");
    if (x.is_zero() || y.is_zero()) return LocalElement::zero(x.field());
    const FiniteField& f = *x.field();
    size_t n = std::min({x.c_.size(), y.c_.size(), (size_t)f.precision()});
    std::vector<uint64_t> c(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; i + j < n; ++j)
            c[i + j] = f.add(c[i + j], f.mul(x.c_[i], y.c_[j]));
    return {x.f_, false, x.v_ + y.v_, std::move(c)};
}

LocalElement inverse(const LocalElement& x) {
    if (x.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    const FiniteField& f = *x.field();
    size_t n = x.c_.size();
    std::vector<uint64_t> d(n, 0);
    uint64_t c0inv = f.inv(x.c_[0]);
    d[0] = c0inv;
    for (size_t k = 1; k < n; ++k) {
        uint64_t s = 0;
        for (size_t j = 1; j <= k; ++j) s = f.add(s, f.mul(x.c_[j], d[k - j]));
        d[k] = f.mul(f.neg(s), c0inv);
    }
    return {x.f_, false, -x.v_, std::move(d)};
}

// ---- tame symbol and Weil factor ---------------------------------------

RootOfUnity tame_hilbert(const LocalElement& a, const LocalElement& b, unsigned n) {
    if (a.is_zero() || b.is_zero())
        fail(ErrorCode::DivisionByZero, "Hilbert symbol of zero");
    if (a.field()->q() != b.field()->q())
        fail(ErrorCode::GroupMismatch, "elements of different fields");
    const FiniteField& f = *a.field();
    if ((f.q() - 1) % n != 0)
        fail(ErrorCode::DegreeNotDividing, "n does not divide q-1");
    long long va = a.valuation(), vb = b.valuation();
    uint64_t c = f.pow(f.q() - 1, (va * vb) & 1); // (-1)^{va vb}
    c = f.mul(c, f.pow(a.leading(), vb));
    c = f.mul(c, f.pow(b.leading(), -va));
    return f.power_residue(c, n);
}

std::complex<double> quadratic_gauss_sum(const FiniteField& f) {
    uint64_t q = f.q();
    std::complex<double> s = 0;
    for (uint64_t x = 1; x < q; ++x) {
        double sign = f.pow(x, (long long)((q - 1) / 2)) == 1 ? 1.0 : -1.0;
        double t = 2.0 * kPi * x / q;
        s += sign * std::complex<double>(std::cos(t), std::sin(t));
    }
    return s / std::sqrt((double)q);
}

std::complex<double> weil_gamma_local(const LocalElement& a) {
    if (a.is_zero()) fail(ErrorCode::DivisionByZero, "gamma of zero");
    const FiniteField& f = *a.field();
    if (f.q() % 2 == 0)
        fail(ErrorCode::EvenResidueChar, "Weil factor needs odd residue characteristic");

    static std::mutex mu;
    static std::map<uint64_t, std::complex<double>> cache;
    std::complex<double> g2;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(f.q());
        if (it == cache.end()) it = cache.emplace(f.q(), quadratic_gauss_sum(f)).first;
        g2 = it->second;
    }

    auto chi2 = [&](uint64_t x) {
        return f.pow(x, (long long)((f.q() - 1) / 2)) == 1 ? 1.0 : -1.0;
    };
    long long v = a.valuation();
    double eps = chi2(f.q() - 1); // chi_2(-1)
    // gamma(t^v) = g2^v * chi2(-1)^{v(v-1)/2}, extended to negative v through
    // the unit modulus of g2.
    std::complex<double> c = 1;
    long long av = v < 0 ? -v : v;
    for (long long k = 0; k < av; ++k) c *= g2;
    if (v < 0) c = std::conj(c);
    long long tri = ((v * (v - 1)) / 2) & 1;
    if (tri) c *= eps;
    double unit_part = chi2(a.leading());
    if (v & 1) c *= unit_part;
    return c;
}

RootOfUnity recognize_root(std::complex<double> z, unsigned n, double tol) {
    for (unsigned k = 0; k < n; ++k) {
        RootOfUnity r(n, (long long)k);
        if (std::abs(z - r.value()) <= tol) return r;
    }
    fail(ErrorCode::AmbiguousRoot, "complex value is not close to any n-th root");
}

// ---- text syntax --------------------------------------------------------

FieldPtr parse_field(const std::string& descriptor, unsigned precision) {
    std::string s;
    for (char c : descriptor)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() < 7 || s[0] != 'F' || s.substr(s.size() - 5) != "((t))")
        fail(ErrorCode::ParseError, "expected Fq((t)), got: " + descriptor);
    std::string digits = s.substr(1, s.size() - 6);
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail(ErrorCode::ParseError, "bad field order in: " + descriptor);
    return std::make_shared<FiniteField>(std::stoull(digits), precision);
}

std::string field_descriptor(const FiniteField& f) {
    return "F" + std::to_string(f.q()) + "((t))";
}

std::string to_string(const LocalElement& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    os << "t^" << x.valuation() << "*(";
    const auto& c = x.coeffs();
    bool first = true;
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        if (!first) os << "+";
        os << c[k];
        if (k == 1) os << "*t";
        if (k > 1) os << "*t^" << k;
        first = false;
    }
    os << ")";
    return os.str();
}

LocalElement parse_local(const std::string& text, FieldPtr f) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "0") return LocalElement::zero(std::move(f));
    long long v = 0;
    size_t pos = 0;
    if (s.rfind("t^", 0) == 0) {
        pos = 2;
        size_t start = pos;
        if (pos < s.size() && s[pos] == '-') ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        v = std::stoll(s.substr(start, pos - start));
        if (pos >= s.size() || s[pos] != '*')
            fail(ErrorCode::ParseError, "expected '*' after t^v in: " + text);
        ++pos;
    }
    if (pos >= s.size() || s[pos] != '(' || s.back() != ')')
        fail(ErrorCode::ParseError, "expected parenthesized unit part in: " + text);
    std::string body = s.substr(pos + 1, s.size() - pos - 2);
    std::vector<uint64_t> coeffs;
    std::istringstream is(body);
    std::string term;
    while (std::getline(is, term, '+')) {
        size_t star = term.find('*');
        uint64_t c = std::stoull(term.substr(0, star));
        size_t deg = 0;
        if (star != std::string::npos) {
            std::string tp = term.substr(star + 1);
            if (tp == "t")
                deg = 1;
            else if (tp.rfind("t^", 0) == 0)
                deg = std::stoull(tp.substr(2));
            else
                fail(ErrorCode::ParseError, "bad term in: " + text);
        }
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
        coeffs[deg] = c;
    }
    return LocalElement::make(std::move(f), v, std::move(coeffs));
}

} // namespace theta
