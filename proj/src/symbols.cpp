#include "theta/symbols.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <tuple>

namespace theta {

namespace {

uint64_t to_u64(const Integer& x) { return x.convert_to<uint64_t>(); }

long long reduce_exp(long long j, unsigned n) {
    long long r = j % (long long)n;
    return r < 0 ? r + n : r;
}

/// zeta_n^k as a ring element; only the orders realized in the ring exist.
CyclotomicInt ring_root(Ring r, unsigned n, long long k) {
    CyclotomicInt base{r, 1, 0};
    switch (n) {
        case 1: break;
        case 2: base = CyclotomicInt{r, -1, 0}; break;
        case 3:
            if (r != Ring::Eisenstein) fail(ErrorCode::DegreeNotDividing, "no cube roots of unity in this ring");
            base = CyclotomicInt{r, 0, 1};
            break;
        case 6:
            if (r != Ring::Eisenstein) fail(ErrorCode::DegreeNotDividing, "no sixth roots of unity in this ring");
            base = CyclotomicInt{r, 1, 1};
            break;
        case 4:
            if (r != Ring::Gaussian) fail(ErrorCode::DegreeNotDividing, "no fourth roots of unity in this ring");
            base = CyclotomicInt{r, 0, 1};
            break;
        default:
            fail(ErrorCode::DegreeNotDividing, "no roots of unity of order " + std::to_string(n) + " in this ring");
    }
    CyclotomicInt out{r, 1, 0};
    for (long long i = 0, kk = reduce_exp(k, n); i < kk; ++i) out = out * base;
    return out;
}

void require_character_order(const PrimaryPrime& p, unsigned n) {
    if (n == 0) fail(ErrorCode::ConfigInvalid, "character order must be positive");
    if ((p.q - 1) % n != 0)
        fail(ErrorCode::DegreeNotDividing,
             "residue field of norm " + p.q.str() + " has no character of order " + std::to_string(n));
}

} // namespace

FieldPtr residue_field(const PrimaryPrime& p) {
    if (!p.split())
        fail(ErrorCode::ConfigInvalid, "character tables require a split prime (prime residue field)");
    static std::mutex mu;
    static std::map<std::tuple<int, Integer, Integer>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p.ring() == Ring::Eisenstein ? 0 : 1, p.generator.a, p.generator.b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    uint64_t q = to_u64(p.q);
    auto f = std::make_shared<FiniteField>(q);
    uint64_t r = to_u64(*p.root_image);
    if (p.ring() == Ring::Eisenstein) {
        f->set_unit_root(3, r);
        // zeta_6 = -w^2 maps to q - r^2 mod q
        f->set_unit_root(6, f->neg(f->mul(r, r)));
    } else {
        f->set_unit_root(4, r);
    }
    FieldPtr out = f;
    cache.emplace(key, out);
    return out;
}

RootOfUnity residue_symbol_prime(const CyclotomicInt& a, const PrimaryPrime& p,
                                 unsigned n, long long j) {
    if (a.ring != p.ring()) fail(ErrorCode::MixedRing, "symbol arguments from different rings");
    require_character_order(p, n);
    if (p.split()) {
        Integer lift = p.reduce(a);
        if (lift == 0) fail(ErrorCode::NotCoprime, "symbol argument shares the prime");
        return residue_field(p)->power_residue(to_u64(lift), n).pow(j);
    }
    ResidueRing rr(p.generator);
    if (!rr.is_unit_residue(a)) fail(ErrorCode::NotCoprime, "symbol argument shares the prime");
    CyclotomicInt e = rr.pow(a, (p.q - 1) / n);
    for (unsigned k = 0; k < n; ++k)
        if (e == rr.canonical(ring_root(p.ring(), n, k))) return RootOfUnity(n, k).pow(j);
    fail(ErrorCode::AmbiguousRoot, "Euler power is not a root of unity mod the prime");
}

RootOfUnity residue_symbol(const CyclotomicInt& a, const ModulusElement& m,
                           unsigned n, long long j) {
    RootOfUnity out(n, 0);
    for (const auto& [p, e] : m.factors)
        out = out * residue_symbol_prime(a, p, n, j * (long long)e);
    return out;
}

namespace {

using MemoKey = std::tuple<int, Integer, Integer, unsigned, long long, uint64_t>;

struct MemoVal {
    std::complex<double> value;
    std::optional<std::pair<Integer, Integer>> witness;
};

std::mutex memo_mu;
std::map<MemoKey, MemoVal> memo;

MemoKey memo_key(const PrimaryPrime& p, unsigned n, long long j, uint64_t bbar) {
    return {p.ring() == Ring::Eisenstein ? 0 : 1, p.generator.a, p.generator.b, n, j, bbar};
}

GaussValue from_memo(Ring r, const MemoVal& v) {
    GaussValue out{v.value, std::nullopt};
    if (v.witness) out.jacobi_witness = CyclotomicInt{r, v.witness->first, v.witness->second};
    return out;
}

} // namespace

std::string psi_fingerprint() {
    return "psi=exp(2*pi*i*lift/q);chi=euler-matched-embedding;norm=q^-1/2";
}

void clear_gauss_cache() {
    std::lock_guard<std::mutex> lock(memo_mu);
    memo.clear();
}

GaussValue gauss_sum_prime(const PrimaryPrime& p, unsigned n, long long j,
                           const CyclotomicInt& b) {
    require_character_order(p, n);
    long long jr = reduce_exp(j, n);
    if (jr == 0)
        fail(ErrorCode::ConfigInvalid, "character power must be nonzero mod the order");
    FieldPtr f = residue_field(p);
    uint64_t q = f->q();
    uint64_t bbar = to_u64(p.reduce(b));
    if (bbar == 0) return {std::complex<double>(0.0, 0.0), std::nullopt};

    MemoKey key = memo_key(p, n, jr, bbar);
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        auto it = memo.find(key);
        if (it != memo.end()) return from_memo(p.ring(), it->second);
    }

    // chi(g)^j for the field generator g fixes chi on every unit via dlog.
    unsigned u0 = f->power_residue(f->generator(), n).exponent;
    std::vector<std::complex<double>> zeta(n);
    for (unsigned k = 0; k < n; ++k) zeta[k] = RootOfUnity(n, k).value();
    long long jj = reduce_exp(j, n);

    const double twopi = 2.0 * std::numbers::pi;
    std::complex<double> sum = 0.0;
    for (uint64_t e = 1; e < q; ++e) {
        unsigned k = (unsigned)((__uint128_t)u0 * f->dlog(e) % n);
        unsigned kj = (unsigned)(((uint64_t)k * (uint64_t)jj) % n);
        sum += zeta[kj] * std::polar(1.0, twopi * (double)(bbar * e % q) / (double)q);
    }
    GaussValue out{sum / std::sqrt((double)q), std::nullopt};
    if ((n == 3 && p.ring() == Ring::Eisenstein) || (n == 4 && p.ring() == Ring::Gaussian))
        out.jacobi_witness = jacobi_sum(p, n, jj);
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        MemoVal v{out.value, std::nullopt};
        if (out.jacobi_witness)
            v.witness = std::make_pair(out.jacobi_witness->a, out.jacobi_witness->b);
        memo.emplace(key, v);
    }
    return out;
}

void save_gauss_cache(const std::string& dir) {
    namespace fs = std::filesystem;
    std::map<MemoKey, MemoVal> snapshot;
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        snapshot = memo;
    }
    // group entries by (ring, n, j, norm bucket)
    std::map<std::string, std::vector<std::pair<MemoKey, MemoVal>>> files;
    for (const auto& [k, v] : snapshot) {
        const auto& [ring, a, b, n, j, bbar] = k;
        Integer nrm = ring == 0 ? Integer(a * a - a * b + b * b) : Integer(a * a + b * b);
        Integer bucket = nrm / 1000 * 1000;
        std::string name = std::string(ring == 0 ? "eis" : "gau") + "-n" + std::to_string(n) +
                           "-j" + std::to_string(j) + "-b" + bucket.str() + ".gsc";
        files[name].push_back({k, v});
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    for (const auto& [name, entries] : files) {
        std::ofstream out(fs::path(dir) / name);
        if (!out) fail(ErrorCode::IoFailure, "cannot write cache file " + name);
        out << "theta-gauss-cache/1\n" << psi_fingerprint() << "\n";
        const auto& [r0, a0, b0, n0, j0, bb0] = entries.front().first;
        out << (r0 == 0 ? "eisenstein" : "gaussian") << " " << n0 << " " << j0 << "\n";
        out << std::setprecision(17);
        for (const auto& [k, v] : entries) {
            const auto& [ring, a, b, n, j, bbar] = k;
            out << a << " " << b << " " << bbar << " " << v.value.real() << " "
                << v.value.imag();
            if (v.witness)
                out << " 1 " << v.witness->first << " " << v.witness->second << "\n";
            else
                out << " 0 0 0\n";
        }
        if (!out) fail(ErrorCode::IoFailure, "failed writing cache file " + name);
    }
}

void load_gauss_cache(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.path().extension() != ".gsc") continue;
        std::ifstream in(entry.path());
        std::string magic, fp, ringname;
        unsigned n;
        long long j;
        if (!std::getline(in, magic) || magic != "theta-gauss-cache/1") continue;
        if (!std::getline(in, fp) || fp != psi_fingerprint()) continue; // stale convention
        if (!(in >> ringname >> n >> j)) continue;
        int ring = ringname == "eisenstein" ? 0 : 1;
        std::string a, b, wa, wb;
        uint64_t bbar;
        double re, im;
        int hasw;
        while (in >> a >> b >> bbar >> re >> im >> hasw >> wa >> wb) {
            MemoVal v{{re, im}, std::nullopt};
            if (hasw) v.witness = std::make_pair(Integer(wa), Integer(wb));
            std::lock_guard<std::mutex> lock(memo_mu);
            memo.emplace(MemoKey{ring, Integer(a), Integer(b), n, j, bbar}, v);
        }
    }
}

GaussValue gauss_sum_composite(const ModulusElement& m, unsigned n, long long j,
                               const CyclotomicInt& b) {
    if (m.is_one()) return {std::complex<double>(1.0, 0.0), std::nullopt};
    if (!m.squarefree()) fail(ErrorCode::NotSquarefree, "composite Gauss sums need a squarefree modulus");
    if (m.factors.size() == 1) return gauss_sum_prime(m.factors.front().first, n, j, b);

    std::complex<double> val = 1.0;
    for (const auto& [p, e] : m.factors) {
        (void)e;
        auto g = gauss_sum_prime(p, n, j, b);
        if (std::abs(g.value) == 0.0) return {std::complex<double>(0.0, 0.0), std::nullopt};
        val *= g.value;
    }
    // Pairwise twist: for primes p, r the sum over the product modulus equals
    // (p/r)^j (r/p)^j times the product of the local sums; each local symbol is
    // evaluated by the tame Hilbert formula in the corresponding local field.
    for (size_t i = 0; i < m.factors.size(); ++i) {
        for (size_t l = i + 1; l < m.factors.size(); ++l) {
            const PrimaryPrime& pi = m.factors[i].first;
            const PrimaryPrime& pl = m.factors[l].first;
            FieldPtr fl = residue_field(pl);
            FieldPtr fi = residue_field(pi);
            auto s_il = tame_hilbert(LocalElement::constant(fl, to_u64(pl.reduce(pi.generator))),
                                     LocalElement::uniformizer(fl), n);
            auto s_li = tame_hilbert(LocalElement::constant(fi, to_u64(pi.reduce(pl.generator))),
                                     LocalElement::uniformizer(fi), n);
            val *= (s_il * s_li).pow(j).value();
        }
    }
    return {val, std::nullopt};
}

GaussValue gauss_sum_bruteforce(const ModulusElement& m, unsigned n, long long j,
                                const CyclotomicInt& b, const Integer& budget) {
    if (m.is_one()) return {std::complex<double>(1.0, 0.0), std::nullopt};
    if (!m.squarefree()) fail(ErrorCode::NotSquarefree, "oracle supports squarefree moduli only");
    if (m.abs() > budget) fail(ErrorCode::BudgetExceeded, "modulus norm exceeds the oracle budget");
    if (reduce_exp(j, n) == 0)
        fail(ErrorCode::ConfigInvalid, "character power must be nonzero mod the order");

    CyclotomicInt M = m.value();
    struct Place {
        PrimaryPrime p;
        FieldPtr f;
        uint64_t q;
        uint64_t binv; // reduce(b) * inverse of reduce(M / p) mod q
    };
    std::vector<Place> places;
    for (const auto& [p, e] : m.factors) {
        (void)e;
        require_character_order(p, n);
        FieldPtr f = residue_field(p);
        uint64_t q = f->q();
        CyclotomicInt cof = *exact_div(M, p.generator);
        uint64_t c = to_u64(p.reduce(cof));
        places.push_back({p, f, q, f->mul(to_u64(p.reduce(b)), f->inv(c))});
    }

    const double twopi = 2.0 * std::numbers::pi;
    ResidueRing rr(M);
    std::complex<double> sum = 0.0;
    for (const auto& eps : rr.residues(budget)) {
        if (!rr.is_unit_residue(eps)) continue;
        RootOfUnity chi(n, 0);
        double ang = 0.0;
        for (const auto& pl : places) {
            uint64_t e = to_u64(pl.p.reduce(eps));
            chi = chi * pl.f->power_residue(e, n);
            ang += twopi * (double)pl.f->mul(pl.binv, e) / (double)pl.q;
        }
        sum += chi.pow(j).value() * std::polar(1.0, ang);
    }
    return {sum / std::sqrt(m.abs().convert_to<double>()), std::nullopt};
}

CyclotomicInt jacobi_sum(const PrimaryPrime& p, unsigned n, long long j) {
    Ring r = p.ring();
    if (!((n == 3 && r == Ring::Eisenstein) || (n == 4 && r == Ring::Gaussian)))
        fail(ErrorCode::ConfigInvalid, "exact Jacobi sums are kept in the matching ring (order 3 or 4)");
    require_character_order(p, n);
    long long jj = reduce_exp(j, n);
    if (jj == 0) fail(ErrorCode::ConfigInvalid, "character power must be nonzero mod the order");
    FieldPtr f = residue_field(p);
    uint64_t q = f->q();
    CyclotomicInt acc{r, 0, 0};
    for (uint64_t t = 2; t < q; ++t) {
        unsigned k1 = f->power_residue(t, n).exponent;
        unsigned k2 = f->power_residue(q + 1 - t, n).exponent; // residue of 1 - t
        acc = acc + ring_root(r, n, (long long)(k1 + k2) * jj);
    }
    return acc;
}

ReciprocityReport check_reciprocity(const PrimaryPrime& pi, const PrimaryPrime& theta,
                                    unsigned n) {
    if (pi.ring() != theta.ring()) fail(ErrorCode::MixedRing, "reciprocity needs primes of one ring");
    if (!(n == 3 || n == 4)) fail(ErrorCode::ConfigInvalid, "reciprocity check supports orders 3 and 4");
    if ((n == 3) != (pi.ring() == Ring::Eisenstein))
        fail(ErrorCode::DegreeNotDividing, "symbol order does not match the ring");
    if (pi.generator == theta.generator)
        fail(ErrorCode::DistinctnessRequired, "reciprocity needs two distinct primes");
    if (!is_primary(pi.generator) || !is_primary(theta.generator))
        fail(ErrorCode::ConfigInvalid, "reciprocity is stated for primary primes");

    ReciprocityReport rep{residue_symbol_prime(pi.generator, theta, n),
                          residue_symbol_prime(theta.generator, pi, n), false, false};
    if (n == 3)
        rep.expected_symmetric = true;
    else
        rep.expected_symmetric = (pi.q % 8 == 1) || (theta.q % 8 == 1);
    rep.symmetric = (rep.pi_over_theta == rep.theta_over_pi);
    return rep;
}

} // namespace theta
