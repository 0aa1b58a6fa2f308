#include "theta/cocycle.hpp"

#include <random>

namespace theta {

namespace {

bool is_unit_one(const LocalElement& x) {
    if (x.is_zero() || x.valuation() != 0 || x.leading() != 1) return false;
    const auto& c = x.coeffs();
    for (size_t k = 1; k < c.size(); ++k)
        if (c[k] != 0) return false;
    return true;
}

} // namespace

MatrixElement MatrixElement::identity(FieldPtr f, unsigned r) {
    std::vector<LocalElement> e(r * r, LocalElement::zero(f));
    for (unsigned i = 0; i < r; ++i) e[i * r + i] = LocalElement::one(f);
    return MatrixElement(std::move(f), r, std::move(e));
}

MatrixElement MatrixElement::sl2(const LocalElement& a, const LocalElement& b,
                                 const LocalElement& c, const LocalElement& d) {
    FieldPtr f = a.field();
    LocalElement det = a * d - b * c;
    if (!is_unit_one(det))
        fail(ErrorCode::ConfigInvalid, "determinant of an SL2 element must be 1");
    return MatrixElement(std::move(f), 2, {a, b, c, d});
}

MatrixElement MatrixElement::diagonal(std::vector<LocalElement> entries) {
    if (entries.empty()) fail(ErrorCode::ConfigInvalid, "empty diagonal");
    FieldPtr f = entries.front().field();
    unsigned r = (unsigned)entries.size();
    std::vector<LocalElement> e(r * r, LocalElement::zero(f));
    for (unsigned i = 0; i < r; ++i) {
        if (entries[i].is_zero()) fail(ErrorCode::ConfigInvalid, "singular diagonal");
        e[i * r + i] = entries[i];
    }
    return MatrixElement(std::move(f), r, std::move(e));
}

bool MatrixElement::is_diagonal() const {
    for (unsigned i = 0; i < r_; ++i)
        for (unsigned j = 0; j < r_; ++j)
            if (i != j && !at(i, j).is_zero()) return false;
    return true;
}

std::vector<LocalElement> MatrixElement::diagonal_entries() const {
    if (!is_diagonal()) fail(ErrorCode::NotDiagonal, "matrix is not diagonal");
    std::vector<LocalElement> out;
    for (unsigned i = 0; i < r_; ++i) out.push_back(at(i, i));
    return out;
}

MatrixElement operator*(const MatrixElement& x, const MatrixElement& y) {
    if (x.r_ != y.r_ || x.f_->q() != y.f_->q())
        fail(ErrorCode::GroupMismatch, "matrix shapes or fields differ");
    unsigned r = x.r_;
    std::vector<LocalElement> e(r * r, LocalElement::zero(x.f_));
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) {
            LocalElement acc = LocalElement::zero(x.f_);
            for (unsigned k = 0; k < r; ++k) {
                if (x.at(i, k).is_zero() || y.at(k, j).is_zero()) continue;
                LocalElement term = x.at(i, k) * y.at(k, j);
                acc = acc.is_zero() ? term : acc + term;
            }
            e[i * r + j] = acc;
        }
    return MatrixElement(x.f_, r, std::move(e));
}

std::string to_string(const MatrixElement& g) {
    std::string out = "[";
    for (unsigned i = 0; i < g.rank(); ++i) {
        if (i) out += "; ";
        for (unsigned j = 0; j < g.rank(); ++j) {
            if (j) out += ", ";
            out += g.at(i, j).is_zero() ? "0" : to_string(g.at(i, j));
        }
    }
    return out + "]";
}

namespace {

const LocalElement& kubota_x(const MatrixElement& g) {
    return g.at(1, 0).is_zero() ? g.at(1, 1) : g.at(1, 0);
}

} // namespace

RootOfUnity kubota_sigma_sl2(const MatrixElement& g1, const MatrixElement& g2, unsigned n) {
    if (g1.rank() != 2 || g2.rank() != 2)
        fail(ErrorCode::GroupMismatch, "SL2 cocycle needs 2x2 inputs");
    MatrixElement g12 = g1 * g2;
    LocalElement x12 = kubota_x(g12);
    return tame_hilbert(x12 * inverse(kubota_x(g1)), x12 * inverse(kubota_x(g2)), n);
}

RootOfUnity gl2_torus_sigma(const MatrixElement& d1, const MatrixElement& d2,
                            unsigned n, long long c) {
    if (d1.rank() != 2 || d2.rank() != 2 || !d1.is_diagonal() || !d2.is_diagonal())
        fail(ErrorCode::NotDiagonal, "twisted cocycle is defined on 2x2 diagonals");
    const LocalElement& a = d1.at(0, 0);
    const LocalElement& b = d1.at(1, 1);
    const LocalElement& cc = d2.at(0, 0);
    const LocalElement& d = d2.at(1, 1);
    return tame_hilbert(a, d, n) * tame_hilbert(a * b, cc * d, n).pow(c);
}

RootOfUnity torus_sigma_slr(const std::vector<LocalElement>& h,
                            const std::vector<LocalElement>& k, unsigned n) {
    if (h.size() != k.size() || h.size() < 2)
        fail(ErrorCode::NotTorus, "torus slots mismatch");
    for (const auto* v : {&h, &k}) {
        LocalElement prod = LocalElement::one(v->front().field());
        for (const auto& x : *v) {
            if (x.is_zero()) fail(ErrorCode::NotTorus, "torus entries must be invertible");
            prod = prod * x;
        }
        if (!is_unit_one(prod)) fail(ErrorCode::NotTorus, "torus entries must multiply to 1");
    }
    RootOfUnity out(n, 0);
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = i + 1; j < k.size(); ++j)
            out = out * tame_hilbert(h[i], k[j], n);
    return out;
}

RootOfUnity sp4_torus_sigma(const std::vector<LocalElement>& h,
                            const std::vector<LocalElement>& k, unsigned n) {
    auto check = [](const std::vector<LocalElement>& v) {
        if (v.size() != 4) fail(ErrorCode::NotTorus, "symplectic torus has four slots");
        if (!is_unit_one(v[1] * v[2]) || !is_unit_one(v[0] * v[3]))
            fail(ErrorCode::NotTorus, "expected diag(t1, t2, t2^-1, t1^-1)");
    };
    check(h);
    check(k);
    auto swap34 = [](std::vector<LocalElement> v) {
        std::swap(v[2], v[3]);
        return v;
    };
    return torus_sigma_slr(swap34(h), swap34(k), n);
}

CoverElement cover_section(const CoverGroup& group, MatrixElement g) {
    return {group, std::move(g), RootOfUnity(group.n, 0)};
}

CoverElement cover_multiply(const CoverElement& x, const CoverElement& y) {
    if (!(x.group == y.group)) fail(ErrorCode::GroupMismatch, "cover elements from different groups");
    const CoverGroup& gr = x.group;
    RootOfUnity sigma(gr.n, 0);
    switch (gr.kind) {
        case GroupKind::SL2:
            sigma = kubota_sigma_sl2(x.matrix, y.matrix, gr.n);
            break;
        case GroupKind::GL2Diag:
            sigma = gl2_torus_sigma(x.matrix, y.matrix, gr.n, gr.c);
            break;
        case GroupKind::SLTorus:
            sigma = torus_sigma_slr(x.matrix.diagonal_entries(), y.matrix.diagonal_entries(), gr.n);
            break;
        case GroupKind::Sp4Torus:
            sigma = sp4_torus_sigma(x.matrix.diagonal_entries(), y.matrix.diagonal_entries(), gr.n);
            break;
    }
    return {gr, x.matrix * y.matrix, x.zeta * y.zeta * sigma};
}

namespace {

LocalElement random_nonzero(FieldPtr f, std::mt19937_64& rng, int vmin = -3, int vmax = 3) {
    std::uniform_int_distribution<int> vd(vmin, vmax);
    std::uniform_int_distribution<uint64_t> cd(0, f->q() - 1);
    std::uniform_int_distribution<uint64_t> cd1(1, f->q() - 1);
    std::vector<uint64_t> c(6);
    c[0] = cd1(rng);
    for (size_t k = 1; k < c.size(); ++k) c[k] = cd(rng);
    return LocalElement::make(f, vd(rng), std::move(c));
}

LocalElement random_maybe_zero(FieldPtr f, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> zd(0, 7);
    if (zd(rng) == 0) return LocalElement::zero(f);
    return random_nonzero(f, rng);
}

MatrixElement sample_sl2(FieldPtr f, std::mt19937_64& rng) {
    // Bruhat cell: upper unipotent, torus, optional Weyl element, upper unipotent.
    auto one = LocalElement::one(f);
    auto zero = LocalElement::zero(f);
    auto u1 = MatrixElement::sl2(one, random_maybe_zero(f, rng), zero, one);
    auto a = random_nonzero(f, rng);
    auto t = MatrixElement::sl2(a, zero, zero, inverse(a));
    auto u2 = MatrixElement::sl2(one, random_maybe_zero(f, rng), zero, one);
    MatrixElement g = u1 * t;
    std::uniform_int_distribution<int> wd(0, 1);
    if (wd(rng)) {
        auto w = MatrixElement::sl2(zero, one, -one, zero);
        g = g * w;
    }
    return g * u2;
}

MatrixElement sample_group_element(const CoverGroup& gr, FieldPtr f, std::mt19937_64& rng) {
    switch (gr.kind) {
        case GroupKind::SL2:
            return sample_sl2(f, rng);
        case GroupKind::GL2Diag:
            return MatrixElement::diagonal({random_nonzero(f, rng), random_nonzero(f, rng)});
        case GroupKind::SLTorus: {
            std::vector<LocalElement> d;
            LocalElement prod = LocalElement::one(f);
            for (unsigned i = 0; i + 1 < gr.r; ++i) {
                d.push_back(random_nonzero(f, rng));
                prod = prod * d.back();
            }
            d.push_back(inverse(prod));
            return MatrixElement::diagonal(std::move(d));
        }
        case GroupKind::Sp4Torus: {
            auto t1 = random_nonzero(f, rng);
            auto t2 = random_nonzero(f, rng);
            return MatrixElement::diagonal({t1, t2, inverse(t2), inverse(t1)});
        }
    }
    fail(ErrorCode::ConfigInvalid, "unknown group kind");
}

RootOfUnity group_sigma(const CoverGroup& gr, const MatrixElement& x, const MatrixElement& y) {
    return cover_multiply(cover_section(gr, x), cover_section(gr, y)).zeta;
}

} // namespace

CocycleReport verify_cocycle_identity(const CoverGroup& group, FieldPtr f,
                                      uint64_t trials, uint64_t seed) {
    if (trials == 0) fail(ErrorCode::ConfigInvalid, "trials must be at least 1");
    CocycleReport rep{group_name(group.kind), group.n, trials, {}};
    for (uint64_t off = 0; off < trials; ++off) {
        std::mt19937_64 rng(seed + off);
        for (int attempt = 0; attempt < 20; ++attempt) {
            try {
                MatrixElement g1 = sample_group_element(group, f, rng);
                MatrixElement g2 = sample_group_element(group, f, rng);
                MatrixElement g3 = sample_group_element(group, f, rng);
                RootOfUnity lhs = group_sigma(group, g1, g2) * group_sigma(group, g1 * g2, g3);
                RootOfUnity rhs = group_sigma(group, g1, g2 * g3) * group_sigma(group, g2, g3);
                if (!(lhs == rhs))
                    rep.failures.push_back({off, to_string(g1), to_string(g2), to_string(g3)});
                break;
            } catch (const Error& e) {
                // resample on a precision-starved draw; anything else is a real defect
                if (e.code() != ErrorCode::PrecisionExhausted) throw;
            }
        }
    }
    return rep;
}

RootOfUnity torus_factorization_zeta(FieldPtr f, const LocalElement& a,
                                     const LocalElement& eps, long long m, unsigned n) {
    CoverGroup gr{GroupKind::Sp4Torus, 4, n, 0};
    auto one = LocalElement::one(f);
    auto tm = LocalElement::uniformizer(f, m);
    auto tmi = LocalElement::uniformizer(f, -m);
    auto A = MatrixElement::diagonal({a, one, one, inverse(a)});
    auto B = MatrixElement::diagonal({one, tm * inverse(eps), tmi * eps, one});
    auto C = MatrixElement::diagonal({a, tm, tmi, inverse(a)});
    auto D = MatrixElement::diagonal({one, inverse(eps), eps, one});
    RootOfUnity zAB = cover_multiply(cover_section(gr, A), cover_section(gr, B)).zeta;
    RootOfUnity zCD = cover_multiply(cover_section(gr, C), cover_section(gr, D)).zeta;
    return zAB * zCD.inverse();
}

const char* group_name(GroupKind k) {
    switch (k) {
        case GroupKind::SL2: return "sl2";
        case GroupKind::GL2Diag: return "gl2-diag";
        case GroupKind::SLTorus: return "sl-torus";
        case GroupKind::Sp4Torus: return "sp4-torus";
    }
    return "?";
}

GroupKind parse_group(const std::string& name) {
    if (name == "sl2") return GroupKind::SL2;
    if (name == "gl2-diag") return GroupKind::GL2Diag;
    if (name == "sl-torus") return GroupKind::SLTorus;
    if (name == "sp4-torus") return GroupKind::Sp4Torus;
    fail(ErrorCode::ParseError, "unknown group: " + name);
}

} // namespace theta
