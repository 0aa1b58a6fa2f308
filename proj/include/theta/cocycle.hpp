#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "theta/local_field.hpp"

namespace theta {

/// Square matrix over a local field; SL factories check the determinant.
class MatrixElement {
public:
    static MatrixElement identity(FieldPtr f, unsigned r);
    static MatrixElement sl2(const LocalElement& a, const LocalElement& b,
                             const LocalElement& c, const LocalElement& d);
    static MatrixElement diagonal(std::vector<LocalElement> entries);

    unsigned rank() const { return r_; }
    const FieldPtr& field() const { return f_; }
    const LocalElement& at(unsigned i, unsigned j) const { return e_[i * r_ + j]; }
    bool is_diagonal() const;
    std::vector<LocalElement> diagonal_entries() const;

    friend MatrixElement operator*(const MatrixElement& x, const MatrixElement& y);

private:
    MatrixElement(FieldPtr f, unsigned r, std::vector<LocalElement> e)
        : f_(std::move(f)), r_(r), e_(std::move(e)) {}
    FieldPtr f_;
    unsigned r_;
    std::vector<LocalElement> e_; // row-major
};

std::string to_string(const MatrixElement& g);

/// SL2 cocycle via x(g) = lower-left entry if nonzero, else lower-right:
/// sigma(g1,g2) = (x(g1 g2)/x(g1), x(g1 g2)/x(g2))_n.
RootOfUnity kubota_sigma_sl2(const MatrixElement& g1, const MatrixElement& g2, unsigned n);

/// Twisted diagonal GL2 cocycle sigma_{n,c}(diag(a,b),diag(c,d)) = (a,d)_n (ab,cd)_n^c.
RootOfUnity gl2_torus_sigma(const MatrixElement& d1, const MatrixElement& d2,
                            unsigned n, long long c);

/// Diagonal-torus cocycle of SL_r: prod_{i<j} (h_i, k_j)_n.
RootOfUnity torus_sigma_slr(const std::vector<LocalElement>& h,
                            const std::vector<LocalElement>& k, unsigned n);

/// Symplectic rank-2 torus diag(t1,t2,t2^-1,t1^-1): conjugate into the SL4
/// slot order by swapping the last two diagonal slots, then apply the SL4
/// torus cocycle.
RootOfUnity sp4_torus_sigma(const std::vector<LocalElement>& h,
                            const std::vector<LocalElement>& k, unsigned n);

enum class GroupKind { SL2, GL2Diag, SLTorus, Sp4Torus };

struct CoverGroup {
    GroupKind kind;
    unsigned r;    // matrix size
    unsigned n;    // cover degree
    long long c;   // GL2 twist parameter (ignored elsewhere)

    bool operator==(const CoverGroup& o) const {
        return kind == o.kind && r == o.r && n == o.n && (kind != GroupKind::GL2Diag || c == o.c);
    }
};

/// Element (g, zeta) of the n-fold cover, with the trivial-section law
/// (g1,z1)(g2,z2) = (g1 g2, z1 z2 sigma(g1,g2)).
struct CoverElement {
    CoverGroup group;
    MatrixElement matrix;
    RootOfUnity zeta;
};

CoverElement cover_section(const CoverGroup& group, MatrixElement g);
CoverElement cover_multiply(const CoverElement& x, const CoverElement& y);

struct CocycleFailure {
    uint64_t seed_offset;
    std::string g1, g2, g3;
};

struct CocycleReport {
    std::string group;
    unsigned n;
    uint64_t trials;
    std::vector<CocycleFailure> failures;
};

/// Check sigma(g1,g2) sigma(g1 g2,g3) = sigma(g1,g2 g3) sigma(g2,g3) on
/// pseudo-random triples; each trial is seeded independently by seed+offset so
/// sharded runs merge deterministically.
CocycleReport verify_cocycle_identity(const CoverGroup& group, FieldPtr f,
                                      uint64_t trials, uint64_t seed);

/// Factor a symplectic torus element diag(a, t^m e, t^-m e^-1, a^-1) two ways
/// through the cover section and return the relative zeta between the two
/// factorizations; it equals (e, t^m)_n.
RootOfUnity torus_factorization_zeta(FieldPtr f, const LocalElement& a,
                                     const LocalElement& eps, long long m, unsigned n);

const char* group_name(GroupKind k);
GroupKind parse_group(const std::string& name);

} // namespace theta
