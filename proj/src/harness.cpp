#include "theta/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace theta {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

bool rational_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Deterministic strided parallel map: out[i] = fn(i).
void parallel_for(size_t count, unsigned workers, const std::function<void(size_t)>& fn) {
    if (workers <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned w = std::min<size_t>(workers, count);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&, t] {
            for (size_t i = t; i < count; i += w) fn(i);
        });
    for (auto& th : pool) th.join();
}

CyclotomicInt ring_one(Ring r) { return {r, 1, 0}; }

ModulusElement prime_mod(const PrimaryPrime& p, unsigned e = 1) {
    return modulus_from_primes(p.ring(), {{p, e}});
}

void add_check(VerificationReport& rep, const std::string& name, bool pass, double max_err,
               const std::string& witness) {
    rep.checks.push_back({name, pass, max_err, pass ? "" : witness});
}

// ---- individual cases -------------------------------------------------------

void case_gauss_magnitude(VerificationReport& rep, const RunConfig& cfg) {
    auto primes = admissible_primes(cfg);
    double max_err = 0;
    std::string witness;
    for (const auto& p : primes) {
        auto g = gauss_sum_prime(p, cfg.n, 1, ring_one(cfg.ring));
        double err = std::abs(std::abs(g.value) - 1.0);
        if (err > max_err) {
            max_err = err;
            witness = to_string(p.generator);
        }
        rep.rows.push_back({to_string(p.generator),
                            "G[1/" + std::to_string(cfg.n) + "](" + to_string(p.generator) + ")",
                            g.value.real(), g.value.imag()});
    }
    add_check(rep, "unit_magnitude", max_err < cfg.tolerance, max_err, witness);
}

void case_jacobi_cube(VerificationReport& rep, const RunConfig& cfg) {
    RunConfig c = cfg;
    c.ring = Ring::Eisenstein;
    c.n = 3;
    auto primes = admissible_primes(c);
    const double tol = 1e-8; // relative, pinned
    double max_err = 0;
    std::string witness;
    for (const auto& p : primes) {
        auto g = gauss_sum_prime(p, 3, 1, ring_one(Ring::Eisenstein));
        const CyclotomicInt& J = *g.jacobi_witness;
        double q = p.q.convert_to<double>();
        std::complex<double> cube = std::pow(g.value * std::sqrt(q), 3.0);
        std::complex<double> w3(-0.5, std::sqrt(3.0) / 2);
        std::complex<double> qJ =
            q * (J.a.convert_to<double>() + J.b.convert_to<double>() * w3);
        double err = std::abs(cube - qJ) / std::abs(qJ);
        if (err > max_err) {
            max_err = err;
            witness = to_string(p.generator);
        }
        rep.rows.push_back({to_string(p.generator), "J=" + to_string(J), qJ.real() / q,
                            qJ.imag() / q});
    }
    add_check(rep, "jacobi_cube_identity", max_err < tol, max_err, witness);
}

void case_gauss9(VerificationReport& rep, const RunConfig& cfg) {
    auto primes = admissible_primes(cfg);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t l = i + 1; l < primes.size(); ++l)
            if (primes[i].q * primes[l].q <= 100000) pairs.push_back({i, l});

    struct Out {
        ReportRow row;
        double err = 0;
    };
    std::vector<Out> outs(pairs.size());
    parallel_for(pairs.size(), cfg.workers, [&](size_t k) {
        const auto& p = primes[pairs[k].first];
        const auto& r = primes[pairs[k].second];
        ModulusElement m = prime_mod(p) * prime_mod(r);
        double err = 0;
        std::complex<double> shown;
        for (long long j = 1; j < (long long)cfg.n; ++j) {
            if (std::gcd((long long)cfg.n, j) != 1) continue;
            auto fast = gauss_sum_composite(m, cfg.n, j, ring_one(cfg.ring));
            auto slow = gauss_sum_bruteforce(m, cfg.n, j, ring_one(cfg.ring));
            err = std::max(err, std::abs(fast.value - slow.value));
            if (j == 1) shown = fast.value;
        }
        outs[k] = {{to_string(m.value()),
                    "G[1/" + std::to_string(cfg.n) + "](" + to_string(m.value()) + ")",
                    shown.real(), shown.imag()},
                   err};
    });
    double max_err = 0;
    std::string witness;
    for (size_t k = 0; k < outs.size(); ++k) {
        rep.rows.push_back(outs[k].row);
        if (outs[k].err > max_err) {
            max_err = outs[k].err;
            witness = outs[k].row.m;
        }
    }
    add_check(rep, "composite_vs_oracle", !pairs.empty() && max_err < cfg.tolerance, max_err,
              witness.empty() ? "no coprime pairs under the norm budget" : witness);
}

void case_cocycle(VerificationReport& rep, const RunConfig& cfg) {
    uint64_t q = cfg.n == 3 ? 7 : 13; // smallest odd prime with n | q-1
    auto f = std::make_shared<FiniteField>(q);

    auto sl2 = verify_cocycle_identity({GroupKind::SL2, 2, cfg.n, 0}, f, cfg.trials, cfg.seed);
    rep.rows.push_back({"sl2", "trials=" + std::to_string(cfg.trials),
                        (double)sl2.failures.size(), 0});
    add_check(rep, "sl2_cocycle_identity", sl2.failures.empty(),
              (double)sl2.failures.size(),
              sl2.failures.empty() ? "" : "seed_offset=" + std::to_string(sl2.failures[0].seed_offset));

    auto sl4 = verify_cocycle_identity({GroupKind::SLTorus, 4, cfg.n, 0}, f, cfg.trials,
                                       cfg.seed + 1);
    rep.rows.push_back({"sl4-torus", "trials=" + std::to_string(cfg.trials),
                        (double)sl4.failures.size(), 0});
    add_check(rep, "sl4_torus_cocycle_identity", sl4.failures.empty(),
              (double)sl4.failures.size(),
              sl4.failures.empty() ? "" : "seed_offset=" + std::to_string(sl4.failures[0].seed_offset));

    // factorization of the symplectic torus element against the residual symbol
    int bad = 0;
    std::string witness;
    std::mt19937_64 rng(cfg.seed + 2);
    std::uniform_int_distribution<int> md(-4, 4), id(-3, 3);
    std::uniform_int_distribution<uint64_t> cd(0, q - 1), cd1(1, q - 1);
    for (int trial = 0; trial < 50; ++trial) {
        long long m = md(rng);
        std::vector<uint64_t> uc{cd1(rng), cd(rng), cd(rng)};
        auto u = LocalElement::make(f, 0, std::move(uc));
        auto a = LocalElement::uniformizer(f, id(rng)) * (u * u * u);
        std::vector<uint64_t> ec{cd1(rng), cd(rng)};
        auto eps = LocalElement::make(f, 0, std::move(ec));
        auto z = torus_factorization_zeta(f, a, eps, m, cfg.n);
        auto expect = tame_hilbert(eps, LocalElement::uniformizer(f, m), cfg.n);
        if (!(z == expect)) {
            ++bad;
            if (witness.empty())
                witness = "m=" + std::to_string(m) + " eps=" + to_string(eps);
        }
    }
    rep.rows.push_back({"sp4-torus-factorization", "instances=50", (double)bad, 0});
    add_check(rep, "torus_factorization_symbol", bad == 0, (double)bad, witness);
}

void case_reciprocity(VerificationReport& rep, const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.ring == Ring::Gaussian && c.cong_mod == 1) {
        c.cong_mod = 8; // quartic symmetry needs the mod-8 admissibility filter
        c.cong_rem = 1;
    }
    auto primes = admissible_primes(c);
    int checked = 0, bad = 0;
    std::string witness;
    for (size_t i = 0; i < primes.size() && checked < 50; ++i)
        for (size_t l = i + 1; l < primes.size() && checked < 50; ++l) {
            auto r = check_reciprocity(primes[i], primes[l], c.n);
            ++checked;
            if (r.symmetric != r.expected_symmetric) {
                ++bad;
                if (witness.empty())
                    witness = to_string(primes[i].generator) + "|" + to_string(primes[l].generator);
            }
            rep.rows.push_back(
                {to_string(primes[i].generator) + "|" + to_string(primes[l].generator),
                 "z" + std::to_string(c.n) + "^" + std::to_string(r.pi_over_theta.exponent) +
                     "|z" + std::to_string(c.n) + "^" + std::to_string(r.theta_over_pi.exponent),
                 r.pi_over_theta.value().real(), r.pi_over_theta.value().imag()});
        }
    add_check(rep, "symbol_symmetry", checked > 0 && bad == 0, (double)bad,
              witness.empty() ? "not enough admissible primes" : witness);

    // tame-symbol properties: bimultiplicative, antisymmetric, Steinberg
    uint64_t q = c.n == 3 ? 7 : 13;
    auto f = std::make_shared<FiniteField>(q);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> vd(-3, 3);
    std::uniform_int_distribution<uint64_t> cd(0, q - 1), cd1(1, q - 1);
    auto draw = [&] {
        std::vector<uint64_t> cs(6);
        cs[0] = cd1(rng);
        for (size_t k = 1; k < cs.size(); ++k) cs[k] = cd(rng);
        return LocalElement::make(f, vd(rng), std::move(cs));
    };
    int sbad = 0, steinberg_done = 0;
    std::string swit;
    for (int t = 0; t < 10000; ++t) {
        auto a = draw();
        auto b = draw();
        auto cc = draw();
        bool ok = tame_hilbert(a * b, cc, c.n) ==
                      tame_hilbert(a, cc, c.n) * tame_hilbert(b, cc, c.n) &&
                  (tame_hilbert(a, b, c.n) * tame_hilbert(b, a, c.n)).is_one();
        try {
            auto oma = LocalElement::one(f) - a;
            ok = ok && tame_hilbert(a, oma, c.n).is_one();
            ++steinberg_done;
        } catch (const Error&) {
            // a indistinguishable from 1 at working precision; skip Steinberg here
        }
        if (!ok) {
            ++sbad;
            if (swit.empty()) swit = to_string(a) + "|" + to_string(b);
        }
    }
    add_check(rep, "tame_symbol_properties", sbad == 0 && steinberg_done > 9000, (double)sbad,
              swit);
}

/// All ordered pairs of disjoint index subsets with total size <= max_support,
/// enumerated deterministically.
std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>>
support_splits(size_t nprimes, unsigned max_support) {
    std::vector<std::vector<size_t>> supports{{}};
    std::vector<std::vector<size_t>> frontier{{}};
    for (unsigned k = 0; k < max_support; ++k) {
        std::vector<std::vector<size_t>> next;
        for (const auto& s : frontier)
            for (size_t i = s.empty() ? 0 : s.back() + 1; i < nprimes; ++i) {
                auto t = s;
                t.push_back(i);
                next.push_back(t);
            }
        supports.insert(supports.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>> out;
    for (const auto& s : supports)
        for (size_t mask = 0; mask < (size_t(1) << s.size()); ++mask) {
            std::vector<size_t> s1, s2;
            for (size_t i = 0; i < s.size(); ++i)
                (mask & (size_t(1) << i) ? s2 : s1).push_back(s[i]);
            out.push_back({s1, s2});
        }
    return out;
}

void case_cfh(VerificationReport& rep, const RunConfig& cfg) {
    RunConfig c = cfg;
    c.ring = Ring::Eisenstein;
    c.n = 3;
    auto primes = admissible_primes(c);
    auto splits = support_splits(primes.size(), c.max_support);

    struct Out {
        ReportRow row;
        double err = 0;
        bool gamma_ok = true;
        Integer norm;
    };
    std::vector<Out> outs(splits.size());
    parallel_for(splits.size(), cfg.workers, [&](size_t k) {
        std::vector<std::pair<PrimaryPrime, unsigned>> f1, f2, fm;
        for (size_t i : splits[k].first) {
            f1.push_back({primes[i], 1});
            fm.push_back({primes[i], 1});
        }
        for (size_t i : splits[k].second) {
            f2.push_back({primes[i], 1});
            fm.push_back({primes[i], 2});
        }
        ModulusElement m1 = modulus_from_primes(Ring::Eisenstein, f1);
        ModulusElement m2 = modulus_from_primes(Ring::Eisenstein, f2);
        ModulusElement m = modulus_from_primes(Ring::Eisenstein, fm);
        ThetaCoefficient rec = sextic_descent_recursive(m);
        ThetaCoefficient clo = sextic_descent_closed(m1, m2);
        auto nrec = numeric(rec);
        auto nclo = numeric(clo);
        outs[k] = {{to_string(m.value()), symbolic(rec), nrec.real(), nrec.imag()},
                   std::abs(nrec - nclo),
                   rec.gamma == clo.gamma,
                   m.abs()};
    });
    std::vector<size_t> order(outs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return outs[a].norm != outs[b].norm ? outs[a].norm < outs[b].norm
                                            : outs[a].row.m < outs[b].row.m;
    });
    double max_err = 0;
    bool gamma_all = true;
    std::string witness, gwitness;
    for (size_t i : order) {
        rep.rows.push_back(outs[i].row);
        if (outs[i].err > max_err) {
            max_err = outs[i].err;
            witness = outs[i].row.m;
        }
        if (!outs[i].gamma_ok && gamma_all) {
            gamma_all = false;
            gwitness = outs[i].row.m;
        }
    }
    add_check(rep, "gamma_tokens_identical", gamma_all, gamma_all ? 0 : 1, gwitness);
    add_check(rep, "recursion_vs_closed", max_err < cfg.tolerance, max_err, witness);
}

void case_patterson(VerificationReport& rep, const RunConfig& cfg) {
    RunConfig c = cfg;
    c.ring = Ring::Gaussian;
    c.n = 4;
    if (c.cong_mod == 1) {
        c.cong_mod = 8; // model of "-1 is a fourth power" admissibility
        c.cong_rem = 1;
    }
    auto primes = admissible_primes(c);

    // squarefree a over <= max_support primes: recursion vs closed form
    std::vector<std::vector<size_t>> supports{{}};
    {
        std::vector<std::vector<size_t>> frontier{{}};
        for (unsigned k = 0; k < c.max_support; ++k) {
            std::vector<std::vector<size_t>> next;
            for (const auto& s : frontier)
                for (size_t i = s.empty() ? 0 : s.back() + 1; i < primes.size(); ++i) {
                    auto t = s;
                    t.push_back(i);
                    next.push_back(t);
                }
            supports.insert(supports.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
    }
    struct Out {
        ReportRow row;
        double err = 0;
        Integer norm;
    };
    std::vector<Out> outs(supports.size());
    parallel_for(supports.size(), cfg.workers, [&](size_t k) {
        std::vector<std::pair<PrimaryPrime, unsigned>> fs;
        for (size_t i : supports[k]) fs.push_back({primes[i], 1});
        ModulusElement a = modulus_from_primes(Ring::Gaussian, fs);
        ThetaCoefficient rec = quartic_so4_recursive(a);
        ThetaCoefficient clo = quartic_so4_closed(a);
        auto nrec = numeric(rec);
        auto nclo = numeric(clo);
        outs[k] = {{to_string(a.value()), symbolic(rec), nrec.real(), nrec.imag()},
                   std::abs(nrec - nclo),
                   a.abs()};
    });
    std::vector<size_t> order(outs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return outs[a].norm != outs[b].norm ? outs[a].norm < outs[b].norm
                                            : outs[a].row.m < outs[b].row.m;
    });
    double max_err = 0;
    std::string witness;
    for (size_t i : order) {
        rep.rows.push_back(outs[i].row);
        if (outs[i].err > max_err) {
            max_err = outs[i].err;
            witness = outs[i].row.m;
        }
    }
    add_check(rep, "recursion_vs_closed", max_err < cfg.tolerance, max_err, witness);

    // Hecke value at prime squares: tau(m(p^2)) = G(1,p)^2 symbolically
    bool hecke_ok = true;
    std::string hwit;
    for (const auto& p : primes) {
        ThetaCoefficient got = quartic_so4_recursive(prime_mod(p, 2));
        ThetaCoefficient expect = ThetaCoefficient::one(Ring::Gaussian);
        expect.terms[0].factors = {{3, 4, prime_mod(p)}, {3, 4, prime_mod(p)}};
        if (!(got == expect)) {
            hecke_ok = false;
            if (hwit.empty()) hwit = to_string(p.generator);
        }
    }
    add_check(rep, "hecke_prime_square", hecke_ok, hecke_ok ? 0 : 1, hwit);
}

// ---- serialization ----------------------------------------------------------

json config_json(const RunConfig& c) {
    return json{{"ring", ring_name(c.ring)},
                {"n", c.n},
                {"congruence_mod", c.cong_mod.str()},
                {"congruence_rem", c.cong_rem.str()},
                {"norm_max", c.norm_max.str()},
                {"max_support", c.max_support},
                {"seed", c.seed},
                {"trials", c.trials},
                {"workers", c.workers},
                {"tolerance", c.tolerance},
                {"format", c.format},
                {"cache_dir", c.cache_dir}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    std::string ring = j.at("ring");
    c.ring = ring == "gaussian" ? Ring::Gaussian : Ring::Eisenstein;
    c.n = j.at("n");
    c.cong_mod = Integer(j.at("congruence_mod").get<std::string>());
    c.cong_rem = Integer(j.at("congruence_rem").get<std::string>());
    c.norm_max = Integer(j.at("norm_max").get<std::string>());
    c.max_support = j.at("max_support");
    c.seed = j.at("seed");
    c.trials = j.at("trials");
    c.workers = j.at("workers");
    c.tolerance = j.at("tolerance");
    c.format = j.at("format");
    c.cache_dir = j.at("cache_dir");
    return c;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

} // namespace

void set_congruence(RunConfig& cfg, const std::string& text) {
    if (text.empty() || text == "none") {
        cfg.cong_mod = 1;
        cfg.cong_rem = 0;
        return;
    }
    size_t pos = text.find("mod");
    size_t skip = 3;
    if (pos == std::string::npos) {
        pos = text.find('%');
        skip = 1;
    }
    if (pos == std::string::npos) fail(ErrorCode::ParseError, "expected \"r mod m\": " + text);
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    try {
        cfg.cong_rem = Integer(trim(text.substr(0, pos)));
        cfg.cong_mod = Integer(trim(text.substr(pos + skip)));
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad congruence: " + text);
    }
    if (cfg.cong_mod <= 0) fail(ErrorCode::ConfigInvalid, "congruence modulus must be positive");
}

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const char* case_name(CaseTag c) {
    switch (c) {
        case CaseTag::Cfh: return "cfh";
        case CaseTag::Patterson: return "patterson";
        case CaseTag::Gauss9: return "gauss9";
        case CaseTag::Cocycle: return "cocycle";
        case CaseTag::Reciprocity: return "reciprocity";
        case CaseTag::GaussMagnitude: return "gauss_magnitude";
        case CaseTag::JacobiCube: return "jacobi_cube";
    }
    return "?";
}

CaseTag parse_case(const std::string& name) {
    for (CaseTag t : {CaseTag::Cfh, CaseTag::Patterson, CaseTag::Gauss9, CaseTag::Cocycle,
                      CaseTag::Reciprocity, CaseTag::GaussMagnitude, CaseTag::JacobiCube})
        if (name == case_name(t)) return t;
    fail(ErrorCode::ConfigInvalid, "unknown case: " + name);
}

std::vector<PrimaryPrime> admissible_primes(const RunConfig& cfg) {
    if (cfg.norm_max > 1000000) fail(ErrorCode::ConfigInvalid, "norm cap exceeds 10^6");
    long long split_mod = cfg.ring == Ring::Eisenstein ? 3 : 4;
    std::vector<PrimaryPrime> out;
    for (long long p = 2; Integer(p) <= cfg.norm_max; ++p) {
        if (!rational_prime(p)) continue;
        if (p % split_mod != 1) continue;
        if (cfg.n == 0 || (p - 1) % cfg.n != 0) continue;
        if (cfg.cong_mod > 1 && floor_mod(Integer(p), cfg.cong_mod) != cfg.cong_rem) continue;
        out.push_back(prime_above(cfg.ring, p));
    }
    return out;
}

VerificationReport run_case(CaseTag tag, const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    if (!cfg.cache_dir.empty()) load_gauss_cache(cfg.cache_dir);
    VerificationReport rep;
    rep.case_name = case_name(tag);
    rep.config = cfg;
    switch (tag) {
        case CaseTag::Cfh: case_cfh(rep, cfg); break;
        case CaseTag::Patterson: case_patterson(rep, cfg); break;
        case CaseTag::Gauss9: case_gauss9(rep, cfg); break;
        case CaseTag::Cocycle: case_cocycle(rep, cfg); break;
        case CaseTag::Reciprocity: case_reciprocity(rep, cfg); break;
        case CaseTag::GaussMagnitude: case_gauss_magnitude(rep, cfg); break;
        case CaseTag::JacobiCube: case_jacobi_cube(rep, cfg); break;
    }
    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const ReportCheck& a, const ReportCheck& b) { return a.name < b.name; });
    if (!cfg.cache_dir.empty()) save_gauss_cache(cfg.cache_dir);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string emit_report(const VerificationReport& rep, const std::string& format) {
    if (format == "json") {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back(json{{"m", r.m}, {"symbolic", r.symbolic}, {"re", r.re}, {"im", r.im}});
        json checks = json::array();
        for (const auto& c : rep.checks)
            checks.push_back(json{{"name", c.name},
                                  {"pass", c.pass},
                                  {"max_err", c.max_err},
                                  {"witness", c.witness}});
        json out{{"schema", "theta-descent/1"},
                 {"case", rep.case_name},
                 {"config", config_json(rep.config)},
                 {"rows", rows},
                 {"checks", checks}};
        return out.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = "case,m,symbolic,re,im,check,pass,max_err\n";
        for (const auto& r : rep.rows)
            out += rep.case_name + "," + csv_field(r.m) + "," + csv_field(r.symbolic) + "," +
                   fmt(r.re) + "," + fmt(r.im) + ",,,\n";
        for (const auto& c : rep.checks)
            out += rep.case_name + ",,,,," + csv_field(c.name) + "," +
                   (c.pass ? "true" : "false") + "," + fmt(c.max_err) + "\n";
        return out;
    }
    if (format == "text") {
        std::ostringstream os;
        os.precision(17);
        os << "case " << rep.case_name << ": " << rep.rows.size() << " rows\n";
        for (const auto& c : rep.checks)
            os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
               << " max_err=" << c.max_err
               << (c.witness.empty() ? "" : " witness=" + c.witness) << "\n";
        return os.str();
    }
    fail(ErrorCode::ConfigInvalid, "unknown format: " + format);
}

VerificationReport parse_report_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::ParseError, std::string("bad report JSON: ") + e.what());
    }
    if (j.value("schema", "") != "theta-descent/1")
        fail(ErrorCode::ParseError, "unsupported report schema");
    VerificationReport rep;
    rep.case_name = j.at("case");
    rep.config = config_from_json(j.at("config"));
    for (const auto& r : j.at("rows"))
        rep.rows.push_back({r.at("m"), r.at("symbolic"), r.at("re"), r.at("im")});
    for (const auto& c : j.at("checks"))
        rep.checks.push_back({c.at("name"), c.at("pass"), c.at("max_err"), c.at("witness")});
    return rep;
}

int report_exit_code(const VerificationReport& rep) { return rep.all_pass() ? 0 : 1; }

} // namespace theta
