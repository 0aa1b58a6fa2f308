#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "theta/harness.hpp"

using namespace theta;
using json = nlohmann::ordered_json;

namespace {

Ring parse_ring(const std::string& name) {
    if (name == "eisenstein") return Ring::Eisenstein;
    if (name == "gaussian") return Ring::Gaussian;
    fail(ErrorCode::ConfigInvalid, "ring must be eisenstein or gaussian");
}

std::string weight_string(const ThetaCoefficient& c) {
    std::string out;
    if (c.weight_mult != 1) out = c.weight_mult.str();
    if (c.weight_sqrt != 1) {
        if (!out.empty()) out += "*";
        out += "sqrt(" + c.weight_sqrt.str() + ")";
    }
    return out.empty() ? "1" : out;
}

int cmd_gauss(const std::string& ring_name, unsigned n, long long j, const std::string& b_text,
              const std::string& modulus_text) {
    Ring ring = parse_ring(ring_name);
    CyclotomicInt b = parse_cyclotomic(b_text, ring);
    CyclotomicInt m = parse_cyclotomic(modulus_text, ring);
    ModulusElement mod = factor(m).modulus;
    GaussValue g = gauss_sum_composite(mod, n, j, b);
    json row{{"modulus", to_string(m)},
             {"j", j},
             {"b", to_string(b)},
             {"re", g.value.real()},
             {"im", g.value.imag()},
             {"abs_err_from_unit", std::abs(std::abs(g.value) - 1.0)}};
    row["symbolic"] = "G[" + std::to_string(j) + "/" + std::to_string(n) + "](" +
                      to_string(m) + ")";
    if (g.jacobi_witness) row["jacobi_witness"] = to_string(*g.jacobi_witness);
    std::cout << row.dump(2) << "\n";
    return 0;
}

int cmd_cocycle(const std::string& group, const std::string& field, unsigned n,
                uint64_t trials, uint64_t seed) {
    GroupKind kind = parse_group(group);
    FieldPtr f = parse_field(field);
    unsigned r = (kind == GroupKind::SLTorus || kind == GroupKind::Sp4Torus) ? 4 : 2;
    auto rep = verify_cocycle_identity({kind, r, n, 0}, f, trials, seed);
    json fails = json::array();
    for (const auto& fl : rep.failures)
        fails.push_back(json{{"seed_offset", fl.seed_offset},
                             {"g1", fl.g1},
                             {"g2", fl.g2},
                             {"g3", fl.g3}});
    json out{{"group", rep.group}, {"n", rep.n}, {"trials", rep.trials}, {"failures", fails}};
    std::cout << out.dump(2) << "\n";
    return rep.failures.empty() ? 0 : 1;
}

int cmd_theta(const std::string& family_name_, const std::string& m_text,
              const std::string& primes_csv) {
    ThetaFamily fam = parse_family(family_name_);
    Ring ring = family_ring(fam);

    std::vector<PrimaryPrime> primes;
    for (size_t pos = 0; pos < primes_csv.size();) {
        size_t comma = primes_csv.find(',', pos);
        if (comma == std::string::npos) comma = primes_csv.size();
        CyclotomicInt g = parse_cyclotomic(primes_csv.substr(pos, comma - pos), ring);
        primes.push_back(make_primary_prime(primary_associate(g)));
        pos = comma + 1;
    }

    // modulus pattern "p^1*q^2": letters p, q, r, ... name the primes in order
    std::vector<std::pair<PrimaryPrime, unsigned>> fs;
    for (size_t pos = 0; pos < m_text.size();) {
        size_t star = m_text.find('*', pos);
        if (star == std::string::npos) star = m_text.size();
        std::string tok = m_text.substr(pos, star - pos);
        if (tok.empty() || tok[0] < 'p')
            fail(ErrorCode::ParseError, "bad modulus token: " + tok);
        size_t idx = (size_t)(tok[0] - 'p');
        if (idx >= primes.size())
            fail(ErrorCode::ConfigInvalid, "letter " + tok.substr(0, 1) + " has no prime");
        unsigned e = 1;
        if (tok.size() > 1) {
            if (tok[1] != '^') fail(ErrorCode::ParseError, "bad modulus token: " + tok);
            e = (unsigned)std::stoul(tok.substr(2));
        }
        if (e) fs.push_back({primes[idx], e});
        pos = star + 1;
    }
    ModulusElement m = modulus_from_primes(ring, std::move(fs));
    ThetaCoefficient c = family_coefficient(fam, m);
    auto v = numeric(c);
    json row{{"m", to_string(m.value())},
             {"symbolic", symbolic(c)},
             {"re", v.real()},
             {"im", v.imag()},
             {"gamma_kernel",
              c.gamma.is_identity() ? "1" : to_string(c.gamma.kernel.value())},
             {"weight", weight_string(c)}};
    std::cout << row.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gauss sums, metaplectic cocycles, and theta/descent coefficients"};
    app.require_subcommand(1);

    // gauss
    auto* gauss = app.add_subcommand("gauss", "Normalized Gauss sum of a factored modulus");
    std::string g_ring = "eisenstein", g_b = "1", g_mod;
    unsigned g_n = 3;
    long long g_j = 1;
    gauss->add_option("--ring", g_ring, "eisenstein | gaussian");
    gauss->add_option("--n", g_n, "character order");
    gauss->add_option("--j", g_j, "character power");
    gauss->add_option("--b", g_b, "twist element");
    gauss->add_option("--modulus", g_mod, "ring element, e.g. \"2+3*w\"")->required();

    // cocycle-check
    auto* coc = app.add_subcommand("cocycle-check", "Verify the 2-cocycle identity");
    std::string c_group = "sl2", c_field = "F7((t))";
    unsigned c_n = 3;
    uint64_t c_trials = 10000, c_seed = 42;
    coc->add_option("--group", c_group, "sl2 | gl2-diag | sl-torus | sp4-torus");
    coc->add_option("--field", c_field, "local field, e.g. \"F7((t))\"");
    coc->add_option("--n", c_n, "cover degree");
    coc->add_option("--trials", c_trials, "number of random triples");
    coc->add_option("--seed", c_seed, "RNG seed");

    // theta
    auto* th = app.add_subcommand("theta", "Theta/descent Whittaker coefficient");
    std::string t_family = "sextic", t_m, t_primes;
    th->add_option("--family", t_family, "sextic | quartic_so4 | cubic_gl2 | quartic_gl3");
    th->add_option("--m", t_m, "modulus pattern, e.g. \"p^1*q^2\"")->required();
    th->add_option("--primes", t_primes, "comma-separated primes naming p,q,...")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "Run a verification case and emit a report");
    std::string v_case, v_ring = "eisenstein", v_format = "json", v_cong, v_cache;
    RunConfig cfg;
    long long v_norm_max = 500;
    ver->add_option("--case", v_case, "cfh | patterson | gauss9 | cocycle | reciprocity | "
                                      "gauss_magnitude | jacobi_cube")
        ->required();
    ver->add_option("--ring", v_ring, "eisenstein | gaussian");
    ver->add_option("--n", cfg.n, "symbol/cover order");
    ver->add_option("--norm-max", v_norm_max, "norm cap for admissible primes");
    ver->add_option("--max-support", cfg.max_support, "max number of primes per modulus");
    ver->add_option("--seed", cfg.seed, "RNG seed");
    ver->add_option("--trials", cfg.trials, "trials for the cocycle case");
    ver->add_option("--workers", cfg.workers, "worker threads");
    ver->add_option("--format", v_format, "json | csv | text");
    ver->add_option("--cache-dir", v_cache, "Gauss-sum cache directory");
    ver->add_option("--congruence", v_cong, "admissibility filter, e.g. \"1 mod 8\"");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gauss->parsed()) return cmd_gauss(g_ring, g_n, g_j, g_b, g_mod);
        if (coc->parsed()) return cmd_cocycle(c_group, c_field, c_n, c_trials, c_seed);
        if (th->parsed()) return cmd_theta(t_family, t_m, t_primes);

        cfg.ring = parse_ring(v_ring);
        cfg.norm_max = v_norm_max;
        cfg.format = v_format;
        if (!v_cong.empty()) set_congruence(cfg, v_cong);
        if (!v_cache.empty())
            cfg.cache_dir = v_cache;
        else if (const char* env = std::getenv("THETA_CACHE_DIR"))
            cfg.cache_dir = env;
        auto rep = run_case(parse_case(v_case), cfg);
        std::cout << emit_report(rep, cfg.format);
        return report_exit_code(rep);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
