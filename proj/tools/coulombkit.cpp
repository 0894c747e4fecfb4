// coulombkit — exact Coulomb branch computations for torus and rank-1 gauge
// theories: monopole-formula Hilbert series, quantized abelian algebras,
// minuscule lifts, rank-1 hypersurfaces, chamber generators and hypertoric
// reductions.
//
// Exit codes: 0 success, 2 schema/input error, 3 bad theory, 4 unsupported
// request, 5 internal invariant violation.

#include "coulombkit/coulombkit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace ck;

constexpr const char* kVersion = "0.1.0";

int thread_count() {
    const char* env = std::getenv("COULOMBKIT_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

// "8" or "17/2" in powers of t, to doubled units
long parse_max_degree(const std::string& s) {
    std::size_t slash = s.find('/');
    long order2 = 0;
    if (slash == std::string::npos) {
        order2 = 2 * std::stol(s);
    } else {
        long num = std::stol(s.substr(0, slash));
        long den = std::stol(s.substr(slash + 1));
        if (den != 2) throw SchemaError("--max-degree accepts an integer or halves (p/2)");
        order2 = num;
    }
    if (order2 <= 0) throw SchemaError("--max-degree must be positive");
    return order2;
}

json series_coeffs(const TruncatedSeries& s) {
    json out = json::array();
    for (const auto& [e2, c] : s.coeffs()) out.push_back({e2, 2, ck::to_string(c)});
    return out;
}

json envelope(const std::string& command, json output) {
    return json{{"command", command}, {"version", kVersion}, {"output", std::move(output)}};
}

void emit(const json& env, bool as_json, const std::string& human) {
    if (as_json) {
        std::cout << env.dump(2) << "\n";
    } else {
        std::cout << human;
    }
}

std::string render_exponent(long e2) {
    if (e2 == 0) return "1";
    if (e2 == 2) return "t";
    if (e2 % 2 == 0) return "t^" + std::to_string(e2 / 2);
    return "t^(" + std::to_string(e2) + "/2)";
}

std::string print_localized(const LocalizedElement& x) {
    if (x.is_zero()) return "0";
    auto names = x.theory().algebra_context().var_names();
    std::string out;
    for (const auto& [l, c] : x.terms()) {
        std::string coeff = c.to_string(names);
        std::string piece;
        if (l.is_zero()) {
            piece = coeff;
        } else if (coeff == "1") {
            piece = print_coweight(l);
        } else if (coeff == "-1") {
            piece = "-" + print_coweight(l);
        } else {
            bool wrap = !c.is_polynomial() || c.num().num_terms() > 1;
            piece = (wrap && coeff[0] != '(' ? "(" + coeff + ")" : coeff) + "*" + print_coweight(l);
        }
        if (out.empty()) out = piece;
        else if (piece[0] == '-') out += piece;
        else out += "+" + piece;
    }
    return out;
}

int cmd_hilbert(const std::string& file, const std::string& max_degree, bool refined,
                bool as_json) {
    TheorySpec spec = load_theory(file);
    MonopoleRequest req;
    req.matter = spec.matter;
    req.order2 = parse_max_degree(max_degree);
    req.threads = thread_count();
    if (refined) {
        if (!spec.flavor_charges)
            throw SchemaError("--refined needs a flavor assignment in the theory file");
        req.flavor_charges = spec.flavor_charges;
    }
    auto t0 = std::chrono::steady_clock::now();
    HilbertSeries h = monopole_series(spec.rd, req);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();

    json out{{"coeffs", series_coeffs(h.series)},
             {"quality", h.good_or_ugly ? "good-or-ugly" : "bad"},
             {"coweights_summed", h.coweights_summed}};
    if (h.refined) {
        json r = json::array();
        for (const auto& [key, c] : h.refined->coeffs())
            r.push_back({key.first, 2, key.second, ck::to_string(c)});
        out["refined"] = r;
    }
    std::ostringstream human;
    human << "Hilbert series of " << spec.rd.name() << " (quality: good-or-ugly, "
          << h.coweights_summed << " coweights summed, " << ms << " ms)\n";
    human << "  exponent  dimension\n";
    for (const auto& [e2, c] : h.series.coeffs())
        human << "  " << render_exponent(e2) << "\t    " << ck::to_string(c) << "\n";
    if (h.refined) {
        human << "refined (t-exponent, z-charge, dimension):\n";
        for (const auto& [key, c] : h.refined->coeffs())
            human << "  " << render_exponent(key.first) << "\tz^" << key.second << "\t"
                  << ck::to_string(c) << "\n";
    }
    emit(envelope("hilbert", out), as_json, human.str());
    return 0;
}

int cmd_eval(const std::string& file, const std::string& expr, const std::string& mode,
             bool as_json) {
    TheorySpec spec = load_theory(file);
    Mode m = mode.empty() ? spec.mode : parse_mode(mode);
    AlgebraContext ctx{spec.rd.rank(), spec.matter, m};
    AbelianElement x = parse_element(expr, ctx);
    std::string rendered = print_element(x);
    json out{{"input", expr}, {"mode", mode_name(m)}, {"result", rendered}};
    emit(envelope("eval", out), as_json, rendered + "\n");
    return 0;
}

int cmd_rank1(const std::string& file, bool as_json) {
    TheorySpec spec = load_theory(file);
    HypersurfaceData h = rank1_branch(spec.rd, spec.matter);
    json out{{"family", family_name(h.family)}, {"N", h.N}, {"c", ck::to_string(h.c)}};
    std::ostringstream human;
    if (h.family == HypersurfaceData::Family::D) {
        human << "xi^2 - delta*eta^2 = " << ck::to_string(h.c) << "*delta^" << (h.N - 1)
              << "   (family D, N = " << h.N << ")\n";
    } else {
        human << "xi^2 - delta*eta^2 = " << ck::to_string(h.c)
              << "*eta   (family D0, N = 0)\n";
    }
    emit(envelope("rank1", out), as_json, human.str());
    return 0;
}

int cmd_gr_generators(const std::string& file, bool as_json) {
    TheorySpec spec = load_theory(file);
    ChamberDecomposition dec = chamber_decomposition(spec.rd, spec.matter);
    json chambers = json::array();
    std::ostringstream human;
    human << dec.chambers.size() << " chambers over " << dec.hyperplanes.size()
          << " hyperplanes\n";
    for (const auto& ch : dec.chambers) {
        json rays = json::array(), gens = json::array();
        for (const auto& r : ch.rays) rays.push_back(r.coords);
        for (const auto& g : ch.generators) gens.push_back(g.coords);
        chambers.push_back({{"signs", ch.signs}, {"rays", rays}, {"generators", gens}});
        human << "  signs [";
        for (std::size_t i = 0; i < ch.signs.size(); ++i)
            human << (i ? "," : "") << (ch.signs[i] > 0 ? "+" : "-");
        human << "] generators:";
        for (const auto& g : ch.generators) {
            human << " (";
            for (std::size_t i = 0; i < g.coords.size(); ++i)
                human << (i ? "," : "") << g.coords[i];
            human << ")";
        }
        human << "\n";
    }
    json hyps = json::array();
    for (const auto& h : dec.hyperplanes) hyps.push_back(h.coords);
    emit(envelope("gr-generators", json{{"hyperplanes", hyps}, {"chambers", chambers}}),
         as_json, human.str());
    return 0;
}

int cmd_hypertoric(const std::string& file, const std::string& max_degree, bool as_json) {
    LatticeSequence seq = load_sequence(file);
    long order2 = parse_max_degree(max_degree);
    auto [rd, matter] = induced_theory(seq);
    MonopoleRequest req;
    req.matter = matter;
    req.order2 = order2;
    req.threads = thread_count();
    HilbertSeries h = monopole_series(rd, req);
    TruncatedSeries oracle = reduction_oracle(seq, order2);
    bool match = h.series == oracle;
    json out{{"monopole", series_coeffs(h.series)},
             {"oracle", series_coeffs(oracle)},
             {"match", match},
             {"up_to", render_exponent(order2)}};
    std::ostringstream human;
    human << "induced theory: torus rank " << rd.rank() << " with " << matter.entries.size()
          << " matter weights\n";
    human << "match up to " << render_exponent(order2) << ": " << (match ? "true" : "false")
          << "\n";
    for (const auto& [e2, c] : h.series.coeffs())
        human << "  " << render_exponent(e2) << "\t" << ck::to_string(c) << "\t(oracle "
              << ck::to_string(oracle.coeff(e2)) << ")\n";
    emit(envelope("hypertoric", out), as_json, human.str());
    return match ? 0 : 5;
}

int cmd_lift(const std::string& file, const std::string& lambda_str, const std::string& f_str,
             const std::string& mode, bool as_json) {
    TheorySpec spec = load_theory(file);
    Mode m = mode.empty() ? spec.mode : parse_mode(mode);
    Theory th = spec.theory(m);
    const AlgebraContext ctx = th.algebra_context();
    IntVec coords;
    std::stringstream ss(lambda_str);
    std::string part;
    while (std::getline(ss, part, ',')) coords.push_back(std::stoll(part));
    if ((int)coords.size() != spec.rd.rank()) throw SchemaError("--lambda of wrong rank");
    Poly f = f_str.empty() ? ctx.one() : parse_poly(f_str, ctx);
    LocalizedElement lifted = minuscule_lift(f, Coweight{coords}, th);
    std::string rendered = print_localized(lifted);
    emit(envelope("lift", json{{"result", rendered}}), as_json, rendered + "\n");
    return 0;
}

int cmd_repl(const std::string& file, const std::string& mode) {
    TheorySpec spec = load_theory(file);
    Mode m = mode.empty() ? spec.mode : parse_mode(mode);
    AlgebraContext ctx{spec.rd.rank(), spec.matter, m};
    std::cout << "coulombkit " << kVersion << " — " << spec.rd.name() << ", "
              << mode_name(m) << " mode (empty line quits)\n";
    std::string line;
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        if (line.empty()) break;
        try {
            std::cout << print_element(parse_element(line, ctx)) << "\n";
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

// Golden files: lines "expr == expected", '#' comments; every expression must
// render bit-exactly to the expectation.
int cmd_golden(const std::string& theory_file, const std::string& golden_file,
               const std::string& mode) {
    TheorySpec spec = load_theory(theory_file);
    Mode m = mode.empty() ? spec.mode : parse_mode(mode);
    AlgebraContext ctx{spec.rd.rank(), spec.matter, m};
    std::ifstream in(golden_file);
    if (!in) throw SchemaError("cannot open golden file: " + golden_file);
    std::string line;
    int lineno = 0, failures = 0, checks = 0;
    auto trim = [](std::string s) {
        std::size_t a = s.find_first_not_of(" \t");
        std::size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t sep = t.find("==");
        if (sep == std::string::npos)
            throw SchemaError("golden file line " + std::to_string(lineno) +
                              ": expected 'expr == expected'");
        std::string expr = trim(t.substr(0, sep));
        std::string expected = trim(t.substr(sep + 2));
        std::string got = print_element(parse_element(expr, ctx));
        ++checks;
        if (got != expected) {
            ++failures;
            std::cout << "FAIL line " << lineno << ": " << expr << "\n  expected: " << expected
                      << "\n  got:      " << got << "\n";
        }
    }
    std::cout << checks - failures << "/" << checks << " golden checks passed\n";
    return failures == 0 ? 0 : 5;
}

// Randomized identity sweep, replayable via --seed.
int cmd_selftest(unsigned long long seed, int rounds) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> wc(-1, 1), cw(-2, 2);
    std::uniform_int_distribution<int> nw(0, 3), coef(-3, 3);
    for (int i = 0; i < rounds; ++i) {
        int rank = 1 + (i % 2);
        MatterContent m;
        int k = nw(rng);
        for (int j = 0; j < k; ++j) {
            IntVec w(rank);
            for (auto& c : w) c = wc(rng);
            m.entries.push_back({Weight{w}, 1});
        }
        m.normalize();
        Mode mode = i % 3 == 0 ? Mode::classical : (i % 3 == 1 ? Mode::quantized : Mode::flavored);
        AlgebraContext ctx{rank, m, mode};
        auto rand_el = [&]() {
            AbelianElement x(ctx);
            IntVec l(rank);
            for (auto& c : l) c = cw(rng);
            Poly p(ctx.nvars());
            Exponents e(ctx.nvars(), 0);
            e[0] = (unsigned)(i % 3);
            p.add_term(e, Rational(coef(rng)));
            p += ctx.scalar(coef(rng));
            x.add_term(Coweight{l}, p);
            return x;
        };
        AbelianElement x = rand_el(), y = rand_el(), z = rand_el();
        if ((x * y) * z != x * (y * z)) {
            std::cout << "selftest FAILED (associativity) at round " << i << ", seed " << seed
                      << "\n";
            return 5;
        }
        if (mode == Mode::classical && x * y != y * x) {
            std::cout << "selftest FAILED (commutativity) at round " << i << ", seed " << seed
                      << "\n";
            return 5;
        }
        if (parse_element(print_element(x), ctx) != x) {
            std::cout << "selftest FAILED (round trip) at round " << i << ", seed " << seed
                      << "\n";
            return 5;
        }
    }
    std::cout << "selftest passed (" << rounds << " rounds, seed " << seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coulombkit — exact Coulomb branch computations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string theory_file, sequence_file, golden_file, expr, max_degree = "10";
    std::string mode, lambda_str, f_str;
    bool refined = false, as_json = false;
    unsigned long long seed = 20240817;
    int rounds = 200;

    auto* hilbert = app.add_subcommand("hilbert", "monopole-formula Hilbert series");
    hilbert->add_option("theory", theory_file, "theory JSON file")->required();
    hilbert->add_option("--max-degree", max_degree, "truncation in powers of t (or p/2)");
    hilbert->add_flag("--refined", refined, "grade by the flavor fugacity");
    hilbert->add_flag("--json", as_json, "machine-readable output");

    auto* eval = app.add_subcommand("eval", "evaluate an element expression");
    eval->add_option("theory", theory_file, "theory JSON file")->required();
    eval->add_option("expr", expr, "element expression")->required();
    eval->add_option("--mode", mode, "classical|quantized|flavored");
    eval->add_flag("--json", as_json, "machine-readable output");

    auto* rank1 = app.add_subcommand("rank1", "rank-1 Coulomb branch hypersurface");
    rank1->add_option("theory", theory_file, "theory JSON file")->required();
    rank1->add_flag("--json", as_json, "machine-readable output");

    auto* gr = app.add_subcommand("gr-generators", "chamber generators of the associated graded");
    gr->add_option("theory", theory_file, "theory JSON file")->required();
    gr->add_flag("--json", as_json, "machine-readable output");

    auto* hyper = app.add_subcommand("hypertoric", "hypertoric reduction check");
    hyper->add_option("sequence", sequence_file, "lattice sequence JSON file")->required();
    hyper->add_option("--max-degree", max_degree, "truncation in powers of t (or p/2)");
    hyper->add_flag("--json", as_json, "machine-readable output");

    auto* lift = app.add_subcommand("lift", "minuscule monopole operator lift");
    lift->add_option("theory", theory_file, "theory JSON file")->required();
    lift->add_option("--lambda", lambda_str, "dominant coweight, comma separated")->required();
    lift->add_option("--f", f_str, "stabilizer-invariant coefficient polynomial");
    lift->add_option("--mode", mode, "classical|quantized");
    lift->add_flag("--json", as_json, "machine-readable output");

    auto* repl = app.add_subcommand("repl", "interactive element evaluation");
    repl->add_option("theory", theory_file, "theory JSON file")->required();
    repl->add_option("--mode", mode, "classical|quantized|flavored");

    auto* golden = app.add_subcommand("golden", "run a golden expression file");
    golden->add_option("theory", theory_file, "theory JSON file")->required();
    golden->add_option("golden", golden_file, "golden file of 'expr == expected' lines")
        ->required();
    golden->add_option("--mode", mode, "classical|quantized|flavored");

    auto* selftest = app.add_subcommand("selftest", "replayable randomized identity sweep");
    selftest->add_option("--seed", seed, "random seed");
    selftest->add_option("--rounds", rounds, "number of rounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (hilbert->parsed()) return cmd_hilbert(theory_file, max_degree, refined, as_json);
        if (eval->parsed()) return cmd_eval(theory_file, expr, mode, as_json);
        if (rank1->parsed()) return cmd_rank1(theory_file, as_json);
        if (gr->parsed()) return cmd_gr_generators(theory_file, as_json);
        if (hyper->parsed()) return cmd_hypertoric(sequence_file, max_degree, as_json);
        if (lift->parsed()) return cmd_lift(theory_file, lambda_str, f_str, mode, as_json);
        if (repl->parsed()) return cmd_repl(theory_file, mode);
        if (golden->parsed()) return cmd_golden(theory_file, golden_file, mode);
        if (selftest->parsed()) return cmd_selftest(seed, rounds);
    } catch (const ck::ExprParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ck::SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ck::BadTheoryError& e) {
        std::cerr << "bad theory: " << e.what() << "\n";
        return 3;
    } catch (const ck::UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 4;
    } catch (const ck::InvariantError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
