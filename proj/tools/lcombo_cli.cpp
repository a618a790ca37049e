// lcombo command-line front end: series evaluation, curve data, region
// bounds/verdicts, zero hunting, the fixed-point demo, and the verification
// suite. JSON goes to stdout, human-readable tables to stderr.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "lcombo/character.hpp"
#include "lcombo/combo.hpp"
#include "lcombo/common.hpp"
#include "lcombo/curve.hpp"
#include "lcombo/fixedpoint.hpp"
#include "lcombo/lfunction.hpp"
#include "lcombo/verify.hpp"
#include "lcombo/zerohunt.hpp"

using json = nlohmann::ordered_json;
using namespace lcombo;

namespace {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::uint64_t default_prime_cutoff() {
    if (const char* env = std::getenv("LCOMBO_PRIME_CUTOFF")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 2) return v;
        std::cerr << "warning: ignoring malformed LCOMBO_PRIME_CUTOFF\n";
    }
    return 100000;
}

LFunctionSpec resolve_spec(const std::string& name, int power_k, const std::string& char_file) {
    if (!char_file.empty()) {
        std::ifstream in(char_file);
        if (!in) throw validation_error("cannot open character file: " + char_file);
        json doc = json::parse(in);
        return character_spec(character_from_json(doc));
    }
    if (name == "zeta") return zeta_spec();
    if (name == "zeta-power") {
        if (power_k < 1) throw validation_error("zeta-power needs --k >= 1");
        return zeta_power_spec(power_k);
    }
    throw validation_error("unknown spec selector: " + name + " (use zeta | zeta-power | --char-file)");
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << doc.dump() << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw validation_error("cannot open output file: " + out_path);
    out << doc.dump() << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Dirichlet-series combination toolkit: evaluation, curve geometry, zero hunting"};
    app.require_subcommand(1);

    std::string spec_name = "zeta", char_file, s_text = "2+0i", out_path, only, rect_text;
    int power_k = 1, N = 2, samples = 4096, grid_n = 256, power_cutoff = 40, targets = 16;
    std::uint64_t prime_cutoff = default_prime_cutoff();
    std::uint64_t seed = 20260810;
    double sigma = 1.01, r_circle = 2.0, tol = 1e-9, rho = 0.0;
    double lower_threshold = 0.36, upper_target = 0.61966, upper_tol = 1e-3;
    bool combo_mode = false, log_mode = false, json_only = false;
    std::vector<double> sigma_list;

    auto add_spec_flags = [&](CLI::App* cmd) {
        cmd->add_option("--spec", spec_name, "zeta | zeta-power");
        cmd->add_option("--k", power_k, "power for zeta-power");
        cmd->add_option("--char-file", char_file, "JSON Dirichlet character table");
        cmd->add_option("--prime-cutoff", prime_cutoff, "Euler-product prime cutoff");
    };

    auto* c_eval = app.add_subcommand("eval", "evaluate L, log L, or F_N = L(s)+...+L(Ns)");
    add_spec_flags(c_eval);
    c_eval->add_option("--s", s_text, "point, e.g. 2+0i");
    c_eval->add_option("--N", N, "number of combined terms");
    c_eval->add_flag("--combo", combo_mode, "evaluate F_N instead of L");
    c_eval->add_flag("--log", log_mode, "evaluate log L");
    c_eval->add_option("--power-cutoff", power_cutoff, "prime-power cutoff");
    c_eval->add_flag("--json", json_only, "suppress the human-readable line");
    c_eval->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* c_curve = app.add_subcommand("curve", "curve-geometry data");
    auto* c_fig1 = c_curve->add_subcommand("fig1", "full-circle parametric samples as CSV theta,u,v");
    c_fig1->add_option("--r", r_circle, "circle radius (> 1)");
    c_fig1->add_option("--samples", samples, "sample count");
    c_fig1->add_option("--out", out_path, "CSV output path (default stdout)");

    auto* c_region = app.add_subcommand("region", "imaginary-reach bounds and verdicts for k=1..12");
    c_region->add_option("--sigma", sigma_list, "sigma grid (default {1} U {1+10^-m})");
    c_region->add_option("--prime-cutoff", prime_cutoff, "prime cutoff");
    c_region->add_flag("--json", json_only, "suppress the human-readable table");
    c_region->add_option("--out", out_path, "write JSON here instead of stdout");

    bool quarter_variant = false;
    auto* c_lemma = app.add_subcommand("lemma", "tail-containment disc report for f = L(2s)+...+L(Ns)");
    add_spec_flags(c_lemma);
    c_lemma->add_option("--N", N, "number of combined terms");
    c_lemma->add_option("--sigma", sigma, "sigma >= 1 (default 1)")->default_val(1.0);
    c_lemma->add_flag("--quarter-variant", quarter_variant, "declare the |a(n)| <= n^{1/4} bound");
    c_lemma->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* c_zeros = app.add_subcommand("zeros", "scan a rectangle and certify zeros (JSON lines)");
    add_spec_flags(c_zeros);
    c_zeros->add_option("--N", N, "number of combined terms");
    c_zeros->add_option("--rect", rect_text, "sigmaMin,sigmaMax,tMin,tMax")->required();
    c_zeros->add_option("--grid", grid_n, "grid points per axis");
    c_zeros->add_option("--tol", tol, "residual tolerance for certification");
    c_zeros->add_option("--power-cutoff", power_cutoff, "prime-power cutoff");

    auto* c_fixed = app.add_subcommand("fixedpoint", "prime partition + twist construction demo");
    add_spec_flags(c_fixed);
    c_fixed->add_option("--sigma", sigma, "sigma > 1");
    c_fixed->add_option("--targets", targets, "boundary targets on |z| = rho");
    c_fixed->add_option("--rho", rho, "covered radius (default totalSum/10)");
    c_fixed->add_flag("--json", json_only, "suppress the residual table");
    c_fixed->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* c_verify = app.add_subcommand("verify", "run the acceptance criteria");
    c_verify->add_option("--only", only, "filter by criterion or module substring");
    c_verify->add_option("--seed", seed, "seed for the randomized criteria");
    c_verify->add_option("--lower-threshold", lower_threshold, "lower-reach threshold (default 0.36)");
    c_verify->add_option("--upper-target", upper_target, "upper-reach target constant");
    c_verify->add_option("--upper-tol", upper_tol, "upper-reach tolerance");
    c_verify->add_flag("--json", json_only, "suppress the human-readable table");
    c_verify->add_option("--out", out_path, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    if (c_eval->parsed()) {
        LFunctionSpec spec = resolve_spec(spec_name, power_k, char_file);
        cplx s = parse_complex(s_text);
        EvalResult r;
        std::string what;
        if (combo_mode) {
            r = eval_F({spec, N}, s, prime_cutoff, power_cutoff);
            what = "F_" + std::to_string(N);
        } else if (log_mode) {
            r = eval_log_L(spec, s, prime_cutoff, power_cutoff);
            what = "log L";
        } else {
            r = eval_L(spec, s, prime_cutoff, power_cutoff);
            what = "L";
        }
        json doc;
        doc["spec"] = spec.label;
        doc["what"] = what;
        doc["s"] = cplx_json(s);
        doc["value"] = cplx_json(r.value);
        doc["tailBound"] = r.tail_bound;
        emit(doc, out_path);
        if (!json_only)
            std::cerr << what << "(" << s_text << ") = " << r.value.real() << " + " << r.value.imag()
                      << "i  (tail <= " << r.tail_bound << ")\n";
        return 0;
    }

    if (c_fig1->parsed()) {
        auto rows = figure1_samples(r_circle, samples);
        FILE* f = (out_path.empty() || out_path == "-") ? stdout : std::fopen(out_path.c_str(), "w");
        if (!f) throw validation_error("cannot open output file: " + out_path);
        std::fprintf(f, "theta,u,v\n");
        for (const auto& row : rows)
            std::fprintf(f, "%.17g,%.17g,%.17g\n", row.theta, row.u, row.v);
        if (f != stdout) std::fclose(f);
        std::cerr << "wrote " << rows.size() << " samples; winding around origin = "
                  << figure_winding(rows) << "\n";
        return 0;
    }

    if (c_region->parsed()) {
        std::vector<double> grid = sigma_list.empty() ? default_sigma_grid() : sigma_list;
        PrimeTable primes = sieve_primes(prime_cutoff);
        std::vector<RegionBounds> sweep;
        for (double sg : grid) sweep.push_back(region_bounds(sg, prime_cutoff, &primes));
        json doc;
        doc["primeCutoff"] = prime_cutoff;
        doc["bounds"] = json::array();
        for (const auto& rb : sweep) {
            json b;
            b["sigma"] = rb.sigma;
            b["lowerReach"] = rb.lower_reach;
            b["upperReach"] = rb.upper_reach;
            b["tail"] = rb.tail;
            b["outerSupportHalfPi"] = rb.support_lower;
            doc["bounds"].push_back(b);
        }
        doc["verdicts"] = json::array();
        for (int k = 1; k <= 12; ++k) {
            Verdict v = verdict_for_k(k, sweep);
            json jv;
            jv["k"] = k;
            jv["status"] = to_string(v.status);
            jv["lowerUsed"] = v.lower_used;
            jv["upperUsed"] = v.upper_used;
            doc["verdicts"].push_back(jv);
        }
        emit(doc, out_path);
        if (!json_only) {
            std::cerr << "sigma      lowerReach   upperReach\n";
            for (const auto& rb : sweep)
                std::fprintf(stderr, "%-9g  %.7f    %.7f\n", rb.sigma, rb.lower_reach, rb.upper_reach);
            for (int k = 1; k <= 12; ++k)
                std::fprintf(stderr, "k=%-2d pi/k=%.7f  %s\n", k, pi / k,
                             to_string(verdict_for_k(k, sweep).status));
        }
        return 0;
    }

    if (c_lemma->parsed()) {
        LFunctionSpec spec = resolve_spec(spec_name, power_k, char_file);
        if (quarter_variant) spec = with_coeff_bound(spec, 1, 1, 1, 4);
        DiscReport rep = lemma_disc_check(spec, N, sigma);
        json doc;
        doc["spec"] = spec.label;
        doc["N"] = rep.N;
        doc["center"] = rep.center;
        doc["radius"] = rep.radius;
        if (rep.exact) {
            using boost::multiprecision::cpp_int;
            cpp_int num = boost::multiprecision::numerator(rep.radius_rat);
            cpp_int den = boost::multiprecision::denominator(rep.radius_rat);
            cpp_int lim = cpp_int(1) << 62;
            json ex;
            if (num < lim && den < lim) {
                ex["num"] = num.convert_to<long long>();
                ex["den"] = den.convert_to<long long>();
            } else {
                ex["num"] = num.str();
                ex["den"] = den.str();
            }
            doc["radiusExact"] = ex;
        }
        doc["contained"] = rep.contained;
        if (std::isfinite(rep.log_bound)) doc["logBound"] = rep.log_bound;
        doc["coeffBoundEmpirical"] = rep.coeff_bound_empirical;
        emit(doc, out_path);
        if (!json_only)
            std::cerr << "N=" << rep.N << " radius=" << rep.radius << " contained="
                      << (rep.contained ? "yes" : "no (use N2_log_bound for N=2)") << "\n";
        return 0;
    }

    if (c_zeros->parsed()) {
        LFunctionSpec spec = resolve_spec(spec_name, power_k, char_file);
        double a, b, c, d;
        if (std::sscanf(rect_text.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d) != 4)
            throw validation_error("--rect expects sigmaMin,sigmaMax,tMin,tMax");
        Rectangle rect{a, b, c, d};
        rect.validate();
        PrimeTable primes = sieve_primes(prime_cutoff);
        ComboSpec combo{spec, N};
        EvalFn F = [&](cplx s) { return eval_F(combo, s, prime_cutoff, power_cutoff, &primes); };
        auto cands = grid_scan(F, rect, grid_n);
        int printed = 0;
        for (const auto& cand : cands) {
            ZeroReport rep = newton_polish(F, std::nullopt, cand.s, tol);
            json line;
            line["s"] = cplx_json(rep.location);
            line["residual"] = rep.residual;
            line["winding"] = rep.winding;
            line["certified"] = rep.certified;
            if (!rep.flag.empty()) line["flag"] = rep.flag;
            std::cout << line.dump() << "\n";
            ++printed;
        }
        std::cerr << "scanned " << grid_n << "x" << grid_n << " grid over [" << a << "," << b
                  << "]x[" << c << "," << d << "]: " << cands.size()
                  << " candidates polished (existence of zeros is guaranteed for sigma>1, but no "
                     "height bound is known; coverage reported, absence never claimed)\n";
        return printed >= 0 ? 0 : 1;
    }

    if (c_fixed->parsed()) {
        LFunctionSpec spec = resolve_spec(spec_name, power_k, char_file);
        PrimeTable primes = sieve_primes(prime_cutoff);
        auto th = compute_partition(spec, sigma, prime_cutoff, &primes);
        bool covered = G_coverage_check(th.mu1, th.mu2, th.mu0);
        double used_rho = rho > 0.0 ? rho : th.total_sum / 10.0;
        auto family = make_twist_family(spec, sigma, th, used_rho);
        json doc;
        doc["spec"] = spec.label;
        doc["sigma"] = sigma;
        doc["primeCutoff"] = prime_cutoff;
        doc["totalSum"] = th.total_sum;
        doc["p1"] = th.p1;
        doc["p2"] = th.p2;
        doc["mu"] = json::array({th.mu1, th.mu2, th.mu0});
        doc["coverage"] = covered;
        doc["rho"] = used_rho;
        doc["solutions"] = json::array();
        if (!json_only) std::cerr << "target z                residual\n";
        for (int j = 0; j < targets; ++j) {
            cplx z = used_rho * std::polar(1.0, 2.0 * pi * j / targets);
            auto sol = family(z);
            auto outv = verify_solution(spec, sigma, z, sol, prime_cutoff, &primes);
            sol.residual = outv.residual;
            json js;
            js["z"] = cplx_json(z);
            js["theta1"] = sol.theta1;
            js["theta2"] = sol.theta2;
            js["residual"] = outv.residual;
            js["tailBeyondCutoff"] = outv.tail_beyond_cutoff;
            json blocks;
            json b1 = json::array(), b2 = json::array(), b3 = json::array();
            for (auto [p, t] : sol.twists) {
                json entry = json::array({p, t});
                if (p <= th.p1) b1.push_back(entry);
                else if (p <= th.p2) b2.push_back(entry);
                else b3.push_back(entry);
            }
            blocks["leq_p1"] = b1;
            blocks["p1_to_p2"] = b2;
            blocks["gt_p2"] = b3;
            js["blocks"] = blocks;
            doc["solutions"].push_back(js);
            if (!json_only)
                std::fprintf(stderr, "%+.6f%+.6fi   %.3e\n", z.real(), z.imag(), outv.residual);
        }
        emit(doc, out_path);
        return 0;
    }

    if (c_verify->parsed()) {
        verify::Options opt;
        opt.only = only;
        opt.seed = seed;
        opt.thresholds.lower_reach = lower_threshold;
        opt.thresholds.upper_reach = upper_target;
        opt.thresholds.upper_reach_tol = upper_tol;
        auto results = verify::run_acceptance(opt);
        json doc;
        doc["criteria"] = json::array();
        int failed = 0;
        std::string first_fail;
        for (const auto& r : results) {
            json jr;
            jr["id"] = r.id;
            jr["name"] = r.name;
            jr["module"] = r.module;
            jr["pass"] = r.pass;
            jr["detail"] = r.detail;
            doc["criteria"].push_back(jr);
            if (!r.pass && ++failed == 1) first_fail = r.name;
            if (!json_only)
                std::fprintf(stderr, "%s  #%-2d %-16s %-22s %6.2fs  %s\n", r.pass ? "PASS" : "FAIL",
                             r.id, r.name.c_str(), r.module.c_str(), r.seconds, r.detail.c_str());
        }
        doc["passed"] = int(results.size()) - failed;
        doc["failed"] = failed;
        emit(doc, out_path);
        if (failed) {
            std::cerr << "FAILED: " << failed << " criterion(s); first failing: " << first_fail << "\n";
            return 1;
        }
        std::cerr << "all " << results.size() << " criteria passed\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 1;
    } catch (const partition_error& e) {
        std::cerr << "partition error: " << e.what() << "\n";
        return 1;
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
