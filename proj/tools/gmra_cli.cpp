#include "gmra/demo_data.hpp"
#include "gmra/errors.hpp"
#include "gmra/io.hpp"
#include "gmra/limit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace gmra;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        io::write_file(out_path, content);
}

MultiplicityFunction load_multiplicity(const std::string& path) {
    return io::parse_multiplicity(io::read_file(path));
}

FilterMatrix load_filter(const std::string& path, const std::string& m_path) {
    std::string text = io::read_file(path);
    if (m_path.empty()) return io::parse_filter(text);
    return io::parse_filter(text, load_multiplicity(m_path));
}

std::string describe_window(const RankWindow& w) {
    if (w.empty) return "empty (" + w.reason + ")";
    return "{" + std::to_string(w.lo) + ", ..., " + std::to_string(w.hi) + "} on (-" + to_string(w.radius) + ", " +
           to_string(w.radius) + ")";
}

json window_json(const RankWindow& w) {
    json j;
    j["empty"] = w.empty;
    if (w.empty) {
        j["reason"] = w.reason;
    } else {
        j["lo"] = w.lo;
        j["hi"] = w.hi;
        j["radius"] = to_string(w.radius);
    }
    return j;
}

int run_check(const std::string& in, bool as_json) {
    MultiplicityFunction m = load_multiplicity(in);
    ConsistencyReport rep = check_consistency_inequality(m);
    json j;
    j["consistent"] = rep.holds;
    json cells = json::array();
    for (const auto& v : rep.violations) {
        json cell;
        cell["lo"] = to_string(v.lo);
        cell["hi"] = to_string(v.hi);
        cell["m"] = v.lhs;
        cell["fiber_sum"] = v.rhs;
        cells.push_back(std::move(cell));
    }
    j["violations"] = std::move(cells);
    if (rep.holds) {
        MultiplicityFunction mt = complement(m);
        IdentityReport id = check_consistency_identity(m, mt);
        j["identity_holds"] = id.holds;
        j["complement"] = json::parse(io::dump_multiplicity(mt));
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        if (rep.holds) {
            std::cout << "consistency inequality: pass\n";
            std::cout << "identity with computed complement: " << (j["identity_holds"].get<bool>() ? "pass" : "FAIL")
                      << "\n";
        } else {
            std::cout << "consistency inequality: FAIL (" << rep.violations.size() << " violating cells)\n";
            for (const auto& v : rep.violations)
                std::cout << "  [" << to_string(v.lo) << ", " << to_string(v.hi) << "): m = " << v.lhs
                          << " > fiber sum = " << v.rhs << "\n";
        }
    }
    return rep.holds ? 0 : 1;
}

int run_complement(const std::string& in, const std::string& out) {
    MultiplicityFunction mt = complement(load_multiplicity(in));
    emit(out, io::dump_multiplicity(mt));
    return 0;
}

int run_rank_window(const std::string& in, bool as_json) {
    RankWindow w = rank_window(load_multiplicity(in));
    if (as_json)
        std::cout << window_json(w).dump(2) << "\n";
    else
        std::cout << "admissible ranks: " << describe_window(w) << "\n";
    return w.empty ? 1 : 0;
}

int run_synth(const std::string& in, int rank, const std::string& out) {
    FilterMatrix H = synthesize(load_multiplicity(in), rank);
    emit(out, io::dump_filter(H));
    return 0;
}

struct VerifySummary {
    bool pass = true;
    json report = json::object();
    std::string text;
};

VerifySummary verify_filter(const FilterMatrix& H, double tol, int superfilter_depth, int lowpass_rank) {
    VerifySummary s;
    SupportReport cols = verify_support(H);
    SupportReport rows = verify_row_support(H);
    FilterEqReport eq = verify_filter_equation(H, tol);
    s.report["column_support"] = cols.pass();
    s.report["row_support"] = rows.pass();
    s.report["filter_equation"] = {{"pass", eq.pass()}, {"max_deviation", eq.max_deviation}};
    s.text += std::string("column support law: ") + (cols.pass() ? "pass" : "FAIL") + "\n";
    for (const auto& v : cols.violations)
        s.text += "  entry (" + std::to_string(v.i) + "," + std::to_string(v.j) + ") nonzero on [" + to_string(v.lo) +
                  ", " + to_string(v.hi) + ")\n";
    s.text += std::string("row support law: ") + (rows.pass() ? "pass" : "FAIL") + "\n";
    s.text += "filter equation: " + std::string(eq.pass() ? "pass" : "FAIL") + " (max deviation " +
              fmt(eq.max_deviation) + ")\n";
    for (const auto& v : eq.violations)
        s.text += "  cell [" + to_string(v.lo) + ", " + to_string(v.hi) + ") entry (" + std::to_string(v.i) + "," +
                  std::to_string(v.j) + ") off by " + fmt(v.deviation) + "\n";
    s.pass = cols.pass() && rows.pass() && eq.pass();

    if (superfilter_depth > 0) {
        json deep = json::array();
        for (int n = 1; n <= superfilter_depth; ++n) {
            FilterEqReport sf = verify_superfilter(H, n, n == 1 ? tol : 1e-10);
            deep.push_back({{"depth", n}, {"pass", sf.pass()}, {"max_deviation", sf.max_deviation}});
            s.text += "superfilter depth " + std::to_string(n) + ": " + (sf.pass() ? "pass" : "FAIL") +
                      " (max deviation " + fmt(sf.max_deviation) + ")\n";
            s.pass = s.pass && sf.pass();
        }
        s.report["superfilter"] = std::move(deep);
    }
    if (lowpass_rank >= 0) {
        LowPassCertificate cert = check_lowpass(H, lowpass_rank, tol);
        s.report["lowpass"] = {{"valid", cert.valid},
                               {"rank", cert.rank},
                               {"radius", to_string(cert.radius)},
                               {"max_block_deviation", cert.max_block_deviation}};
        s.text += "low-pass at rank " + std::to_string(lowpass_rank) + ": " + (cert.valid ? "pass" : "FAIL");
        if (cert.valid)
            s.text += " (constant on (-" + to_string(cert.radius) + ", " + to_string(cert.radius) + "))\n";
        else
            s.text += " (" + cert.reason + ")\n";
        s.pass = s.pass && cert.valid;
    }
    return s;
}

int run_verify(const std::string& in, const std::string& m_path, double tol, int superfilter_depth, int lowpass_rank,
               bool as_json) {
    FilterMatrix H = load_filter(in, m_path);
    VerifySummary s = verify_filter(H, tol, superfilter_depth, lowpass_rank);
    if (as_json) {
        s.report["pass"] = s.pass;
        std::cout << s.report.dump(2) << "\n";
    } else {
        std::cout << s.text;
    }
    return s.pass ? 0 : 1;
}

int run_apply(const std::string& op, const std::string& in, const std::string& m_path, const std::string& vec_path,
              long gamma, int power, const std::string& out) {
    FilterMatrix H = load_filter(in, m_path);
    OperatorContext ctx(std::move(H));
    ModulatedStepVector f = io::parse_vector(io::read_file(vec_path), ctx.components());
    ModulatedStepVector g = ModulatedStepVector::zero(ctx.components());
    if (op == "S")
        g = apply_S_power(ctx, f, power);
    else if (op == "S*")
        g = apply_S_star_power(ctx, f, power);
    else
        g = apply_rho(gamma * power, f);
    emit(out, io::dump_vector(g));
    return 0;
}

std::vector<ModulatedStepVector> vector_suite(const MultiplicityFunction& m, const std::string& vectors_path,
                                              int count, int components) {
    std::vector<ModulatedStepVector> suite;
    if (!vectors_path.empty()) {
        json arr = json::parse(io::read_file(vectors_path));
        if (!arr.is_array()) throw io::ParseError("", "expected an array of vectors");
        for (const auto& v : arr) suite.push_back(io::parse_vector(v.dump(), components));
    } else {
        for (int s = 1; s <= count; ++s) suite.push_back(random_k_vector(m, static_cast<std::uint64_t>(s)));
    }
    return suite;
}

int run_purity(const std::string& in, const std::string& m_path, const std::string& vec_path, int max_n,
               bool as_json) {
    FilterMatrix H = load_filter(in, m_path);
    OperatorContext ctx(std::move(H));
    ModulatedStepVector f = vec_path.empty()
                                ? random_k_vector(ctx.multiplicity(), 1)
                                : io::parse_vector(io::read_file(vec_path), ctx.components());
    PurityReport rep = purity_test(ctx, f, max_n);
    if (as_json) {
        json j;
        j["norms"] = rep.norms;
        j["min"] = rep.min_norm;
        j["argmin"] = rep.argmin;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "n  ||S^n S*^n f||\n";
        for (std::size_t n = 0; n < rep.norms.size(); ++n)
            std::cout << n << "  " << fmt(rep.norms[n]) << "\n";
        std::cout << "min " << fmt(rep.min_norm) << " at n = " << rep.argmin << "\n";
    }
    return 0;
}

int run_martingale(long modulus, const std::string& vec_path, int max_n, bool as_json) {
    ModulatedStepVector f = io::parse_vector(io::read_file(vec_path));
    MartingaleReport rep = martingale_report(modulus, f, max_n);
    if (as_json) {
        json j;
        j["norm_sq"] = rep.norm_sq;
        j["exact"] = rep.exact;
        j["max_deviation"] = rep.max_deviation;
        j["bound_constant"] = rep.bound_constant;
        j["fitted_constant"] = rep.fitted_constant;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "||f||^2 = " << fmt(rep.norm_sq) << (rep.exact ? " (exact cell mode)" : " (sampled mode)")
                  << "\n";
        std::cout << "n  max |X_n - ||f||^2|\n";
        for (std::size_t n = 0; n < rep.max_deviation.size(); ++n)
            std::cout << (n + 1) << "  " << fmt(rep.max_deviation[n]) << "\n";
        if (rep.exact) std::cout << "straddle bound constant C = " << fmt(rep.bound_constant) << "\n";
        std::cout << "fitted constant max_n dev*N^n = " << fmt(rep.fitted_constant) << "\n";
    }
    return 0;
}

int run_scaling(const std::string& in, const std::string& m_path, int rank, int depth, const std::string& grid_s,
                const std::string& xmax_s, bool serial, const std::string& out) {
    FilterMatrix H = load_filter(in, m_path);
    OperatorContext ctx(std::move(H));
    RealLineGrid grid = scaling_product(ctx, rank, depth, parse_rational(xmax_s), parse_rational(grid_s), !serial);
    emit(out, io::dump_scaling_csv(grid));
    return 0;
}

int run_gram(const std::string& in, const std::string& m_path, int rank, int depth, const std::string& grid_s,
             const std::string& xmax_s, int ktrunc, bool serial, const std::string& out) {
    FilterMatrix H = load_filter(in, m_path);
    OperatorContext ctx(std::move(H));
    RealLineGrid grid = scaling_product(ctx, rank, depth, parse_rational(xmax_s), parse_rational(grid_s), !serial);
    GramReport rep = gram_multiplicity(grid, ktrunc, kDefaultRankTol, !serial);
    emit(out, io::dump_gram_report(rep));
    return 0;
}

int run_axioms(const std::string& in, const std::string& m_path, const std::string& vectors_path, int levels,
               int count, double tol, bool as_json) {
    FilterMatrix H = load_filter(in, m_path);
    LimitSpace space{OperatorContext(std::move(H))};
    std::vector<ModulatedStepVector> suite =
        vector_suite(space.context().multiplicity(), vectors_path, count, space.context().components());
    AxiomReport rep = check_gmra_axioms(space, suite, levels);
    if (as_json) {
        json j;
        json checks = json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name}, {"deviation", c.deviation}, {"structural", c.structural}});
        j["checks"] = std::move(checks);
        j["max_deviation"] = rep.max_deviation();
        j["pass"] = rep.pass(tol);
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& c : rep.checks)
            std::cout << (c.structural ? "  [structural] " : (c.deviation <= tol ? "  pass " : "  FAIL ")) << c.name
                      << " (deviation " << fmt(c.deviation) << ")\n";
        std::cout << "max non-structural deviation: " << fmt(rep.max_deviation()) << "\n";
    }
    return rep.pass(tol) ? 0 : 1;
}

int run_demo(const std::string& which, bool as_json) {
    if (which == "journe-m") {
        MultiplicityFunction m = demo::journe_multiplicity();
        std::cout << io::dump_multiplicity(m);
        ConsistencyReport rep = check_consistency_inequality(m);
        MultiplicityFunction mt = complement(m);
        RankWindow w = rank_window(m);
        std::cout << "consistency: " << (rep.holds ? "pass" : "FAIL") << "\n";
        std::cout << "complement is constant 1: "
                  << (value_equal(mt.values(), IntStep::constant(1)) ? "yes" : "NO") << "\n";
        std::cout << "admissible ranks: " << describe_window(w) << "\n";
        return rep.holds && !w.empty ? 0 : 1;
    }
    if (which == "journe-rank2") {
        FilterMatrix H = demo::journe_filter();
        std::cout << io::dump_filter(H);
        VerifySummary s = verify_filter(H, kDefaultValueTol, 3, 2);
        std::cout << s.text;
        return s.pass ? 0 : 1;
    }
    if (which == "journe-scaling") {
        OperatorContext ctx(demo::journe_filter());
        RealLineGrid grid = scaling_product(ctx, 2, 25, rat(8), rat(1, 2240));
        std::size_t bad1 = count_scaling_mismatches(grid, 0, 0, demo::journe_phi1_profile(), 1e-12);
        std::size_t bad2 = count_scaling_mismatches(grid, 1, 1, demo::journe_phi2_profile(), 1e-12);
        GramReport gram = gram_multiplicity(grid, 8);
        std::size_t badg = count_gram_mismatches(gram, demo::journe_translation_multiplicity());
        if (as_json) {
            json j;
            j["phi1_mismatches"] = bad1;
            j["phi2_mismatches"] = bad2;
            j["gram_mismatches"] = badg;
            j["gram"] = json::parse(io::dump_gram_report(gram));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "scaling product depth 25, grid 1/2240, xmax 8\n";
            std::cout << "phi1 mismatches off breakpoints: " << bad1 << "\n";
            std::cout << "phi2 mismatches off breakpoints: " << bad2 << "\n";
            std::cout << "translation multiplicity mismatches: " << badg << "\n";
            std::cout << io::dump_gram_report(gram);
        }
        return bad1 == 0 && bad2 == 0 && badg == 0 ? 0 : 1;
    }
    if (which == "n2-family") {
        struct Item {
            const char* name;
            FilterMatrix H;
            int rank;
        };
        std::vector<Item> items;
        items.push_back({"filter a", demo::three_level_filter_a(), 2});
        items.push_back({"filter b", demo::three_level_filter_b(), 2});
        items.push_back({"filter c", demo::three_level_filter_c(), 3});
        bool all = true;
        for (const auto& item : items) {
            std::cout << "== " << item.name << " ==\n";
            VerifySummary s = verify_filter(item.H, kDefaultValueTol, 2, item.rank);
            std::cout << s.text;
            all = all && s.pass;
        }
        return all ? 0 : 1;
    }
    if (which == "haar") {
        FilterMatrix H = demo::haar_filter();
        std::cout << io::dump_filter(H);
        VerifySummary s = verify_filter(H, kDefaultValueTol, 2, 1);
        std::cout << s.text;
        OperatorContext low(demo::haar_filter());
        OperatorContext flat(demo::all_ones_filter());
        ModulatedStepVector one(1, {{rat(1), {CxStep::constant({1.0, 0.0})}}});
        PurityReport decay = purity_test(low, one, 16);
        PurityReport stuck = purity_test(flat, ModulatedStepVector(1, {{rat(0), {CxStep::constant({1.0, 0.0})}}}), 16);
        std::cout << "purity of the low-pass filter after 16 steps: " << fmt(decay.norms.back()) << "\n";
        std::cout << "purity of the constant-1 filter after 16 steps: " << fmt(stuck.norms.back()) << "\n";
        return s.pass ? 0 : 1;
    }
    std::cerr << "unknown demo " << which << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"filter banks from multiplicity functions, with operator diagnostics"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string in, out, m_path, vec_path, vectors_path, op, which;
    std::string grid_s = "1/2240", xmax_s = "8";
    int rank = 0, depth = 25, ktrunc = 8, power = 1, max_n = 64, mart_n = 12, levels = 3, count = 10, sf_depth = 0,
        lowpass_rank = -1;
    long gamma = 1, modulus = 2;
    double tol = kDefaultValueTol, ax_tol = 1e-10;
    bool serial = false;

    auto* c_check = app.add_subcommand("check", "consistency inequality and identity for a multiplicity function");
    c_check->add_option("input", in, "multiplicity JSON")->required();

    auto* c_comp = app.add_subcommand("complement", "complementary multiplicity");
    c_comp->add_option("input", in, "multiplicity JSON")->required();
    c_comp->add_option("-o,--output", out, "output path (default stdout)");

    auto* c_window = app.add_subcommand("rank-window", "admissible low-pass ranks");
    c_window->add_option("input", in, "multiplicity JSON")->required();

    auto* c_synth = app.add_subcommand("synth", "synthesize a low-pass filter");
    c_synth->add_option("input", in, "multiplicity JSON")->required();
    c_synth->add_option("--rank", rank, "scaling-space rank")->required();
    c_synth->add_option("-o,--output", out, "output path (default stdout)");

    auto* c_verify = app.add_subcommand("verify", "support laws, filter equation, optional extras");
    c_verify->add_option("input", in, "filter JSON")->required();
    c_verify->add_option("-m,--multiplicity", m_path, "multiplicity JSON (if not embedded)");
    c_verify->add_option("--tol", tol, "value tolerance")->check(CLI::PositiveNumber);
    c_verify->add_option("--superfilter-depth", sf_depth, "check depths 1..n");
    c_verify->add_option("--lowpass", lowpass_rank, "also certify low-pass at this rank");

    auto* c_apply = app.add_subcommand("apply", "apply S, S* or rho to a vector");
    c_apply->add_option("op", op, "one of S, S*, rho")->required()->check(CLI::IsMember({"S", "S*", "rho"}));
    c_apply->add_option("input", in, "filter JSON")->required();
    c_apply->add_option("--vector", vec_path, "vector JSON")->required();
    c_apply->add_option("-m,--multiplicity", m_path, "multiplicity JSON (if not embedded)");
    c_apply->add_option("--gamma", gamma, "translation frequency for rho");
    c_apply->add_option("--power", power, "apply the n-fold power")->check(CLI::NonNegativeNumber);
    c_apply->add_option("-o,--output", out, "output path (default stdout)");

    auto* c_purity = app.add_subcommand("purity", "norms ||S^n S*^n f||");
    c_purity->add_option("input", in, "filter JSON")->required();
    c_purity->add_option("-m,--multiplicity", m_path, "multiplicity JSON (if not embedded)");
    c_purity->add_option("--vector", vec_path, "vector JSON (default: a deterministic random vector)");
    c_purity->add_option("--max-n", max_n, "deepest power")->check(CLI::NonNegativeNumber);

    auto* c_mart = app.add_subcommand("martingale", "kernel-coset averages X_n of ||f||^2");
    c_mart->add_option("--modulus", modulus, "dilation modulus N")->required();
    c_mart->add_option("--vector", vec_path, "vector JSON")->required();
    c_mart->add_option("--max-n", mart_n, "deepest scale");

    auto* c_scaling = app.add_subcommand("scaling", "truncated scaling product on a line grid (CSV)");
    c_scaling->add_option("input", in, "filter JSON")->required();
    c_scaling->add_option("-m,--multiplicity", m_path, "multiplicity JSON (if not embedded)");
    c_scaling->add_option("--rank", rank, "low-pass rank")->required();
    c_scaling->add_option("--depth", depth, "product depth");
    c_scaling->add_option("--grid", grid_s, "grid step (rational)");
    c_scaling->add_option("--xmax", xmax_s, "grid extent (rational)");
    c_scaling->add_flag("--serial", serial, "disable the parallel path");
    c_scaling->add_option("-o,--output", out, "output path (default stdout)");

    auto* c_gram = app.add_subcommand("gram", "translation Gram ranks of the scaling generators");
    c_gram->add_option("input", in, "filter JSON")->required();
    c_gram->add_option("-m,--multiplicity", m_path, "multiplicity JSON (if not embedded)");
    c_gram->add_option("--rank", rank, "low-pass rank")->required();
    c_gram->add_option("--depth", depth, "product depth");
    c_gram->add_option("--grid", grid_s, "grid step (rational)");
    c_gram->add_option("--xmax", xmax_s, "grid extent (rational)");
    c_gram->add_option("--ktrunc", ktrunc, "translate truncation")->check(CLI::NonNegativeNumber);
    c_gram->add_flag("--serial", serial, "disable the parallel path");
    c_gram->add_option("-o,--output", out, "output path (default stdout)");

    auto* c_axioms = app.add_subcommand("gmra-axioms", "ladder axiom checks in the direct limit");
    c_axioms->add_option("input", in, "filter JSON")->required();
    c_axioms->add_option("-m,--multiplicity", m_path, "multiplicity JSON (if not embedded)");
    c_axioms->add_option("--vectors", vectors_path, "JSON array of test vectors");
    c_axioms->add_option("--levels", levels, "ladder depth")->check(CLI::PositiveNumber);
    c_axioms->add_option("--count", count, "random suite size when --vectors is absent");
    c_axioms->add_option("--tol", ax_tol, "deviation tolerance")->check(CLI::PositiveNumber);

    auto* c_demo = app.add_subcommand("demo", "reproduce the worked examples");
    c_demo->add_option("which", which, "journe-m, journe-rank2, journe-scaling, n2-family or haar")
        ->required()
        ->check(CLI::IsMember({"journe-m", "journe-rank2", "journe-scaling", "n2-family", "haar"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_check->parsed()) return run_check(in, as_json);
        if (c_comp->parsed()) return run_complement(in, out);
        if (c_window->parsed()) return run_rank_window(in, as_json);
        if (c_synth->parsed()) return run_synth(in, rank, out);
        if (c_verify->parsed()) return run_verify(in, m_path, tol, sf_depth, lowpass_rank, as_json);
        if (c_apply->parsed()) return run_apply(op, in, m_path, vec_path, gamma, power, out);
        if (c_purity->parsed()) return run_purity(in, m_path, vec_path, max_n, as_json);
        if (c_mart->parsed()) return run_martingale(modulus, vec_path, mart_n, as_json);
        if (c_scaling->parsed()) return run_scaling(in, m_path, rank, depth, grid_s, xmax_s, serial, out);
        if (c_gram->parsed()) return run_gram(in, m_path, rank, depth, grid_s, xmax_s, ktrunc, serial, out);
        if (c_axioms->parsed()) return run_axioms(in, m_path, vectors_path, levels, count, ax_tol, as_json);
        if (c_demo->parsed()) return run_demo(which, as_json);
    } catch (const io::ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyViolation& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const RankOutOfWindow& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const InsufficientDimensions& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const DepthTooLarge& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
