#include "transpec/cli.hpp"

#include "transpec/builtins.hpp"
#include "transpec/errors.hpp"
#include "transpec/frame_classifier.hpp"
#include "transpec/karhunen_loeve.hpp"
#include "transpec/matrix_density.hpp"
#include "transpec/renorm_dependence.hpp"
#include "transpec/serialization.hpp"
#include "transpec/spectral_density.hpp"
#include "transpec/stochastic.hpp"
#include "transpec/wavelets.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace transpec::cli {

namespace {

namespace fs = std::filesystem;

// Defaults for every subcommand; echoed into each report.
struct Config {
    std::size_t n_grid = 4096;
    long n_terms = 1000;
    long ren_terms = 256;
    double tol = 1e-3;
    double support_tol = -1.0;  // tol^2
    double cap = 1e6;
    long k_max = 50;
    std::uint64_t seed = 20240611;
    std::size_t m_paths = 10000;
    std::size_t n_times = 513;
    std::size_t modes = 10;
    int k = 3;
    std::string domain = "frequency";
    std::string kind = "brownian";
    std::string kernel = "brownian";
    std::vector<std::string> builtins;
    std::string spec_file;
    std::string density_file;
    std::string kernel_file;
    std::string out_dir;

    double effective_support_tol() const { return support_tol < 0.0 ? tol * tol : support_tol; }

    json echo() const {
        return {{"n_grid", n_grid},       {"n_terms", n_terms},  {"ren_terms", ren_terms},
                {"tol", tol},             {"support_tol", effective_support_tol()},
                {"cap", cap},             {"k_max", k_max},      {"seed", seed},
                {"m_paths", m_paths},     {"n_times", n_times},  {"modes", modes},
                {"k", k},                 {"domain", domain},    {"kind", kind},
                {"kernel", kernel},       {"builtins", builtins}, {"spec_file", spec_file},
                {"density_file", density_file}, {"kernel_file", kernel_file}};
    }
};

class Session {
public:
    Session(const Config& c, std::ostream& out) : c_(c), out_(out) {
        fs::path dir = c.out_dir;
        if (dir.empty()) {
            const char* env = std::getenv("TRANSPEC_OUT_DIR");
            dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
        }
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ValidationError("cannot create output directory '" + dir.string() + "': " + ec.message());
        dir_ = dir;
    }

    std::ofstream open(const std::string& name) {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + (dir_ / name).string() + "'");
        files_.push_back(name);
        return f;
    }

    void report(const std::string& command, json result) {
        json doc = {{"command", command}, {"config", c_.echo()}, {"result", std::move(result)}};
        files_.push_back(command + ".json");
        doc["files"] = files_;
        const std::string text = doc.dump(2) + "\n";
        std::ofstream f(dir_ / (command + ".json"), std::ios::binary);
        if (!f) throw ValidationError("cannot write report for '" + command + "'");
        f << text;
        out_ << text;
    }

private:
    const Config& c_;
    std::ostream& out_;
    fs::path dir_;
    std::vector<std::string> files_;
};

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ValidationError("malformed JSON in '" + path + "': " + e.what());
    }
}

std::vector<LineFunction> load_family(const Config& c) {
    std::vector<LineFunction> out;
    for (const auto& name : c.builtins) out.push_back(builtin_function(name));
    if (!c.spec_file.empty())
        for (auto& f : family_from_json(read_json_file(c.spec_file))) out.push_back(std::move(f));
    if (out.empty()) throw ValidationError("no input function: pass --builtin or --spec-file");
    return out;
}

LineFunction load_one(const Config& c) {
    auto family = load_family(c);
    if (family.size() != 1) throw ValidationError("this subcommand takes exactly one function");
    return std::move(family.front());
}

PeriodicDensity density_of(const LineFunction& psi, const Config& c) {
    return spectral_density(psi, {c.n_grid, c.n_terms, true});
}

json density_summary(const PeriodicDensity& p) {
    return {{"integral", p.integral()}, {"min", p.min()}, {"max", p.max()}, {"tail_bound", p.tail_bound()}};
}

void cmd_density(const Config& c, Session& s) {
    const LineFunction psi = load_one(c);
    const PeriodicDensity p = density_of(psi, c);
    auto f = s.open("density.csv");
    write_density_csv(f, p);
    json r = density_summary(p);
    r["norm_squared"] = norm_squared(psi);
    s.report("density", r);
}

void cmd_classify(const Config& c, Session& s) {
    const PeriodicDensity p = density_of(load_one(c), c);
    auto f = s.open("classify.csv");
    write_density_csv(f, p);
    s.report("classify", to_json(classify(p, {c.tol, c.effective_support_tol(), c.cap})));
}

void cmd_renormalize(const Config& c, Session& s) {
    const LineFunction psi = load_one(c);
    const PeriodicDensity p = density_of(psi, c);
    const Renormalization ren = renormalize(psi, p, c.effective_support_tol(), c.ren_terms);
    const PeriodicDensity q = renormalized_density(ren);

    // sup |p_REN - chi_A|, everywhere and away from two cells of the zero set
    const std::size_t n = p.n_grid();
    const GridSet zero = ren.support.complement();
    double dev_all = 0.0;
    double dev_away = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = std::abs(q[j] - (ren.support.contains(j) ? 1.0 : 0.0));
        dev_all = std::max(dev_all, d);
        bool near = false;
        for (std::size_t o = 0; o <= 2 && !near; ++o) near = zero.contains((j + o) % n) || zero.contains((j + n - o) % n);
        if (!near) dev_away = std::max(dev_away, d);
    }
    auto f = s.open("renormalize.csv");
    f << "x,p,p_ren\n";
    for (std::size_t j = 0; j < n; ++j) f << format_number(p.x(j)) << ',' << format_number(p[j]) << ',' << format_number(q[j]) << '\n';
    s.report("renormalize", {{"support", to_json(ren.support)},
                             {"sup_deviation", dev_all},
                             {"sup_deviation_away_from_zeros", dev_away},
                             {"density", density_summary(q)}});
}

void cmd_depend(const Config& c, Session& s) {
    const LineFunction psi = load_one(c);
    const PeriodicDensity p = density_of(psi, c);
    const auto zero = detect_l2_dependence(p, c.effective_support_tol());
    if (!zero) {
        s.report("depend", {{"dependent", false}});
        return;
    }
    const CoefficientSequence coeffs = construct_dependence_coeffs(*zero, c.k_max);
    const double residual = verify_dependence(psi, coeffs);
    auto f = s.open("depend_coeffs.csv");
    f << "k,re,im\n";
    for (long k = coeffs.k_min(); k <= coeffs.k_max(); ++k)
        f << k << ',' << format_number(coeffs[k].real()) << ',' << format_number(coeffs[k].imag()) << '\n';
    s.report("depend", {{"dependent", true},
                        {"zero_set", to_json(*zero)},
                        {"k_max", c.k_max},
                        {"coeff_norm", coeffs.l2_norm()},
                        {"residual", residual},
                        {"relative_residual", residual / coeffs.l2_norm()},
                        {"density_side_norm", multiplier_norm(coeffs, p)}});
}

void cmd_matrix(const Config& c, Session& s) {
    const auto family = load_family(c);
    DensityDomain domain;
    if (c.domain == "frequency")
        domain = DensityDomain::frequency;
    else if (c.domain == "time")
        domain = DensityDomain::time;
    else
        throw ValidationError("--domain must be 'time' or 'frequency'");
    const MatrixDensityGrid p = matrix_density(family, {c.n_grid, c.n_terms, domain, true});
    const Eigen::MatrixXcd integral = gram_integral(p);
    const Eigen::MatrixXcd direct = gram_matrix(family);
    const auto d = cyclic_decomposition(p);
    const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(family.size()));
    const OperatorInequalityReport ineq = operator_inequality_check(p, ones);
    {
        auto f = s.open("matrix_density.json");
        f << to_json(p).dump() << '\n';
    }
    s.report("matrix", {{"n_family", family.size()},
                        {"gram_integral", to_json(integral)},
                        {"gram_direct", to_json(direct)},
                        {"gram_max_deviation", (integral - direct).cwiseAbs().maxCoeff()},
                        {"decomposition", to_json(d)},
                        {"operator_inequality", {{"lambda", ineq.lambda}, {"max_violation", ineq.max_violation}}}});
}

void cmd_wavelet(const Config& c, Session& s) {
    const HaarPair pair = stretched_haar(c.k);
    const PeriodicDensity cf = stretched_haar_density(c.k, HaarComponent::father, c.n_grid);
    const PeriodicDensity cm = stretched_haar_density(c.k, HaarComponent::mother, c.n_grid);
    const PeriodicDensity pf = density_of(pair.father, c);
    const PeriodicDensity pm = density_of(pair.mother, c);
    double gap = 0.0;
    for (std::size_t j = 0; j < c.n_grid; ++j) gap = std::max({gap, std::abs(cf[j] - pf[j]), std::abs(cm[j] - pm[j])});
    auto f = s.open("wavelet.csv");
    f << "t,p_father,p_mother,p_father_periodized,p_mother_periodized\n";
    for (std::size_t j = 0; j < c.n_grid; ++j)
        f << format_number(cf.x(j)) << ',' << format_number(cf[j]) << ',' << format_number(cm[j]) << ','
          << format_number(pf[j]) << ',' << format_number(pm[j]) << '\n';
    const ClassifyOptions opts{c.tol, c.effective_support_tol(), c.cap};
    s.report("wavelet", {{"k", c.k},
                         {"consistency_defect_closed_form", consistency_check(cf, cm)},
                         {"consistency_defect_periodized", consistency_check(pf, pm)},
                         {"closed_form_vs_periodized", gap},
                         {"father", to_json(classify(cf, opts))},
                         {"mother", to_json(classify(cm, opts))}});
}

void cmd_simulate(const Config& c, Session& s) {
    PathEnsemble e;
    if (c.kind == "brownian") {
        e = brownian_paths(c.n_times, c.m_paths, c.seed);
    } else if (c.kind == "mu_gaussian") {
        if (!c.density_file.empty()) {
            std::ifstream in(c.density_file);
            if (!in) throw ValidationError("cannot open '" + c.density_file + "'");
            e = mu_gaussian_increments(read_density_csv(in), c.m_paths, c.seed);
        } else {
            e = mu_gaussian_increments(density_of(load_one(c), c), c.m_paths, c.seed);
        }
    } else if (c.kind == "stationary") {
        const auto r = CovarianceSequence::from_coefficients(autocorrelation_coeffs(load_one(c), c.k_max));
        e = stationary_gaussian(r, c.n_times, c.m_paths, c.seed);
    } else {
        throw ValidationError("--kind must be brownian, mu_gaussian or stationary");
    }
    auto f = s.open("simulate.csv");
    write_ensemble_csv(f, e);
    const Eigen::Index last = e.paths.cols() - 1;
    const double m = static_cast<double>(e.n_paths());
    s.report("simulate", {{"kind", std::string(to_string(e.kind))},
                          {"n_paths", e.n_paths()},
                          {"n_times", e.n_times()},
                          {"seed", e.seed},
                          {"final_mean", to_json(e.paths.col(last).sum() / m)},
                          {"final_second_moment", e.paths.col(last).squaredNorm() / m}});
}

void cmd_kl(const Config& c, Session& s) {
    Eigen::MatrixXcd kernel;
    std::vector<double> grid;
    if (c.kernel == "brownian") {
        if (c.n_times < 2) throw ValidationError("--n-times must be at least 2");
        for (std::size_t i = 0; i < c.n_times; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(c.n_times - 1));
        kernel = brownian_kernel(grid);
    } else if (c.kernel == "file") {
        std::ifstream in(c.kernel_file);
        if (!in) throw ValidationError("cannot open kernel file '" + c.kernel_file + "'");
        kernel = read_real_matrix_csv(in);
        const auto n = static_cast<std::size_t>(kernel.rows());
        if (n < 2) throw ValidationError("kernel must be at least 2 x 2");
        for (std::size_t i = 0; i < n; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
    } else {
        throw ValidationError("--kernel must be 'brownian' or 'file'");
    }
    const KLExpansion kl = kl_decompose(kernel, grid);
    {
        auto f = s.open("kl_eigenvalues.csv");
        f << "k,lambda\n";
        for (std::size_t k = 0; k < kl.n_modes(); ++k) f << k + 1 << ',' << format_number(kl.eigenvalues[k]) << '\n';
    }
    const std::size_t usable = nondegenerate_modes(kl);
    const PathEnsemble e = gaussian_paths(kernel, grid, c.m_paths, c.seed,
                                          c.kernel == "brownian" ? ProcessKind::brownian : ProcessKind::stationary);
    const Eigen::MatrixXcd z = kl_coefficients(e, kl, usable);

    std::vector<std::size_t> levels = {1, 2, 5, 10, 20, 50, c.modes, usable};
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    json table = json::array();
    for (std::size_t n : levels) {
        if (n > usable) continue;
        const ReconstructionError err = reconstruction_error(e, kl_reconstruct(kl, z, n));
        table.push_back({{"n_modes", n},
                         {"relative_error", err.relative},
                         {"standard_error", err.standard_error},
                         {"eigenvalue_tail", kl_tail_fraction(kl, n)}});
    }
    double trace = 0.0;
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) trace += kernel(i, i).real();
    double sum = 0.0;
    for (double l : kl.eigenvalues) sum += l;
    const std::size_t shown = std::min<std::size_t>(kl.n_modes(), std::max<std::size_t>(c.modes, 1));
    s.report("kl", {{"n_times", grid.size()},
                    {"dt", kl.dt},
                    {"leading_eigenvalues", std::vector<double>(kl.eigenvalues.begin(), kl.eigenvalues.begin() + static_cast<long>(shown))},
                    {"eigenvalue_sum", sum},
                    {"dt_trace", kl.dt * trace},
                    {"nondegenerate_modes", usable},
                    {"reconstruction", table}});
}

void add_common(CLI::App* sub, Config& c) {
    sub->add_option("--builtin", c.builtins, "Named generator (repeatable)");
    sub->add_option("--spec-file", c.spec_file, "JSON function spec (or array of specs)");
    sub->add_option("--n-grid", c.n_grid, "Grid points on [0,1)")->check(CLI::PositiveNumber);
    sub->add_option("--n-terms", c.n_terms, "Lattice shells |n| <= n_terms")->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, "Classification tolerance");
    sub->add_option("--support-tol", c.support_tol, "Essential-support threshold (default tol^2)");
    sub->add_option("--k-max", c.k_max, "Largest |k| for coefficient sequences")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--m-paths", c.m_paths, "Number of sample paths")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out_dir, "Output directory (default $TRANSPEC_OUT_DIR or .)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Spectral densities of integer-translate systems"};
    app.name("transpec");
    app.require_subcommand(1);

    using Handler = std::function<void(const Config&, Session&)>;
    std::map<std::string, Handler> handlers;
    auto sub = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* s = app.add_subcommand(name, help);
        add_common(s, c);
        handlers[name] = std::move(h);
        return s;
    };
    sub("density", "Spectral density p = PER|psi^|^2 (CSV x,p)", cmd_density);
    auto* cls = sub("classify", "ONB / Parseval / Riesz / frame / Bessel verdict", cmd_classify);
    cls->add_option("--cap", c.cap, "Report NONE when max p exceeds this");
    auto* ren = sub("renormalize", "Renormalized generator and its density", cmd_renormalize);
    ren->add_option("--ren-terms", c.ren_terms, "Frequency window [-n, n+1) of psi_REN^")->check(CLI::PositiveNumber);
    sub("depend", "Detect and construct an L2-dependence", cmd_depend);
    auto* mat = sub("matrix", "Matrix density of a family", cmd_matrix);
    mat->add_option("--domain", c.domain, "time or frequency");
    auto* wav = sub("wavelet", "Stretched Haar densities (CSV t,p_father,p_mother)", cmd_wavelet);
    wav->add_option("--k", c.k, "Odd stretch factor");
    auto* sim = sub("simulate", "Sample a Gaussian process", cmd_simulate);
    sim->add_option("--kind", c.kind, "brownian, mu_gaussian or stationary");
    sim->add_option("--n-times", c.n_times, "Time points")->check(CLI::PositiveNumber);
    sim->add_option("--density-file", c.density_file, "CSV x,p for mu_gaussian");
    auto* kl = sub("kl", "Karhunen-Loeve decomposition", cmd_kl);
    kl->add_option("--kernel", c.kernel, "brownian or file");
    kl->add_option("--kernel-file", c.kernel_file, "CSV kernel matrix");
    kl->add_option("--n-times", c.n_times, "Time points")->check(CLI::PositiveNumber);
    kl->add_option("--modes", c.modes, "Modes to report")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        Session session(c, out);
        handlers.at(name)(c, session);
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ComputationError& e) {
        err << "computation failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace transpec::cli
