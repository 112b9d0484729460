#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lcf/axial.hpp"
#include "lcf/chains.hpp"
#include "lcf/errors.hpp"
#include "lcf/kernels.hpp"
#include "lcf/regularization.hpp"
#include "lcf/spectra.hpp"

using json = nlohmann::ordered_json;
using namespace lcf;

namespace {

std::string fmt(double x) {
    if (!std::isfinite(x))
        return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Number rounded to 12 significant digits, or null.
json num(double x) {
    if (!std::isfinite(x))
        return nullptr;
    return std::strtod(fmt(x).c_str(), nullptr);
}

json num_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v)
        a.push_back(num(x));
    return a;
}

json matrix_json(const MatX& M) {
    json data = json::array();
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            data.push_back({num(M(i, j).real()), num(M(i, j).imag())});
    return {{"rows", M.rows()}, {"cols", M.cols()}, {"data", data}};
}

std::string range_error(const std::string& s) {
    std::istringstream is(s);
    double lo, hi;
    int n;
    char c1, c2;
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || !is.eof())
        return "expected lo:hi:n, got '" + s + "'";
    if (n < 1)
        return "range needs n >= 1";
    if (!std::isfinite(lo) || !std::isfinite(hi))
        return "range endpoints must be finite";
    return {};
}

Range parse_range(const std::string& s) {
    std::istringstream is(s);
    Range r;
    char c;
    is >> r.lo >> c >> r.hi >> c >> r.n;
    return r;
}

const auto range_check = CLI::Validator(range_error, "LO:HI:N", "range");

RegularizationModel parse_model(const std::string& reg) {
    return reg == "cutoff" ? RegularizationModel::cutoff() : RegularizationModel::exponential();
}

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream(const std::string& path) {
        if (path.empty() || path == "-")
            return std::cout;
        file = std::make_unique<std::ofstream>(path);
        if (!*file)
            throw std::runtime_error("cannot open output file " + path);
        return *file;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for the continuum limit of the fermionic projector"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("-o,--output", out_path, "Write results to this file instead of stdout");

    std::vector<double> masses;
    auto add_masses = [&](CLI::App* sub) {
        sub->add_option("--masses", masses, "Comma-separated masses m1,m2,...")
            ->delimiter(',')
            ->required()
            ->check(CLI::PositiveNumber);
    };
    std::string reg = "exp";
    auto add_reg = [&](CLI::App* sub) {
        sub->add_option("--reg", reg, "Regularization: exp or cutoff")
            ->check(CLI::IsMember({"exp", "cutoff"}));
    };

    auto* mixing = app.add_subcommand("mixing", "Mixing coefficients d and log constants");
    add_masses(mixing);

    auto* constants = app.add_subcommand("constants", "Field constants of a regularization");
    add_masses(constants);
    add_reg(constants);
    double eps_min = 1e-4, eps_max = 1e-2;
    int eps_points = 8;
    std::string window = "full";
    constants->add_option("--eps-min", eps_min, "Smallest eps/r")->check(CLI::PositiveNumber);
    constants->add_option("--eps-max", eps_max, "Largest eps/r")->check(CLI::PositiveNumber);
    constants->add_option("--eps-points", eps_points, "Number of eps values")
        ->check(CLI::Range(3, 200));
    constants->add_option("--window", window, "Weak evaluation window: full or literal")
        ->check(CLI::IsMember({"full", "literal"}));

    auto* scan_cmd = app.add_subcommand("scan", "Coupling and mass over a grid of mass ratios");
    add_reg(scan_cmd);
    std::string m2s, m3s;
    scan_cmd->add_option("--m2", m2s, "m2/m1 range lo:hi:n")->required()->check(range_check);
    scan_cmd->add_option("--m3", m3s, "m3/m1 range lo:hi:n")->required()->check(range_check);

    auto* kernel = app.add_subcommand("kernel", "Convolution kernel summed over the masses");
    add_masses(kernel);
    int p = 0;
    std::string q2s, method = "closed";
    kernel->add_option("--p", p, "Kernel index 0 or 2")->check(CLI::IsMember({0, 2}));
    kernel->add_option("--q2", q2s, "q^2 range lo:hi:n")->required()->check(range_check);
    kernel->add_option("--method", method, "closed, quad or both")
        ->check(CLI::IsMember({"closed", "quad", "both"}));

    auto* uehling = app.add_subcommand("uehling", "Static potential of a point charge");
    add_masses(uehling);
    double Z = 1.0, e2 = 4.0 * std::numbers::pi / 137.035999;
    std::string rs;
    uehling->add_option("--Z", Z, "Charge number");
    uehling->add_option("--e2", e2, "Coupling e^2")->check(CLI::NonNegativeNumber);
    uehling->add_option("--r", rs, "Radius range lo:hi:n")->required()->check(range_check);

    auto* axial = app.add_subcommand("axial", "Unitary construction for an axial potential u");
    add_masses(axial);
    std::vector<double> uvec;
    axial->add_option("--u", uvec, "Components t,x,y,z")->delimiter(',')->required()->expected(4);
    bool with_u = true;
    axial->add_flag("!--no-matrix", with_u, "Omit the matrix U from the output");

    auto* smax_cmd = app.add_subcommand("smax", "Largest axial strength and the feasibility bound");
    add_masses(smax_cmd);

    auto* chain = app.add_subcommand("chain", "Closed chain checks");
    chain->require_subcommand(1);
    auto* selftest = chain->add_subcommand("selftest", "Random-trial spectral checks");
    int trials = 1000;
    unsigned long long seed = 1;
    selftest->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
    selftest->add_option("--seed", seed, "Master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (uvec.size() != 4 && axial->parsed()) {
        std::cerr << "error: --u needs exactly 4 components\n";
        return 1;
    }
    if (constants->parsed() && !(eps_min < eps_max)) {
        std::cerr << "error: --eps-min must be smaller than --eps-max\n";
        return 1;
    }

    try {
        Output output;
        std::ostream& out = output.stream(out_path);

        if (mixing->parsed()) {
            const MassSpectrum spec(masses);
            const auto mix = solve_mixing(spec);
            const auto lc = log_constants(spec, mix);
            json j;
            j["d"] = num_array(mix.d);
            j["s3"] = num(lc.s3);
            j["sigma0"] = num(lc.sigma0);
            j["sigma2"] = num(lc.sigma2);
            out << j.dump(2) << "\n";
        } else if (constants->parsed()) {
            const MassSpectrum spec(masses);
            WeakOptions opt;
            opt.eps_over_r = geometric_grid(eps_min, eps_max, eps_points);
            opt.window = window == "literal" ? Window::Literal : Window::FullLine;
            const auto fc = field_constants(spec, parse_model(reg), opt);
            json j;
            j["r0"] = num(fc.r0);
            j["r2"] = num(fc.r2);
            j["r3"] = num(fc.r3);
            j["sigma0"] = num(fc.sigma0);
            j["sigma2"] = num(fc.sigma2);
            j["C0"] = num(fc.C0);
            j["M2"] = num(fc.M2);
            j["e2"] = num(fc.e2);
            j["M"] = num(fc.M());
            j["e"] = num(fc.e());
            out << j.dump(2) << "\n";
        } else if (scan_cmd->parsed()) {
            const auto res = scan(parse_model(reg), parse_range(m2s), parse_range(m3s));
            out << "m2_over_m1,m3_over_m1,e,M_over_m1\n";
            for (const auto& row : res.rows) {
                out << fmt(row.ratio2) << ',' << fmt(row.ratio3) << ',';
                if (row.status == RowStatus::Ok)
                    out << fmt(row.e) << ',' << fmt(row.M_over_m1);
                else
                    out << ',';
                out << '\n';
            }
        } else if (kernel->parsed()) {
            const MassSpectrum spec(masses);
            const bool closed = method != "quad", quad = method != "closed";
            out << "q2,value";
            if (method == "both")
                out << ",value_quad,abs_diff";
            out << '\n';
            for (double q2 : parse_range(q2s).values()) {
                double vc = 0.0, vq = 0.0;
                for (double m : spec.masses()) {
                    if (closed)
                        vc += fhat_closed(m, p, q2);
                    if (quad)
                        vq += fhat_quadrature(m, p, q2);
                }
                out << fmt(q2) << ',' << fmt(closed ? vc : vq);
                if (method == "both")
                    out << ',' << fmt(vq) << ',' << fmt(std::abs(vc - vq));
                out << '\n';
            }
        } else if (uehling->parsed()) {
            const MassSpectrum spec(masses);
            out << "r,coulomb,correction\n";
            for (double r : parse_range(rs).values())
                out << fmt(r) << ',' << fmt(coulomb(Z, e2, r)) << ','
                    << fmt(static_correction(spec, Z, e2, r)) << '\n';
        } else if (axial->parsed()) {
            const MassSpectrum spec(masses);
            const Vec4 u(uvec[0], uvec[1], uvec[2], uvec[3]);
            try {
                const auto s = construct(spec, u);
                json j;
                j["case"] = case_name(s.kase);
                j["feasible"] = true;
                json r;
                for (const auto& [k, v] : s.residuals)
                    r[k] = num(v);
                j["residuals"] = r;
                j["d"] = num_array(s.d);
                j["tau"] = num_array(s.tau);
                j["mn_residual"] = num(s.mn_residual);
                j["v_check"] = num(s.v_check);
                if (with_u)
                    j["U"] = matrix_json(s.U);
                out << j.dump(2) << "\n";
            } catch (const Infeasible& e) {
                json j;
                j["case"] = "spacelike";
                j["feasible"] = false;
                j["uu"] = num(mdot(u, u));
                j["bound"] = num(feasibility_bound(spec));
                out << j.dump(2) << "\n";
                throw;
            }
        } else if (smax_cmd->parsed()) {
            const MassSpectrum spec(masses);
            json j;
            j["smax"] = num(smax(spec));
            j["bound"] = num(feasibility_bound(spec));
            out << j.dump(2) << "\n";
        } else if (selftest->parsed()) {
            const auto r = chain_selftest(trials, seed);
            auto line = [&](const char* name, double worst, double tol) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%-16s worst %-20s tol %-8s %s\n", name,
                              fmt(worst).c_str(), fmt(tol).c_str(), worst <= tol ? "PASS" : "FAIL");
                out << buf;
            };
            out << "trials " << r.trials << " seed " << seed << "\n";
            line("pairing", r.pairing, 1e-9);
            line("same_spectrum", r.same_spectrum, 1e-9);
            line("idempotent", r.idempotent, 1e-11);
            line("orthogonal", r.orthogonal, 1e-11);
            line("complete", r.complete, 1e-11);
            line("rank", r.rank, 1e-11);
            line("adjoint_swap", r.adjoint_swap, 1e-11);
            line("decomposition", r.decomposition, 1e-11);
            line("chiral_moduli", r.chiral_moduli, 1e-12);
            line("frame_adjoint", r.frame_adjoint, 1e-9);
            line("q_at_quarter", r.q_at_quarter, 0.0);
            out << (r.pass() ? "PASS" : "FAIL") << "\n";
            if (!r.pass())
                return 3;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
