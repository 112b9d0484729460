#include "lcf/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <string>

#include "lcf/errors.hpp"

namespace lcf {

namespace {

// GSL aborts by default; we report through return codes instead.
const bool kHandlerOff = [] {
    gsl_set_error_handler_off();
    return true;
}();

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

Workspace make_workspace(std::size_t limit) {
    Workspace w(gsl_integration_workspace_alloc(limit));
    if (!w)
        throw QuadratureFailure("could not allocate quadrature workspace");
    return w;
}

// Exceptions must not unwind through the C library, so the trampoline parks them.
struct Closure {
    const RealFn* f;
    std::exception_ptr error;
};

double trampoline(double x, void* params) {
    auto* c = static_cast<Closure*>(params);
    if (c->error)
        return 0.0;
    try {
        return (*c->f)(x);
    } catch (...) {
        c->error = std::current_exception();
        return 0.0;
    }
}

QuadResult finish(int status, double value, double abserr, const Closure& c, const char* what) {
    (void)kHandlerOff;
    if (c.error)
        std::rethrow_exception(c.error);
    if (!std::isfinite(value))
        throw QuadratureFailure(std::string(what) + ": non-finite result");
    // Round-off warnings still deliver the best available estimate.
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw QuadratureFailure(std::string(what) + ": " + gsl_strerror(status));
    return {value, abserr};
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opt) {
    auto w = make_workspace(opt.limit);
    Closure c{&f, nullptr};
    gsl_function gf{&trampoline, &c};
    double value = 0.0, err = 0.0;
    const int status = gsl_integration_qag(&gf, a, b, opt.epsabs, opt.epsrel, opt.limit,
                                           GSL_INTEG_GAUSS15, w.get(), &value, &err);
    return finish(status, value, err, c, "qag");
}

QuadResult integrate_singular(const RealFn& f, double a, double b, const QuadOptions& opt) {
    auto w = make_workspace(opt.limit);
    Closure c{&f, nullptr};
    gsl_function gf{&trampoline, &c};
    double value = 0.0, err = 0.0;
    const int status =
        gsl_integration_qags(&gf, a, b, opt.epsabs, opt.epsrel, opt.limit, w.get(), &value, &err);
    return finish(status, value, err, c, "qags");
}

QuadResult integrate_points(const RealFn& f, std::vector<double> points, const QuadOptions& opt) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 2)
        return {};
    auto w = make_workspace(opt.limit);
    Closure c{&f, nullptr};
    gsl_function gf{&trampoline, &c};
    double value = 0.0, err = 0.0;
    const int status = gsl_integration_qagp(&gf, points.data(), points.size(), opt.epsabs,
                                            opt.epsrel, opt.limit, w.get(), &value, &err);
    return finish(status, value, err, c, "qagp");
}

QuadResult integrate_weighted(const RealFn& f, double a, double b, double alpha, double beta,
                              int mu, int nu, const QuadOptions& opt) {
    std::unique_ptr<gsl_integration_qaws_table, decltype(&gsl_integration_qaws_table_free)> table(
        gsl_integration_qaws_table_alloc(alpha, beta, mu, nu), &gsl_integration_qaws_table_free);
    if (!table)
        throw QuadratureFailure("qaws: invalid weight parameters");
    auto w = make_workspace(opt.limit);
    Closure c{&f, nullptr};
    gsl_function gf{&trampoline, &c};
    double value = 0.0, err = 0.0;
    const int status = gsl_integration_qaws(&gf, a, b, table.get(), opt.epsabs, opt.epsrel,
                                            opt.limit, w.get(), &value, &err);
    return finish(status, value, err, c, "qaws");
}

QuadResult integrate_upper(const RealFn& f, double a, const QuadOptions& opt) {
    auto w = make_workspace(opt.limit);
    Closure c{&f, nullptr};
    gsl_function gf{&trampoline, &c};
    double value = 0.0, err = 0.0;
    const int status =
        gsl_integration_qagiu(&gf, a, opt.epsabs, opt.epsrel, opt.limit, w.get(), &value, &err);
    return finish(status, value, err, c, "qagiu");
}

QuadResult integrate_cauchy(const RealFn& f, double a, double b, double cpole,
                            const QuadOptions& opt) {
    auto w = make_workspace(opt.limit);
    Closure c{&f, nullptr};
    gsl_function gf{&trampoline, &c};
    double value = 0.0, err = 0.0;
    const int status = gsl_integration_qawc(&gf, a, b, cpole, opt.epsabs, opt.epsrel, opt.limit,
                                            w.get(), &value, &err);
    return finish(status, value, err, c, "qawc");
}

std::complex<double> integrate_complex(const ComplexFn& f, double a, double b,
                                       const QuadOptions& opt) {
    const double re = integrate([&](double x) { return f(x).real(); }, a, b, opt).value;
    const double im = integrate([&](double x) { return f(x).imag(); }, a, b, opt).value;
    return {re, im};
}

}  // namespace lcf
