// spectral_check.hpp — numerical Fourier integrals of the Lorentzian spectral density.
// Independent of correlation_function(); used to validate it. Requires GSL.

#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "tripneg/core.hpp"
#include "tripneg/errors.hpp"

namespace tripneg::spectral {

namespace detail {

struct LorentzArgs {
    double rabi;
    double lambda;
};

inline double lorentz_integrand(double x, void* raw) {
    const auto* a = static_cast<const LorentzArgs*>(raw);
    return lorentzian_density(x, a->rabi, a->lambda);
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct QawoDeleter {
    void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};

using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

inline void check(int status, const char* what) {
    if (status != GSL_SUCCESS) {
        throw NumericalError(std::string(what) + ": " + gsl_strerror(status));
    }
}

inline void silence_gsl() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

constexpr std::size_t kLimit = 2000;

}  // namespace detail

// Integral of J over all detunings; equals rabi^2 for a normalized Lorentzian.
inline double total_weight(double rabi_weight, double lambda, double epsabs = 1e-11) {
    if (!(lambda > 0.0)) throw std::domain_error("total_weight: lambda must be positive");
    detail::silence_gsl();
    detail::LorentzArgs args{rabi_weight, lambda};
    gsl_function f{&detail::lorentz_integrand, &args};
    detail::Workspace ws(gsl_integration_workspace_alloc(detail::kLimit));
    double result = 0.0, err = 0.0;
    detail::check(gsl_integration_qagi(&f, epsabs, 1e-12, detail::kLimit, ws.get(), &result, &err),
                  "qagi");
    return result;
}

// G(tau) = int J(w) e^{-i w tau} dw over the whole real detuning axis. J is even,
// so the sine part vanishes and G = 2 int_0^inf J(w) cos(w tau) dw.
inline cplx fourier_correlation(double tau, double rabi_weight, double lambda,
                                double epsabs = 1e-11) {
    if (!(lambda > 0.0)) throw std::domain_error("fourier_correlation: lambda must be positive");
    if (!(tau >= 0.0)) throw std::domain_error("fourier_correlation: tau must be non-negative");
    if (tau == 0.0) return {total_weight(rabi_weight, lambda, epsabs), 0.0};

    detail::silence_gsl();
    detail::LorentzArgs args{rabi_weight, lambda};
    gsl_function f{&detail::lorentz_integrand, &args};
    detail::Workspace ws(gsl_integration_workspace_alloc(detail::kLimit));
    detail::Workspace cycle(gsl_integration_workspace_alloc(detail::kLimit));
    std::unique_ptr<gsl_integration_qawo_table, detail::QawoDeleter> table(
        gsl_integration_qawo_table_alloc(tau, 1.0, GSL_INTEG_COSINE, 50));
    double half = 0.0, err = 0.0;
    detail::check(gsl_integration_qawf(&f, 0.0, epsabs / 2.0, detail::kLimit, ws.get(), cycle.get(),
                                       table.get(), &half, &err),
                  "qawf");
    return {2.0 * half, 0.0};
}

}  // namespace tripneg::spectral
