// core.hpp — parameter and state types, dipole constants, Lorentzian reservoir utilities

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "tripneg/errors.hpp"

namespace tripneg {

using cplx = std::complex<double>;

inline constexpr double kNormTol = 1e-9;

// Physical knobs of the three-atom system. All frequencies are in units of the
// reservoir width, so the figure presets use lambda = 1.
struct SystemParams {
    double k1{0.0};  // dipole coupling, atoms 1-2
    double k2{0.0};  // dipole coupling, atoms 2-3
    double k3{0.0};  // dipole coupling, atoms 1-3
    double r1{1.0 / std::numbers::sqrt3};
    double r2{1.0 / std::numbers::sqrt3};
    double r3{1.0 / std::numbers::sqrt3};
    double rabi{10.0};   // vacuum Rabi frequency R
    double lambda{1.0};  // reservoir spectral width

    static SystemParams uniform(double k, double rabi, double lambda = 1.0) {
        SystemParams p;
        p.k1 = p.k2 = p.k3 = k;
        p.rabi = rabi;
        p.lambda = lambda;
        return p;
    }

    // Rescales (r1, r2, r3) onto the unit sphere instead of rejecting them.
    SystemParams with_normalized_couplings() const {
        const double n = std::sqrt(r1 * r1 + r2 * r2 + r3 * r3);
        if (!(n > 0.0)) throw ValidationError("r", "relative couplings are all zero");
        SystemParams out = *this;
        out.r1 /= n;
        out.r2 /= n;
        out.r3 /= n;
        return out;
    }

    std::array<double, 3> couplings() const { return {r1, r2, r3}; }

    bool operator==(const SystemParams&) const = default;
};

// Initial atomic state a|100> + b e^{i phi}|010> + c|001>, reservoir in vacuum,
// later mixed with white noise at purity p.
struct InitialState {
    double a{1.0 / std::numbers::sqrt3};
    double b{1.0 / std::numbers::sqrt3};
    double c{1.0 / std::numbers::sqrt3};
    double phi{0.0};
    double p{1.0};

    static InitialState normalized(double a, double b, double c, double phi = 0.0, double p = 1.0) {
        const double n = std::sqrt(a * a + b * b + c * c);
        if (!(n > 0.0)) throw ValidationError("a,b,c", "all amplitudes are zero");
        return {a / n, b / n, c / n, phi, p};
    }

    bool operator==(const InitialState&) const = default;
};

struct DipoleGeometry {
    std::array<double, 3> d{0.0, 0.0, 1.0};
    std::array<double, 3> r{1.0, 0.0, 0.0};
};

// Amplitudes of |100>, |010>, |001> (atoms) and the pseudomode amplitude.
struct AmplitudeState {
    cplx c11{};
    cplx c12{};
    cplx c13{};
    cplx bm{};

    double atomic_population() const { return std::norm(c11) + std::norm(c12) + std::norm(c13); }
    double total_norm() const { return atomic_population() + std::norm(bm); }

    static AmplitudeState from_initial(const InitialState& init) {
        return {cplx(init.a, 0.0), init.b * std::polar(1.0, init.phi), cplx(init.c, 0.0), cplx{}};
    }
};

// K = |r|^-3 (d.d - 3 (d.r^)(r^.d)) for a pair separated by r.
inline double dipole_coupling(const DipoleGeometry& geom) {
    const auto& d = geom.d;
    const auto& r = geom.r;
    const double r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    if (!(r2 > 0.0)) throw std::domain_error("dipole_coupling: zero separation vector");
    const double rn = std::sqrt(r2);
    const double dd = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const double dr = (d[0] * r[0] + d[1] * r[1] + d[2] * r[2]) / rn;
    return (dd - 3.0 * dr * dr) / (r2 * rn);
}

// Lorentzian spectral density J at detuning omega_k - omega_0.
inline double lorentzian_density(double detuning, double rabi_weight, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("lorentzian_density: lambda must be positive");
    return rabi_weight * rabi_weight * lambda /
           (std::numbers::pi * (detuning * detuning + lambda * lambda));
}

// Reservoir correlation function on resonance; real, decays on the scale 1/lambda.
inline cplx correlation_function(double tau, double rabi_weight, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("correlation_function: lambda must be positive");
    if (!(tau >= 0.0)) throw std::domain_error("correlation_function: tau must be non-negative");
    return {rabi_weight * rabi_weight * std::exp(-lambda * tau), 0.0};
}

enum class CouplingRegime { strong, weak, boundary };

inline const char* to_string(CouplingRegime r) {
    switch (r) {
        case CouplingRegime::strong: return "strong (non-Markovian)";
        case CouplingRegime::weak: return "weak (Markovian)";
        case CouplingRegime::boundary: return "boundary";
    }
    return "?";
}

inline CouplingRegime coupling_regime(double rabi_weight, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("coupling_regime: lambda must be positive");
    const double twice = 2.0 * rabi_weight;
    if (std::abs(lambda - twice) <= 1e-12 * std::max(lambda, std::abs(twice))) {
        return CouplingRegime::boundary;
    }
    return lambda < twice ? CouplingRegime::strong : CouplingRegime::weak;
}

namespace detail {

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline void require_finite(const char* key, double v) {
    if (!std::isfinite(v)) throw ValidationError(key, "value is not finite");
}

}  // namespace detail

inline const SystemParams& validate(const SystemParams& params) {
    using detail::num;
    for (auto [key, v] : {std::pair{"K1", params.k1}, {"K2", params.k2}, {"K3", params.k3},
                          {"r1", params.r1}, {"r2", params.r2}, {"r3", params.r3},
                          {"R", params.rabi}, {"lambda", params.lambda}}) {
        detail::require_finite(key, v);
    }
    if (!(params.lambda > 0.0)) {
        throw ValidationError("lambda", "must be > 0, got " + num(params.lambda));
    }
    if (params.rabi < 0.0) throw ValidationError("R", "must be >= 0, got " + num(params.rabi));
    const double rn = params.r1 * params.r1 + params.r2 * params.r2 + params.r3 * params.r3;
    if (std::abs(rn - 1.0) > kNormTol) {
        throw ValidationError("r1,r2,r3", "r1^2 + r2^2 + r3^2 = " + num(rn) + ", deviation " +
                                              num(rn - 1.0) + " from 1");
    }
    return params;
}

inline const InitialState& validate(const InitialState& init) {
    using detail::num;
    for (auto [key, v] : {std::pair{"a", init.a}, {"b", init.b}, {"c", init.c},
                          {"phi", init.phi}, {"p", init.p}}) {
        detail::require_finite(key, v);
    }
    const double n = init.a * init.a + init.b * init.b + init.c * init.c;
    if (std::abs(n - 1.0) > kNormTol) {
        throw ValidationError("a,b,c", "norm = " + num(n) + " (a^2 + b^2 + c^2 must be 1, deviation " +
                                           num(n - 1.0) + ")");
    }
    if (init.p < 0.0 || init.p > 1.0) {
        throw ValidationError("p", "purity " + num(init.p) + " outside [0, 1]");
    }
    return init;
}

// Returns the pair unchanged when every invariant holds.
inline std::pair<SystemParams, InitialState> validate(const SystemParams& params,
                                                      const InitialState& init) {
    validate(params);
    validate(init);
    return {params, init};
}

}  // namespace tripneg
