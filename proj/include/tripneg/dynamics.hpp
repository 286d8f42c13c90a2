// dynamics.hpp — time evolution of (c11, c12, c13, b) under the pseudomode generator
//
// With a Lorentzian reservoir the memory kernel of the atomic rate equations is
// exponential, so it is absorbed exactly into one damped pseudomode amplitude b(t).
// The resulting system is linear and autonomous: d/dt y = M y with
//
//   M = -i H - lambda |b><b|,
//
// H real symmetric, holding the dipole constants between atoms and r_j R between
// atom j and the pseudomode. Two independent solvers are provided: an adaptive
// Dormand-Prince stepper and the exact propagator exp(M t).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tripneg/core.hpp"
#include "tripneg/errors.hpp"

namespace tripneg {

using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;

inline Vec4 to_vector(const AmplitudeState& s) { return Vec4(s.c11, s.c12, s.c13, s.bm); }
inline AmplitudeState to_state(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

struct Generator {
    Mat4 m = Mat4::Zero();
    double lambda{0.0};

    // Real-symmetric coupling matrix H recovered from m = -iH - lambda P.
    Eigen::Matrix4d hamiltonian() const {
        Mat4 shifted = m;
        shifted(3, 3) += lambda;
        return (cplx(0.0, 1.0) * shifted).real();
    }
};

// Rows follow the rate equations:
//   c11' = -i r1 R b - i K1 c12 - i K3 c13
//   c12' = -i r2 R b - i K1 c11 - i K2 c13
//   c13' = -i r3 R b - i K3 c11 - i K2 c12
//   b'   = -lambda b - i R (r1 c11 + r2 c12 + r3 c13)
// lambda = 0 is accepted here (closed system) even though validate() rejects it.
inline Generator build_generator(const SystemParams& p) {
    if (p.lambda < 0.0) throw ValidationError("lambda", "must be >= 0 for a generator");
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(0, 1) = h(1, 0) = p.k1;
    h(1, 2) = h(2, 1) = p.k2;
    h(0, 2) = h(2, 0) = p.k3;
    const auto r = p.couplings();
    for (int j = 0; j < 3; ++j) h(j, 3) = h(3, j) = r[j] * p.rabi;

    Generator g;
    g.lambda = p.lambda;
    g.m = cplx(0.0, -1.0) * h.cast<cplx>();
    g.m(3, 3) = -p.lambda;
    return g;
}

enum class Propagator { stepper, eigen, series };

inline const char* to_string(Propagator p) {
    switch (p) {
        case Propagator::stepper: return "stepper";
        case Propagator::eigen: return "eigendecomposition";
        case Propagator::series: return "scaling-and-squaring";
    }
    return "?";
}

struct Trajectory {
    std::vector<double> times;
    std::vector<AmplitudeState> states;
    Propagator method{Propagator::stepper};

    std::size_t size() const { return times.size(); }
};

inline std::vector<double> uniform_grid(double t_end, std::size_t samples, double t_begin = 0.0) {
    if (samples < 2) throw ValidationError("samples", "need at least 2 samples");
    if (!(t_end > t_begin)) throw ValidationError("t_end", "must exceed the start time");
    std::vector<double> t(samples);
    const double dt = (t_end - t_begin) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) t[i] = t_begin + dt * static_cast<double>(i);
    t.back() = t_end;
    return t;
}

namespace detail {

inline void check_grid(std::span<const double> times) {
    if (times.empty()) throw ValidationError("times", "empty sample grid");
    if (!(times.front() >= 0.0)) throw ValidationError("times", "sample times must be >= 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw ValidationError("times", "sample times must be strictly increasing");
        }
    }
}

inline double max_abs(const Vec4& v) { return v.cwiseAbs().maxCoeff(); }

// Taylor series of exp(a) for |a|_1 <= 1/2, summed to round-off.
inline Mat4 expm_taylor(const Mat4& a) {
    Mat4 sum = Mat4::Identity();
    Mat4 term = Mat4::Identity();
    for (int k = 1; k <= 40; ++k) {
        term = (term * a) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-17 * sum.cwiseAbs().maxCoeff()) return sum;
    }
    return sum;
}

}  // namespace detail

// exp(a) by scaling and squaring.
inline Mat4 expm_series(const Mat4& a) {
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    Mat4 e = detail::expm_taylor(a / std::ldexp(1.0, squarings));
    for (int i = 0; i < squarings; ++i) e = e * e;
    return e;
}

// exp(M t) for one generator at many times. Uses the eigendecomposition when the
// eigenvector matrix is well conditioned, the scaling-and-squaring series otherwise
// (M is non-normal and can be defective at parameter coincidences).
class ResolventPropagator {
public:
    static constexpr double kMaxCondition = 1e8;

    explicit ResolventPropagator(const Generator& gen) : m_(gen.m) {
        Eigen::ComplexEigenSolver<Mat4> es(m_, true);
        if (es.info() == Eigen::Success) {
            const Mat4 v = es.eigenvectors();
            Eigen::JacobiSVD<Mat4> svd(v);
            const auto& sv = svd.singularValues();
            condition_ = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
            if (condition_ < kMaxCondition) {
                path_ = Propagator::eigen;
                values_ = es.eigenvalues();
                vectors_ = v;
                inverse_ = v.inverse();
            }
        }
    }

    Propagator path() const { return path_; }
    double condition() const { return condition_; }

    Mat4 at(double t) const {
        if (path_ == Propagator::eigen) {
            Vec4 ex;
            for (int i = 0; i < 4; ++i) ex(i) = std::exp(values_(i) * t);
            return vectors_ * ex.asDiagonal() * inverse_;
        }
        return expm_series(m_ * t);
    }

    Vec4 apply(double t, const Vec4& y0) const {
        if (t == 0.0) return y0;
        if (path_ == Propagator::eigen) {
            Vec4 w = inverse_ * y0;
            for (int i = 0; i < 4; ++i) w(i) *= std::exp(values_(i) * t);
            return vectors_ * w;
        }
        return expm_series(m_ * t) * y0;
    }

private:
    Mat4 m_;
    Propagator path_{Propagator::series};
    double condition_{std::numeric_limits<double>::infinity()};
    Vec4 values_ = Vec4::Zero();
    Mat4 vectors_ = Mat4::Identity();
    Mat4 inverse_ = Mat4::Identity();
};

// Exact evaluation y(t) = exp(M t) y(0) at every sample. The method field
// reports which exponential route was taken.
inline Trajectory evolve_resolvent(const Generator& gen, const AmplitudeState& init,
                                   std::span<const double> times) {
    detail::check_grid(times);
    const ResolventPropagator prop(gen);
    const Vec4 y0 = to_vector(init);
    Trajectory out;
    out.method = prop.path();
    out.times.assign(times.begin(), times.end());
    out.states.reserve(times.size());
    for (double t : times) out.states.push_back(to_state(prop.apply(t, y0)));
    return out;
}

struct StepperOptions {
    double tol{1e-9};
    double min_step{1e-14};
    std::size_t max_steps{10'000'000};
};

// Adaptive Dormand-Prince 5(4) integration. Steps are shortened to land exactly
// on every requested sample, so no interpolation error enters the output.
inline Trajectory evolve_stepper(const Generator& gen, const AmplitudeState& init,
                                 std::span<const double> times, const StepperOptions& opt = {}) {
    if (!(opt.tol > 0.0)) throw ValidationError("tol", "tolerance must be positive");
    detail::check_grid(times);

    // Butcher tableau; the fifth-order weights equal the last stage row (FSAL).
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    const Mat4& m = gen.m;
    const double mnorm = m.cwiseAbs().rowwise().sum().maxCoeff();

    Trajectory out;
    out.method = Propagator::stepper;
    out.times.assign(times.begin(), times.end());
    out.states.reserve(times.size());

    Vec4 y = to_vector(init);
    double t = 0.0;
    double h = std::min(1e-2, 0.1 / std::max(mnorm, 1e-300));
    Vec4 k1 = m * y;
    std::size_t steps = 0;

    for (double target : times) {
        while (t < target) {
            if (++steps > opt.max_steps) {
                throw NumericalError("evolve_stepper: exceeded " + std::to_string(opt.max_steps) +
                                     " steps before t=" + std::to_string(target));
            }
            const double remaining = target - t;
            const bool last = h >= remaining;
            const double step = last ? remaining : h;

            const Vec4 k2 = m * (y + step * a21 * k1);
            const Vec4 k3 = m * (y + step * (a31 * k1 + a32 * k2));
            const Vec4 k4 = m * (y + step * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vec4 k5 = m * (y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vec4 k6 = m * (y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Vec4 y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vec4 k7 = m * y_new;
            const Vec4 err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double scale = opt.tol * std::max({1.0, detail::max_abs(y), detail::max_abs(y_new)});
            const double ratio = detail::max_abs(err) / scale;

            if (ratio <= 1.0) {
                t = last ? target : t + step;
                y = y_new;
                k1 = k7;
            }
            const double factor =
                ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
            // A step truncated to hit a sample says nothing about the natural step size.
            if (!(last && ratio <= 1.0)) h = step * factor;

            if (h < opt.min_step * std::max(1.0, t)) {
                std::ostringstream os;
                os << "evolve_stepper: step size underflow at t=" << t << " (h=" << h
                   << ", |M|_inf=" << mnorm << ", stiffness estimate h*|M|=" << h * mnorm
                   << ", error ratio=" << ratio << ")";
                throw NumericalError(os.str());
            }
        }
        out.states.push_back(to_state(y));
    }
    return out;
}

// Population that has leaked out of the atoms: 1 - |c11|^2 - |c12|^2 - |c13|^2.
inline double leaked_population(const AmplitudeState& s) {
    const double leak = 1.0 - s.atomic_population();
    if (leak < -kNormTol || leak > 1.0 + kNormTol) {
        throw NumericalError("leaked_population: atomic population " +
                             std::to_string(s.atomic_population()) + " outside [0, 1]");
    }
    return std::clamp(leak, 0.0, 1.0);
}

// Sup norm of the amplitude difference between two trajectories on the same grid.
inline double sup_distance(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sup_distance: trajectory sizes differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, detail::max_abs(to_vector(a.states[i]) - to_vector(b.states[i])));
    }
    return worst;
}

}  // namespace tripneg
