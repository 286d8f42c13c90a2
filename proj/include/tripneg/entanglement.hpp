// entanglement.hpp — reduced three-atom state, Werner mixing and negativities
//
// Basis ordering: index = 4*q1 + 2*q2 + q3, i.e. |000>,|001>,|010>,|011>,|100>,...,
// atom 1 is the most significant bit and atom 3 varies fastest.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "tripneg/core.hpp"
#include "tripneg/dynamics.hpp"
#include "tripneg/errors.hpp"

namespace tripneg {

using Mat8 = Eigen::Matrix<cplx, 8, 8>;

namespace basis {
inline constexpr int k000 = 0;
inline constexpr int k001 = 1;
inline constexpr int k010 = 2;
inline constexpr int k100 = 4;

// Bit of `atom` (1, 2 or 3) inside a basis index.
constexpr int bit(int atom) { return 1 << (3 - atom); }
}  // namespace basis

struct DensityMatrix {
    Mat8 rho = Mat8::Zero();

    double trace() const { return rho.trace().real(); }
    double hermiticity_defect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
};

struct NegativityRecord {
    double t{0.0};
    double n1_23{0.0};
    double n2_13{0.0};
    double n3_12{0.0};
    double n3{0.0};
};

struct ClosedFormInputs {
    cplx c11{};
    cplx c12{};
    cplx c13{};
    double leak{0.0};  // |c(t)|^2
    double p{1.0};

    static ClosedFormInputs from_state(const AmplitudeState& s, double p) {
        return {s.c11, s.c12, s.c13, leaked_population(s), p};
    }
};

inline void check_hermitian(const Mat8& m, double tol = 1e-10) {
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw std::invalid_argument("matrix is not Hermitian (max |m - m^H| = " +
                                    std::to_string(defect) + ")");
    }
}

// Eigenvalues of a Hermitian 8x8 matrix, ascending, by cyclic complex Jacobi
// rotations. Each rotation first removes the phase of the pivot so that the
// classical real rotation applies.
inline std::array<double, 8> hermitian_eigenvalues(const Mat8& input, int max_sweeps = 50) {
    check_hermitian(input);
    Mat8 a = 0.5 * (input + input.adjoint());
    const double tol = 1e-12 * std::max(1.0, a.norm());

    auto off_norm = [&a] {
        double s = 0.0;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > tol; ++sweep) {
        for (int p = 0; p < 7; ++p) {
            for (int q = p + 1; q < 8; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag < 1e-300) continue;
                const cplx phase = a(p, q) / mag;  // e^{i theta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // U = [[c, s], [-s e^{-i theta}, c e^{-i theta}]] on (p, q); a <- U^H a U.
                const cplx u_qp = -s * std::conj(phase);
                const cplx u_qq = c * std::conj(phase);
                for (int k = 0; k < 8; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * c + akq * u_qp;
                    a(k, q) = akp * s + akq * u_qq;
                }
                for (int k = 0; k < 8; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(u_qp) * aqk;
                    a(q, k) = s * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
            }
        }
    }
    if (off_norm() > tol) {
        throw NumericalError("hermitian_eigenvalues: no convergence after " +
                             std::to_string(max_sweeps) + " sweeps");
    }
    std::array<double, 8> ev{};
    for (int i = 0; i < 8; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Reduced atomic state after tracing out the reservoir (single-excitation sector).
inline DensityMatrix assemble_rho(const AmplitudeState& s) {
    using namespace basis;
    DensityMatrix out;
    auto& r = out.rho;
    r(k000, k000) = leaked_population(s);
    r(k001, k001) = std::norm(s.c13);
    r(k010, k010) = std::norm(s.c12);
    r(k100, k100) = std::norm(s.c11);
    r(k010, k001) = s.c12 * std::conj(s.c13);
    r(k100, k001) = s.c11 * std::conj(s.c13);
    r(k100, k010) = s.c11 * std::conj(s.c12);
    r(k001, k010) = std::conj(r(k010, k001));
    r(k001, k100) = std::conj(r(k100, k001));
    r(k010, k100) = std::conj(r(k100, k010));
    if (std::abs(out.trace() - 1.0) > 1e-10) {
        throw NumericalError("assemble_rho: trace " + std::to_string(out.trace()) + " != 1");
    }
    return out;
}

// (1 - p)/8 I + p rho.
inline DensityMatrix werner_mix(const DensityMatrix& rho_g, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("p", "purity " + std::to_string(p) + " outside [0, 1]");
    }
    DensityMatrix out;
    out.rho = p * rho_g.rho;
    out.rho.diagonal().array() += (1.0 - p) / 8.0;
    return out;
}

inline void check_atom(int atom) {
    if (atom < 1 || atom > 3) {
        throw std::out_of_range("atom index must be 1, 2 or 3, got " + std::to_string(atom));
    }
}

// Transposes the row/column bits of one atom.
inline Mat8 partial_transpose(const Mat8& rho, int atom) {
    check_atom(atom);
    const int mask = basis::bit(atom);
    Mat8 out;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const int bi = i & mask;
            const int bj = j & mask;
            out((i & ~mask) | bj, (j & ~mask) | bi) = rho(i, j);
        }
    }
    return out;
}

inline Mat8 partial_transpose(const DensityMatrix& rho, int atom) {
    return partial_transpose(rho.rho, atom);
}

// Below this a bipartite negativity is indistinguishable from eigensolver round-off.
// The cube root in the tripartite mean would otherwise lift 1e-18 noise to 1e-6.
inline constexpr double kNegativityFloor = 1e-14;

// (sum |eigenvalues of rho^{T_atom}| - 1) / 2. The trace of rho^{T} stands in for
// the 1, so the sum reduces to the negative eigenvalues without cancellation.
inline double bipartite_negativity(const DensityMatrix& rho, int atom) {
    const auto ev = hermitian_eigenvalues(partial_transpose(rho, atom));
    double negative = 0.0;
    for (double v : ev)
        if (v < 0.0) negative -= v;
    return negative < kNegativityFloor ? 0.0 : negative;
}

// Geometric mean of three clamped bipartite negativities.
inline double geometric_mean(double n1, double n2, double n3) {
    n1 = std::max(0.0, n1);
    n2 = std::max(0.0, n2);
    n3 = std::max(0.0, n3);
    if (n1 == 0.0 || n2 == 0.0 || n3 == 0.0) return 0.0;
    return std::cbrt(n1 * n2 * n3);
}

inline NegativityRecord tripartite_negativity(const DensityMatrix& rho) {
    NegativityRecord r;
    r.n1_23 = bipartite_negativity(rho, 1);
    r.n2_13 = bipartite_negativity(rho, 2);
    r.n3_12 = bipartite_negativity(rho, 3);
    r.n3 = geometric_mean(r.n1_23, r.n2_13, r.n3_12);
    return r;
}

// ----------------------------------------------------------------------------
// Closed-form negativities.
//
// Each cut i-jk of the Werner-mixed single-excitation state has the form
//   N = 1/4 [-2 + |1-p| + |nu_i1| + |nu_i2| + |mu_i^+| + |mu_i^-|],
//   mu_i^{+-} = nu_13 +- sqrt(p (nu_i3 - nu_i4)).
// The published third-cut term nu_33 = (1-p)/4 + 4p|c13|^2 (1 - |c12|^2) breaks the
// pattern of nu_14 and nu_23, whose second factor repeats the first population.
// Both readings are evaluated: `printed` keeps the formula as published,
// `n3_12_symmetric` uses (1 - |c13|^2).

enum class Nu33Variant { printed, symmetric };

struct ClosedFormResult {
    std::array<double, 3> printed{};  // N_{1-23}, N_{2-13}, N_{3-12}
    double n3_12_symmetric{0.0};
    std::array<bool, 3> complex_radicand{};  // p (nu_i3 - nu_i4) < 0 on that cut
    bool symmetric_complex_radicand{false};

    std::array<double, 3> values(Nu33Variant v) const {
        auto out = printed;
        if (v == Nu33Variant::symmetric) out[2] = n3_12_symmetric;
        return out;
    }
};

namespace detail {

struct CutTerms {
    double nu1, nu2, nu3, nu4;
};

// Negative radicands are evaluated over the complex numbers; the magnitudes
// |mu^+-| are then taken as written.
inline double closed_form_cut(double p, double nu13, const CutTerms& k, bool& complex_flag) {
    const double radicand = p * (k.nu3 - k.nu4);
    complex_flag = radicand < 0.0;
    const cplx root = std::sqrt(cplx(radicand, 0.0));
    const double mu_plus = std::abs(nu13 + root);
    const double mu_minus = std::abs(nu13 - root);
    return 0.25 * (-2.0 + std::abs(1.0 - p) + std::abs(k.nu1) + std::abs(k.nu2) + mu_plus +
                   mu_minus);
}

}  // namespace detail

inline ClosedFormResult closed_form_negativities(const ClosedFormInputs& in) {
    const double x1 = std::norm(in.c11);
    const double x2 = std::norm(in.c12);
    const double x3 = std::norm(in.c13);
    const double leak = in.leak;
    if (std::abs(leak - (1.0 - x1 - x2 - x3)) > kNormTol) {
        throw ValidationError("leak", "inconsistent with 1 - |c11|^2 - |c12|^2 - |c13|^2");
    }
    const double p = in.p;
    const double w = (1.0 - p) / 4.0;

    const double nu13 = w + p * leak;
    auto nu_pop = [&](double x) { return w + 2.0 * p * x; };
    auto nu_rest = [&](double x) { return w + 2.0 * p * (1.0 - x - leak); };
    auto nu_mix = [&](double x, double y) { return w + 4.0 * p * x * (1.0 - y); };
    auto nu_leak = [&](double x) { return w + p * leak * (4.0 * x - leak); };

    ClosedFormResult r;
    bool flag = false;
    r.printed[0] = detail::closed_form_cut(
        p, nu13, {nu_pop(x1), nu_rest(x1), nu_mix(x1, x1), nu_leak(x1)}, flag);
    r.complex_radicand[0] = flag;
    r.printed[1] = detail::closed_form_cut(
        p, nu13, {nu_pop(x2), nu_rest(x2), nu_mix(x2, x2), nu_leak(x2)}, flag);
    r.complex_radicand[1] = flag;
    r.printed[2] = detail::closed_form_cut(
        p, nu13, {nu_pop(x3), nu_rest(x3), nu_mix(x3, x2), nu_leak(x3)}, flag);
    r.complex_radicand[2] = flag;
    r.n3_12_symmetric = detail::closed_form_cut(
        p, nu13, {nu_pop(x3), nu_rest(x3), nu_mix(x3, x3), nu_leak(x3)}, flag);
    r.symmetric_complex_radicand = flag;
    return r;
}

// Comparison of the closed forms against the partial-transpose negativities.
struct ClosedFormCheck {
    std::array<bool, 3> flagged{};  // printed formula off by more than tol on that cut
    bool symmetric_matches{false};  // nu_33 symmetric variant matches cut 3
    double max_gap{0.0};            // max |printed - numeric| over the cuts

    bool any_flag() const { return flagged[0] || flagged[1] || flagged[2]; }
    // Only the third cut disagrees and the symmetric nu_33 repairs it.
    bool localized_to_nu33() const {
        return !flagged[0] && !flagged[1] && (!flagged[2] || symmetric_matches);
    }
};

inline ClosedFormCheck compare_closed_form(const ClosedFormResult& cf,
                                           const NegativityRecord& numeric, double tol = 1e-8) {
    const std::array<double, 3> num{numeric.n1_23, numeric.n2_13, numeric.n3_12};
    ClosedFormCheck out;
    for (int i = 0; i < 3; ++i) {
        const double gap = std::abs(cf.printed[i] - num[i]);
        out.flagged[i] = gap > tol;
        out.max_gap = std::max(out.max_gap, gap);
    }
    out.symmetric_matches = std::abs(cf.n3_12_symmetric - num[2]) <= tol;
    return out;
}

}  // namespace tripneg
