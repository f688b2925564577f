#pragma once

#include <complex>

#include "melon/exact.hpp"

namespace melon {

/// n-th moment of the limit law of order p: 0 for odd n, F_p(n/2) otherwise.
BigInt limit_moment(unsigned p, unsigned n);

/// z_c = (p-1)^{p-1} / p^p.
double critical_point(unsigned p);

/// omega_c = 1 / sqrt(z_c), the right end of the support.
double support_edge(unsigned p);

/// Stieltjes transform R(z) of the limit law of order p: the root of
/// z^{p-2} R^p - z R + 1 = 0 on the branch R ~ 1/z, followed by Newton
/// continuation along the ray from 4 omega_c z/|z| to z.
/// Throws DomainError for real z within 1e-9 of the support and
/// NumericalError when the continuation cannot reach residual 1e-12.
std::complex<double> stieltjes(unsigned p, std::complex<double> z);

/// |z^{p-2} R^p - z R + 1|.
double stieltjes_residual(unsigned p, std::complex<double> z, std::complex<double> r);

/// -(1/pi) Im R(y + i eta), extrapolated once: 2 f(eta) - f(2 eta).
double density_by_inversion(unsigned p, double y, double eta = 1e-4);

/// Density of the limit law: semicircle for p = 2, the cube-root closed form
/// for p = 3 (infinite at y = 0), Stieltjes inversion with `eta` for p >= 4.
/// Zero outside [-omega_c, omega_c].
double density(unsigned p, double y, double eta = 1e-4);

/// Integral of y^n against the density over the support (tanh-sinh
/// quadrature on each half). Throws NumericalError when the error estimate
/// exceeds `tolerance`.
double law_moment_quadrature(unsigned p, unsigned n, double tolerance = 1e-9);

/// Law of the contracted tensor: the order p-k law dilated by
/// scale = sqrt(C(p-1, k)), with density scale * mu_{p-k}(scale * y).
struct ContractedLaw {
    unsigned p = 3;
    unsigned k = 0;

    unsigned base_order() const { return p - k; }
    /// C(p-1, k).
    BigInt scale_squared() const;
    double scale() const;
    /// (p-k)^{p-k} / (C(p-1,k) (p-k-1)^{p-k-1}), the squared support edge.
    Rational support_edge_squared() const;
    double support_edge() const;
    /// C(p-1,k)^{-n/2} times the base moment; exact zero for odd n.
    double moment(unsigned n) const;
    double density(double y, double eta = 1e-4) const;
    std::complex<double> stieltjes(std::complex<double> z) const;
};

/// Throws ContractViolation unless p >= 3 and k <= p-2.
ContractedLaw contracted_law(unsigned p, unsigned k);

}  // namespace melon
