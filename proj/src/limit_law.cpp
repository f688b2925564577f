#include "melon/limit_law.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "melon/counting.hpp"
#include "melon/errors.hpp"

namespace melon {

using cplx = std::complex<double>;

BigInt limit_moment(unsigned p, unsigned n) {
    if (n % 2 == 1) return 0;
    return fuss_catalan(p, n / 2);
}

double critical_point(unsigned p) {
    if (p < 2) throw ContractViolation("the limit law needs p >= 2");
    const double pm1 = p - 1.0;
    return std::pow(pm1, pm1) / std::pow(static_cast<double>(p), static_cast<double>(p));
}

double support_edge(unsigned p) { return 1.0 / std::sqrt(critical_point(p)); }

double stieltjes_residual(unsigned p, cplx z, cplx r) {
    return std::abs(std::pow(z, static_cast<int>(p) - 2) * std::pow(r, static_cast<int>(p)) - z * r + 1.0);
}

namespace {

constexpr double kResidualTolerance = 1e-12;

// Newton on f(R) = z^{p-2} R^p - z R + 1 from `start`. Returns false on
// divergence or when the iterate wanders far from the start.
bool newton(unsigned p, cplx z, cplx start, cplx& out) {
    const cplx zp = std::pow(z, static_cast<int>(p) - 2);
    cplx r = start;
    for (int it = 0; it < 60; ++it) {
        const cplx rp1 = std::pow(r, static_cast<int>(p) - 1);
        const cplx f = zp * rp1 * r - z * r + 1.0;
        const cplx df = static_cast<double>(p) * zp * rp1 - z;
        if (df == cplx(0.0, 0.0)) return false;
        const cplx step = f / df;
        r -= step;
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r))) break;
    }
    if (stieltjes_residual(p, z, r) >= kResidualTolerance) return false;
    out = r;
    return true;
}

}  // namespace

cplx stieltjes(unsigned p, cplx z) {
    const double edge = support_edge(p);
    if (z.imag() == 0.0 && std::abs(z.real()) <= edge + 1e-9) {
        throw DomainError("z lies on the support of the limit law");
    }
    const double radius = std::abs(z);
    const cplx direction = z / radius;
    const double far = 4.0 * edge;

    cplx r;
    double current = std::max(radius, far);
    if (!newton(p, current * direction, 1.0 / (current * direction), r)) {
        throw NumericalError("Newton failed far from the support");
    }
    double step = (current - radius) / 16.0;
    int refinements = 0;
    while (current > radius) {
        const double next = std::max(radius, current - step);
        cplx candidate;
        const bool ok = newton(p, next * direction, r, candidate) &&
                        std::abs(candidate - r) <= 0.1 * std::max(std::abs(r), 1.0 / far);
        if (ok) {
            r = candidate;
            current = next;
            step *= 1.5;
        } else {
            step *= 0.5;
            if (++refinements > 200 || step < 1e-14 * far) {
                throw NumericalError("continuation of the Stieltjes transform did not converge");
            }
        }
    }
    if (stieltjes_residual(p, z, r) >= kResidualTolerance) {
        throw NumericalError("Stieltjes transform residual above tolerance");
    }
    return r;
}

double density_by_inversion(unsigned p, double y, double eta) {
    const auto f = [&](double h) { return -stieltjes(p, cplx(y, h)).imag() / std::numbers::pi; };
    return std::max(0.0, 2.0 * f(eta) - f(2.0 * eta));
}

double density(unsigned p, double y, double eta) {
    const double edge = support_edge(p);
    if (std::abs(y) >= edge) return 0.0;
    if (p == 2) return std::sqrt(4.0 - y * y) / (2.0 * std::numbers::pi);
    if (p == 3) {
        const double ay = std::abs(y);
        if (ay == 0.0) return std::numeric_limits<double>::infinity();
        const double x = 4.0 * y * y / 27.0;
        const double s = std::sqrt(1.0 - x);
        // 1 - s rewritten as x / (1 + s) to avoid cancellation near y = 0.
        const double bracket = std::cbrt(1.0 + s) - std::cbrt(x / (1.0 + s));
        return std::sqrt(3.0) / (std::pow(2.0, 4.0 / 3.0) * std::numbers::pi * std::cbrt(ay)) * bracket;
    }
    return density_by_inversion(p, y, eta);
}

double law_moment_quadrature(unsigned p, unsigned n, double tolerance) {
    if (n % 2 == 1) return 0.0;
    const double edge = support_edge(p);
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    const auto f = [&](double y) {
        if (y <= 0.0 || y >= edge) return 0.0;
        return std::pow(y, static_cast<double>(n)) * density(p, y);
    };
    const double half = integrator.integrate(f, 0.0, edge, 1e-12, &error);
    if (!(error <= tolerance)) throw NumericalError("quadrature did not reach the requested tolerance");
    return 2.0 * half;
}

BigInt ContractedLaw::scale_squared() const { return binomial(p - 1, k); }

double ContractedLaw::scale() const { return std::sqrt(to_double(scale_squared())); }

Rational ContractedLaw::support_edge_squared() const {
    const unsigned q = p - k;
    const BigInt num = boost::multiprecision::pow(BigInt(q), q);
    const BigInt den = scale_squared() * boost::multiprecision::pow(BigInt(q - 1), q - 1);
    return Rational(num, den);
}

double ContractedLaw::support_edge() const { return std::sqrt(to_double(support_edge_squared())); }

double ContractedLaw::moment(unsigned n) const {
    if (n % 2 == 1) return 0.0;
    return to_double(limit_moment(base_order(), n)) / std::pow(to_double(scale_squared()), n / 2.0);
}

double ContractedLaw::density(double y, double eta) const {
    return scale() * melon::density(base_order(), y * scale(), eta);
}

cplx ContractedLaw::stieltjes(cplx z) const { return scale() * melon::stieltjes(base_order(), scale() * z); }

ContractedLaw contracted_law(unsigned p, unsigned k) {
    if (p < 3) throw ContractViolation("contraction needs p >= 3");
    if (k + 2 > p) throw ContractViolation("contraction depth must satisfy k <= p-2");
    return ContractedLaw{p, k};
}

}  // namespace melon
