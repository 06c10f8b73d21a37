#include "psbell/states.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

#include "psbell/errors.hpp"
#include "psbell/quasiprob.hpp"

namespace psbell {

namespace {

constexpr double kPi = 3.14159265358979323846;

// √(C(n,k)) via log-gamma; exact to double rounding for the sizes used here.
double sqrt_binomial(int n, int k)
{
    return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

}  // namespace

Eigen::Matrix2d gaussian_covariance(const GaussianState& sigma)
{
    double w = 0.5 * (sigma.nbar + 0.5);  // ½(n̄+½); vacuum gives 1/4 on the diagonal
    double ch = std::cosh(2.0 * sigma.r), sh = std::sinh(2.0 * sigma.r);
    double c2 = std::cos(2.0 * sigma.phi), s2 = std::sin(2.0 * sigma.phi);
    Eigen::Matrix2d g;
    g(0, 0) = w * (ch - sh * c2);
    g(1, 1) = w * (ch + sh * c2);
    g(0, 1) = g(1, 0) = -w * sh * s2;
    return g;
}

double FockDensityMatrix::tail_mass() const
{
    int d = dim();
    int start = d - std::max(1, d / 10);
    double tail = 0.0;
    for (int n = start; n < d; ++n) tail += rho(n, n).real();
    return tail;
}

Eigen::MatrixXcd ladder_lower(int dim)
{
    // ⟨n−1|â|n⟩ = √n
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd displacement_operator(cxd alpha, int dim)
{
    Eigen::MatrixXcd a = ladder_lower(dim);
    Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return gen.exp();
}

Eigen::MatrixXcd squeeze_operator(double r, double phi, int dim)
{
    Eigen::MatrixXcd a = ladder_lower(dim);
    Eigen::MatrixXcd a2 = a * a;
    cxd half(0.5, 0.0);
    Eigen::MatrixXcd gen =
        -half * (std::exp(cxd(0.0, 2.0 * phi)) * r * a2.adjoint() - std::exp(cxd(0.0, -2.0 * phi)) * r * a2);
    return gen.exp();
}

Eigen::MatrixXcd rotation_operator(double theta, int dim)
{
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) u(n, n) = std::exp(cxd(0.0, theta * n));
    return u;
}

FockDensityMatrix to_fock(const GaussianState& sigma, int dim, double hard_tail_limit)
{
    if (dim < 1) throw spec_error("Fock dimension must be >= 1");
    // Thermal core (1−x) x^n with x = n̄/(1+n̄), then the truncated Gaussian
    // unitaries: ρ = D̂(α) Ŝ(r,φ) σ_th Ŝ† D̂†.
    double x = sigma.nbar / (1.0 + sigma.nbar);
    Eigen::MatrixXcd th = Eigen::MatrixXcd::Zero(dim, dim);
    double w = 1.0 - x;
    for (int n = 0; n < dim; ++n) {
        th(n, n) = w;
        w *= x;
    }
    Eigen::MatrixXcd rho = th;
    if (sigma.r != 0.0) {
        Eigen::MatrixXcd s = squeeze_operator(sigma.r, sigma.phi, dim);
        rho = s * rho * s.adjoint();
    }
    if (sigma.alpha != cxd(0.0, 0.0)) {
        Eigen::MatrixXcd d = displacement_operator(sigma.alpha, dim);
        rho = d * rho * d.adjoint();
    }
    rho = 0.5 * (rho + rho.adjoint().eval());  // enforce Hermiticity against expm rounding

    FockDensityMatrix out{std::move(rho)};
    double deficit = std::abs(1.0 - out.trace_real());
    double tail = std::max(out.tail_mass(), deficit);
    if (tail > hard_tail_limit)
        throw truncation_error("Fock truncation too small for this Gaussian state (tail mass " +
                                   std::to_string(tail) + ")",
                               tail);
    return out;
}

FockDensityMatrix superposition_state(const std::vector<cxd>& coeffs, int dim)
{
    if (coeffs.empty() || static_cast<int>(coeffs.size()) > dim)
        throw spec_error("superposition needs 1..dim coefficients");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (std::size_t n = 0; n < coeffs.size(); ++n) psi(static_cast<int>(n)) = coeffs[n];
    double norm = psi.norm();
    if (norm < 1e-300) throw spec_error("superposition coefficients are all zero");
    psi /= norm;
    return FockDensityMatrix{psi * psi.adjoint()};
}

FockDensityMatrix apply_loss(const FockDensityMatrix& rho, LossChannel channel)
{
    double eta = channel.eta;
    if (!(eta >= 0.0 && eta <= 1.0)) throw spec_error("transmittance must lie in [0,1]");
    int d = rho.dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);

    // Σ_k A_k ρ A_k†, (A_k ρ A_k†)_{n,m} = (1−η)^k η^{(n+m)/2} √(C(n+k,k) C(m+k,k)) ρ_{n+k,m+k};
    // stop once a term moves less than 1e-14 of probability.
    std::vector<double> half_pow(static_cast<std::size_t>(d));  // η^{n/2}
    for (int n = 0; n < d; ++n) half_pow[static_cast<std::size_t>(n)] = std::pow(eta, 0.5 * n);

    for (int k = 0; k < d; ++k) {
        double one_minus_eta_k = (k == 0) ? 1.0 : std::exp(k * std::log1p(-eta));
        if (one_minus_eta_k == 0.0) break;

        std::vector<double> root(static_cast<std::size_t>(d - k));
        for (int n = 0; n + k < d; ++n)
            root[static_cast<std::size_t>(n)] =
                sqrt_binomial(n + k, k) * half_pow[static_cast<std::size_t>(n)];

        double term_trace = 0.0;
        for (int n = 0; n + k < d; ++n) {
            double fn = one_minus_eta_k * root[static_cast<std::size_t>(n)];
            for (int m = 0; m + k < d; ++m) {
                cxd v = fn * root[static_cast<std::size_t>(m)] * rho.rho(n + k, m + k);
                out(n, m) += v;
                if (n == m) term_trace += v.real();
            }
        }
        if (k > 0 && std::abs(term_trace) < 1e-14) break;
    }
    return FockDensityMatrix{std::move(out)};
}

FockDensityMatrix mix_with_ancilla(const FockDensityMatrix& rho, const FockDensityMatrix& ancilla,
                                   double eta, int dim_cap)
{
    if (!(eta >= 0.0 && eta <= 1.0)) throw spec_error("transmittance must lie in [0,1]");
    int da = rho.dim(), db = ancilla.dim();
    if (static_cast<long long>(da) * db > dim_cap)
        throw spec_error("two-mode dimension " + std::to_string(static_cast<long long>(da) * db) +
                         " exceeds cap " + std::to_string(dim_cap));

    // U = exp[θ(â†b̂ − âb̂†)], cos θ = √η; mode A keeps transmittance η.
    double theta = std::acos(std::sqrt(eta));
    Eigen::MatrixXcd a = ladder_lower(da), b = ladder_lower(db);
    Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(da, da), ib = Eigen::MatrixXcd::Identity(db, db);
    Eigen::MatrixXcd gen = theta * (Eigen::kroneckerProduct(a.adjoint(), b).eval() -
                                    Eigen::kroneckerProduct(a, b.adjoint()).eval());
    Eigen::MatrixXcd u = gen.exp();
    Eigen::MatrixXcd joint =
        u * Eigen::kroneckerProduct(rho.rho, ancilla.rho).eval() * u.adjoint();

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da, da);
    for (int n = 0; n < da; ++n)
        for (int m = 0; m < da; ++m) {
            cxd acc(0.0, 0.0);
            for (int j = 0; j < db; ++j) acc += joint(n * db + j, m * db + j);
            out(n, m) = acc;
        }
    return FockDensityMatrix{std::move(out)};
}

namespace {

// Shared BW factorization: W_AB(α,β) = W_ρ((α+β)/√2) · (2/π) e^{−2|(β−α)/√2|²}
// for the balanced beam-splitter output on (ρ ⊗ vacuum).
double bw_from_wigner(double w_plus, cxd alpha, cxd beta)
{
    cxd minus = (beta - alpha) / std::sqrt(2.0);
    return w_plus * (2.0 / kPi) * std::exp(-2.0 * std::norm(minus));
}

}  // namespace

double bw_two_mode_wigner(const GaussianState& sigma, cxd alpha, cxd beta)
{
    cxd plus = (alpha + beta) / std::sqrt(2.0);
    return bw_from_wigner(eval_gaussian(sigma, to_point(plus), 0.0).wigner, alpha, beta);
}

double bw_two_mode_wigner(const FockDensityMatrix& rho, cxd alpha, cxd beta)
{
    cxd plus = (alpha + beta) / std::sqrt(2.0);
    return bw_from_wigner(eval_fock(rho, to_point(plus), 0.0).wigner, alpha, beta);
}

}  // namespace psbell
