#include "psbell/quasiprob.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "psbell/errors.hpp"

namespace psbell {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
const double kBig = std::ldexp(1.0, 512);      // pair-arithmetic renorm threshold
const double kInvBig = std::ldexp(1.0, -512);
constexpr double kLogFloor = -745.0;           // below this, exp() underflows to 0 anyway

// --- scaled pair arithmetic: numbers held as v · 2^(512 e) ------------------
// The associated-Laguerre recurrence overflows double range near dim ~ 200 at
// large |x|; carrying a base-2^512 exponent alongside keeps it exact.

void renorm(double& v, long& e)
{
    double av = std::abs(v);
    if (av == 0.0 || !std::isfinite(av)) return;
    while (av > kBig) {
        v = std::ldexp(v, -512);
        e += 1;
        av = std::abs(v);
    }
    while (av < kInvBig) {
        v = std::ldexp(v, 512);
        e -= 1;
        av = std::abs(v);
    }
}

// L_m^{(k)}(x) for m = 0..count−1 via
//   L_0 = 1,  L_1 = 1 + k − x,  (m+1) L_{m+1} = (2m+k+1−x) L_m − (m+k) L_{m−1},
// returning per-m natural-log magnitude (−inf at exact zeros) and sign.
void laguerre_diagonal(int k, double x, int count, std::vector<double>& log_mag,
                       std::vector<double>& sign)
{
    log_mag.assign(static_cast<std::size_t>(count), -std::numeric_limits<double>::infinity());
    sign.assign(static_cast<std::size_t>(count), 0.0);
    auto emit = [&](int m, double v, long e) {
        if (v == 0.0) return;
        log_mag[static_cast<std::size_t>(m)] = std::log(std::abs(v)) + 512.0 * kLn2 * e;
        sign[static_cast<std::size_t>(m)] = v > 0.0 ? 1.0 : -1.0;
    };

    double v_prev = 1.0;
    long e_prev = 0;
    emit(0, v_prev, e_prev);
    if (count == 1) return;

    double v_cur = 1.0 + k - x;
    long e_cur = 0;
    renorm(v_cur, e_cur);
    emit(1, v_cur, e_cur);

    for (int m = 1; m + 1 < count; ++m) {
        // align the older term to the current exponent before combining
        double prev_aligned = std::ldexp(v_prev, static_cast<int>(512 * (e_prev - e_cur)));
        double v_next = ((2.0 * m + k + 1.0 - x) * v_cur - (m + k) * prev_aligned) / (m + 1.0);
        long e_next = e_cur;
        renorm(v_next, e_next);
        v_prev = v_cur;
        e_prev = e_cur;
        v_cur = v_next;
        e_cur = e_next;
        emit(m + 1, v_cur, e_cur);
    }
}

// --- kernel construction ----------------------------------------------------

Eigen::MatrixXcd build_kernel(cxd alpha, double s, int dim)
{
    Eigen::MatrixXcd kmat = Eigen::MatrixXcd::Zero(dim, dim);
    double asq = std::norm(alpha);

    if (s == -1.0) {
        // K̂ = |α⟩⟨α| exactly: rank one from the coherent overlap vector.
        Eigen::VectorXcd v(dim);
        double la = 0.5 * std::log(asq);  // log |α|
        double arg = std::arg(alpha);
        for (int n = 0; n < dim; ++n) {
            double lm = asq == 0.0 ? (n == 0 ? 0.0 : -std::numeric_limits<double>::infinity())
                                   : -0.5 * asq + n * la - 0.5 * std::lgamma(n + 1.0);
            v(n) = lm < kLogFloor ? cxd(0.0, 0.0)
                                  : std::exp(lm) * std::exp(cxd(0.0, n * arg));
        }
        kmat = v * v.adjoint();
        return kmat;
    }

    double t = (s + 1.0) / (s - 1.0);
    if (asq == 0.0) {
        for (int n = 0; n < dim; ++n) kmat(n, n) = std::pow(t, n);
        return kmat;
    }

    // T_{n,m} = √(m!/n!) t^m e^{−2|α|²/(1−s)} (2α/(1−s))^{n−m} L_m^{(n−m)}(x),
    // x = 4|α|²/(1−s²); magnitudes assembled in log domain, per-diagonal runs.
    double x = 4.0 * asq / (1.0 - s * s);
    double log_t = std::log(std::abs(t));  // t = 0 only at s = −1, handled above
    double sign_t = t >= 0.0 ? 1.0 : -1.0;
    double log_pref_exp = -2.0 * asq / (1.0 - s);
    double log_ratio = std::log(2.0 * std::abs(alpha) / (1.0 - s));
    double arg = std::arg(alpha);

    std::vector<double> log_mag, sign;
    for (int k = 0; k < dim; ++k) {
        int count = dim - k;
        laguerre_diagonal(k, x, count, log_mag, sign);
        cxd phase = std::exp(cxd(0.0, k * arg));
        for (int m = 0; m < count; ++m) {
            int n = m + k;
            double lm = 0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)) + m * log_t +
                        log_pref_exp + k * log_ratio + log_mag[static_cast<std::size_t>(m)];
            if (!(lm > kLogFloor)) continue;
            double mag = std::exp(lm);
            double sg = sign[static_cast<std::size_t>(m)] * (m % 2 == 0 ? 1.0 : sign_t);
            kmat(n, m) = sg * mag * phase;
        }
    }
    // Hermitian completion above the diagonal
    for (int n = 0; n < dim; ++n)
        for (int m = n + 1; m < dim; ++m) kmat(n, m) = std::conj(kmat(m, n));
    return kmat;
}

// --- memoization keyed by exact bit patterns --------------------------------

struct KernelKey {
    std::uint64_t re, im, s;
    int dim;
    bool operator==(const KernelKey&) const = default;
};

struct KernelKeyHash {
    std::size_t operator()(const KernelKey& k) const
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t w : {k.re, k.im, k.s, static_cast<std::uint64_t>(k.dim)}) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h);
    }
};

std::mutex g_cache_mutex;
std::unordered_map<KernelKey, Eigen::MatrixXcd, KernelKeyHash> g_cache;
constexpr std::size_t kCacheCapacity = 4096;

}  // namespace

Eigen::MatrixXcd kernel_matrix(cxd alpha, double s, int dim)
{
    require_order_parameter(s);
    if (dim < 1) throw spec_error("kernel dimension must be >= 1");

    KernelKey key{std::bit_cast<std::uint64_t>(alpha.real()),
                  std::bit_cast<std::uint64_t>(alpha.imag()), std::bit_cast<std::uint64_t>(s), dim};
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    Eigen::MatrixXcd kmat = build_kernel(alpha, s, dim);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        if (g_cache.size() >= kCacheCapacity) g_cache.clear();
        g_cache.emplace(key, kmat);
    }
    return kmat;
}

void clear_kernel_cache()
{
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.clear();
}

std::size_t kernel_cache_size()
{
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    return g_cache.size();
}

std::pair<double, double> scaled_value_range(double s)
{
    require_order_parameter(s);
    if (s >= -1.0) return {(s + 1.0) / (s - 1.0), 1.0};
    return {0.0, 1.0};  // T̂(s) is positive for s < −1
}

ScaledQuasiprobValue eval_gaussian(const GaussianState& sigma, PhaseSpacePoint at, double s)
{
    require_order_parameter(s);
    Eigen::Matrix2d gs = gaussian_covariance(sigma);
    gs(0, 0) -= 0.25 * s;
    gs(1, 1) -= 0.25 * s;
    double det = gs(0, 0) * gs(1, 1) - gs(0, 1) * gs(1, 0);
    Eigen::Vector2d delta(at.q - sigma.alpha.real(), at.p - sigma.alpha.imag());
    // −½ δᵀ Γ_s⁻¹ δ via the adjugate; Γ_s is positive definite for every s ≤ 0
    double quad = (gs(1, 1) * delta(0) * delta(0) - 2.0 * gs(0, 1) * delta(0) * delta(1) +
                   gs(0, 0) * delta(1) * delta(1)) /
                  det;
    double value = (1.0 - s) / (4.0 * std::sqrt(det)) * std::exp(-0.5 * quad);

    ScaledQuasiprobValue out;
    out.value = value;
    out.wigner = value * 2.0 / (kPi * (1.0 - s));
    out.s = s;
    out.point = at;
    return out;
}

ScaledQuasiprobValue eval_fock(const FockDensityMatrix& rho, PhaseSpacePoint at, double s)
{
    Eigen::MatrixXcd kmat = kernel_matrix(to_complex(at), s, rho.dim());
    double value = rho.rho.transpose().cwiseProduct(kmat).sum().real();  // tr[ρK̂]

    ScaledQuasiprobValue out;
    out.value = value;
    out.wigner = value * 2.0 / (kPi * (1.0 - s));
    out.s = s;
    out.point = at;
    return out;
}

ScaledQuasiprobValue eval_lossy_cat(double gamma, double eta, PhaseSpacePoint at)
{
    if (!(eta >= 0.0 && eta <= 1.0)) throw spec_error("transmittance must lie in [0,1]");
    double g2 = gamma * gamma;
    double q = at.q, p = at.p;
    // Even cat (|γ⟩+|−γ⟩)/√norm through transmittance η, Wigner (s = 0):
    // two Gaussian lobes merged at the origin plus a damped interference fringe.
    double pref = 1.0 / (1.0 + std::exp(-2.0 * g2));
    double value = pref * std::exp(-2.0 * (q * q + p * p)) *
                   (std::exp(-2.0 * eta * g2) * std::cosh(4.0 * std::sqrt(eta) * gamma * q) +
                    std::exp(-2.0 * (1.0 - eta) * g2) * std::cos(4.0 * std::sqrt(eta) * gamma * p));

    ScaledQuasiprobValue out;
    out.value = value;
    out.wigner = value * 2.0 / kPi;
    out.s = 0.0;
    out.point = at;
    return out;
}

ScaledQuasiprobValue scaled_at(const AnyState& state, PhaseSpacePoint at, double s)
{
    if (const auto* g = std::get_if<GaussianState>(&state)) return eval_gaussian(*g, at, s);
    if (const auto* mix = std::get_if<GaussianMixture>(&state)) {
        if (mix->parts.empty()) throw spec_error("mixture has no components");
        double total = 0.0;
        for (const auto& [w, part] : mix->parts) {
            if (w < 0.0) throw spec_error("mixture weights must be >= 0");
            total += w;
        }
        if (total <= 0.0) throw spec_error("mixture weights sum to zero");
        ScaledQuasiprobValue out;
        out.value = 0.0;
        for (const auto& [w, part] : mix->parts) out.value += w / total * eval_gaussian(part, at, s).value;
        out.wigner = out.value * 2.0 / (kPi * (1.0 - s));
        out.s = s;
        out.point = at;
        return out;
    }
    return eval_fock(std::get<FockDensityMatrix>(state), at, s);
}

}  // namespace psbell
