#include "ghcp/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ghcp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kFpMin = 1e-300;

// Plain Taylor series; safe (all terms positive) for 0 < a <= b, x >= 0.
double series_1f1(double a, double b, double x, bool& ok) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 20000; ++k) {
        term *= (a + k) * x / ((b + k) * (k + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            ok = true;
            return sum;
        }
    }
    ok = false;
    return sum;
}

// M(a, b, -z) for large z > 0 and b > a:
//   Gamma(b)/Gamma(b-a) z^{-a} sum_s (a)_s (a-b+1)_s / (s! z^s).
// Terminates exactly when b - a is a positive integer.
double asymptotic_1f1_neg(double a, double b, double z) {
    double sum = 1.0;
    double term = 1.0;
    double prev = 1.0;
    for (int s = 0; s < 80; ++s) {
        term *= (a + s) * (a - b + 1.0 + s) / ((s + 1.0) * z);
        if (std::abs(term) > prev) break;  // divergent tail of the asymptotic series
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return std::exp(std::lgamma(b) - std::lgamma(b - a) - a * std::log(z)) * sum;
}

// M(a, b, x) for large x > 0 and a > 0 (dominant exponential branch).
double asymptotic_1f1_pos(double a, double b, double x) {
    double sum = 1.0;
    double term = 1.0;
    double prev = 1.0;
    for (int s = 0; s < 80; ++s) {
        term *= (b - a + s) * (1.0 - a + s) / ((s + 1.0) * x);
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return std::exp(std::lgamma(b) - std::lgamma(a) + x + (a - b) * std::log(x)) * sum;
}

}  // namespace

double kummer_1f1(double a, double b, double x) {
    if (b <= 0.0 && std::abs(b - std::round(b)) < 1e-12)
        throw std::domain_error("kummer_1f1: b must not be a nonpositive integer");
    if (x == 0.0 || a == 0.0) return 1.0;
    if (a == b) return std::exp(x);
    if (x < 0.0) {
        double z = -x;
        if (z > 60.0 && b > a) return asymptotic_1f1_neg(a, b, z);
        bool ok = false;
        double v = series_1f1(b - a, b, z, ok);  // Kummer transform
        if (!ok) throw std::runtime_error("kummer_1f1: series did not converge");
        return std::exp(x) * v;
    }
    if (x > 60.0 && a > 0.0 && b > 0.0) return asymptotic_1f1_pos(a, b, x);
    bool ok = false;
    double v = series_1f1(a, b, x, ok);
    if (!ok) throw std::runtime_error("kummer_1f1: series did not converge");
    return v;
}

// ---------------------------------------------------------------------------
// Generalized exponential integral.
// ---------------------------------------------------------------------------

namespace {

// Modified Lentz continued fraction; valid for x sufficiently right of the
// turning point (callers gate on x > 1.5 + max(0, -p)).
double ep_contfrac(double p, double x) {
    double b = x + p;
    double c = 1.0 / kFpMin;
    double d = std::abs(b) > kFpMin ? 1.0 / b : 1.0 / kFpMin;
    double h = d;
    for (int i = 1; i <= 600; ++i) {
        double a = -i * (p - 1.0 + i);
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + a / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-x);
    }
    throw std::runtime_error("gen_exp_integral: continued fraction did not converge");
}

// Series for integer order n >= 1, x <= threshold.
double ep_int_series(int n, double x) {
    int nm1 = n - 1;
    double ans = (nm1 != 0) ? 1.0 / nm1 : -std::log(x) - kEulerGamma;
    double fact = 1.0;
    for (int i = 1; i <= 10000; ++i) {
        fact *= -x / i;
        double del;
        if (i != nm1) {
            del = -fact / (i - nm1);
        } else {
            double psi = -kEulerGamma;
            for (int ii = 1; ii <= nm1; ++ii) psi += 1.0 / ii;
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::abs(del) < std::abs(ans) * 1e-17) return ans;
    }
    throw std::runtime_error("gen_exp_integral: integer series did not converge");
}

// Series for non-integer p: E_p = Gamma(1-p) x^{p-1} - sum_j (-x)^j / (j! (j+1-p)).
double ep_real_series(double p, double x) {
    double sum = 1.0 / (1.0 - p);
    double term = 1.0;
    for (int j = 1; j <= 10000; ++j) {
        term *= -x / j;
        double del = term / (j + 1.0 - p);
        sum += del;
        if (std::abs(del) < (std::abs(sum) + 1e-300) * 1e-17 && j > 3)
            return std::tgamma(1.0 - p) * std::pow(x, p - 1.0) - sum;
    }
    throw std::runtime_error("gen_exp_integral: series did not converge");
}

}  // namespace

double gen_exp_integral(double p, double x) {
    if (!(x > 0.0)) throw std::domain_error("gen_exp_integral: x must be > 0");
    bool p_int = std::abs(p - std::round(p)) < 1e-12;
    int n = static_cast<int>(std::round(p));
    if (p_int && n <= 0) {
        // closed form: E_{-n}(x) = n! x^{-n-1} e^{-x} sum_{k<=n} x^k/k!
        int m = -n;
        double s = 1.0;
        double t = 1.0;
        for (int k = 1; k <= m; ++k) {
            t *= x / k;
            s += t;
        }
        return std::tgamma(m + 1.0) * std::pow(x, -m - 1.0) * std::exp(-x) * s;
    }
    if (x > 1.5 + std::max(0.0, -p)) return ep_contfrac(p, x);
    if (p_int) return ep_int_series(n, x);
    return ep_real_series(p, x);
}

double upper_incomplete_gamma(double s, double x) {
    if (!(x > 0.0)) throw std::domain_error("upper_incomplete_gamma: x must be > 0");
    if (s > 0.0) {
        if (x > s + 1.0) {
            // continued fraction for Q(s, x)
            double b = x + 1.0 - s;
            double c = 1.0 / kFpMin;
            double d = 1.0 / b;
            double h = d;
            for (int i = 1; i <= 600; ++i) {
                double an = -i * (i - s);
                b += 2.0;
                d = an * d + b;
                if (std::abs(d) < kFpMin) d = kFpMin;
                c = b + an / c;
                if (std::abs(c) < kFpMin) c = kFpMin;
                d = 1.0 / d;
                double del = d * c;
                h *= del;
                if (std::abs(del - 1.0) < 1e-16)
                    return std::exp(-x + s * std::log(x)) * h;
            }
            throw std::runtime_error("upper_incomplete_gamma: cf did not converge");
        }
        // series for the lower function, then complement
        double sum = 1.0 / s;
        double term = sum;
        for (int k = 1; k <= 10000; ++k) {
            term *= x / (s + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) break;
        }
        return std::tgamma(s) - sum * std::exp(-x + s * std::log(x));
    }
    // s <= 0: walk down from s + m in (0, 1]; keeps s_k non-integer off zero.
    int m = static_cast<int>(std::ceil(-s)) + 1;
    double si = s + m;
    double g = upper_incomplete_gamma(si, x);
    for (int k = 0; k < m; ++k) {
        si -= 1.0;
        if (std::abs(si) < 1e-300)
            return gen_exp_integral(1.0, x);  // Gamma(0, x) = E_1(x)
        g = (g - std::pow(x, si) * std::exp(-x)) / si;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Quadrature rules.
// ---------------------------------------------------------------------------

Quadrature1D gauss_legendre(int n) {
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

Quadrature1D gauss_laguerre(int n, double a) {
    if (a <= -1.0) throw std::domain_error("gauss_laguerre: need a > -1");
    Eigen::VectorXd diag(n), sub(n - 1);
    for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + a + 1.0;
    for (int i = 0; i + 1 < n; ++i) sub[i] = std::sqrt((i + 1.0) * (i + 1.0 + a));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    double mu0 = std::tgamma(a + 1.0);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = es.eigenvalues()[i];
        double v = es.eigenvectors()(0, i);
        q.weights[i] = mu0 * v * v;
    }
    return q;
}

namespace {

const Quadrature1D& laguerre_cached(int n, double a) {
    static std::map<std::pair<int, long long>, Quadrature1D> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, static_cast<long long>(std::llround(a * 1e9)));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gauss_laguerre(n, a)).first;
    return it->second;
}

}  // namespace

double gamma_expectation(const std::function<double(double)>& f, int m,
                         const QuadratureSpec& quad) {
    if (m < 1) throw std::domain_error("gamma_expectation: m must be >= 1");
    double inv_gamma_m = 1.0 / std::tgamma(static_cast<double>(m));
    auto eval = [&](int order) {
        const Quadrature1D& q = laguerre_cached(order, m - 1.0);
        double s = 0.0;
        for (int i = 0; i < order; ++i)
            s += q.weights[i] * f(q.nodes[i] / m);
        return s * inv_gamma_m;
    };
    double v64 = eval(64);
    double v128 = eval(128);
    if (std::abs(v128 - v64) <= quad.rel_tol * std::abs(v128) + quad.abs_tol) return v128;
    double v256 = eval(256);
    if (std::abs(v256 - v128) <= quad.rel_tol * std::abs(v256) + quad.abs_tol) return v256;
    throw std::runtime_error("gamma_expectation: quadrature budget exhausted");
}

// ---------------------------------------------------------------------------
// Lower-triangular Toeplitz matrix exponential (nilpotent series, exact).
// ---------------------------------------------------------------------------

namespace {

std::vector<double> expm_first_column(std::span<const double> c) {
    const std::size_t m = c.size();
    std::vector<double> cur(m, 0.0), tmp(m, 0.0), first(m, 0.0);
    cur[0] = 1.0;
    first[0] = 1.0;
    for (std::size_t j = 1; j < m; ++j) {
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (std::size_t r = j; r < m; ++r) {
            double s = 0.0;
            for (std::size_t k = 1; k <= r; ++k) s += c[k] * cur[r - k];
            tmp[r] = s / static_cast<double>(j);
        }
        cur.swap(tmp);
        for (std::size_t r = 0; r < m; ++r) first[r] += cur[r];
    }
    double e0 = std::exp(c[0]);
    for (double& v : first) v *= e0;
    return first;
}

}  // namespace

std::vector<double> lt_toeplitz_expm(std::span<const double> c) {
    if (c.empty()) throw std::domain_error("lt_toeplitz_expm: empty first column");
    const std::size_t m = c.size();
    std::vector<double> first = expm_first_column(c);
    std::vector<double> out(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) out[i * m + j] = first[i - j];
    return out;
}

double lt_toeplitz_expm_colsum(std::span<const double> c) {
    if (c.empty()) throw std::domain_error("lt_toeplitz_expm_colsum: empty first column");
    std::vector<double> first = expm_first_column(c);
    double s = 0.0;
    for (double v : first) s += v;
    return s;
}

// ---------------------------------------------------------------------------
// Box integration.
// ---------------------------------------------------------------------------

double halton(std::size_t index, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    std::size_t n = index + 1;  // skip the origin
    while (n > 0) {
        f /= base;
        r += f * static_cast<double>(n % base);
        n /= base;
    }
    return r;
}

IntegralResult integrate_nd(const std::function<double(std::span<const double>)>& f,
                            std::span<const double> lo, std::span<const double> hi,
                            const QuadratureSpec& quad) {
    const std::size_t dim = lo.size();
    if (dim == 0 || dim > 3 || hi.size() != dim)
        throw std::domain_error("integrate_nd: dimension must be 1..3");
    double vol = 1.0;
    for (std::size_t k = 0; k < dim; ++k) vol *= hi[k] - lo[k];

    IntegralResult res;
    if (quad.scheme == QuadratureSpec::Scheme::fixed_grid) {
        int n = static_cast<int>(std::floor(
            std::pow(static_cast<double>(quad.max_evals), 1.0 / dim)));
        n = std::clamp(n, 2, 200);
        Quadrature1D q = gauss_legendre(n);
        double sum = 0.0;
        double pt[3];
        long evals = 0;
        std::size_t total = 1;
        for (std::size_t k = 0; k < dim; ++k) total *= n;
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            double w = 1.0;
            for (std::size_t k = 0; k < dim; ++k) {
                int i = static_cast<int>(rem % n);
                rem /= n;
                pt[k] = lo[k] + 0.5 * (q.nodes[i] + 1.0) * (hi[k] - lo[k]);
                w *= 0.5 * q.weights[i] * (hi[k] - lo[k]);
            }
            sum += w * f(std::span<const double>(pt, dim));
            ++evals;
        }
        res.value = sum;
        res.evaluations = evals;
        res.converged = true;
        res.error_estimate = 0.0;
        return res;
    }

    static constexpr unsigned kBases[3] = {2, 3, 5};
    long n = 4096;
    double sum = 0.0;
    long count = 0;
    double prev = 0.0;
    bool have_prev = false;
    double last_delta = 0.0;
    double pt[3];
    while (true) {
        for (; count < n; ++count) {
            for (std::size_t k = 0; k < dim; ++k)
                pt[k] = lo[k] + halton(static_cast<std::size_t>(count), kBases[k]) *
                                    (hi[k] - lo[k]);
            sum += f(std::span<const double>(pt, dim));
        }
        double est = vol * sum / static_cast<double>(count);
        if (have_prev) {
            last_delta = std::abs(est - prev);
            if (last_delta <= quad.rel_tol * std::abs(est) + quad.abs_tol) {
                res.value = est;
                res.error_estimate = last_delta;
                res.evaluations = count;
                res.converged = true;
                return res;
            }
        }
        prev = est;
        have_prev = true;
        if (2 * n > quad.max_evals) {
            res.value = est;
            res.error_estimate = last_delta;
            res.evaluations = count;
            res.converged = false;
            return res;
        }
        n *= 2;
    }
}

}  // namespace ghcp
