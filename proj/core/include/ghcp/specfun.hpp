#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ghcp {

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    long max_evals = 1 << 21;
    enum class Scheme { adaptive, fixed_grid, quasi_random } scheme = Scheme::quasi_random;
};

// Confluent hypergeometric 1F1(a; b; x). Negative arguments go through the
// Kummer transform, large |x| through the (terminating when b - a is a
// positive integer) asymptotic expansion.
double kummer_1f1(double a, double b, double x);

// Upper incomplete gamma Gamma(s, x) for real s (negative s via the downward
// recurrence), x > 0.
double upper_incomplete_gamma(double s, double x);

// Generalized exponential integral E_p(x) = x^{p-1} Gamma(1-p, x), x > 0,
// any real p.
double gen_exp_integral(double p, double x);

// E[f(g)] for g ~ Gamma(m, 1/m) (unit mean), via generalized Gauss-Laguerre.
double gamma_expectation(const std::function<double(double)>& f, int m,
                         const QuadratureSpec& quad = {});

// Gauss-Legendre nodes/weights on [-1, 1].
struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature1D gauss_legendre(int n);

// Generalized Gauss-Laguerre for weight x^a e^{-x} on [0, inf).
Quadrature1D gauss_laguerre(int n, double a);

// exp(C) for a lower-triangular Toeplitz C with first column c. Exact:
// exp(C) = e^{c0} sum_{j<M} N^j / j! with N = C - c0 I nilpotent.
// Row-major M x M result.
std::vector<double> lt_toeplitz_expm(std::span<const double> c);

// First-column sum of exp(C) without materializing the matrix.
double lt_toeplitz_expm_colsum(std::span<const double> c);

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Integral of f over an axis-aligned box (dim <= 3). Quasi-random (Halton)
// sampling with doubling is the default; fixed_grid uses a tensor
// Gauss-Legendre rule (only appropriate for smooth integrands).
IntegralResult integrate_nd(const std::function<double(std::span<const double>)>& f,
                            std::span<const double> lo, std::span<const double> hi,
                            const QuadratureSpec& quad = {});

// i-th point (0-based) of the Halton sequence for the given prime base.
double halton(std::size_t index, unsigned base);

}  // namespace ghcp
