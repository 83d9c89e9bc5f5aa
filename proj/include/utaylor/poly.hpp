#pragma once

#include "utaylor/complex.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace utaylor {

/// Dense polynomial about 0: coeffs()[j] is the coefficient of z^j.
///
/// Trailing zero coefficients are never stored, so degree() is always
/// coeffs().size() - 1 and the zero polynomial has degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs);

    // c z^n
    static Poly monomial(long n, Complex c = Complex(1));
    static Poly constant(Complex c) { return monomial(0, std::move(c)); }

    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    // Index of the lowest nonzero coefficient; -1 for the zero polynomial.
    long valuation() const;

    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    Complex coeff(long j) const;

    Complex operator()(const Complex& z) const;
    std::complex<double> eval(std::complex<double> z) const;

    // z^n * p(z)
    Poly shifted(long n) const;
    // Sum of terms with index <= n.
    Poly truncated(long n) const;
    // p(q(z))
    Poly compose(const Poly& inner) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Complex& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Complex& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();

    std::vector<Complex> coeffs_;
};

Complex poly_eval(const Poly& p, const Complex& z);

// Evaluates p at every point, reusing scratch storage.
std::vector<Complex> poly_eval_many(const Poly& p, std::span<const Complex> points);

// Supplies the coefficient of index j, or nullopt once the stream is exhausted.
using CoefficientStream = std::function<std::optional<Complex>(long)>;

// Truncation sum_{n<=N} a_n z^n of the stream; throws StreamExhausted when the
// stream supplies fewer than N+1 coefficients.
Poly partial_sum(const CoefficientStream& stream, long N);

}  // namespace utaylor
