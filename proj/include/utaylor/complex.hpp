#pragma once

#include "utaylor/real.hpp"

#include <complex>
#include <utility>
#include <iosfwd>

namespace utaylor {

/// Complex scalar with both parts at the working precision.
struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r) : re(r) {}  // NOLINT(google-explicit-constructor)
    Complex(double r, double i) : re(r), im(i) {}
    Complex(int r) : re(r) {}  // NOLINT(google-explicit-constructor)
    Complex(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
    explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    static Complex polar(const Real& r, const Real& theta);
    // e^{i theta}
    static Complex unit(const Real& theta);

    std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator*=(const Real& s);
    Complex& operator/=(const Complex& o);
    Complex operator-() const { return {-re, -im}; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Real& s, const Complex& a);
Complex operator*(const Complex& a, const Real& s);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& s);

Complex conj(const Complex& z);
Real abs(const Complex& z);
// |z|^2
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
// Principal branch (Re sqrt >= 0).
Complex sqrt(const Complex& z);
// Binary powering; n may be negative (z != 0).
Complex pow(const Complex& z, long n);

std::ostream& operator<<(std::ostream& os, const Complex& z);

/// In-place kernels for inner loops; `tmp` is caller-owned scratch.
namespace kernel {

// acc += a * b
void mul_acc(Complex& acc, const Complex& a, const Complex& b, Real& tmp);
// acc += conj(a) * b
void conj_mul_acc(Complex& acc, const Complex& a, const Complex& b, Real& tmp);
// acc -= s * a
void sub_scaled(Complex& acc, const Complex& s, const Complex& a, Real& tmp);
// out = a * b; out must not alias a or b
void mul(Complex& out, const Complex& a, const Complex& b);
// acc += w * conj(a) * b with real weight w
void weighted_conj_mul_acc(Complex& acc, const Real& w, const Complex& a, const Complex& b, Complex& tmp_c, Real& tmp);

}  // namespace kernel

}  // namespace utaylor
