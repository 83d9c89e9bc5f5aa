#include "utaylor/complex.hpp"

#include "utaylor/error.hpp"

#include <ostream>

namespace utaylor {

namespace {
constexpr mpfr_rnd_t kRound = MPFR_RNDN;
}

Complex Complex::polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

Complex Complex::unit(const Real& theta) {
    Complex z;
    mpfr_sin_cos(z.im.get(), z.re.get(), theta.get(), kRound);
    return z;
}

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    Complex out;
    kernel::mul(out, *this, o);
    *this = std::move(out);
    return *this;
}

Complex& Complex::operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
    Complex out;
    kernel::mul(out, a, b);
    return out;
}

Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }

Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm keeps intermediate magnitudes bounded.
    if (abs(b.re) >= abs(b.im)) {
        if (b.re.is_zero()) throw DomainError("complex division by zero");
        const Real r = b.im / b.re;
        const Real d = b.re + r * b.im;
        return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    const Real r = b.re / b.im;
    const Real d = b.im + r * b.re;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) {
    Real r;
    mpfr_sqr(r.get(), z.re.get(), kRound);
    Real t;
    mpfr_sqr(t.get(), z.im.get(), kRound);
    r += t;
    return r;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) { return Complex::polar(exp(z.re), z.im); }

Complex log(const Complex& z) {
    if (z.is_zero()) throw DomainError("log(0)");
    return {log(abs(z)), arg(z)};
}

Complex sqrt(const Complex& z) {
    if (z.is_zero()) return {};
    const Real m = abs(z);
    Real a = sqrt(ldexp(m + abs(z.re), -1));
    if (z.re.sign() >= 0) return {a, z.im / ldexp(a, 1)};
    Real b = abs(z.im) / ldexp(a, 1);
    if (z.im.sign() < 0) return {b, -a};
    return {b, a};
}

Complex pow(const Complex& z, long n) {
    if (n < 0) {
        if (z.is_zero()) throw DomainError("negative power of zero");
        return Complex(1) / pow(z, -n);
    }
    Complex result(1);
    Complex base = z;
    unsigned long e = static_cast<unsigned long>(n);
    Complex tmp;
    while (e != 0) {
        if (e & 1UL) {
            kernel::mul(tmp, result, base);
            std::swap(result, tmp);
        }
        e >>= 1UL;
        if (e != 0) {
            kernel::mul(tmp, base, base);
            std::swap(base, tmp);
        }
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << (z.im.sign() < 0 ? " - " : " + ") << abs(z.im) << "i)";
}

namespace kernel {

void mul_acc(Complex& acc, const Complex& a, const Complex& b, Real& tmp) {
    mpfr_fmms(tmp.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), kRound);
    mpfr_add(acc.re.get(), acc.re.get(), tmp.get(), kRound);
    mpfr_fmma(tmp.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), kRound);
    mpfr_add(acc.im.get(), acc.im.get(), tmp.get(), kRound);
}

void conj_mul_acc(Complex& acc, const Complex& a, const Complex& b, Real& tmp) {
    // conj(a) b = (ar br + ai bi) + i (ar bi - ai br)
    mpfr_fmma(tmp.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), kRound);
    mpfr_add(acc.re.get(), acc.re.get(), tmp.get(), kRound);
    mpfr_fmms(tmp.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), kRound);
    mpfr_add(acc.im.get(), acc.im.get(), tmp.get(), kRound);
}

void sub_scaled(Complex& acc, const Complex& s, const Complex& a, Real& tmp) {
    mpfr_fmms(tmp.get(), s.re.get(), a.re.get(), s.im.get(), a.im.get(), kRound);
    mpfr_sub(acc.re.get(), acc.re.get(), tmp.get(), kRound);
    mpfr_fmma(tmp.get(), s.re.get(), a.im.get(), s.im.get(), a.re.get(), kRound);
    mpfr_sub(acc.im.get(), acc.im.get(), tmp.get(), kRound);
}

void mul(Complex& out, const Complex& a, const Complex& b) {
    mpfr_fmms(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), kRound);
    mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), kRound);
}

void weighted_conj_mul_acc(Complex& acc, const Real& w, const Complex& a, const Complex& b, Complex& tmp_c,
                           Real& tmp) {
    mpfr_fmma(tmp_c.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), kRound);
    mpfr_fmms(tmp_c.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), kRound);
    mpfr_mul(tmp.get(), tmp_c.re.get(), w.get(), kRound);
    mpfr_add(acc.re.get(), acc.re.get(), tmp.get(), kRound);
    mpfr_mul(tmp.get(), tmp_c.im.get(), w.get(), kRound);
    mpfr_add(acc.im.get(), acc.im.get(), tmp.get(), kRound);
}

}  // namespace kernel

}  // namespace utaylor
