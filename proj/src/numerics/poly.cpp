#include "utaylor/poly.hpp"

#include "utaylor/error.hpp"

#include <algorithm>

namespace utaylor {

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(long n, Complex c) {
    if (n < 0) throw PreconditionError("monomial exponent must be non-negative");
    if (c.is_zero()) return {};
    std::vector<Complex> v(static_cast<std::size_t>(n) + 1);
    v.back() = std::move(c);
    Poly p;
    p.coeffs_ = std::move(v);
    return p;
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

long Poly::valuation() const {
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (!coeffs_[j].is_zero()) return static_cast<long>(j);
    }
    return -1;
}

Complex Poly::coeff(long j) const {
    if (j < 0 || j > degree()) return {};
    return coeffs_[static_cast<std::size_t>(j)];
}

Complex Poly::operator()(const Complex& z) const { return poly_eval(*this, z); }

std::complex<double> Poly::eval(std::complex<double> z) const {
    std::complex<double> acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->to_std();
    return acc;
}

Poly Poly::shifted(long n) const {
    if (n < 0) throw PreconditionError("shift must be non-negative");
    if (is_zero() || n == 0) return *this;
    std::vector<Complex> v(static_cast<std::size_t>(n));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    Poly p;
    p.coeffs_ = std::move(v);
    return p;
}

Poly Poly::truncated(long n) const {
    if (n < 0) return {};
    if (n >= degree()) return *this;
    return Poly(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + n + 1));
}

Poly Poly::compose(const Poly& inner) const {
    // Horner in the polynomial ring.
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * inner;
        acc += Poly::constant(*it);
    }
    return acc;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Complex& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    Real tmp;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) kernel::mul_acc(out[i + j], a.coeffs_[i], b.coeffs_[j], tmp);
    }
    return Poly(std::move(out));
}

Complex poly_eval(const Poly& p, const Complex& z) {
    const auto& c = p.coeffs();
    if (c.empty()) return {};
    Complex acc = c.back();
    Complex tmp;
    for (std::size_t j = c.size() - 1; j-- > 0;) {
        kernel::mul(tmp, acc, z);
        tmp += c[j];
        std::swap(acc, tmp);
    }
    return acc;
}

std::vector<Complex> poly_eval_many(const Poly& p, std::span<const Complex> points) {
    std::vector<Complex> out;
    out.reserve(points.size());
    for (const auto& z : points) out.push_back(poly_eval(p, z));
    return out;
}

Poly partial_sum(const CoefficientStream& stream, long N) {
    if (N < 0) return {};
    std::vector<Complex> v;
    v.reserve(static_cast<std::size_t>(N) + 1);
    for (long j = 0; j <= N; ++j) {
        auto a = stream(j);
        if (!a) {
            throw StreamExhausted("coefficient stream exhausted at index " + std::to_string(j) + " (needed " +
                                  std::to_string(N + 1) + ")");
        }
        v.push_back(std::move(*a));
    }
    return Poly(std::move(v));
}

}  // namespace utaylor
