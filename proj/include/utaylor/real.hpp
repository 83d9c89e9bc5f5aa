#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace utaylor {

inline constexpr long kMinPrecisionBits = 53;
inline constexpr long kDefaultPrecisionBits = 256;

// Run-wide mantissa width (bits) used for every newly created Real.
long working_precision() noexcept;
void set_working_precision(long bits);

// Restores the previous working precision on scope exit.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    long saved_;
};

/// Binary floating point number with MPFR semantics (round to nearest).
///
/// A freshly constructed value takes the current working precision; results
/// of arithmetic are rounded to the working precision in effect when they are
/// produced. For a fixed precision every operation is deterministic.
class Real {
public:
    Real();
    Real(double v);  // NOLINT(google-explicit-constructor)
    Real(int v);     // NOLINT(google-explicit-constructor)
    Real(long v);    // NOLINT(google-explicit-constructor)

    // Accepts decimal ("0.3", "-1e-5"), hex float ("0x1.8p+1") and
    // rationals ("3/10"). Throws PreconditionError on malformed input.
    static Real parse(std::string_view text);
    static Real pi();

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    long precision() const noexcept { return static_cast<long>(mpfr_get_prec(value_)); }

    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    // Exact hexadecimal rendering ("0x1.8p+1"); parse() reads it back bit-exactly.
    std::string to_hex() const;
    std::string to_string(int digits = 20) const;

    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

private:
    void release() noexcept;

    mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
// x * 2^e, exact.
Real ldexp(const Real& x, long e);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace utaylor
