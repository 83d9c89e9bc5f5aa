#include "utaylor/real.hpp"

#include "utaylor/error.hpp"

#include <gmp.h>

#include <cstdlib>
#include <ostream>
#include <utility>

namespace utaylor {

namespace {

thread_local long g_precision = kDefaultPrecisionBits;

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

}  // namespace

long working_precision() noexcept { return g_precision; }

void set_working_precision(long bits) {
    if (bits < kMinPrecisionBits || bits > MPFR_PREC_MAX) {
        throw PreconditionError("working precision must be at least " + std::to_string(kMinPrecisionBits) +
                                " bits, got " + std::to_string(bits));
    }
    g_precision = bits;
}

PrecisionScope::PrecisionScope(long bits) : saved_(g_precision) { set_working_precision(bits); }
PrecisionScope::~PrecisionScope() { g_precision = saved_; }

Real::Real() {
    mpfr_init2(value_, g_precision);
    mpfr_set_zero(value_, 1);
}

Real::Real(double v) {
    mpfr_init2(value_, g_precision);
    mpfr_set_d(value_, v, kRound);
}

Real::Real(int v) {
    mpfr_init2(value_, g_precision);
    mpfr_set_si(value_, v, kRound);
}

Real::Real(long v) {
    mpfr_init2(value_, g_precision);
    mpfr_set_si(value_, v, kRound);
}

Real Real::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    if (s.empty()) throw PreconditionError("empty numeric literal");

    Real r;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpq_t q;
        mpq_init(q);
        const int bad = mpq_set_str(q, s.c_str(), 10);
        if (bad != 0 || mpz_sgn(mpq_denref(q)) == 0) {
            mpq_clear(q);
            throw PreconditionError("malformed rational literal '" + s + "'");
        }
        mpq_canonicalize(q);
        mpfr_set_q(r.value_, q, kRound);
        mpq_clear(q);
        return r;
    }
    char* end = nullptr;
    mpfr_strtofr(r.value_, s.c_str(), &end, 0, kRound);
    if (end == s.c_str() || *end != '\0') throw PreconditionError("malformed numeric literal '" + s + "'");
    return r;
}

Real Real::pi() {
    Real r;
    mpfr_const_pi(r.value_, kRound);
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept {
    // Steal the limb storage; the moved-from object is left without limbs and
    // is only valid for destruction or assignment.
    value_[0] = other.value_[0];
    other.value_[0]._mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
    if (this == &other) return *this;
    if (value_[0]._mpfr_d == nullptr) {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
    } else if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    }
    mpfr_set(value_, other.value_, kRound);
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this == &other) return *this;
    release();
    value_[0] = other.value_[0];
    other.value_[0]._mpfr_d = nullptr;
    return *this;
}

Real::~Real() { release(); }

void Real::release() noexcept {
    if (value_[0]._mpfr_d != nullptr) {
        mpfr_clear(value_);
        value_[0]._mpfr_d = nullptr;
    }
}

std::string Real::to_hex() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

std::string Real::to_string(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Real& Real::operator+=(const Real& o) {
    mpfr_add(value_, value_, o.value_, kRound);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    mpfr_sub(value_, value_, o.value_, kRound);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    mpfr_mul(value_, value_, o.value_, kRound);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    mpfr_div(value_, value_, o.value_, kRound);
    return *this;
}

Real Real::operator-() const {
    Real r;
    mpfr_neg(r.value_, value_, kRound);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.value_, a.value_, b.value_, kRound);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.value_, a.value_, b.value_, kRound);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.value_, a.value_, b.value_, kRound);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.value_, a.value_, b.value_, kRound);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

#define UTAYLOR_UNARY(name, fn)               \
    Real name(const Real& x) {                \
        Real r;                               \
        fn(r.get(), x.get(), kRound);         \
        return r;                             \
    }

UTAYLOR_UNARY(abs, mpfr_abs)
UTAYLOR_UNARY(sqrt, mpfr_sqrt)
UTAYLOR_UNARY(log, mpfr_log)
UTAYLOR_UNARY(log2, mpfr_log2)
UTAYLOR_UNARY(exp, mpfr_exp)
UTAYLOR_UNARY(sin, mpfr_sin)
UTAYLOR_UNARY(cos, mpfr_cos)
UTAYLOR_UNARY(tan, mpfr_tan)

#undef UTAYLOR_UNARY

Real atan2(const Real& y, const Real& x) {
    Real r;
    mpfr_atan2(r.get(), y.get(), x.get(), kRound);
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r;
    mpfr_hypot(r.get(), x.get(), y.get(), kRound);
    return r;
}

Real pow(const Real& x, long n) {
    Real r;
    mpfr_pow_si(r.get(), x.get(), n, kRound);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r;
    mpfr_pow(r.get(), x.get(), y.get(), kRound);
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r;
    mpfr_mul_2si(r.get(), x.get(), e, kRound);
    return r;
}

const Real& max(const Real& a, const Real& b) { return (a < b) ? b : a; }
const Real& min(const Real& a, const Real& b) { return (b < a) ? b : a; }

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(static_cast<int>(os.precision())); }

}  // namespace utaylor
