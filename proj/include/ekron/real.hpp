#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace ekron {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;
inline constexpr mpfr_prec_t kMinPrecision = 64;

// RAII value wrapper over mpfr_t. Each value carries its own precision;
// binary operators round to the wider operand's precision, always MPFR_RNDN,
// so identical inputs give bit-identical results on every platform/thread.
class Real {
public:
    Real() { mpfr_init2(v_, kDefaultPrecision); mpfr_set_zero(v_, 1); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double d, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of_ui(unsigned long n, mpfr_prec_t prec = kDefaultPrecision) {
        Real r(prec); mpfr_set_ui(r.v_, n, MPFR_RNDN); return r;
    }
    static Real of_si(long n, mpfr_prec_t prec = kDefaultPrecision) {
        Real r(prec); mpfr_set_si(r.v_, n, MPFR_RNDN); return r;
    }
    static Real of_q(const mpq_class& q, mpfr_prec_t prec = kDefaultPrecision) {
        Real r(prec); mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN); return r;
    }
    static Real of_z(const mpz_class& z, mpfr_prec_t prec = kDefaultPrecision) {
        Real r(prec); mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN); return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Decimal rendering with all digits the precision supports (deterministic).
    std::string str(int digits = 0) const;

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(unsigned long n) { mpfr_mul_ui(v_, v_, n, MPFR_RNDN); return *this; }
    Real& operator/=(unsigned long n) { mpfr_div_ui(v_, v_, n, MPFR_RNDN); return *this; }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }
    friend Real operator-(const Real& a) {
        Real r(a.precision()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend Real abs(const Real& a) {
        Real r(a.precision()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend Real log(const Real& a) {
        Real r(a.precision()); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.precision()); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend Real sqrt(const Real& a) {
        Real r(a.precision()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend Real pow(const Real& a, const Real& b) { return binop(a, b, mpfr_pow); }
    friend Real pow_si(const Real& a, long e) {
        Real r(a.precision()); mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN); return r;
    }

    static Real log_ui(unsigned long n, mpfr_prec_t prec = kDefaultPrecision) {
        Real r(prec); mpfr_log_ui(r.v_, n, MPFR_RNDN); return r;
    }
    static Real pi(mpfr_prec_t prec = kDefaultPrecision) {
        Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r;
    }

private:
    using mpfr_fn3 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real binop(const Real& a, const Real& b, mpfr_fn3 fn) {
        Real r(std::max(a.precision(), b.precision()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

// Compensated (Kahan) accumulator at a fixed precision, ascending-order use.
// Deterministic: the result depends only on the term sequence and precision.
class KahanSum {
public:
    explicit KahanSum(mpfr_prec_t prec) : sum_(prec), c_(prec), y_(prec), t_(prec) {}

    void add(mpfr_srcptr term) {
        mpfr_sub(y_.raw(), term, c_.raw(), MPFR_RNDN);          // y = term - c
        mpfr_add(t_.raw(), sum_.raw(), y_.raw(), MPFR_RNDN);    // t = sum + y
        mpfr_sub(c_.raw(), t_.raw(), sum_.raw(), MPFR_RNDN);    // c = (t - sum) - y
        mpfr_sub(c_.raw(), c_.raw(), y_.raw(), MPFR_RNDN);
        mpfr_set(sum_.raw(), t_.raw(), MPFR_RNDN);
    }
    void add(const Real& term) { add(term.raw()); }

    const Real& value() const { return sum_; }

private:
    Real sum_, c_, y_, t_;
};

}  // namespace ekron
