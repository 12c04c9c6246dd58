#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace symlab {

/// Complex number with exact rational components.
///
/// mpq_class keeps values in lowest terms with positive denominators, so
/// equality is component comparison and arithmetic never rounds.
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(mpq_class r) : re(std::move(r)), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_im() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussianRational conj() const { return {re, -im}; }

    /// re^2 + im^2, the multiplicative norm.
    mpq_class norm() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        mpq_class n = b.norm();
        if (sgn(n) == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }

    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// Exact rational from "n" or "n/d" text. Throws parse-level
/// std::invalid_argument on malformed input or zero denominator.
mpq_class rational_from_string(const std::string& s);

std::string to_string(const mpq_class& q);

/// Canonical coefficient text: "3", "-3/2", "i", "-2i", "(1/2-3i)".
std::string to_string(const GaussianRational& c);

inline double to_double(const mpq_class& q) { return q.get_d(); }

} // namespace symlab
