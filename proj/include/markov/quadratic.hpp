#pragma once

#include <markov/scalar.hpp>

namespace markov {

/// Exact real quadratic number a + b*sqrt(delta) with a,b rational and
/// delta a nonnegative integer.  delta is normalized to 0 whenever it is a
/// perfect square (the square root is folded into the rational part), so
/// b != 0 implies the number is irrational.
class QuadraticReal {
  public:
    QuadraticReal() : a_(0), b_(0), delta_(0) {}
    QuadraticReal(Rational a) : a_(std::move(a)), b_(0), delta_(0) {}
    QuadraticReal(long a) : a_(a), b_(0), delta_(0) {}
    QuadraticReal(Rational a, Rational b, Int delta)
        : a_(std::move(a)), b_(std::move(b)), delta_(std::move(delta)) {
        normalize();
    }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    const Int& radicand() const { return delta_; }
    bool is_rational() const { return b_ == 0; }

    friend QuadraticReal operator+(const QuadraticReal& x, const QuadraticReal& y) {
        Int d = common_radicand(x, y);
        return QuadraticReal(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadraticReal operator-(const QuadraticReal& x, const QuadraticReal& y) {
        Int d = common_radicand(x, y);
        return QuadraticReal(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend QuadraticReal operator-(const QuadraticReal& x) {
        return QuadraticReal(-x.a_, -x.b_, x.delta_);
    }
    friend QuadraticReal operator*(const QuadraticReal& x, const QuadraticReal& y) {
        Int d = common_radicand(x, y);
        return QuadraticReal(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d),
                             x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend QuadraticReal operator/(const QuadraticReal& x, const QuadraticReal& y) {
        Int d = common_radicand(x, y);
        // 1/(a+b*sqrt(d)) = (a-b*sqrt(d)) / (a^2 - b^2 d)
        Rational n = y.a_ * y.a_ - y.b_ * y.b_ * Rational(d);
        if (n == 0) throw std::domain_error("division by zero QuadraticReal");
        return x * QuadraticReal(y.a_ / n, -y.b_ / n, d);
    }

    QuadraticReal pow(unsigned k) const {
        QuadraticReal r(1), base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    /// Sign of the exact real value: -1, 0 or +1.
    int sign() const {
        if (b_ == 0) return sgn(a_);
        if (a_ == 0) return sgn(b_);
        int sa = sgn(a_), sb = sgn(b_);
        if (sa == sb) return sa;
        // a and b*sqrt(delta) have opposite signs; compare squares.
        Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(delta_);
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    /// Exact equality (works across different radicand representations).
    friend bool operator==(const QuadraticReal& x, const QuadraticReal& y) {
        if (x.delta_ == y.delta_) return x.a_ == y.a_ && x.b_ == y.b_;
        // b1*sqrt(d1) - b2*sqrt(d2) = a2 - a1 : possible only if d1*d2 is a
        // perfect square (both b nonzero after normalization).
        if (x.b_ == 0 || y.b_ == 0) return false;
        Int prod = x.delta_ * y.delta_;
        Int r = boost::multiprecision::sqrt(prod);
        if (r * r != prod) return false;
        // sqrt(d2) = sqrt(prod)/d1 = r/d1
        return x.a_ == y.a_ && x.b_ * x.delta_ == y.b_ * r;
    }
    friend bool operator!=(const QuadraticReal& x, const QuadraticReal& y) { return !(x == y); }
    friend bool operator<(const QuadraticReal& x, const QuadraticReal& y) {
        if (x == y) return false;
        if (x.delta_ == y.delta_ || x.b_ == 0 || y.b_ == 0)
            return (x - y).sign() < 0;
        // different irrational radicands: compare via floats with enough bits
        // then fall back to exact interval refinement; 256 bits is far beyond
        // what word-sized data here needs.
        Real xf = x.to_real(256), yf = y.to_real(256);
        return xf < yf;
    }

    Real to_real(unsigned prec_bits = 128) const {
        Real::default_precision(static_cast<unsigned>(prec_bits * 0.302) + 2);
        Real r = to_real(a_);
        if (b_ != 0) r += to_real(b_) * sqrt(Real(delta_));
        return r;
    }
    double to_double() const { return static_cast<double>(to_real(64)); }

  private:
    static int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }
    static Real to_real(const Rational& q) { return markov::to_real(q); }

    void normalize() {
        if (delta_ < 0) throw std::domain_error("negative radicand");
        if (b_ == 0 || delta_ == 0) { b_ = 0; delta_ = 0; return; }
        Int r = boost::multiprecision::sqrt(delta_);
        if (r * r == delta_) {  // perfect square: fold
            a_ += b_ * Rational(r);
            b_ = 0;
            delta_ = 0;
        }
    }

    static Int common_radicand(const QuadraticReal& x, const QuadraticReal& y) {
        if (x.b_ == 0) return y.delta_;
        if (y.b_ == 0) return x.delta_;
        if (x.delta_ == y.delta_) return x.delta_;
        throw std::domain_error("QuadraticReal arithmetic across incompatible radicands");
    }

    Rational a_, b_;
    Int delta_;
};

}  // namespace markov
