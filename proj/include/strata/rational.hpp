#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace strata {

// Exact rational number. Always reduced, denominator > 0.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(int n) : q_(static_cast<long>(n)) {}
    Rational(long n, long d) : q_(n, d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    // Accepts "n", "n/d", and plain decimal strings like "-0.125".
    explicit Rational(const std::string& s) {
        // base 10 everywhere: mpq_class's default base-0 parse would read a
        // leading zero ("0125" from "0.125") as octal
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            q_ = mpq_class(s, 10);
        } else {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::string den = "1" + std::string(s.size() - dot - 1, '0');
            q_ = mpq_class(digits + "/" + den, 10);
        }
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational pow(int e) const {
        if (e == 0) return Rational(1);
        Rational base = *this;
        if (e < 0) {
            base = Rational(1) / base;
            e = -e;
        }
        Rational out(1);
        while (e > 0) {
            if (e & 1) out *= base;
            base *= base;
            e >>= 1;
        }
        return out;
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const { return q_.get_d(); }

    std::string num_str() const { return q_.get_num().get_str(); }
    std::string den_str() const { return q_.get_den().get_str(); }
    std::string str() const {
        if (q_.get_den() == 1) return num_str();
        return num_str() + "/" + den_str();
    }

private:
    mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace strata

#include <ostream>

namespace strata {
inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
}  // namespace strata
