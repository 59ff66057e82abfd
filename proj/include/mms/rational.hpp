#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <optional>
#include <vector>

namespace mms {

// Exact rational number, always held in canonical form (reduced, positive
// denominator). Every threshold and estimate in the solver goes through this
// type so repeated scaling never drifts.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      q_ = mpq_class(static_cast<long>(value));
    } else {
      q_ = mpq_class(static_cast<unsigned long>(value));
    }
  }

  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p", "p/q" and plain decimals such as "0.25" or "-3.5".
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    };
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string_view s = text.substr(b, e - b);
    if (s.empty()) return fail();

    auto is_digits = [](std::string_view d) {
      if (d.empty()) return false;
      for (char c : d)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      return true;
    };
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }

    mpq_class q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
      if (!is_digits(num) || !is_digits(den)) return fail();
      mpz_class d(std::string(den), 10);
      if (d == 0) return fail();
      q = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
      if (whole.empty() && frac.empty()) return fail();
      if ((!whole.empty() && !is_digits(whole)) || (!frac.empty() && !is_digits(frac))) return fail();
      std::string digits = std::string(whole) + std::string(frac);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      q = mpq_class(mpz_class(digits.empty() ? "0" : digits, 10), den);
    } else {
      if (!is_digits(s)) return fail();
      q = mpq_class(mpz_class(std::string(s), 10));
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rational(q);
  }

  // "p" for integers, "p/q" otherwise.
  std::string str() const { return q_.get_str(10); }
  double to_double() const { return q_.get_d(); }
  const mpq_class& raw() const { return q_; }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.sign() == 0) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Values rescaled to integers: values[t] == scaled[t] * unit.
struct ScaledValues {
  std::vector<std::int64_t> scaled;
  Rational unit;
};

// Multiplies every value by the lcm of their denominators. Returns nullopt
// when the scaled values, or their total, would not fit comfortably in int64.
inline std::optional<ScaledValues> scale_to_int64(const std::vector<Rational>& values) {
  mpz_class l = 1;
  for (const Rational& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den_mpz_t());
  mpz_class total = 0;
  ScaledValues out;
  out.scaled.reserve(values.size());
  for (const Rational& v : values) {
    mpz_class x = v.raw().get_num() * (l / v.raw().get_den());
    total += abs(x);
    if (!x.fits_slong_p() || total > mpz_class("1000000000000000000")) return std::nullopt;
    out.scaled.push_back(x.get_si());
  }
  out.unit = Rational(mpq_class(mpz_class(1), l));
  return out;
}

}  // namespace mms
