#ifndef GOODTURING_SIGNED_LOG_HPP
#define GOODTURING_SIGNED_LOG_HPP

#include <cmath>
#include <limits>
#include <span>
#include <utility>

namespace goodturing {

// A real number held as sign and natural log of its magnitude. Products of
// rising factorials and Stirling numbers leave double range near n = 170;
// in this form they don't.
class SignedLog {
 public:
  // Zero.
  constexpr SignedLog() = default;

  static SignedLog from_double(double x);
  static SignedLog from_log(double logmag, int sign = 1);
  static constexpr SignedLog zero() { return SignedLog(); }
  static constexpr SignedLog one() { return SignedLog(1, 0.0); }

  int sign() const { return sign_; }
  // Meaningless when sign() == 0.
  double logmag() const { return logmag_; }
  // -inf for zero; only meaningful for nonnegative values.
  double log() const {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : logmag_;
  }
  bool is_zero() const { return sign_ == 0; }
  double to_double() const;

  SignedLog operator-() const { return SignedLog(-sign_, logmag_); }
  SignedLog& operator*=(const SignedLog& o);
  SignedLog& operator/=(const SignedLog& o);
  SignedLog& operator+=(const SignedLog& o);
  SignedLog& operator-=(const SignedLog& o) { return *this += -o; }

  friend SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }
  friend SignedLog operator/(SignedLog a, const SignedLog& b) { return a /= b; }
  friend SignedLog operator+(SignedLog a, const SignedLog& b) { return a += b; }
  friend SignedLog operator-(SignedLog a, const SignedLog& b) { return a -= b; }

  SignedLog pow(int e) const;

 private:
  constexpr SignedLog(int sign, double logmag) : sign_(sign), logmag_(logmag) {}

  int sign_ = 0;
  double logmag_ = 0.0;
};

// log(exp(a) + exp(b)), tolerating -inf on either side.
inline double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(sum exp(x_i)); -inf for an empty range or all -inf.
double log_sum_exp(std::span<const double> xs);

// Accumulates log-space terms with a running maximum so that long sums of
// positive terms stay accurate.
class LogSumAccumulator {
 public:
  void add(double log_term);
  double result() const;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_ = 0.0;
};

}  // namespace goodturing

#endif  // GOODTURING_SIGNED_LOG_HPP
