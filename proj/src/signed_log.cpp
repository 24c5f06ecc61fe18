#include "goodturing/signed_log.hpp"

#include <algorithm>
#include <stdexcept>

namespace goodturing {

SignedLog SignedLog::from_double(double x) {
  if (std::isnan(x)) throw std::domain_error("SignedLog: NaN");
  if (x == 0.0) return SignedLog();
  return SignedLog(x > 0 ? 1 : -1, std::log(std::fabs(x)));
}

SignedLog SignedLog::from_log(double logmag, int sign) {
  if (sign == 0 || logmag == -std::numeric_limits<double>::infinity()) return SignedLog();
  return SignedLog(sign > 0 ? 1 : -1, logmag);
}

double SignedLog::to_double() const {
  return sign_ == 0 ? 0.0 : sign_ * std::exp(logmag_);
}

SignedLog& SignedLog::operator*=(const SignedLog& o) {
  if (sign_ == 0 || o.sign_ == 0) {
    *this = SignedLog();
  } else {
    sign_ *= o.sign_;
    logmag_ += o.logmag_;
  }
  return *this;
}

SignedLog& SignedLog::operator/=(const SignedLog& o) {
  if (o.sign_ == 0) throw std::domain_error("SignedLog: division by zero");
  if (sign_ != 0) {
    sign_ *= o.sign_;
    logmag_ -= o.logmag_;
  }
  return *this;
}

SignedLog& SignedLog::operator+=(const SignedLog& o) {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) return *this = o;
  if (sign_ == o.sign_) {
    logmag_ = log_add_exp(logmag_, o.logmag_);
    return *this;
  }
  // Opposite signs: the larger magnitude keeps its sign.
  double hi = logmag_, lo = o.logmag_;
  int s = sign_;
  if (hi < lo) {
    std::swap(hi, lo);
    s = o.sign_;
  }
  if (hi == lo) return *this = SignedLog();
  sign_ = s;
  logmag_ = hi + std::log1p(-std::exp(lo - hi));
  return *this;
}

SignedLog SignedLog::pow(int e) const {
  if (e == 0) return one();
  if (sign_ == 0) {
    if (e < 0) throw std::domain_error("SignedLog: zero to a negative power");
    return SignedLog();
  }
  int s = (sign_ < 0 && (e % 2 != 0)) ? -1 : 1;
  return SignedLog(s, logmag_ * e);
}

double log_sum_exp(std::span<const double> xs) {
  LogSumAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.result();
}

void LogSumAccumulator::add(double log_term) {
  if (log_term == -std::numeric_limits<double>::infinity()) return;
  if (log_term <= max_) {
    scaled_ += std::exp(log_term - max_);
  } else {
    scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

double LogSumAccumulator::result() const {
  if (max_ == -std::numeric_limits<double>::infinity()) return max_;
  return max_ + std::log(scaled_);
}

}  // namespace goodturing
