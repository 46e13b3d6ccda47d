#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

namespace rcp {

// Exact arithmetic backend. Inputs given as rationals (or decimal strings)
// are processed without rounding; every strict inequality in a certificate
// is then decided exactly.
using Rational = boost::multiprecision::mpq_rational;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
  static double from_rational(const Rational& x) { return x.convert_to<double>(); }

  static std::string str(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
  }

  static std::optional<double> parse(const std::string& s);
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_rational(const Rational& x) { return x; }

  static std::string str(const Rational& x) {
    std::ostringstream os;
    os << x;
    return os.str();
  }

  // Accepts "p/q", integers, plain decimals and exponent notation, all
  // converted without rounding.
  static std::optional<Rational> parse(const std::string& s);
};

namespace detail {

inline std::optional<boost::multiprecision::mpz_int> parse_integer(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  return boost::multiprecision::mpz_int(s);
}

}  // namespace detail

inline std::optional<double> ScalarTraits<double>::parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (auto r = ScalarTraits<Rational>::parse(s)) return r->convert_to<double>();
  return std::nullopt;
}

inline std::optional<Rational> ScalarTraits<Rational>::parse(const std::string& s) {
  using boost::multiprecision::mpz_int;
  if (s.empty()) return std::nullopt;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto num = detail::parse_integer(s.substr(0, slash));
    auto den = detail::parse_integer(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  std::string mantissa = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    auto tail = s.substr(e + 1);
    char* end = nullptr;
    exp10 = std::strtol(tail.c_str(), &end, 10);
    if (end == tail.c_str() || *end != '\0') return std::nullopt;
    mantissa = s.substr(0, e);
  }
  std::string digits = mantissa;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exp10 -= static_cast<long>(mantissa.size() - dot - 1);
  }
  auto num = detail::parse_integer(digits);
  if (!num) return std::nullopt;
  Rational value(*num);
  mpz_int pow10 = boost::multiprecision::pow(mpz_int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0)
    value /= Rational(pow10);
  else
    value *= Rational(pow10);
  return value;
}

// Named numerical tolerances. The exact backend sets them all to zero so
// strict inequalities are decided exactly; the float backend uses the
// documented defaults. Thresholds marked "relative" are multiplied by a
// local scale at the point of use.
template <class S>
struct Tolerances {
  S rank;     // pivot threshold for rank decisions, relative to max pivot
  S bary;     // barycentric activity threshold (minimal index sets)
  S solve;    // linear-solve residual acceptance, relative
  S feas;     // cone inequality slack
  S geo;      // point coincidence threshold, relative to simplex diameter
  S strict;   // margin for "strictly negative" branch decisions, relative
  S indep;    // 2x2 determinant threshold for linear independence
  S nonzero;  // relative nonvanishing threshold used by sampling checks

  static Tolerances defaults() {
    if constexpr (ScalarTraits<S>::exact) {
      return Tolerances{S(0), S(0), S(0), S(0), S(0), S(0), S(0), S(0)};
    } else {
      return Tolerances{S(1e-9), S(1e-9), S(1e-9), S(1e-9),
                        S(1e-9), S(1e-8), S(1e-8), S(1e-7)};
    }
  }
};

}  // namespace rcp
