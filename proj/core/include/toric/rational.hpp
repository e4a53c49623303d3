#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exceptions used across the library.  Every failure path throws one of
// these; callers that want exit codes map them at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructuralError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct ConsistencyError : Error {
  using Error::Error;
};
struct ConvexityError : Error {
  using Error::Error;
};
struct UnsupportedError : Error {
  using Error::Error;
};

inline double to_double(const Rational& q) {
  return static_cast<double>(q);
}

// Parses "p/q" or "p"; also accepts plain decimal-free integers with sign.
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

using IntVec = std::vector<long long>;
using RatVec = std::vector<Rational>;

inline long long gcd_ll(long long a, long long b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

inline long long content(const IntVec& v) {
  long long g = 0;
  for (long long x : v) g = gcd_ll(g, x);
  return g;
}

inline Rational dot(const IntVec& a, const RatVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dotd(const IntVec& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += double(a[i]) * b[i];
  return s;
}

inline double dotd(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<double> to_doubles(const IntVec& v) {
  return std::vector<double>(v.begin(), v.end());
}

inline std::vector<double> to_doubles(const RatVec& v) {
  std::vector<double> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

// Solves A x = b over the rationals by Gaussian elimination.
// Returns false if A is singular.
bool solve_rational(std::vector<RatVec> A, RatVec b, RatVec& x);

// Determinant of a small integer matrix (rows).
Int int_det(const std::vector<IntVec>& rows);

}  // namespace toric
