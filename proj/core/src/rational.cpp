#include "toric/rational.hpp"

#include <sstream>

namespace toric {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw StructuralError("rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw StructuralError("cannot parse rational: '" + s + "'");
  }
}

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

bool solve_rational(std::vector<RatVec> A, RatVec b, RatVec& x) {
  const size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rational factor = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
      b[r] -= factor * b[col];
    }
  }
  x.resize(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return true;
}

Int int_det(const std::vector<IntVec>& rows) {
  const size_t n = rows.size();
  std::vector<RatVec> A(n, RatVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) A[i][j] = rows[i][j];
  Rational det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = -det;
    }
    det *= A[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (A[r][col] == 0) continue;
      Rational factor = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
    }
  }
  return numerator(det) / denominator(det);
}

}  // namespace toric
