#include "dimgroup/exact.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace dimgroup {

Mat identity_mat(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat zero_mat(std::size_t rows, std::size_t cols) { return Mat(rows, Vec(cols, 0)); }

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), p = b[0].size();
  assert(a[0].size() == k);
  Mat out(n, Vec(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

Mat mat_pow(const Mat& a, unsigned k) {
  Mat acc = identity_mat(a.size());
  Mat base = a;
  while (k) {
    if (k & 1u) acc = mat_mul(acc, base);
    k >>= 1u;
    if (k) base = mat_mul(base, base);
  }
  return acc;
}

Mat mat_transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat out(a[0].size(), Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

bool mat_eq(const Mat& a, const Mat& b) { return a == b; }

Vec row_times(const Vec& v, const Mat& m) {
  assert(v.size() == m.size());
  const std::size_t p = m.empty() ? 0 : m[0].size();
  Vec out(p, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < p; ++j) out[j] += v[i] * m[i][j];
  }
  return out;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec zero_vec(std::size_t n) { return Vec(n, 0); }

Vec ones_vec(std::size_t n) { return Vec(n, 1); }

std::vector<Int> char_poly(const Mat& a) {
  const std::size_t n = a.size();
  std::vector<Int> coeffs{1};
  if (n == 0) return coeffs;
  Mat mk = zero_mat(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mat t = mk;
    for (std::size_t i = 0; i < n; ++i) t[i][i] += coeffs.back();
    mk = mat_mul(a, t);
    Int c = 0;
    for (std::size_t i = 0; i < n; ++i) c -= mk[i][i];
    assert(c % Int(k) == 0);
    coeffs.push_back(c / Int(k));
  }
  return coeffs;
}

std::string poly_to_string(const std::vector<Int>& coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Int& c = coeffs[i];
    if (c == 0 && !(coeffs.size() == 1)) continue;
    const std::size_t p = deg - i;
    Int ab = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (ab != 1 || p == 0) os << ab.str();
    if (p >= 1) {
      if (ab != 1) os << "*";
      os << "x";
      if (p > 1) os << "^" << p;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].str();
  }
  os << ")";
  return os.str();
}

}  // namespace dimgroup
