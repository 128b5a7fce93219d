#pragma once

// Exact integer vectors and dense matrices. Everything that touches lattice
// membership is arbitrary-precision; doubles appear only in PerronData.
//
// Convention used across the library: functions on vertex sets are ROW
// vectors, and the level-n -> level-(n+1) promotion of the inductive limit is
// right multiplication v -> v*M by the incidence matrix M, whose entry
// M(a,b) counts occurrences of the letter a in sigma(b).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace dimgroup {

using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;  // row-major, rectangular

Mat identity_mat(std::size_t n);
Mat zero_mat(std::size_t rows, std::size_t cols);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_pow(const Mat& a, unsigned k);
Mat mat_transpose(const Mat& a);
bool mat_eq(const Mat& a, const Mat& b);

/// v * M (row vector times matrix).
Vec row_times(const Vec& v, const Mat& m);

bool is_zero_vec(const Vec& v);
Vec zero_vec(std::size_t n);
Vec ones_vec(std::size_t n);

/// Characteristic polynomial of a square integer matrix, exact
/// (Faddeev-LeVerrier). Coefficients leading-first: x^n + c[1] x^{n-1} + ...
/// The empty matrix yields {1}.
std::vector<Int> char_poly(const Mat& a);

/// Render a coefficient list from char_poly as a human-readable polynomial.
std::string poly_to_string(const std::vector<Int>& coeffs);

std::string vec_to_string(const Vec& v);

}  // namespace dimgroup
