#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace annulus {

bool is_prime(long long n);

// Residue of v in [0, p).
inline int mod(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

// Inverse of a modulo the prime p; throws not_invertible for a = 0 mod p.
int inv_mod(long long a, int p);

class ZpElem {
 public:
  ZpElem(long long value, int p);

  int value() const { return value_; }
  int modulus() const { return p_; }

  ZpElem operator+(const ZpElem& o) const;
  ZpElem operator-(const ZpElem& o) const;
  ZpElem operator*(const ZpElem& o) const;
  ZpElem operator-() const;
  bool operator==(const ZpElem& o) const {
    return p_ == o.p_ && value_ == o.value_;
  }

 private:
  void check_same(const ZpElem& o) const;
  int value_;
  int p_;
};

ZpElem mod_inverse(const ZpElem& a);

// Q(zeta_N) presented in the power basis modulo the N-th cyclotomic polynomial.
class CycField {
 public:
  static const CycField& get(int N);

  int order() const { return N_; }
  int degree() const { return phi_; }
  // Coefficients of x^k reduced modulo Phi_N, 0 <= k < 2N.
  const std::vector<long>& power(int k) const { return powers_[k]; }

 private:
  explicit CycField(int N);
  int N_;
  int phi_;
  std::vector<std::vector<long>> powers_;
};

class CycScalar {
 public:
  explicit CycScalar(int N = 1);
  CycScalar(int N, const mpq_class& r);

  static CycScalar zero(int N) { return CycScalar(N); }
  static CycScalar one(int N) { return CycScalar(N, 1); }
  // zeta_N^e for any integer e.
  static CycScalar root(int N, long long e);

  int order() const { return N_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;

  CycScalar operator+(const CycScalar& o) const;
  CycScalar operator-(const CycScalar& o) const;
  CycScalar operator-() const;
  CycScalar operator*(const CycScalar& o) const;
  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o) { return *this = *this * o; }
  CycScalar operator*(const mpq_class& r) const;
  bool operator==(const CycScalar& o) const;
  bool operator!=(const CycScalar& o) const { return !(*this == o); }

  // Multiply by zeta_N^e without a general product.
  CycScalar mul_root(long long e) const;
  // Image under the automorphism zeta -> zeta^k, gcd(k, N) = 1.
  CycScalar galois(int k) const;
  CycScalar inverse() const;

  // Terms like "1/3*w^2 - w^4"; w stands for zeta_N.
  std::string to_string() const;

 private:
  void check_same(const CycScalar& o) const;
  static CycScalar from_powers(int N, const std::vector<mpq_class>& full);
  int N_;
  std::vector<mpq_class> c_;
};

CycScalar cyc_mul(const CycScalar& x, const CycScalar& y);

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols, int N);

  static ExactMatrix identity(std::size_t n, int N);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int order() const { return N_; }

  CycScalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const CycScalar& at(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  bool operator==(const ExactMatrix& o) const;
  ExactMatrix transpose() const;
  ExactMatrix column(std::size_t c) const;
  // Columns with the given indices, in order.
  ExactMatrix columns(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int N_ = 1;
  std::vector<CycScalar> a_;
};

std::size_t matrix_rank(const ExactMatrix& a);
// Indices of the first independent columns in column order.
std::vector<std::size_t> pivot_columns(const ExactMatrix& a);
std::vector<ExactMatrix> image_basis(const ExactMatrix& a);

}  // namespace annulus
