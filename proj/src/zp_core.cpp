#include "zp_core.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace annulus {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int inv_mod(long long a, int p) {
  long long r0 = mod(a, p), r1 = p, s0 = 1, s1 = 0;
  if (r0 == 0) fail(ErrorCode::not_invertible, "not invertible: 0 mod " + std::to_string(p));
  while (r1 != 0) {
    long long q = r0 / r1;
    long long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) fail(ErrorCode::not_invertible, "not invertible modulo " + std::to_string(p));
  return mod(s0, p);
}

ZpElem::ZpElem(long long value, int p) : p_(p) {
  if (!is_prime(p)) fail(ErrorCode::invalid_argument, "modulus is not prime: " + std::to_string(p));
  value_ = mod(value, p);
}

void ZpElem::check_same(const ZpElem& o) const {
  if (o.p_ != p_) fail(ErrorCode::invalid_argument, "mixed moduli");
}

ZpElem ZpElem::operator+(const ZpElem& o) const {
  check_same(o);
  return ZpElem(value_ + o.value_, p_);
}

ZpElem ZpElem::operator-(const ZpElem& o) const {
  check_same(o);
  return ZpElem(value_ - o.value_, p_);
}

ZpElem ZpElem::operator*(const ZpElem& o) const {
  check_same(o);
  return ZpElem(static_cast<long long>(value_) * o.value_, p_);
}

ZpElem ZpElem::operator-() const { return ZpElem(-value_, p_); }

ZpElem mod_inverse(const ZpElem& a) {
  return ZpElem(inv_mod(a.value(), a.modulus()), a.modulus());
}

// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<long>;

// Exact division of monic integer polynomials (low degree first).
Poly poly_div(Poly num, const Poly& den) {
  int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
  Poly q(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    long c = num[i];
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return q;
}

Poly cyclotomic(int n, std::map<int, Poly>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = poly_div(num, cyclotomic(d, cache));
  cache[n] = num;
  return num;
}

}  // namespace

CycField::CycField(int N) : N_(N) {
  if (N < 1) fail(ErrorCode::invalid_argument, "cyclotomic order must be positive");
  std::map<int, Poly> cache;
  Poly phi = cyclotomic(N, cache);
  phi_ = static_cast<int>(phi.size()) - 1;
  Poly cur(phi_, 0);
  cur[0] = 1;
  for (int k = 0; k < 2 * N; ++k) {
    powers_.push_back(cur);
    // multiply by x and reduce by the monic phi
    Poly next(phi_ + 1, 0);
    for (int i = 0; i < phi_; ++i) next[i + 1] = cur[i];
    long lead = next[phi_];
    for (int i = 0; i <= phi_; ++i) next[i] -= lead * phi[i];
    next.resize(phi_);
    cur = next;
  }
}

const CycField& CycField::get(int N) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = fields[N];
  if (!slot) slot.reset(new CycField(N));
  return *slot;
}

CycScalar::CycScalar(int N) : N_(N), c_(CycField::get(N).degree()) {}

CycScalar::CycScalar(int N, const mpq_class& r) : CycScalar(N) {
  c_[0] = r;
  c_[0].canonicalize();
}

CycScalar CycScalar::root(int N, long long e) {
  const CycField& f = CycField::get(N);
  CycScalar out(N);
  const auto& pw = f.power(mod(e, N));
  for (int i = 0; i < f.degree(); ++i) out.c_[i] = pw[i];
  return out;
}

void CycScalar::check_same(const CycScalar& o) const {
  if (o.N_ != N_) fail(ErrorCode::invalid_argument, "mismatched cyclotomic orders");
}

bool CycScalar::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycScalar::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
  CycScalar r = *this;
  r += o;
  return r;
}

CycScalar CycScalar::operator-(const CycScalar& o) const {
  CycScalar r = *this;
  r -= o;
  return r;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycScalar CycScalar::from_powers(int N, const std::vector<mpq_class>& full) {
  const CycField& f = CycField::get(N);
  CycScalar out(N);
  for (std::size_t k = 0; k < full.size(); ++k) {
    if (full[k] == 0) continue;
    const auto& pw = f.power(static_cast<int>(k));
    for (int i = 0; i < f.degree(); ++i)
      if (pw[i] != 0) out.c_[i] += full[k] * pw[i];
  }
  return out;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
  check_same(o);
  std::size_t d = c_.size();
  if (is_rational()) return o * c_[0];
  if (o.is_rational()) return *this * o.c_[0];
  std::vector<mpq_class> full(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (o.c_[j] != 0) full[i + j] += c_[i] * o.c_[j];
  }
  return from_powers(N_, full);
}

CycScalar CycScalar::operator*(const mpq_class& r) const {
  mpq_class rc = r;
  rc.canonicalize();
  CycScalar out = *this;
  for (auto& q : out.c_) q *= rc;
  return out;
}

bool CycScalar::operator==(const CycScalar& o) const {
  return N_ == o.N_ && c_ == o.c_;
}

CycScalar CycScalar::mul_root(long long e) const {
  int s = mod(e, N_);
  if (s == 0) return *this;
  std::vector<mpq_class> full(c_.size() + N_);
  for (std::size_t i = 0; i < c_.size(); ++i) full[i + s] = c_[i];
  return from_powers(N_, full);
}

CycScalar CycScalar::galois(int k) const {
  if (std::gcd(k, N_) != 1) fail(ErrorCode::invalid_argument, "galois exponent not coprime to N");
  std::vector<mpq_class> full(N_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    full[mod(static_cast<long long>(i) * k, N_)] += c_[i];
  return from_powers(N_, full);
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) fail(ErrorCode::not_invertible, "division by zero in Q(zeta)");
  if (is_rational()) return CycScalar(N_, 1 / c_[0]);
  CycScalar conj = one(N_);
  for (int k = 2; k < N_; ++k)
    if (std::gcd(k, N_) == 1) conj *= galois(k);
  CycScalar norm = *this * conj;
  if (!norm.is_rational()) fail(ErrorCode::internal, "field norm is not rational");
  return conj * (1 / norm.c_[0]);
}

std::string CycScalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const mpq_class& q = c_[i];
    if (q == 0) continue;
    mpq_class a = abs(q);
    if (first) {
      if (q < 0) os << "-";
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "w^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

CycScalar cyc_mul(const CycScalar& x, const CycScalar& y) { return x * y; }

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, int N)
    : rows_(rows), cols_(cols), N_(N), a_(rows * cols, CycScalar(N)) {}

ExactMatrix ExactMatrix::identity(std::size_t n, int N) {
  ExactMatrix m(n, n, N);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycScalar::one(N);
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_ || N_ != o.N_) fail(ErrorCode::invalid_argument, "matrix shape mismatch");
  ExactMatrix r(rows_, o.cols_, N_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const CycScalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const CycScalar& y = o.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::invalid_argument, "matrix shape mismatch");
  ExactMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::invalid_argument, "matrix shape mismatch");
  ExactMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix r(cols_, rows_, N_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

ExactMatrix ExactMatrix::column(std::size_t c) const { return columns({c}); }

ExactMatrix ExactMatrix::columns(const std::vector<std::size_t>& idx) const {
  ExactMatrix r(rows_, idx.size(), N_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, j) = at(i, idx[j]);
  return r;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<std::size_t> pivot_columns(const ExactMatrix& a) {
  std::size_t R = a.rows(), C = a.cols();
  std::vector<std::vector<CycScalar>> m(R, std::vector<CycScalar>(C, CycScalar(a.order())));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) m[i][j] = a.at(i, j);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t sel = R;
    for (std::size_t i = r; i < R; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == R) continue;
    std::swap(m[r], m[sel]);
    CycScalar inv = m[r][c].inverse();
    for (std::size_t j = c; j < C; ++j)
      if (!m[r][j].is_zero()) m[r][j] = m[r][j] * inv;
    for (std::size_t i = r + 1; i < R; ++i) {
      if (m[i][c].is_zero()) continue;
      CycScalar f = m[i][c];
      for (std::size_t j = c; j < C; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::size_t matrix_rank(const ExactMatrix& a) { return pivot_columns(a).size(); }

std::vector<ExactMatrix> image_basis(const ExactMatrix& a) {
  std::vector<ExactMatrix> out;
  for (std::size_t c : pivot_columns(a)) out.push_back(a.column(c));
  return out;
}

}  // namespace annulus
