#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "coupler/errors.hpp"

namespace coupler {

// Truncated power series c_0 + c_1 t + ... + c_{n-1} t^{n-1}. All operands of
// a binary operation must have the same length.
template <class T>
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::size_t n, T value = T(0)) : c_(n, T(0)) {
    if (n > 0) c_[0] = value;
  }

  // a + t
  static Jet variable(std::size_t n, T a) {
    Jet j(n, a);
    if (n > 1) j.c_[1] = T(1);
    return j;
  }

  std::size_t size() const { return c_.size(); }
  T& operator[](std::size_t k) { return c_[k]; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  const std::vector<T>& coefficients() const { return c_; }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(T s) {
    for (T& v : c_) v *= s;
    return *this;
  }
  Jet& operator+=(T s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= T(-1); }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, T s) { return a += s; }
  friend Jet operator+(T s, Jet a) { return a += s; }
  friend Jet operator-(T s, Jet a) {
    a *= T(-1);
    return a += s;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const std::size_t n = a.size();
    // Skip the zero tail of short polynomials (linear entries are common).
    const std::size_t na = a.support(), nb = b.support();
    Jet r(n);
    for (std::size_t i = 0; i < na; ++i) {
      if (a.c_[i] == T(0)) continue;
      const std::size_t top = std::min(nb, n - i);
      for (std::size_t j = 0; j < top; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == T(0)) throw NumericalError("jet division by a series with zero constant term");
    const std::size_t n = a.size();
    const std::size_t nb = b.support();
    Jet r(n);
    for (std::size_t k = 0; k < n; ++k) {
      T acc = a.c_[k];
      for (std::size_t j = 1; j <= std::min(k, nb - 1); ++j) acc -= b.c_[j] * r.c_[k - j];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }

  friend Jet exp(const Jet& f) {
    using std::exp;
    const std::size_t n = f.size();
    Jet e(n);
    e.c_[0] = exp(f.c_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      T acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += T(j) * f.c_[j] * e.c_[k - j];
      e.c_[k] = acc / T(k);
    }
    return e;
  }

  friend Jet log(const Jet& f) {
    using std::log;
    if (!(f.c_[0] > T(0))) throw NumericalError("jet log of a series with nonpositive constant term");
    const std::size_t n = f.size();
    Jet l(n);
    l.c_[0] = log(f.c_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      T acc = f.c_[k];
      for (std::size_t j = 1; j < k; ++j) acc -= T(j) * l.c_[j] * f.c_[k - j] / T(k);
      l.c_[k] = acc / f.c_[0];
    }
    return l;
  }

 private:
  // One past the last nonzero coefficient.
  std::size_t support() const {
    std::size_t s = c_.size();
    while (s > 1 && c_[s - 1] == T(0)) --s;
    return s;
  }

  std::vector<T> c_;
};

// Square matrix of jets in row-major order.
template <class T>
class JetMatrix {
 public:
  JetMatrix(int dim, std::size_t order) : dim_(dim), a_(static_cast<std::size_t>(dim * dim), Jet<T>(order)) {}

  int dim() const { return dim_; }
  Jet<T>& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
  const Jet<T>& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }

 private:
  int dim_;
  std::vector<Jet<T>> a_;
};

// LU factorization with partial pivoting on the constant coefficients.
template <class T>
class JetLU {
 public:
  explicit JetLU(JetMatrix<T> a, T singular_tol = T(1e-300)) : lu_(std::move(a)), perm_(lu_.dim()) {
    using std::abs;
    const int n = lu_.dim();
    for (int i = 0; i < n; ++i) perm_[i] = i;
    for (int k = 0; k < n; ++k) {
      int p = k;
      for (int i = k + 1; i < n; ++i) {
        if (abs(lu_(i, k)[0]) > abs(lu_(p, k)[0])) p = i;
      }
      if (!(abs(lu_(p, k)[0]) > singular_tol)) throw NumericalError("jet LU: singular leading matrix");
      if (p != k) {
        for (int j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(k, j));
        std::swap(perm_[p], perm_[k]);
        sign_ = -sign_;
      }
      for (int i = k + 1; i < n; ++i) {
        lu_(i, k) = lu_(i, k) / lu_(k, k);
        for (int j = k + 1; j < n; ++j) lu_(i, j) -= lu_(i, k) * lu_(k, j);
      }
    }
  }

  Jet<T> determinant() const {
    Jet<T> d = lu_(0, 0);
    for (int k = 1; k < lu_.dim(); ++k) d = d * lu_(k, k);
    if (sign_ < 0) d *= T(-1);
    return d;
  }

  // log det for matrices whose determinant has a positive constant term;
  // summed per pivot so no intermediate product can overflow.
  Jet<T> log_abs_determinant() const {
    Jet<T> acc(lu_(0, 0).size());
    for (int k = 0; k < lu_.dim(); ++k) {
      Jet<T> u = lu_(k, k);
      if (u[0] < T(0)) u *= T(-1);
      acc += log(u);
    }
    return acc;
  }

  std::vector<Jet<T>> solve(const std::vector<Jet<T>>& b) const {
    const int n = lu_.dim();
    std::vector<Jet<T>> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    }
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
      x[i] = x[i] / lu_(i, i);
    }
    return x;
  }

 private:
  JetMatrix<T> lu_;
  std::vector<int> perm_;
  int sign_ = 1;
};

}  // namespace coupler
