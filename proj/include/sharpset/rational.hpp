#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sharpset {

// Exact rational number. GMP keeps the value canonical (lowest terms,
// positive denominator) after every operation.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : q_(v) {}
  Rat(long v) : q_(v) {}
  Rat(long long v) : q_(static_cast<long>(v)) {}
  Rat(unsigned long v) : q_(v) {}
  Rat(long num, long den);
  explicit Rat(const mpq_class& q) : q_(q) {}
  explicit Rat(const mpz_class& z) : q_(z) {}

  // Accepts "7", "-3/2", "  4 ". Throws std::invalid_argument otherwise.
  static Rat parse(std::string_view text);

  // "num/den", or "num" for integers.
  std::string str() const;

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  Rat floor() const;
  Rat abs() const;
  double to_double() const { return q_.get_d(); }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  mpq_class& raw() { return q_; }

  // Compares |a| with |b|.
  static int cmp_abs(const Rat& a, const Rat& b);
  // this += a * b without temporaries.
  void add_mul(const Rat& a, const Rat& b);

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b) { Rat r(a); r /= b; return r; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class q_;
};

using Vec = std::vector<Rat>;

// Dense row-major rational matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  void append_row(const Vec& r);
  Mat transpose() const;
  Vec operator*(const Vec& x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

Rat dot(const Vec& a, const Vec& b);
Rat sum(const Vec& a);
Vec zeros(std::size_t n);
bool lex_less(const Vec& a, const Vec& b);

// "1/2,3;4,5" style matrix literal (rows separated by ';').
Mat parse_matrix(std::string_view text);
Vec parse_vector(std::string_view text, char sep = ',');
std::string to_string(const Vec& v);

struct VecHash {
  std::size_t operator()(const Vec& v) const;
};

}  // namespace sharpset
