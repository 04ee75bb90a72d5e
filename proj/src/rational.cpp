#include "sharpset/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace sharpset {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_int_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

Rat::Rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view n = trim(s.substr(0, slash));
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!is_int_literal(n) || !is_int_literal(d) || d.front() == '-' || d.front() == '+')
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  std::string ns(n.front() == '+' ? n.substr(1) : n);
  mpz_class num(ns, 10), den(std::string(d), 10);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(q);
}

std::string Rat::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat Rat::floor() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rat(f);
}

Rat Rat::abs() const { return sign() < 0 ? -*this : *this; }

int Rat::cmp_abs(const Rat& a, const Rat& b) {
  const int sa = a.sign(), sb = b.sign();
  if (sa == 0 || sb == 0) return (sa != 0) - (sb != 0);
  if (sa == sb) return sa * mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
  thread_local mpq_class tmp;
  mpq_neg(tmp.get_mpq_t(), b.q_.get_mpq_t());
  return sa * mpq_cmp(a.q_.get_mpq_t(), tmp.get_mpq_t());
}

void Rat::add_mul(const Rat& a, const Rat& b) {
  thread_local mpq_class tmp;
  mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
  mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Vec Mat::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void Mat::append_row(const Vec& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Mat::operator*(const Vec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) out[i].add_mul((*this)(i, j), x[j]);
  return out;
}

Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot size mismatch");
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s.add_mul(a[i], b[i]);
  return s;
}

Rat sum(const Vec& a) {
  Rat s;
  for (const auto& x : a) s += x;
  return s;
}

Vec zeros(std::size_t n) { return Vec(n); }

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Vec parse_vector(std::string_view text, char sep) {
  Vec out;
  for (auto part : split(trim(text), sep)) out.push_back(Rat::parse(part));
  return out;
}

Mat parse_matrix(std::string_view text) {
  Mat m;
  for (auto row : split(trim(text), ';')) m.append_row(parse_vector(row, ','));
  return m;
}

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

std::size_t VecHash::operator()(const Vec& v) const {
  std::size_t h = v.size();
  for (const auto& x : v) {
    std::size_t e = std::hash<std::string>{}(x.str());
    h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace sharpset
