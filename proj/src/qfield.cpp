#include "mixmult/qfield.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "mixmult/errors.hpp"

namespace mixmult {

bool is_squarefree(std::int64_t d) {
  if (d < 2) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

QuadNumber::QuadNumber(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!is_squarefree(d)) {
    throw ComputationError("field parameter d=" + std::to_string(d) + " is not a squarefree integer >= 2");
  }
  a_.canonicalize();
  b_.canonicalize();
}

std::int64_t common_field(const QuadNumber& x, const QuadNumber& y) {
  if (x.d() == 0) return y.d();
  if (y.d() == 0 || x.d() == y.d()) return x.d();
  throw ComputationError("mismatched discriminants: sqrt(" + std::to_string(x.d()) + ") vs sqrt(" +
                         std::to_string(y.d()) + ")");
}

QuadNumber QuadNumber::in_field(std::int64_t d) const {
  if (d_ != 0 && d_ != d) {
    throw ComputationError("mismatched discriminants: sqrt(" + std::to_string(d_) + ") vs sqrt(" +
                           std::to_string(d) + ")");
  }
  return QuadNumber(a_, b_, d);
}

QuadNumber QuadNumber::conjugate() const {
  QuadNumber r = *this;
  r.b_ = -r.b_;
  return r;
}

Rational QuadNumber::norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

QuadNumber QuadNumber::operator-() const {
  QuadNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& y) {
  d_ = common_field(*this, y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& y) {
  d_ = common_field(*this, y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& y) {
  d_ = common_field(*this, y);
  Rational a = a_ * y.a_ + Rational(d_) * b_ * y.b_;
  Rational b = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadNumber& QuadNumber::operator/=(const QuadNumber& y) {
  d_ = common_field(*this, y);
  if (y.is_zero()) throw ComputationError("division by zero");
  // x / y = x * conj(y) / N(y); N(y) != 0 because sqrt(d) is irrational.
  QuadNumber yy = y;
  yy.d_ = d_;
  const Rational n = yy.norm();
  *this *= yy.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

bool operator==(const QuadNumber& x, const QuadNumber& y) {
  common_field(x, y);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y) {
  const int s = sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int sign(const QuadNumber& x) {
  const int sa = sgn(x.a());
  const int sb = sgn(x.b());
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the part with the larger square wins.
  const Rational a2 = x.a() * x.a();
  const Rational db2 = Rational(x.d()) * x.b() * x.b();
  return a2 > db2 ? sa : sb;
}

QuadNumber abs(const QuadNumber& x) { return sign(x) < 0 ? -x : x; }

namespace {

Integer floor_rational(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer pow10(unsigned digits) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, digits);
  return r;
}

}  // namespace

RationalBounds enclose(const QuadNumber& x, unsigned digits) {
  if (x.is_rational()) return {x.a(), x.a()};
  const Integer scale = pow10(digits);
  Integer s;
  const Integer radicand = Integer(x.d()) * scale * scale;
  mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
  // s/scale <= sqrt(d) < (s+1)/scale
  const Rational lo_root(s, scale);
  const Rational hi_root(Integer(s + 1), scale);
  RationalBounds out;
  if (sgn(x.b()) > 0) {
    out.lo = x.a() + x.b() * lo_root;
    out.hi = x.a() + x.b() * hi_root;
  } else {
    out.lo = x.a() + x.b() * hi_root;
    out.hi = x.a() + x.b() * lo_root;
  }
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

Integer ceil(const QuadNumber& x) {
  // The approximation only proposes a candidate; sign() decides.
  Integer k = floor_rational(enclose(x, 4).hi) + 1;
  while (sign(QuadNumber(Rational(k)) - x) < 0) ++k;
  while (sign(QuadNumber(Rational(k - 1)) - x) >= 0) --k;
  return k;
}

Integer floor(const QuadNumber& x) { return -ceil(-x); }

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace

std::optional<QuadNumber> sqrt_in_field(const Rational& q, std::int64_t d) {
  if (sgn(q) < 0) return std::nullopt;
  if (auto r = rational_sqrt(q)) return QuadNumber(*r, Rational(0), d);
  if (auto r = rational_sqrt(q / Rational(d))) return QuadNumber(Rational(0), *r, d);
  return std::nullopt;
}

std::optional<QuadNumber> field_sqrt(const QuadNumber& x, std::int64_t d) {
  const QuadNumber v = x.in_field(d);
  if (sign(v) < 0) return std::nullopt;
  if (v.is_rational()) return sqrt_in_field(v.a(), d);
  // (p + q sqrt d)^2 = v forces p^2 + d q^2 = a, 2pq = b, so p^2 = (a +- sqrt(N(v)))/2.
  const auto m = rational_sqrt(v.norm());
  if (!m) return std::nullopt;
  for (const Rational& p2 : {Rational((v.a() + *m) / 2), Rational((v.a() - *m) / 2)}) {
    const auto p = rational_sqrt(p2);
    if (!p || sgn(*p) == 0) continue;
    QuadNumber root(*p, v.b() / (2 * *p), d);
    if (sign(root) < 0) root = -root;
    if (root * root == v) return root;
  }
  return std::nullopt;
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string canonical_string(const QuadNumber& x) {
  if (x.is_zero()) return "0";
  const std::string root = "sqrt(" + std::to_string(x.d()) + ")";
  if (x.is_rational()) return rational_string(x.a());
  if (sgn(x.a()) == 0) return rational_string(x.b()) + "*" + root;
  const bool neg = sgn(x.b()) < 0;
  return rational_string(x.a()) + (neg ? " - " : " + ") + rational_string(neg ? Rational(-x.b()) : x.b()) + "*" +
         root;
}

std::ostream& operator<<(std::ostream& os, const QuadNumber& x) { return os << canonical_string(x); }

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse number '" + std::string(s_) + "': " + why);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

Rational scan_unsigned_rational(Scanner& sc) {
  Integer num(sc.digits());
  Integer den(1);
  if (sc.accept('/')) {
    den = Integer(sc.digits());
    if (den == 0) sc.fail("zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  Scanner sc(text);
  bool neg = false;
  if (sc.accept('-')) {
    neg = true;
  } else {
    sc.accept('+');
  }
  Rational q = scan_unsigned_rational(sc);
  if (!sc.done()) sc.fail("trailing characters");
  return neg ? Rational(-q) : q;
}

QuadNumber parse_quad(std::string_view text, std::int64_t d) {
  Scanner sc(text);
  if (sc.done()) sc.fail("empty");
  Rational a(0), b(0);
  bool first = true;
  while (!sc.done()) {
    bool neg = false;
    if (sc.accept('-')) {
      neg = true;
    } else if (!sc.accept('+') && !first) {
      sc.fail("expected '+' or '-'");
    }
    first = false;
    Rational coef(1);
    bool has_coef = false;
    if (sc.peek_digit()) {
      coef = scan_unsigned_rational(sc);
      has_coef = true;
    }
    bool is_root = false;
    if (has_coef) {
      if (sc.accept('*')) {
        if (!sc.accept_word("sqrt")) sc.fail("expected sqrt after '*'");
        is_root = true;
      }
    } else {
      if (!sc.accept_word("sqrt")) sc.fail("expected a number or sqrt(d)");
      is_root = true;
    }
    if (is_root) {
      if (!sc.accept('(')) sc.fail("expected '('");
      const std::string e = sc.digits();
      if (!sc.accept(')')) sc.fail("expected ')'");
      if (std::stoll(e) != d) sc.fail("sqrt(" + e + ") is not in the field Q(sqrt(" + std::to_string(d) + "))");
      b += neg ? Rational(-coef) : coef;
    } else {
      a += neg ? Rational(-coef) : coef;
    }
  }
  return QuadNumber(a, b, d);
}

}  // namespace mixmult
