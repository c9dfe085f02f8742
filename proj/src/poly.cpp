#include "vfree/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "vfree/error.hpp"
#include "vfree/upoly.hpp"

namespace vfree {

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

bool degrevlex_greater(const Monomial& a, const Monomial& b) {
  const unsigned da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m{};
  for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Field& f, unsigned nvars) : field_(&f), n_(nvars) {
  if (nvars > kMaxVars) throw_input("at most " + std::to_string(kMaxVars) + " variables");
}

MultiPoly MultiPoly::variable(const Field& f, unsigned nvars, unsigned i) {
  if (i >= nvars) throw_input("variable index out of range");
  Monomial m{};
  m[i] = 1;
  return monomial(f.one(), nvars, m);
}

MultiPoly MultiPoly::constant(const Scalar& c, unsigned nvars) {
  return monomial(c, nvars, Monomial{});
}

MultiPoly MultiPoly::monomial(const Scalar& c, unsigned nvars, const Monomial& m) {
  MultiPoly p(c.field(), nvars);
  if (!c.is_zero()) p.t_.push_back({m, c});
  return p;
}

void MultiPolyBuilder::add(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = acc_.find(m);
  if (it == acc_.end())
    acc_.emplace(m, c);
  else
    it->second += c;
}

MultiPoly MultiPolyBuilder::build() {
  MultiPoly p(*field_, n_);
  p.t_.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (!c.is_zero()) p.t_.push_back({m, c});
  acc_.clear();
  return p;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& t : t_) d = std::max(d, static_cast<int>(monomial_degree(t.mono)));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (t_.empty()) return true;
  const unsigned d = monomial_degree(t_.front().mono);
  for (const auto& t : t_)
    if (monomial_degree(t.mono) != d) return false;
  return true;
}

Scalar MultiPoly::coeff(const Monomial& m) const {
  for (const auto& t : t_)
    if (t.mono == m) return t.coeff;
  return field_->zero();
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.t_) t.coeff = -t.coeff;
  return r;
}

namespace {

void check_compatible(const MultiPoly& a, const MultiPoly& b) {
  if (&a.field() != &b.field()) throw_integrity("MultiPoly field mismatch");
  if (a.nvars() != b.nvars()) throw_integrity("MultiPoly variable count mismatch");
}

}  // namespace

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  check_compatible(a, b);
  MultiPoly r(*a.field_, a.n_);
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() || j < b.t_.size()) {
    if (j == b.t_.size() || (i < a.t_.size() && degrevlex_greater(a.t_[i].mono, b.t_[j].mono))) {
      r.t_.push_back(a.t_[i++]);
    } else if (i == a.t_.size() || degrevlex_greater(b.t_[j].mono, a.t_[i].mono)) {
      r.t_.push_back(b.t_[j++]);
    } else {
      Scalar c = a.t_[i].coeff + b.t_[j].coeff;
      if (!c.is_zero()) r.t_.push_back({a.t_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_compatible(a, b);
  MultiPolyBuilder acc(*a.field_, a.n_);
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) {
      Monomial m;
      for (std::size_t k = 0; k < kMaxVars; ++k) m[k] = static_cast<std::uint16_t>(x.mono[k] + y.mono[k]);
      acc.add(m, x.coeff * y.coeff);
    }
  return acc.build();
}

MultiPoly operator*(const MultiPoly& a, const Scalar& s) {
  MultiPoly r(*a.field_, a.n_);
  if (s.is_zero()) return r;
  r.t_.reserve(a.t_.size());
  for (const auto& t : a.t_) r.t_.push_back({t.mono, t.coeff * s});
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.field_ != b.field_ || a.n_ != b.n_ || a.t_.size() != b.t_.size()) return false;
  for (std::size_t i = 0; i < a.t_.size(); ++i)
    if (a.t_[i].mono != b.t_[i].mono || !(a.t_[i].coeff == b.t_[i].coeff)) return false;
  return true;
}

MultiPoly MultiPoly::mul_term(const Scalar& c, const Monomial& m) const {
  MultiPoly r(*field_, n_);
  if (c.is_zero()) return r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) {
    Monomial mm;
    for (std::size_t k = 0; k < kMaxVars; ++k) mm[k] = static_cast<std::uint16_t>(t.mono[k] + m[k]);
    r.t_.push_back({mm, t.coeff * c});
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(field_->one(), n_);
  MultiPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().coeff.inverse();
}

Scalar MultiPoly::eval(const std::vector<Scalar>& x) const {
  if (x.size() != n_) throw_integrity("eval: wrong number of coordinates");
  Scalar acc = field_->zero();
  for (const auto& t : t_) {
    Scalar v = t.coeff;
    for (unsigned i = 0; i < n_; ++i)
      if (t.mono[i]) v *= x[i].pow(static_cast<long long>(t.mono[i]));
    acc += v;
  }
  return acc;
}

MultiPoly MultiPoly::embed(const Field& target) const {
  MultiPoly r(target, n_);
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back({t.mono, vfree::embed(t.coeff, target)});
  return r;
}

MultiPoly MultiPoly::specialize(unsigned i, const Scalar& value) const {
  MultiPolyBuilder acc(*field_, n_);
  for (const auto& t : t_) {
    Monomial m = t.mono;
    const unsigned e = m[i];
    m[i] = 0;
    acc.add(m, e ? t.coeff * value.pow(static_cast<long long>(e)) : t.coeff);
  }
  return acc.build();
}

MultiPoly MultiPoly::homogeneous_part(unsigned d) const {
  MultiPoly r(*field_, n_);
  for (const auto& t : t_)
    if (monomial_degree(t.mono) == d) r.t_.push_back(t);
  return r;
}

namespace {

std::string coeff_string(const Scalar& c) {
  std::string s = c.to_string();
  if (c.field().is_finite() && c.field().degree() > 1 &&
      (s.find('+') != std::string::npos || s.find('*') != std::string::npos))
    return "(" + s + ")";
  return s;
}

std::string var_name(unsigned i, std::string_view names) {
  if (!names.empty() && i < names.size()) return std::string(1, names[i]);
  return "X" + std::to_string(i);
}

}  // namespace

std::string MultiPoly::to_string(std::string_view names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : t_) {
    Scalar c = t.coeff;
    bool negative = false;
    if (field_->is_rational() && c.rational() < 0) {
      negative = true;
      c = -c;
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const bool is_const = monomial_degree(t.mono) == 0;
    bool need_star = false;
    if (!c.is_one() || is_const) {
      os << coeff_string(c);
      need_star = true;
    }
    for (unsigned i = 0; i < n_; ++i) {
      if (!t.mono[i]) continue;
      if (need_star) os << '*';
      os << var_name(i, names);
      if (t.mono[i] > 1) os << '^' << t.mono[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view s, unsigned n, const Field& f) : s_(s), n_(n), f_(f) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw_input("parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class nat() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  MultiPoly expr() {
    skip();
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    MultiPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  MultiPoly factor() {
    MultiPoly a = atom();
    if (accept('^')) {
      const mpz_class e = nat();
      if (e > 10000) fail("exponent too large");
      a = a.pow(static_cast<unsigned>(e.get_ui()));
    }
    return a;
  }

  Scalar literal(const mpz_class& num, const mpz_class& den) {
    if (f_.is_rational()) return f_.from_rational(mpq_class(num, den));
    const auto p = static_cast<unsigned long>(f_.characteristic());
    mpz_class r = num % p;
    return f_.from_int(r.get_si());
  }

  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const mpz_class num = nat();
      mpz_class den = 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        if (!f_.is_rational()) fail("rational literals are only allowed over Q");
        ++pos_;
        den = nat();
        if (den == 0) fail("zero denominator");
      }
      return MultiPoly::constant(literal(num, den), n_);
    }
    if (c == 'g') {
      ++pos_;
      if (!f_.is_finite() || f_.degree() == 1) fail("'g' denotes the generator of an extension field");
      return MultiPoly::constant(f_.generator(), n_);
    }
    if (c == 'U' || c == 'V') {
      ++pos_;
      const unsigned i = c == 'U' ? 0 : 1;
      if (i >= n_) fail(std::string("unknown variable ") + c);
      return MultiPoly::variable(f_, n_, i);
    }
    if (c == 'X' || c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected variable index after 'X'");
      const mpz_class i = nat();
      if (i >= n_) {
        pos_ = at;
        fail("unknown variable X" + i.get_str() + " (have " + std::to_string(n_) + " variables)");
      }
      return MultiPoly::variable(f_, n_, static_cast<unsigned>(i.get_ui()));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  unsigned n_;
  const Field& f_;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, unsigned nvars, const Field& field,
                     bool require_homogeneous) {
  MultiPoly p = Parser(text, nvars, field).parse();
  if (require_homogeneous && !p.is_homogeneous()) {
    int lo = p.total_degree(), hi = 0;
    for (const auto& t : p.terms()) {
      lo = std::min(lo, static_cast<int>(monomial_degree(t.mono)));
      hi = std::max(hi, static_cast<int>(monomial_degree(t.mono)));
    }
    throw_input("inhomogeneous polynomial: term degrees " + std::to_string(lo) + " vs " +
                std::to_string(hi));
  }
  return p;
}

// ---------------------------------------------------------------- calculus and substitution

MultiPoly partial_derivative(const MultiPoly& f, unsigned i) {
  if (i >= f.nvars()) throw_input("partial derivative index out of range");
  MultiPolyBuilder acc(f.field(), f.nvars());
  for (const auto& t : f.terms()) {
    if (t.mono[i] == 0) continue;
    Monomial m = t.mono;
    const long long e = m[i];
    --m[i];
    acc.add(m, t.coeff * f.field().from_int(e));
  }
  return acc.build();
}

std::vector<MultiPoly> gradient(const MultiPoly& f) {
  std::vector<MultiPoly> g;
  for (unsigned i = 0; i < f.nvars(); ++i) g.push_back(partial_derivative(f, i));
  return g;
}

MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images) {
  if (images.size() != f.nvars()) throw_integrity("substitute: wrong number of images");
  if (images.empty()) return f;
  const Field& F = images[0].field();
  const unsigned n = images[0].nvars();
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](unsigned i, unsigned e) -> const MultiPoly& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(MultiPoly::constant(F.one(), n));
    while (v.size() <= e) v.push_back(v.back() * images[i]);
    return v[e];
  };
  MultiPoly acc(F, n);
  for (const auto& t : f.terms()) {
    MultiPoly term = MultiPoly::constant(vfree::embed(t.coeff, F), n);
    for (unsigned i = 0; i < f.nvars(); ++i)
      if (t.mono[i]) term = term * power(i, t.mono[i]);
    acc += term;
  }
  return acc;
}

MultiPoly linear_substitute(const MultiPoly& f, const Matrix& m) {
  const unsigned n = f.nvars();
  if (m.rows() != n || m.cols() != n) throw_input("linear_substitute: matrix size mismatch");
  if (det(m).is_zero()) throw_input("linear_substitute: singular matrix");
  std::vector<MultiPoly> images;
  for (unsigned i = 0; i < n; ++i) {
    MultiPoly li(m.field(), n);
    for (unsigned j = 0; j < n; ++j)
      li += MultiPoly::variable(m.field(), n, j) * m(i, j);
    images.push_back(std::move(li));
  }
  return substitute(f.embed(m.field()), images);
}

// ---------------------------------------------------------------- BinaryForm

BinaryForm::BinaryForm(const Field& f, int degree) : field_(&f) {
  if (degree < 0) throw_input("binary form degree must be >= 0");
  c_.assign(static_cast<std::size_t>(degree) + 1, f.zero());
}

BinaryForm::BinaryForm(const Field& f, std::vector<Scalar> coeffs) : field_(&f), c_(std::move(coeffs)) {
  if (c_.empty()) throw_input("binary form needs at least one coefficient");
}

BinaryForm BinaryForm::monomial(const Scalar& c, int u_exp, int v_exp) {
  BinaryForm b(c.field(), u_exp + v_exp);
  b.c_[static_cast<std::size_t>(v_exp)] = c;
  return b;
}

BinaryForm BinaryForm::from_multipoly(const MultiPoly& p, int degree) {
  if (p.nvars() != 2) throw_input("binary form needs a polynomial in two variables");
  BinaryForm b(p.field(), degree);
  for (const auto& t : p.terms()) {
    if (static_cast<int>(t.mono[0] + t.mono[1]) != degree)
      throw_input("binary form is not homogeneous of degree " + std::to_string(degree));
    b.c_[t.mono[1]] = t.coeff;
  }
  return b;
}

bool BinaryForm::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

BinaryForm BinaryForm::operator-() const {
  BinaryForm r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree() != b.degree()) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    throw_integrity("adding binary forms of degrees " + std::to_string(a.degree()) + " and " +
                    std::to_string(b.degree()));
  }
  BinaryForm r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + (-b); }

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm r(*a.field_, a.degree() + b.degree());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return r;
}

BinaryForm operator*(const BinaryForm& a, const Scalar& s) {
  BinaryForm r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

bool operator==(const BinaryForm& a, const BinaryForm& b) {
  if (a.field_ != b.field_) return false;
  if (a.degree() != b.degree()) return a.is_zero() && b.is_zero();
  return a.c_ == b.c_;
}

Scalar BinaryForm::eval(const Scalar& u, const Scalar& v) const {
  const int d = degree();
  Scalar acc = field_->zero();
  for (int j = 0; j <= d; ++j) {
    if (c_[static_cast<std::size_t>(j)].is_zero()) continue;
    acc += c_[static_cast<std::size_t>(j)] * u.pow(static_cast<long long>(d - j)) *
           v.pow(static_cast<long long>(j));
  }
  return acc;
}

BinaryForm BinaryForm::embed(const Field& target) const {
  return BinaryForm(target, vfree::embed(c_, target));
}

BinaryForm BinaryForm::reparametrize(const Scalar& a, const Scalar& b, const Scalar& c,
                                     const Scalar& d) const {
  const Field& F = *field_;
  BinaryForm u(F, std::vector<Scalar>{a, b});
  BinaryForm v(F, std::vector<Scalar>{c, d});
  const int n = degree();
  BinaryForm acc(F, n);
  for (int j = 0; j <= n; ++j) {
    const Scalar& k = c_[static_cast<std::size_t>(j)];
    if (k.is_zero()) continue;
    BinaryForm t(F, std::vector<Scalar>{k});
    for (int i = 0; i < n - j; ++i) t = t * u;
    for (int i = 0; i < j; ++i) t = t * v;
    acc = acc + t;
  }
  return acc;
}

MultiPoly BinaryForm::to_multipoly() const {
  MultiPolyBuilder acc(*field_, 2);
  const int d = degree();
  for (int j = 0; j <= d; ++j) {
    Monomial m{};
    m[0] = static_cast<std::uint16_t>(d - j);
    m[1] = static_cast<std::uint16_t>(j);
    acc.add(m, c_[static_cast<std::size_t>(j)]);
  }
  return acc.build();
}

int BinaryForm::v_valuation() const {
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (!c_[j].is_zero()) return static_cast<int>(j);
  return degree() + 1;
}

std::optional<BinaryForm> BinaryForm::exact_div(const BinaryForm& b) const {
  if (b.is_zero()) throw_integrity("exact_div by zero form");
  if (is_zero()) return BinaryForm(*field_, std::max(0, degree() - b.degree()));
  const int dq = degree() - b.degree();
  if (dq < 0) return std::nullopt;
  const int jb = b.v_valuation();
  const Scalar inv = b.c_[static_cast<std::size_t>(jb)].inverse();
  std::vector<Scalar> r = c_;
  BinaryForm q(*field_, dq);
  for (int j = 0; j <= dq; ++j) {
    const Scalar c = r[static_cast<std::size_t>(j + jb)] * inv;
    q.c_[static_cast<std::size_t>(j)] = c;
    if (c.is_zero()) continue;
    for (int i = jb; i <= b.degree(); ++i) r[static_cast<std::size_t>(j + i)] -= c * b.c_[static_cast<std::size_t>(i)];
  }
  for (const auto& x : r)
    if (!x.is_zero()) return std::nullopt;
  return q;
}

std::string BinaryForm::to_string() const {
  if (is_zero()) return "0";
  return to_multipoly().to_string("UV");
}

BinaryForm parse_binary_form(std::string_view text, const Field& field) {
  MultiPoly p = parse_poly(text, 2, field, true);
  if (p.is_zero()) throw_input("binary form is zero; its degree is undefined");
  return BinaryForm::from_multipoly(p, p.total_degree());
}

Scalar resultant_bin(const BinaryForm& q, const BinaryForm& c) {
  if (q.is_zero() || c.is_zero()) throw_input("resultant of a zero form");
  const Field& F = q.field();
  const int d = q.degree(), e = c.degree();
  const std::size_t n = static_cast<std::size_t>(d + e);
  if (n == 0) return F.one();
  Matrix s(F, n, n);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j <= d; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = q.coeff(j);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= e; ++j)
      s(static_cast<std::size_t>(e + i), static_cast<std::size_t>(i + j)) = c.coeff(j);
  return det(s);
}

namespace {

BinaryForm normalize_form(const BinaryForm& b) {
  const int j = b.v_valuation();
  if (j > b.degree()) return b;
  return b * b.coeff(j).inverse();
}

// Dehomogenize at V = 1 after removing the V-power: coefficient of u^k is c_{d-k}.
UPoly dehomogenize(const BinaryForm& b) {
  std::vector<Scalar> c;
  for (int k = 0; k <= b.degree(); ++k) c.push_back(b.coeff(b.degree() - k));
  return UPoly(b.field(), std::move(c));
}

}  // namespace

BinaryForm gcd_bin(const BinaryForm& a, const BinaryForm& b) {
  if (a.is_zero() && b.is_zero()) throw_input("gcd of two zero forms");
  if (b.is_zero()) return normalize_form(a);
  if (a.is_zero()) return normalize_form(b);
  const int va = a.v_valuation(), vb = b.v_valuation();
  UPoly g = gcd(dehomogenize(a), dehomogenize(b));
  const int dg = g.degree();
  const int vmin = std::min(va, vb);
  // form = V^vmin * homogenization of g (degree dg in U).
  BinaryForm out(a.field(), dg + vmin);
  for (int k = 0; k <= dg; ++k) out = out + BinaryForm::monomial(g.coeff(k), k, dg - k + vmin);
  return normalize_form(out);
}

BinaryForm compose_with_curve(const MultiPoly& f, const std::vector<BinaryForm>& h) {
  if (h.size() != f.nvars()) throw_input("curve has " + std::to_string(h.size()) + " components, polynomial has " + std::to_string(f.nvars()) + " variables");
  if (h.empty()) throw_input("empty curve");
  const int d = h[0].degree();
  for (const auto& c : h)
    if (c.degree() != d) throw_input("curve components have mixed degrees");
  if (!f.is_homogeneous()) throw_input("compose_with_curve needs a homogeneous polynomial");
  std::vector<MultiPoly> images;
  for (const auto& c : h) images.push_back(c.to_multipoly());
  const int deg = f.is_zero() ? 0 : f.total_degree() * d;
  MultiPoly r = substitute(f, images);
  return BinaryForm::from_multipoly(r, deg);
}

// ---------------------------------------------------------------- LaurentForm

LaurentForm::LaurentForm(const Field& f, int total_degree) : field_(&f), deg_(total_degree) {}

LaurentForm LaurentForm::from_binary(const BinaryForm& b) {
  LaurentForm l(b.field(), b.degree());
  for (int j = 0; j <= b.degree(); ++j) l.add(b.degree() - j, b.coeff(j));
  return l;
}

LaurentForm LaurentForm::monomial(const Scalar& c, int u_exp, int v_exp) {
  LaurentForm l(c.field(), u_exp + v_exp);
  l.add(u_exp, c);
  return l;
}

void LaurentForm::add(int u_exp, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(u_exp);
  if (it == t_.end()) {
    t_.emplace(u_exp, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

LaurentForm LaurentForm::operator-() const {
  LaurentForm r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

LaurentForm operator+(const LaurentForm& a, const LaurentForm& b) {
  if (a.deg_ != b.deg_) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    throw_integrity("adding Laurent forms of different total degree");
  }
  LaurentForm r = a;
  for (const auto& [k, c] : b.t_) r.add(k, c);
  return r;
}

LaurentForm operator-(const LaurentForm& a, const LaurentForm& b) { return a + (-b); }

LaurentForm operator*(const LaurentForm& a, const LaurentForm& b) {
  LaurentForm r(*a.field_, a.deg_ + b.deg_);
  for (const auto& [i, x] : a.t_)
    for (const auto& [j, y] : b.t_) r.add(i + j, x * y);
  return r;
}

LaurentForm operator*(const LaurentForm& a, const Scalar& s) {
  LaurentForm r(*a.field_, a.deg_);
  for (const auto& [i, x] : a.t_) r.add(i, x * s);
  return r;
}

bool operator==(const LaurentForm& a, const LaurentForm& b) {
  if (a.field_ != b.field_) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.deg_ == b.deg_ && a.t_ == b.t_;
}

std::optional<BinaryForm> LaurentForm::to_binary() const {
  if (deg_ < 0) {
    if (is_zero()) return std::nullopt;
    return std::nullopt;
  }
  BinaryForm b(*field_, deg_);
  for (const auto& [i, c] : t_) {
    const int j = deg_ - i;
    if (i < 0 || j < 0) return std::nullopt;
    b = b + BinaryForm::monomial(c, i, j);
  }
  return b;
}

std::optional<LaurentForm> LaurentForm::divide(const BinaryForm& b) const {
  if (b.is_zero()) throw_integrity("Laurent division by zero form");
  if (is_zero()) return LaurentForm(*field_, deg_ - b.degree());
  // Multiply by U^s V^t to clear negative exponents, divide, shift back.
  int s = 0, t = 0;
  for (const auto& [i, c] : t_) {
    s = std::max(s, -i);
    t = std::max(t, -(deg_ - i));
  }
  int bu = 0;
  while (b.coeff(b.degree() - bu).is_zero()) ++bu;
  s += bu;
  t += b.v_valuation();
  LaurentForm shifted = *this * LaurentForm::monomial(field_->one(), s, t);
  auto num = shifted.to_binary();
  if (!num) throw_integrity("Laurent shift failed");
  auto q = num->exact_div(b);
  if (!q) return std::nullopt;
  return from_binary(*q) * LaurentForm::monomial(field_->one(), -s, -t);
}

std::string LaurentForm::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const int i = it->first, j = deg_ - i;
    Scalar c = it->second;
    bool negative = false;
    if (field_->is_rational() && c.rational() < 0) {
      negative = true;
      c = -c;
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    std::string num, den;
    auto put = [](std::string& s, const char* v, int e) {
      if (e == 0) return;
      if (!s.empty()) s += "*";
      s += v;
      if (e > 1) s += "^" + std::to_string(e);
    };
    put(i > 0 ? num : den, "U", std::abs(i));
    put(j > 0 ? num : den, "V", std::abs(j));
    std::string cs = coeff_string(c);
    if (num.empty())
      num = cs;
    else if (!c.is_one())
      num = cs + "*" + num;
    os << num;
    if (!den.empty()) os << "/" << (den.find('*') != std::string::npos ? "(" + den + ")" : den);
  }
  return os.str();
}

}  // namespace vfree
