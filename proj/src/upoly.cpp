#include "vfree/upoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vfree/error.hpp"
#include "vfree/kernels.hpp"

namespace vfree {

UPoly::UPoly(const Field& f, std::vector<Scalar> coeffs) : field_(&f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (&c.field() != field_) throw_integrity("UPoly coefficient from a different field");
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::x(const Field& f) { return UPoly(f, {f.zero(), f.one()}); }

UPoly UPoly::constant(const Scalar& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::monomial(const Scalar& c, int deg) {
  std::vector<Scalar> v(static_cast<std::size_t>(deg) + 1, c.field().zero());
  v[static_cast<std::size_t>(deg)] = c;
  return UPoly(c.field(), std::move(v));
}

Scalar UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return field_->zero();
  return c_[static_cast<std::size_t>(i)];
}

UPoly UPoly::operator-() const {
  UPoly r(*field_);
  for (const auto& c : c_) r.c_.push_back(-c);
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  UPoly r(*a.field_);
  const std::size_t n = std::max(a.c_.size(), b.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.c_.size())
      r.c_.push_back(b.c_[i]);
    else if (i >= b.c_.size())
      r.c_.push_back(a.c_[i]);
    else
      r.c_.push_back(a.c_[i] + b.c_[i]);
  }
  r.trim();
  return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (&a.field() != &b.field()) throw_integrity("UPoly field mismatch");
  UPoly r(*a.field_);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, a.field_->zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

UPoly operator*(const UPoly& a, const Scalar& s) {
  UPoly r(*a.field_);
  for (const auto& c : a.c_) r.c_.push_back(c * s);
  r.trim();
  return r;
}

bool operator==(const UPoly& a, const UPoly& b) {
  return a.field_ == b.field_ && a.c_ == b.c_;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw_integrity("polynomial division by zero");
  if (&d.field() != field_) throw_integrity("UPoly field mismatch");
  UPoly q(*field_);
  UPoly r = *this;
  if (r.degree() < d.degree()) return {q, r};
  const Scalar inv = d.leading().inverse();
  const int dd = d.degree();
  q.c_.assign(static_cast<std::size_t>(r.degree() - dd + 1), field_->zero());
  for (int i = r.degree(); i >= dd; --i) {
    const Scalar c = r.c_[static_cast<std::size_t>(i)] * inv;
    if (c.is_zero()) continue;
    q.c_[static_cast<std::size_t>(i - dd)] = c;
    for (int j = 0; j <= dd; ++j)
      r.c_[static_cast<std::size_t>(i - dd + j)] -= c * d.c_[static_cast<std::size_t>(j)];
  }
  r.trim();
  q.trim();
  return {q, r};
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

UPoly UPoly::derivative() const {
  UPoly r(*field_);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_.push_back(c_[i] * field_->from_int(static_cast<long long>(i)));
  r.trim();
  return r;
}

Scalar UPoly::eval(const Scalar& x) const {
  Scalar acc = field_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc += c_[i];
  }
  return acc;
}

UPoly UPoly::embed(const Field& target) const {
  return UPoly(target, vfree::embed(c_, target));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c_[i].is_one();
    std::string cs = c_[i].to_string();
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (i == 0) {
      os << cs;
      continue;
    }
    if (!unit) os << cs << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

UPoly gcd(const UPoly& a0, const UPoly& b0) {
  UPoly a = a0, b = b0;
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly powmod(const UPoly& base, const mpz_class& e, const UPoly& mod) {
  if (e < 0) throw_integrity("negative exponent in powmod");
  UPoly b = base % mod;
  UPoly r = UPoly::constant(base.field().one()) % mod;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % mod;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % mod;
  }
  return r;
}

namespace {

// f(x) = g(x^p) -> g^{1/p}(x), coefficientwise inverse Frobenius.
UPoly pth_root_poly(const UPoly& f) {
  const auto p = static_cast<std::size_t>(f.field().characteristic());
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i].pth_root());
  return UPoly(f.field(), std::move(c));
}

UPoly lcm(const UPoly& a, const UPoly& b) { return (a * b / gcd(a, b)).monic(); }

}  // namespace

UPoly radical(const UPoly& f0) {
  if (f0.is_zero()) throw_integrity("radical of zero polynomial");
  UPoly f = f0.monic();
  if (f.degree() <= 0) return f;
  UPoly d = f.derivative();
  if (d.is_zero()) return radical(pth_root_poly(f));
  UPoly g = gcd(f, d);
  UPoly w = f / g;
  if (g.degree() == 0) return w.monic();
  return lcm(w, radical(g));
}

std::vector<std::pair<unsigned, UPoly>> distinct_degree_factors(const UPoly& f0) {
  const Field& F = f0.field();
  if (!F.is_finite()) throw_input("distinct-degree factorization needs a finite field");
  std::vector<std::pair<unsigned, UPoly>> out;
  UPoly f = radical(f0);
  const UPoly x = UPoly::x(F);
  UPoly h = x % f;
  for (unsigned j = 1; f.degree() > 0; ++j) {
    if (f.degree() < 2 * static_cast<int>(j)) {
      out.emplace_back(static_cast<unsigned>(f.degree()), f);
      break;
    }
    h = powmod(h, F.order(), f);
    UPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(j, g);
      f = f / g;
      h = h % f;
    }
  }
  return out;
}

unsigned splitting_degree(const UPoly& f) {
  if (f.degree() <= 0) return 0;
  unsigned l = 1;
  for (const auto& [j, g] : distinct_degree_factors(f)) l = std::lcm(l, j);
  return l;
}

namespace {

void split_linear(const UPoly& g, std::vector<Scalar>& out) {
  const Field& F = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.monic().coeff(0));
    return;
  }
  const UPoly x = UPoly::x(F);
  auto try_split = [&](const UPoly& probe) {
    UPoly h = gcd(g, probe);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, out);
      split_linear(g / h, out);
      return true;
    }
    return false;
  };
  const std::uint64_t p = F.characteristic();
  if (p != 2) {
    const mpz_class e = (F.order() - 1) / 2;
    const std::uint64_t cap = std::min<std::uint64_t>(F.size_u64(), 4096);
    const UPoly one = UPoly::constant(F.one());
    for (std::uint64_t i = 0; i < cap; ++i) {
      if (try_split(powmod(x + UPoly::constant(F.element(i)), e, g) - one)) return;
    }
  }
  // Trace maps Tr(beta x) over the basis 1, g, ..., g^{k-1}; complete for distinct roots.
  Scalar beta = F.one();
  for (unsigned t = 0; t < F.degree(); ++t, beta *= F.generator()) {
    UPoly y = (x * beta) % g;
    UPoly tr = y;
    for (unsigned i = 1; i < F.degree(); ++i) {
      y = powmod(y, mpz_class(static_cast<unsigned long>(p)), g);
      tr = tr + y;
    }
    if (p == 2) {
      if (try_split(tr)) return;
      continue;
    }
    for (std::uint64_t c = 0; c < p; ++c) {
      if (try_split(tr - UPoly::constant(F.from_int(static_cast<long long>(c))))) return;
    }
  }
  throw_integrity("equal-degree splitting failed on " + g.to_string());
}

unsigned multiplicity(const UPoly& f, const Scalar& r) {
  const UPoly lin = UPoly::x(f.field()) - UPoly::constant(r);
  UPoly g = f;
  unsigned m = 0;
  for (;;) {
    auto [q, rem] = g.divmod(lin);
    if (!rem.is_zero()) break;
    ++m;
    g = std::move(q);
  }
  return m;
}

}  // namespace

std::vector<Scalar> roots_in_field(const UPoly& f) {
  const Field& F = f.field();
  if (f.is_zero()) throw_input("roots of the zero polynomial");
  std::vector<Scalar> out;
  if (f.degree() <= 0) return out;
  if (F.is_rational()) {
    if (f.degree() == 1) return {-f.monic().coeff(0)};
    throw_input("root finding over Q is limited to linear polynomials");
  }
  const UPoly x = UPoly::x(F);
  UPoly r = radical(f);
  UPoly g = gcd(r, powmod(x, F.order(), r) - x);
  split_linear(g, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Root> find_roots(const UPoly& f, unsigned max_ext) {
  const Field& F = f.field();
  if (f.is_zero()) throw_input("find_roots: zero polynomial");
  if (!F.is_finite()) throw_input("find_roots needs a finite field");
  std::vector<Root> out;
  if (f.degree() <= 0) return out;
  for (const auto& [j, g] : distinct_degree_factors(f)) {
    if (j > max_ext) continue;
    const Field& L = F.extension(j);
    const UPoly gl = g.embed(L);
    const UPoly fl = f.embed(L);
    for (auto& r : roots_in_field(gl)) out.push_back(Root{r, j, multiplicity(fl, r)});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.ext_degree != b.ext_degree) return a.ext_degree < b.ext_degree;
    return a.value < b.value;
  });
  return out;
}

namespace {

unsigned minimal_degree(const Scalar& r, unsigned j, const Field& base) {
  for (unsigned d = 1; d < j; ++d) {
    if (j % d) continue;
    Scalar y = r;
    for (unsigned i = 0; i < d; ++i) y = y.pow(base.order());
    if (y == r) return d;
  }
  return j;
}

}  // namespace

std::vector<Root> scan_roots(const UPoly& f, unsigned max_ext, std::uint64_t budget) {
  const Field& F = f.field();
  if (f.is_zero()) throw_input("scan_roots: zero polynomial");
  if (!F.is_finite()) throw_input("scan_roots needs a finite field");
  std::vector<Root> out;
  if (f.degree() <= 0) return out;
  for (unsigned j = 1; j <= max_ext; ++j) {
    const Field& L = F.extension(j);
    const std::uint64_t n = L.size_u64();
    if (n > budget)
      throw_budget("scan budget exceeded: F_" + L.spec() + " has more than " +
                   std::to_string(budget) + " elements");
    const UPoly fl = f.embed(L);
    std::vector<Scalar> hits;
    if (L.is_prime_field() && L.characteristic() < kernels::kMaxModulus) {
      const auto p = static_cast<std::uint32_t>(L.characteristic());
      std::vector<std::uint32_t> coeffs;
      for (const auto& c : fl.coeffs()) coeffs.push_back(c.digits()[0]);
      std::vector<std::uint32_t> xs(n), vals(n);
      std::iota(xs.begin(), xs.end(), 0u);
      kernels::horner_mod(coeffs, xs, vals, p);
      for (std::uint64_t i = 0; i < n; ++i)
        if (vals[i] == 0) hits.push_back(L.element(i));
    } else {
      for (std::uint64_t i = 0; i < n; ++i) {
        Scalar e = L.element(i);
        if (fl.eval(e).is_zero()) hits.push_back(std::move(e));
      }
    }
    for (auto& r : hits) {
      if (minimal_degree(r, j, F) != j) continue;
      out.push_back(Root{r, j, multiplicity(fl, r)});
    }
  }
  return out;
}

// ---------------------------------------------------------------- F_p[x] helpers

namespace {

using RawPoly = std::vector<std::uint64_t>;

void raw_trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

RawPoly raw_mod(RawPoly a, const RawPoly& m, std::uint64_t p) {
  raw_trim(a);
  const std::size_t dm = m.size() - 1;  // m monic
  while (a.size() > dm) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    raw_trim(a);
  }
  return a;
}

RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  RawPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return raw_mod(std::move(r), m, p);
}

RawPoly raw_pow_p(const RawPoly& a, std::uint64_t p, const RawPoly& m) {
  RawPoly r{1}, b = a;
  std::uint64_t e = p;
  while (e) {
    if (e & 1) r = raw_mulmod(r, b, m, p);
    b = raw_mulmod(b, b, m, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t raw_inv(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * a % p);
    a = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * a % p);
    e >>= 1;
  }
  return r;
}

bool raw_coprime(RawPoly a, RawPoly b, std::uint64_t p) {
  raw_trim(a);
  raw_trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = raw_inv(b.back(), p);
    for (auto& c : b) c = c * inv % p;
    a = raw_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a.size() == 1;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic_low, std::uint64_t p) {
  const std::size_t k = monic_low.size();
  if (k == 0) return false;
  if (k == 1) return true;
  RawPoly m(monic_low.begin(), monic_low.end());
  m.push_back(1);
  const RawPoly x{0, 1};
  std::vector<RawPoly> frob{x};  // frob[i] = x^{p^i} mod m
  for (std::size_t i = 1; i <= k; ++i) frob.push_back(raw_pow_p(frob.back(), p, m));
  auto minus_x = [&](RawPoly a) {
    a.resize(std::max<std::size_t>(a.size(), 2), 0);
    a[1] = (a[1] + p - 1) % p;
    raw_trim(a);
    return a;
  };
  if (!minus_x(frob[k]).empty()) return false;
  std::size_t n = k;
  for (std::size_t r = 2; r <= n; ++r) {
    if (n % r) continue;
    while (n % r == 0) n /= r;
    if (!raw_coprime(m, minus_x(frob[k / r]), p)) return false;
  }
  return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint64_t p, unsigned k) {
  std::vector<std::uint32_t> c(k, 0);
  for (;;) {
    if (is_irreducible_mod_p(c, p)) return c;
    std::size_t i = 0;
    while (i < k && ++c[i] == p) c[i++] = 0;
    if (i == k) throw_integrity("no irreducible polynomial found");
  }
}

}  // namespace vfree
