#include "vfree/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "vfree/error.hpp"
#include "vfree/upoly.hpp"

namespace vfree {

namespace {

using Digits = Scalar::Digits;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw_integrity("inverse of zero in prime field");
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

void check_same(const Scalar& a, const Scalar& b) {
  if (&a.field() != &b.field())
    throw_integrity("field mismatch: " + a.field().spec() + " vs " + b.field().spec());
}

// Multiply two coefficient vectors modulo the monic modulus of F_{p^k}.
Digits mul_ext(const Digits& a, const Digits& b, const Field& f) {
  const unsigned k = f.degree();
  const std::uint64_t p = f.characteristic();
  const auto& mod = f.modulus();
  std::vector<std::uint64_t> t(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j) t[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    // p < 2^16: each product < 2^32, so up to 2^31 accumulations fit.
  }
  for (unsigned i = 2 * k - 1; i-- > k;) {
    const std::uint64_t c = t[i] % p;
    if (c == 0) continue;
    const std::uint64_t negc = p - c;
    for (unsigned j = 0; j < k; ++j) t[i - k + j] = (t[i - k + j] + negc * mod[j]) % p;
  }
  Digits r(k);
  for (unsigned i = 0; i < k; ++i) r[i] = static_cast<std::uint32_t>(t[i] % p);
  return r;
}

// Inverse in F_p[x]/(m) by the extended Euclidean algorithm on plain vectors.
Digits inv_ext(const Digits& a, const Field& f) {
  const unsigned k = f.degree();
  const std::uint64_t p = f.characteristic();
  using V = std::vector<std::uint64_t>;
  auto trim = [](V& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  V r0(k + 1), r1(a.begin(), a.end());
  for (unsigned i = 0; i < k; ++i) r0[i] = f.modulus()[i];
  r0[k] = 1;
  trim(r1);
  if (r1.empty()) throw_integrity("inverse of zero in extension field");
  V s0{0}, s1{1};
  trim(s0);
  while (!r1.empty()) {
    // (q, r) = divmod(r0, r1)
    V r = r0;
    V q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    const std::uint64_t lead_inv = inv_mod(r1.back(), p);
    while (r.size() >= r1.size() && !r.empty()) {
      const std::size_t shift = r.size() - r1.size();
      const std::uint64_t c = r.back() * lead_inv % p;
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        r[shift + i] = (r[shift + i] + (p - c) * r1[i]) % p;
      trim(r);
    }
    // s = s0 - q s1
    V qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = (qs[i + j] + q[i] * s1[j]) % p;
    V s(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::uint64_t x = i < s0.size() ? s0[i] : 0;
      const std::uint64_t y = i < qs.size() ? qs[i] : 0;
      s[i] = (x + p - y) % p;
    }
    trim(s);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant.
  const std::uint64_t c = inv_mod(r0[0], p);
  Digits out(k, 0);
  for (std::size_t i = 0; i < s0.size() && i < k; ++i)
    out[i] = static_cast<std::uint32_t>(s0[i] * c % p);
  return out;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<Field>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

bool is_probable_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(std::uint64_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  if (p_ == 0) {
    order_ = 0;
  } else {
    mpz_ui_pow_ui(order_.get_mpz_t(), static_cast<unsigned long>(p_), k_);
  }
}

const Field& Field::rationals() {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto& slot = reg.fields[{0, 1}];
  if (!slot) slot.reset(new Field(0, 1, {}));
  return *slot;
}

const Field& Field::finite(std::uint64_t p, unsigned k) {
  if (p == 0) {
    if (k != 1) throw_input("Q has no extensions here (k must be 1)");
    return rationals();
  }
  if (k < 1) throw_input("extension degree must be >= 1");
  if (!is_probable_prime_u64(p)) throw_input("characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1ull << 31)) throw_input("characteristic must be < 2^31");
  if (k > 1 && p >= (1ull << 16)) throw_input("extension fields require p < 2^16");
  auto& reg = registry();
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.fields.find({p, k});
    if (it != reg.fields.end()) return *it->second;
  }
  std::vector<std::uint32_t> mod;
  if (k > 1) mod = least_irreducible(p, k);
  std::lock_guard lock(reg.mu);
  auto& slot = reg.fields[{p, k}];
  if (!slot) slot.reset(new Field(p, k, std::move(mod)));
  return *slot;
}

const Field& Field::parse(std::string_view spec) {
  std::string s(spec);
  if (s == "Q" || s == "q" || s == "0") return rationals();
  auto caret = s.find('^');
  try {
    std::size_t pos = 0;
    if (caret == std::string::npos) {
      unsigned long long p = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return finite(p, 1);
    }
    unsigned long long p = std::stoull(s.substr(0, caret), &pos);
    if (pos != caret) throw std::invalid_argument(s);
    std::string ks = s.substr(caret + 1);
    unsigned long k = std::stoul(ks, &pos);
    if (pos != ks.size()) throw std::invalid_argument(s);
    return finite(p, static_cast<unsigned>(k));
  } catch (const std::invalid_argument&) {
    throw_input("bad field spec '" + s + "' (expected Q, p, or p^k)");
  } catch (const std::out_of_range&) {
    throw_input("field spec out of range: '" + s + "'");
  }
}

std::string Field::spec() const {
  if (p_ == 0) return "Q";
  if (k_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(k_);
}

const Field& Field::extension(unsigned j) const {
  if (p_ == 0) {
    if (j != 1) throw_input("Q: algebraic extensions are not supported");
    return *this;
  }
  return finite(p_, k_ * j);
}

bool Field::has_subfield(const Field& sub) const {
  if (sub.p_ != p_) return false;
  if (p_ == 0) return true;
  return k_ % sub.k_ == 0;
}

Scalar Field::zero() const {
  if (p_ == 0) return Scalar(*this, mpq_class(0));
  return Scalar(*this, Digits(k_, 0));
}

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (p_ == 0) return Scalar(*this, mpq_class(static_cast<long>(v)));
  Digits d(k_, 0);
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += static_cast<long long>(p_);
  d[0] = static_cast<std::uint32_t>(m);
  return Scalar(*this, std::move(d));
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (p_ == 0) return Scalar(*this, q);
  mpz_class num = q.get_num() % static_cast<unsigned long>(p_);
  mpz_class den = q.get_den() % static_cast<unsigned long>(p_);
  if (den == 0) throw_input("rational literal has denominator divisible by the characteristic");
  return from_int(num.get_si()) / from_int(den.get_si());
}

Scalar Field::generator() const {
  if (p_ == 0) throw_input("Q has no generator");
  if (k_ == 1) return one();
  Digits d(k_, 0);
  d[1] = 1;
  return Scalar(*this, std::move(d));
}

Scalar Field::element(std::uint64_t index) const {
  if (p_ == 0) throw_input("Q has no canonical enumeration");
  Digits d(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  if (index != 0) throw_input("element index out of range for F_" + spec());
  return Scalar(*this, std::move(d));
}

std::uint64_t Field::size_u64() const {
  if (p_ == 0) return UINT64_MAX;
  if (order_ > mpz_class(std::to_string(UINT64_MAX))) return UINT64_MAX;
  return mpz_get_ui(order_.get_mpz_t());
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Field& f, Digits d) : field_(&f), v_(std::move(d)) {}
Scalar::Scalar(const Field& f, mpq_class q) : field_(&f), v_(std::move(q)) {
  std::get<mpq_class>(v_).canonicalize();
}

bool Scalar::is_zero() const {
  if (field_->is_rational()) return rational() == 0;
  for (auto c : digits())
    if (c) return false;
  return true;
}

bool Scalar::is_one() const {
  if (field_->is_rational()) return rational() == 1;
  const auto& d = digits();
  if (d[0] != 1) return false;
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i]) return false;
  return true;
}

std::uint64_t Scalar::index() const {
  if (field_->is_rational()) throw_input("index() on a rational");
  const auto& d = digits();
  unsigned __int128 acc = 0;
  const std::uint64_t p = field_->characteristic();
  for (std::size_t i = d.size(); i-- > 0;) {
    acc = acc * p + d[i];
    if (acc > UINT64_MAX) throw_input("field too large for a 64-bit index");
  }
  return static_cast<std::uint64_t>(acc);
}

Scalar Scalar::operator-() const {
  if (field_->is_rational()) return Scalar(*field_, mpq_class(-rational()));
  Digits d = digits();
  const auto p = static_cast<std::uint32_t>(field_->characteristic());
  for (auto& c : d) c = c ? p - c : 0;
  return Scalar(*field_, std::move(d));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(*this, o);
  if (field_->is_rational()) {
    std::get<mpq_class>(v_) += o.rational();
    return *this;
  }
  auto& d = std::get<Digits>(v_);
  const auto p = field_->characteristic();
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(d[i]) + o.digits()[i]) % p);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(*this, o);
  if (field_->is_rational()) {
    std::get<mpq_class>(v_) -= o.rational();
    return *this;
  }
  auto& d = std::get<Digits>(v_);
  const auto p = field_->characteristic();
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(d[i]) + p - o.digits()[i]) % p);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(*this, o);
  if (field_->is_rational()) {
    std::get<mpq_class>(v_) *= o.rational();
    return *this;
  }
  auto& d = std::get<Digits>(v_);
  if (field_->degree() == 1) {
    d[0] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(d[0]) * o.digits()[0] %
                                      field_->characteristic());
  } else {
    d = mul_ext(d, o.digits(), *field_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw_integrity("division by zero in " + field_->spec());
  if (field_->is_rational()) return Scalar(*field_, mpq_class(1 / rational()));
  if (field_->degree() == 1) {
    Digits d(1);
    d[0] = static_cast<std::uint32_t>(inv_mod(digits()[0], field_->characteristic()));
    return Scalar(*field_, std::move(d));
  }
  return Scalar(*field_, inv_ext(digits(), *field_));
}

Scalar Scalar::pow(const mpz_class& e_in) const {
  mpz_class e = e_in;
  Scalar base = *this;
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  if (field_->is_finite() && !base.is_zero() && e >= field_->order()) {
    mpz_class qm1 = field_->order() - 1;
    e %= qm1;
  }
  Scalar r = field_->one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r *= r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r *= base;
  }
  return r;
}

Scalar Scalar::frobenius() const {
  if (field_->is_rational() || field_->degree() == 1) return *this;
  return pow(mpz_class(static_cast<unsigned long>(field_->characteristic())));
}

Scalar Scalar::pth_root() const {
  if (field_->is_rational()) throw_input("p-th root over Q");
  Scalar r = *this;
  for (unsigned i = 1; i < field_->degree(); ++i) r = r.frobenius();
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ == nullptr || b.field_ == nullptr) return a.field_ == b.field_;
  check_same(a, b);
  if (a.field_->is_rational()) return a.rational() == b.rational();
  return a.digits() == b.digits();
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  if (a.field_->is_rational()) {
    int c = cmp(a.rational(), b.rational());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const auto& x = a.digits();
  const auto& y = b.digits();
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] != y[i]) return x[i] <=> y[i];
  }
  return std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
  if (field_ == nullptr) return "<unset>";
  if (field_->is_rational()) return rational().get_str();
  const auto& d = digits();
  if (field_->degree() == 1) return std::to_string(d[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << d[i];
      continue;
    }
    if (d[i] != 1) os << d[i] << '*';
    os << 'g';
    if (i > 1) os << '^' << i;
  }
  if (first) return "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---------------------------------------------------------------- embedding

namespace {

struct EmbedCache {
  std::mutex mu;
  std::map<std::pair<const Field*, const Field*>, Scalar> gen_image;
};

EmbedCache& embed_cache() {
  static EmbedCache c;
  return c;
}

Scalar generator_image(const Field& src, const Field& tgt) {
  auto& cache = embed_cache();
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.gen_image.find({&src, &tgt});
    if (it != cache.gen_image.end()) return it->second;
  }
  const unsigned k = src.degree(), m = tgt.degree();
  Scalar image;
  unsigned mid = 0;
  for (unsigned j = k + 1; j < m; ++j) {
    if (j % k == 0 && m % j == 0) {
      mid = j;
      break;
    }
  }
  if (mid != 0) {
    const Field& middle = Field::finite(src.characteristic(), mid);
    image = embed(embed(src.generator(), middle), tgt);
  } else {
    std::vector<Scalar> coeffs;
    for (auto c : src.modulus()) coeffs.push_back(tgt.from_int(c));
    coeffs.push_back(tgt.one());
    auto roots = roots_in_field(UPoly(tgt, std::move(coeffs)));
    if (roots.empty()) throw_integrity("source modulus has no root in target field");
    image = roots.front();
  }
  std::lock_guard lock(cache.mu);
  cache.gen_image.emplace(std::make_pair(&src, &tgt), image);
  return image;
}

}  // namespace

Scalar embed(const Scalar& x, const Field& target) {
  const Field& src = x.field();
  if (&src == &target) return x;
  if (src.is_rational() || target.is_rational())
    throw_input("cannot embed between " + src.spec() + " and " + target.spec());
  if (src.characteristic() != target.characteristic())
    throw_input("characteristic mismatch embedding F_" + src.spec() + " into F_" + target.spec());
  if (target.degree() % src.degree() != 0)
    throw_input("F_" + src.spec() + " does not embed in F_" + target.spec());
  if (src.degree() == 1) {
    Scalar::Digits d(target.degree(), 0);
    d[0] = x.digits()[0];
    return Scalar(target, std::move(d));
  }
  const Scalar theta = generator_image(src, target);
  const auto& d = x.digits();
  Scalar acc = target.zero();
  for (std::size_t i = d.size(); i-- > 0;) {
    acc *= theta;
    acc += target.from_int(d[i]);
  }
  return acc;
}

std::vector<Scalar> embed(const std::vector<Scalar>& xs, const Field& target) {
  std::vector<Scalar> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(embed(x, target));
  return out;
}

}  // namespace vfree
