#include "vfree/sheaf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "vfree/error.hpp"
#include "vfree/linalg.hpp"
#include "vfree/upoly.hpp"

namespace vfree {

std::size_t MonadP1::rank() const {
  return b.size() - (alpha ? 1 : 0) - (beta ? 1 : 0);
}

int MonadP1::degree() const {
  int d = std::accumulate(b.begin(), b.end(), 0);
  if (alpha) d -= a;
  if (beta) d -= c;
  return d;
}

std::string SplittingType::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ']';
  return os.str();
}

bool is_very_free_splitting(const SplittingType& s) {
  return std::all_of(s.parts.begin(), s.parts.end(), [](int d) { return d >= 1; });
}

int h0_of_splitting(const SplittingType& s, int l) {
  int h = 0;
  for (int d : s.parts) h += std::max(0, d + l + 1);
  return h;
}

namespace {

std::string root_witness(const BinaryForm& g) {
  if (g.v_valuation() > 0) return "(1:0)";
  const Field& F = g.field();
  std::vector<Scalar> c;
  for (int k = 0; k <= g.degree(); ++k) c.push_back(g.coeff(g.degree() - k));
  UPoly u(F, c);
  if (u.degree() == 1) return "(" + (-u.monic().coeff(0)).to_string() + ":1)";
  if (F.is_finite()) {
    auto r = find_roots(u, 12);
    if (!r.empty()) return "(" + r[0].value.to_string() + ":1) over F_" + r[0].value.field().spec();
  }
  return "of " + g.to_string();
}

void check_degrees(const MonadP1& m) {
  if (!m.field) throw_input("monad without a field");
  if (m.b.empty()) throw_input("monad needs at least one middle summand");
  if (m.alpha) {
    if (m.alpha->size() != m.b.size()) throw_input("alpha has the wrong number of entries");
    for (std::size_t i = 0; i < m.b.size(); ++i) {
      const auto& f = (*m.alpha)[i];
      if (&f.field() != m.field) throw_input("alpha entry over a different field");
      if (f.degree() != m.b[i] - m.a && !(f.is_zero() && m.b[i] < m.a))
        throw_input("alpha[" + std::to_string(i) + "] must have degree " + std::to_string(m.b[i] - m.a));
    }
  }
  if (m.beta) {
    if (m.beta->size() != m.b.size()) throw_input("beta has the wrong number of entries");
    for (std::size_t i = 0; i < m.b.size(); ++i) {
      const auto& f = (*m.beta)[i];
      if (&f.field() != m.field) throw_input("beta entry over a different field");
      if (f.degree() != m.c - m.b[i])
        throw_input("beta[" + std::to_string(i) + "] must have degree " + std::to_string(m.c - m.b[i]));
    }
  }
  if (m.alpha && m.beta && m.rank() < 1) throw_input("monad has rank < 1");
}

BinaryForm gcd_all(const std::vector<BinaryForm>& v) {
  std::optional<BinaryForm> g;
  for (const auto& f : v) {
    if (f.is_zero()) continue;
    g = g ? gcd_bin(*g, f) : gcd_bin(f, BinaryForm(f.field(), 0));
  }
  if (!g) return BinaryForm(v[0].field(), 0);
  return *g;
}

}  // namespace

MonadReport validate_monad(const MonadP1& m) {
  check_degrees(m);
  MonadReport rep;
  if (m.alpha && m.beta) {
    BinaryForm sum(*m.field, m.c - m.a);
    for (std::size_t i = 0; i < m.b.size(); ++i) sum = sum + (*m.beta)[i] * (*m.alpha)[i];
    if (!sum.is_zero()) {
      rep.ok = false;
      rep.violations.push_back("beta . alpha != 0: " + sum.to_string());
    }
  }
  if (m.alpha) {
    bool all_zero = std::all_of(m.alpha->begin(), m.alpha->end(), [](const BinaryForm& f) { return f.is_zero(); });
    if (all_zero) {
      rep.ok = false;
      rep.violations.push_back("alpha is zero");
    } else {
      BinaryForm g = gcd_all(*m.alpha);
      if (g.degree() > 0) {
        rep.ok = false;
        rep.violations.push_back("alpha not a subbundle, common root " + root_witness(g));
      }
    }
  }
  if (m.beta) {
    bool all_zero = std::all_of(m.beta->begin(), m.beta->end(), [](const BinaryForm& f) { return f.is_zero(); });
    if (all_zero) {
      rep.ok = false;
      rep.violations.push_back("beta is zero");
    } else {
      BinaryForm g = gcd_all(*m.beta);
      if (g.degree() > 0) {
        rep.ok = false;
        rep.violations.push_back("beta not surjective, root " + root_witness(g));
      }
    }
  }
  return rep;
}

namespace {

// Matrix of w -> g * w from forms of degree e to forms of degree e + deg g (e >= 0).
void put_mult(Matrix& M, std::size_t row0, std::size_t col0, const BinaryForm& g, int e) {
  for (int j = 0; j <= e; ++j)
    for (int s = 0; s <= g.degree(); ++s)
      M(row0 + static_cast<std::size_t>(j + s), col0 + static_cast<std::size_t>(j)) = g.coeff(s);
}

int forms_dim(int d) { return d < 0 ? 0 : d + 1; }

// Graded pieces T_d = ker beta_d / im alpha_d with chosen complement bases and the
// multiplication maps by U and V in those coordinates.
class GradedQuotient {
 public:
  explicit GradedQuotient(const MonadP1& m) : m_(m), F_(*m.field) {}

  struct Piece {
    std::size_t ambient = 0;                 // dim of (+) Forms_{b_i + d}
    std::vector<std::vector<Scalar>> alpha;  // independent columns spanning im alpha_d
    std::vector<std::vector<Scalar>> basis;  // complement of im alpha_d in ker beta_d
  };

  const Piece& piece(int d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    Piece p;
    std::vector<std::size_t> offs;
    for (int bi : m_.b) {
      offs.push_back(p.ambient);
      p.ambient += static_cast<std::size_t>(forms_dim(bi + d));
    }
    std::vector<std::vector<Scalar>> kb;
    if (m_.beta) {
      const std::size_t rows = static_cast<std::size_t>(forms_dim(m_.c + d));
      Matrix B(F_, rows, p.ambient);
      for (std::size_t i = 0; i < m_.b.size(); ++i)
        if (m_.b[i] + d >= 0) put_mult(B, 0, offs[i], (*m_.beta)[i], m_.b[i] + d);
      if (rows == 0) {
        for (std::size_t j = 0; j < p.ambient; ++j) {
          std::vector<Scalar> e(p.ambient, F_.zero());
          e[j] = F_.one();
          kb.push_back(std::move(e));
        }
      } else {
        kb = kernel(B);
      }
    } else {
      for (std::size_t j = 0; j < p.ambient; ++j) {
        std::vector<Scalar> e(p.ambient, F_.zero());
        e[j] = F_.one();
        kb.push_back(std::move(e));
      }
    }
    std::vector<std::vector<Scalar>> acols;
    if (m_.alpha && m_.a + d >= 0) {
      const int e = m_.a + d;
      Matrix A(F_, p.ambient, static_cast<std::size_t>(e + 1));
      for (std::size_t i = 0; i < m_.b.size(); ++i)
        if (m_.b[i] + d >= 0) put_mult(A, offs[i], 0, (*m_.alpha)[i], e);
      for (std::size_t j = 0; j < A.cols(); ++j) acols.push_back(A.col(j));
    }
    // Choose independent alpha columns, then kernel vectors completing them.
    const std::size_t na = acols.size();
    if (p.ambient > 0 && na + kb.size() > 0) {
      Matrix M(F_, p.ambient, na + kb.size());
      for (std::size_t j = 0; j < na; ++j)
        for (std::size_t i = 0; i < p.ambient; ++i) M(i, j) = acols[j][i];
      for (std::size_t j = 0; j < kb.size(); ++j)
        for (std::size_t i = 0; i < p.ambient; ++i) M(i, na + j) = kb[j][i];
      for (std::size_t piv : rref(M).pivots) {
        if (piv < na)
          p.alpha.push_back(acols[piv]);
        else
          p.basis.push_back(kb[piv - na]);
      }
    }
    return cache_.emplace(d, std::move(p)).first->second;
  }

  int dim(int d) { return static_cast<int>(piece(d).basis.size()); }

  // Coordinates in T_{d+1} of U * basis_d (which = 0) or V * basis_d (which = 1).
  Matrix mult(int d, int which) {
    const auto key = std::make_pair(d, which);
    auto it = mult_cache_.find(key);
    if (it != mult_cache_.end()) return it->second;
    const Piece& src = piece(d);
    const Piece& dst = piece(d + 1);
    const std::size_t t = src.basis.size(), t1 = dst.basis.size();
    Matrix out(F_, t1, t);
    if (t > 0 && t1 > 0) {
      const std::size_t na = dst.alpha.size();
      Matrix M(F_, dst.ambient, na + t1 + t);
      for (std::size_t j = 0; j < na; ++j)
        for (std::size_t i = 0; i < dst.ambient; ++i) M(i, j) = dst.alpha[j][i];
      for (std::size_t j = 0; j < t1; ++j)
        for (std::size_t i = 0; i < dst.ambient; ++i) M(i, na + j) = dst.basis[j][i];
      for (std::size_t j = 0; j < t; ++j) {
        // shift each component block: degree e -> e + 1
        std::size_t so = 0, dof = 0;
        for (int bi : m_.b) {
          const int e = bi + d;
          const int ls = forms_dim(e), ld = forms_dim(e + 1);
          for (int k = 0; k < ls; ++k)
            M(dof + static_cast<std::size_t>(k + which), na + t1 + j) = src.basis[j][so + static_cast<std::size_t>(k)];
          so += static_cast<std::size_t>(ls);
          dof += static_cast<std::size_t>(ld);
        }
      }
      Rref r = rref(M);
      if (r.pivots.size() > na + t1 || (r.pivots.size() == na + t1 && !r.pivots.empty() && r.pivots.back() >= na + t1))
        throw_integrity("multiplication map leaves the kernel of beta");
      for (std::size_t j = 0; j < t; ++j)
        for (std::size_t i = 0; i < t1; ++i) out(i, j) = r.m(na + i, na + t1 + j);
    }
    mult_cache_.emplace(key, out);
    return out;
  }

 private:
  const MonadP1& m_;
  const Field& F_;
  std::map<int, Piece> cache_;
  std::map<std::pair<int, int>, Matrix> mult_cache_;
};

int hom_dim(GradedQuotient& T, int l, int k) {
  const int D = l + k;
  const int t = T.dim(D);
  if (k == 0 || t == 0) return t;
  const int t1 = T.dim(D + 1);
  if (t1 == 0) return (k + 1) * t;
  Matrix U = T.mult(D, 0), V = T.mult(D, 1);
  const std::size_t st = static_cast<std::size_t>(t), st1 = static_cast<std::size_t>(t1);
  Matrix S(U.field(), static_cast<std::size_t>(k) * st1, static_cast<std::size_t>(k + 1) * st);
  for (int j = 0; j < k; ++j) {
    const std::size_t r0 = static_cast<std::size_t>(j) * st1;
    for (std::size_t r = 0; r < st1; ++r)
      for (std::size_t c = 0; c < st; ++c) {
        S(r0 + r, static_cast<std::size_t>(j) * st + c) = V(r, c);
        S(r0 + r, static_cast<std::size_t>(j + 1) * st + c) = -U(r, c);
      }
  }
  return (k + 1) * t - static_cast<int>(rank(S));
}

void require_valid(const MonadP1& m) {
  auto rep = validate_monad(m);
  if (!rep.ok) throw_input("invalid monad: " + rep.violations.front());
}

int h0_with(GradedQuotient& T, const MonadP1& m, int l) {
  int cap = std::abs(m.a) + std::abs(m.c) + 8;
  for (int bi : m.b) cap += std::abs(bi);
  int k = m.alpha ? std::max(0, -m.a - 1 - l) : 0;
  if (k > cap) throw_integrity("saturation start beyond cap");
  int prev = hom_dim(T, l, k);
  for (++k; k <= cap; ++k) {
    const int cur = hom_dim(T, l, k);
    if (cur == prev) return cur;
    prev = cur;
  }
  throw_integrity("saturation did not stabilize at twist " + std::to_string(l));
}

}  // namespace

int quotient_graded_dim(const MonadP1& m, int l) {
  require_valid(m);
  GradedQuotient T(m);
  return T.dim(l);
}

int h0_twist(const MonadP1& m, int l) {
  require_valid(m);
  GradedQuotient T(m);
  return h0_with(T, m, l);
}

SplittingReport splitting_report(const MonadP1& m) {
  require_valid(m);
  GradedQuotient T(m);
  SplittingReport rep;
  const int rank = static_cast<int>(m.rank());
  const int maxb = *std::max_element(m.b.begin(), m.b.end());
  const int rkK = static_cast<int>(m.b.size()) - (m.beta ? 1 : 0);
  const int degK = std::accumulate(m.b.begin(), m.b.end(), 0) - (m.beta ? m.c : 0);
  // Every summand of E is a quotient of K = ker beta, whose summands are <= max b.
  const int L = degK - (rkK - 1) * maxb;
  const int U = m.degree() - (rank - 1) * L;
  rep.window_lo = -U - 1;
  rep.window_hi = -L + 1;
  auto h0 = [&](int l) {
    auto it = rep.h0.find(l);
    if (it != rep.h0.end()) return it->second;
    const int v = h0_with(T, m, l);
    rep.h0[l] = v;
    return v;
  };
  auto delta = [&](int l) { return h0(l) - h0(l - 1); };
  if (delta(rep.window_lo) != 0) throw_integrity("window assertion failed: first difference nonzero at left end");
  if (delta(rep.window_hi) != rank) throw_integrity("window assertion failed: first difference below rank at right end");
  std::vector<int> parts;
  for (int d = -rep.window_lo - 1; d >= -rep.window_hi; --d) {
    // #{d_i >= d} - #{d_i >= d + 1}
    const int mult = delta(-d) - delta(-d - 1);
    if (mult < 0) throw_integrity("negative multiplicity in splitting recovery");
    for (int i = 0; i < mult; ++i) parts.push_back(d);
  }
  if (static_cast<int>(parts.size()) != rank) throw_integrity("recovered splitting has the wrong rank");
  rep.type.parts = parts;
  if (std::accumulate(parts.begin(), parts.end(), 0) != m.degree())
    throw_integrity("recovered splitting has the wrong degree");
  for (const auto& [l, v] : rep.h0)
    if (h0_of_splitting(rep.type, l) != v) throw_integrity("reconstruction mismatch at twist " + std::to_string(l));
  // Riemann-Roch at five further twists: h0 - h1 = deg + rank (l + 1).
  for (int l : {rep.window_lo - 3, rep.window_lo - 2, rep.window_hi + 1, rep.window_hi + 2, rep.window_hi + 3}) {
    if (rep.h0.count(l)) throw_integrity("Riemann-Roch twist overlaps the scanned window");
    rep.rr_twists.push_back(l);
    const int hv = h0(l);
    int h1 = 0;
    for (int d : parts) h1 += std::max(0, -d - l - 1);
    if (hv - h1 != m.degree() + rank * (l + 1))
      throw_integrity("Riemann-Roch check failed at twist " + std::to_string(l));
  }
  return rep;
}

SplittingType splitting_type(const MonadP1& m) { return splitting_report(m).type; }

}  // namespace vfree
