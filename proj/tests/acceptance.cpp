// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "vfree/constructions.hpp"
#include "vfree/error.hpp"

using namespace vfree;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.note << "[error: " << e.what() << "]";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.note.str().c_str());
  std::fflush(stdout);
}

Scalar rand_scalar(const Field& F, std::mt19937_64& rng) {
  if (F.is_finite()) return F.element(rng() % F.size_u64());
  return F.from_int(static_cast<long long>(rng() % 11) - 5);
}

MultiPoly random_form(const Field& F, unsigned nv, unsigned deg, std::mt19937_64& rng) {
  MultiPolyBuilder b(F, nv);
  std::function<void(Monomial&, unsigned, unsigned)> rec = [&](Monomial& m, unsigned from, unsigned left) {
    if (left == 0) {
      b.add(m, rand_scalar(F, rng));
      return;
    }
    for (unsigned i = from; i < nv; ++i) {
      ++m[i];
      rec(m, i, left - 1);
      --m[i];
    }
  };
  Monomial m{};
  rec(m, 0, deg);
  return b.build();
}

MultiPoly random_smooth_cubic(const Field& F, unsigned nv, std::mt19937_64& rng) {
  for (;;) {
    auto f = random_form(F, nv, 3, rng);
    if (!f.is_zero() && is_smooth(f)) return f;
  }
}

// Random (Q, L, A) with Q(1,0,0) != 0 and a smooth surface.
TangentSectionNormalForm random_normal_form(const Field& F, std::mt19937_64& rng) {
  for (;;) {
    auto Q = random_form(F, 3, 2, rng);
    auto L = random_form(F, 3, 1, rng);
    auto A = rand_scalar(F, rng);
    if (Q.eval({F.one(), F.zero(), F.zero()}).is_zero()) continue;
    auto nf = normal_form_surface(Q, L, A);
    if (is_smooth(nf.surface())) return nf;
  }
}

const Check* find_check(const VerificationReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

bool check_passed(const VerificationReport& r, const std::string& prefix) {
  const Check* c = find_check(r, prefix);
  return c && c->pass;
}

Matrix random_invertible(const Field& F, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rand_scalar(F, rng);
    if (!det(m).is_zero()) return m;
  }
}

ProjPoint point(const Field& F, std::vector<long long> v) {
  std::vector<Scalar> c;
  for (auto x : v) c.push_back(F.from_int(x));
  return make_point(c);
}

BinaryForm bf(const char* s, const Field& F) { return parse_binary_form(s, F); }

struct XiRuns {
  std::map<std::string, std::vector<VerificationReport>> by_field;
};

const XiRuns& xi_runs() {
  static XiRuns runs = [] {
    XiRuns r;
    std::mt19937_64 rng(20240611);
    for (const char* spec : {"7", "5", "Q", "2"}) {
      const Field& F = Field::parse(spec);
      for (int t = 0; t < 5; ++t) r.by_field[spec].push_back(verify_xi_eta(random_normal_form(F, rng)));
    }
    return r;
  }();
  return runs;
}

}  // namespace

int main() {
  criterion(1, "xi.f = -U^2 V^2 over F7, F5, Q, F2 (5 random (Q, L, A) each)", [](Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& runs = xi_runs();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& [spec, reps] : runs.by_field)
      for (const auto& r : reps) {
        o.require(check_passed(r, "xi.f"), "xi.f over " + spec);
        o.require(check_passed(r, "xi charts agree"), "xi charts over " + spec);
        o.require(check_passed(r, "curve on surface"), "curve on surface over " + spec);
      }
    o.note << "20 runs, " << secs << "s total, mean " << secs / 20 << "s per run";
  });

  criterion(2, "eta.f support {U^4 V, U V^4} with unit coefficients", [](Outcome& o) {
    std::set<std::string> signs;
    for (const auto& [spec, reps] : xi_runs().by_field)
      for (const auto& r : reps) {
        const Check* c = find_check(r, "eta.f");
        o.require(c && c->pass, "eta.f over " + spec);
        if (c) signs.insert("[" + spec + "] " + c->details);
      }
    for (const auto& s : signs) o.note << s << "; ";
    o.note << "finding: outside char 2 the sign of U V^4 is + where the printed form has -";
  });

  criterion(3, "d3 f o h = Q(-U^3-V^3, U^2 V, U V^2)", [](Outcome& o) {
    for (const auto& [spec, reps] : xi_runs().by_field)
      for (const auto& r : reps) o.require(check_passed(r, "d3 f"), "d3 f over " + spec);
    o.note << "20 runs";
  });

  criterion(4, "h0((h*T_X)(-3)) = 0 and splitting {2,1} over F7, F5, Q", [](Outcome& o) {
    std::mt19937_64 rng(404);
    for (const char* spec : {"7", "5", "Q"}) {
      const Field& F = Field::parse(spec);
      auto t0 = std::chrono::steady_clock::now();
      auto nf = random_normal_form(F, rng);
      auto h = standard_nodal_parametrization(F);
      h.push_back(BinaryForm(F, 3));
      auto m = pullback_tangent(nf.surface(), h);
      o.require(h0_twist(m, -3) == 0, std::string("h0(-3) over ") + spec);
      auto s = splitting_type(m);
      o.require(s == SplittingType{{2, 1}} && is_very_free_splitting(s), std::string("splitting over ") + spec);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.require(secs < 5, std::string("runtime over ") + spec);
      o.note << spec << ": " << s.to_string() << " in " << secs << "s; ";
    }
  });

  criterion(5, "cuspidal sections: {3,0}, not very free (F7, Q; F3 with alpha = 1, 2)", [](Outcome& o) {
    std::vector<std::pair<const char*, long long>> cases{{"7", 0}, {"Q", 0}, {"3", 1}, {"3", 2}};
    for (auto [spec, alpha] : cases) {
      const Field& F = Field::parse(spec);
      auto r = verify_cuspidal_delta(F, F.from_int(alpha));
      std::string tag = std::string(spec) + (alpha ? ", alpha=" + std::to_string(alpha) : "");
      o.require(r.all_pass(), "cusp checks over " + tag);
      const Check* s = find_check(r, "splitting");
      o.require(s && s->details == "[3,0]", "splitting over " + tag);
      o.note << tag << ": " << (s ? s->details : "?") << "; ";
    }
  });

  criterion(6, "char-2 Fermat explicit curve: f o h = 0 and splitting {2,1}", [](Outcome& o) {
    const Field& F = Field::finite(2);
    auto f = fermat_cubic(F);
    auto h = fermat_char2_curve();
    o.require(compose_with_curve(f, h).is_zero(), "f o h = 0");
    auto m = pullback_tangent(f, h);
    auto s = splitting_type(m);
    o.require(s == SplittingType{{2, 1}}, "splitting");
    o.note << s.to_string();
  });

  criterion(7, "char-2 Fermat trichotomy over F4 and F16", [](Outcome& o) {
    for (unsigned k : {2u, 4u}) {
      auto t0 = std::chrono::steady_clock::now();
      auto r = fermat_char2_report(k);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.require(r.trichotomy, "trichotomy at k = " + std::to_string(k));
      std::size_t allowed = 0;
      for (const auto& [name, count] : r.frequencies)
        if (name == "CuspidalIntegral" || name == "LineConicTangent" || name == "ThreeLinesConcurrent") allowed += count;
      o.require(allowed == r.points, "frequencies at k = " + std::to_string(k));
      if (k == 4) o.require(secs < 120, "runtime at F16");
      o.note << "F" << (1u << k) << ": " << r.points << " points {";
      for (const auto& [name, count] : r.frequencies) o.note << name << "=" << count << " ";
      o.note << "} " << secs << "s; ";
    }
  });

  criterion(8, "27 lines, 10 meets per line, pair-count identity", [](Outcome& o) {
    auto check = [&](const MultiPoly& f, const std::string& tag, bool rational) {
      auto c = lines_on_cubic_surface(f);
      o.require(c.lines.size() == 27, "27 lines on " + tag);
      if (rational) o.require(c.ext_degree == 1, "rational lines on " + tag);
      MultiPoly fw = f.embed(*c.field);
      for (const auto& l : c.lines) o.require(compose_with_curve(fw, l.parametrization()).is_zero(), "line on " + tag);
      auto e = eckardt_points(c);
      o.require(std::all_of(e.meets_per_line.begin(), e.meets_per_line.end(), [](int m) { return m == 10; }),
                "10 meets on " + tag);
      // independent pair count
      std::size_t pairs = 0;
      for (std::size_t i = 0; i < c.lines.size(); ++i)
        for (std::size_t j = i + 1; j < c.lines.size(); ++j)
          if (intersect(c.lines[i], c.lines[j])) ++pairs;
      o.require(pairs == e.incident_pairs && pairs == 3 * e.eckardt.size() + e.two_line.size(), "pair identity on " + tag);
      o.note << tag << ": 27 over " << c.field->spec() << ", " << pairs << " = 3*" << e.eckardt.size() << " + "
             << e.two_line.size() << "; ";
    };
    check(fermat_cubic(Field::finite(7)), "Fermat F7", true);
    std::mt19937_64 rng(555);
    for (int t = 0; t < 3; ++t) check(random_smooth_cubic(Field::finite(5), 4, rng), "random F5 #" + std::to_string(t), false);
  });

  criterion(9, "Eckardt censuses: Clebsch over F7, char-2 Fermat vs printed 35", [](Outcome& o) {
    const Field& F = Field::finite(7);
    auto f = parse_poly("X0^3+X1^3+X2^3+X3^3-(X0+X1+X2+X3)^3", 4, F);
    auto c = lines_on_cubic_surface(f);
    auto e = eckardt_points(c);
    const Field& W = *c.field;
    // (1:-1:0:0:0) and permutations, in the coordinates X0..X3 with X4 = -(X0+...+X3)
    int hits = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        std::vector<Scalar> v(5, W.zero());
        v[static_cast<std::size_t>(i)] = W.one();
        v[static_cast<std::size_t>(j)] = -W.one();
        auto p = make_point({v[0], v[1], v[2], v[3]});
        if (std::find(e.eckardt.begin(), e.eckardt.end(), p) != e.eckardt.end()) ++hits;
      }
    o.require(hits == 10, "Clebsch permutation points");
    o.note << "Clebsch: " << hits << "/10 permutation points Eckardt (" << e.eckardt.size() << " over " << W.spec() << "); ";
    auto r = fermat_char2_report(2);
    const auto& ce = r.census;
    o.require(ce.incident_pairs == 3 * ce.eckardt.size() + ce.two_line.size(), "char-2 pair identity");
    o.require(r.lines.lines.size() == 27, "char-2 line count");
    o.note << "char-2 Fermat: " << ce.eckardt.size() << " Eckardt points, " << ce.two_line.size() << " two-line points, "
           << ce.incident_pairs << " incident pairs over " << r.lines.field->spec();
    if (ce.eckardt.size() != 35) {
      o.note << "; finding: printed figure is 35; sorted entries 36-38 are";
      for (std::size_t i = 35; i < std::min<std::size_t>(ce.eckardt.size(), 38); ++i) o.note << " " << ce.eckardt[i].to_string();
    }
  });

  criterion(10, "nodal tangent section pipeline on 5 random F7 surfaces, Clebsch, and char-2 Fermat failure", [](Outcome& o) {
    std::mt19937_64 rng(1010);
    const Field& F = Field::finite(7);
    std::vector<std::pair<std::string, MultiPoly>> surfaces;
    for (int t = 0; t < 5; ++t) surfaces.emplace_back("random #" + std::to_string(t), random_smooth_cubic(F, 4, rng));
    surfaces.emplace_back("Clebsch", parse_poly("X0^3+X1^3+X2^3+X3^3-(X0+X1+X2+X3)^3", 4, F));
    for (const auto& [tag, f] : surfaces) {
      auto t0 = std::chrono::steady_clock::now();
      auto c = build_very_free_curve(f);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.require(c.method.find("nodal tangent section") != std::string::npos, "method on " + tag);
      const Field& W = c.h[0].field();
      o.require(compose_with_curve(f.embed(W), c.h).is_zero(), "curve on " + tag);
      auto s = splitting_type(pullback_tangent(f.embed(W), c.h));
      o.require(s == SplittingType{{2, 1}}, "splitting on " + tag);
      o.require(secs < 60, "runtime on " + tag);
      o.note << tag << " " << s.to_string() << " over " << W.spec() << " " << secs << "s; ";
    }
    const Field& F2 = Field::finite(2);
    auto fermat = fermat_cubic(F2);
    auto census = lines_on_cubic_surface(fermat, 2);
    std::string msg;
    try {
      find_nodal_section(fermat, census);
    } catch (const Error& e) {
      msg = e.what();
    }
    o.require(msg.find("all intersection points are Eckardt") != std::string::npos, "char-2 diagnosis");
    o.note << "char-2 Fermat: " << msg;
  });

  criterion(11, "six points: diagonal points, 10 random F11 sextuples, forced char-2 configuration", [](Outcome& o) {
    const Field& F7 = Field::finite(7);
    auto r = six_point_diagonal({point(F7, {0, 0, 1}), point(F7, {1, 0, 1}), point(F7, {1, 1, 1}), point(F7, {0, 1, 1}),
                                 point(F7, {1, 3, 5}), point(F7, {1, 5, 4})});
    std::vector<ProjPoint> expect{point(F7, {1, 0, 0}), point(F7, {1, 1, 2}), point(F7, {0, 1, 0})};
    o.require(r.diagonals == expect, "diagonal points");
    o.require(r.q.has_value(), "Q for the standard four points");
    const Field& F = Field::finite(11);
    std::mt19937_64 rng(1111);
    int found = 0, tried = 0;
    while (found < 10 && tried < 1000) {
      ++tried;
      std::vector<ProjPoint> six;
      for (int i = 0; i < 6; ++i) {
        std::vector<Scalar> c{rand_scalar(F, rng), rand_scalar(F, rng), rand_scalar(F, rng)};
        if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); })) c[0] = F.one();
        six.push_back(make_point(c));
      }
      SixPointResult res;
      try {
        res = six_point_diagonal(six);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Input) continue;
        throw;
      }
      ++found;
      o.require(res.q.has_value() && !res.certificate.empty(), "Q for sextuple " + std::to_string(found));
      if (!res.q) continue;
      // recheck: Q on exactly two connecting lines, distinct from the points, off the six conics
      const ProjPoint& q = *res.q;
      auto det3 = [&](const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
        Matrix m(F, 3, 3);
        for (std::size_t j = 0; j < 3; ++j) {
          m(0, j) = a.coords[j];
          m(1, j) = b.coords[j];
          m(2, j) = c.coords[j];
        }
        return det(m);
      };
      int on = 0;
      for (int i = 0; i < 6; ++i) {
        o.require(!(six[static_cast<std::size_t>(i)] == q), "Q distinct");
        for (int j = i + 1; j < 6; ++j) on += det3(six[static_cast<std::size_t>(i)], six[static_cast<std::size_t>(j)], q).is_zero();
      }
      o.require(on == 2, "Q on exactly two lines");
      auto veronese = [&](const ProjPoint& p) {
        const auto& x = p.coords;
        return std::vector<Scalar>{x[0] * x[0], x[1] * x[1], x[2] * x[2], x[0] * x[1], x[0] * x[2], x[1] * x[2]};
      };
      for (int skip = 0; skip < 6; ++skip) {
        Matrix m(F, 6, 6);
        std::size_t row = 0;
        for (int i = 0; i < 6; ++i) {
          if (i == skip) continue;
          auto v = veronese(six[static_cast<std::size_t>(i)]);
          for (std::size_t j = 0; j < 6; ++j) m(row, j) = v[j];
          ++row;
        }
        auto v = veronese(q);
        for (std::size_t j = 0; j < 6; ++j) m(5, j) = v[j];
        o.require(!det(m).is_zero(), "Q off conic");
      }
    }
    o.require(found >= 10, "10 general sextuples");
    const Field& F4 = Field::parse("2^2");
    auto r2 = six_point_diagonal({point(F4, {0, 0, 1}), point(F4, {1, 0, 1}), point(F4, {1, 1, 1}), point(F4, {0, 1, 1}),
                                  make_point({F4.one(), F4.element(2), F4.zero()}),
                                  make_point({F4.one(), F4.element(3), F4.zero()})});
    o.require(!r2.q && r2.diagonals_on_p4p5, "forced char-2 configuration");
    o.note << "diagonals (1:0:0) (1:1:2) (0:1:0); " << found << " F11 sextuples certified; F4 forced: no Q";
  });

  criterion(12, "smooth cubic threefold over F7: plane curve with splitting {3,2,1}", [](Outcome& o) {
    const Field& F = Field::finite(7);
    auto f = parse_poly("X0*X1*X2+X1^3+X2^3+X3*X0^2+X3^3+X4^3", 5, F);
    o.require(is_smooth(f), "threefold smooth");
    auto c = build_very_free_curve(f);
    const Field& W = c.h[0].field();
    o.require(compose_with_curve(f.embed(W), c.h).is_zero(), "curve on X");
    auto s = splitting_type(pullback_tangent(f.embed(W), c.h));
    int sum = 0;
    for (int p : s.parts) sum += p;
    o.require(s == SplittingType{{3, 2, 1}}, "splitting");
    o.require(sum == 6 && s.parts.back() >= 1, "sum 6, min >= 1");
    o.require(c.anticanonical_degree == 6, "anticanonical degree");
    o.require(c.hyperplanes.size() == 1, "one slicing hyperplane");
    for (const auto& H : c.hyperplanes) o.require(is_smooth(plane_section(f.embed(H.field()), H).cubic), "section smooth");
    o.note << s.to_string() << " via " << c.method;
  });

  criterion(13, "property suites: PGL2/PGL4 invariance, Riemann-Roch, direct sums, smoothness oracle", [](Outcome& o) {
    const Field& F = Field::finite(7);
    std::mt19937_64 rng(1313);
    auto f = parse_poly("X0*X1*X2+X1^3+X2^3+X3*X0^2+X3^3", 4, F);
    auto h = standard_nodal_parametrization(F);
    h.push_back(BinaryForm(F, 3));
    int rr_checks = 0;
    for (int t = 0; t < 20; ++t) {
      Scalar a, b, c, d;
      do {
        a = rand_scalar(F, rng);
        b = rand_scalar(F, rng);
        c = rand_scalar(F, rng);
        d = rand_scalar(F, rng);
      } while ((a * d - b * c).is_zero());
      Matrix m = random_invertible(F, 4, rng);
      Matrix minv = *inverse(m);
      CurveMap h2;
      for (std::size_t i = 0; i < 4; ++i) {
        BinaryForm s(F, 3);
        for (std::size_t j = 0; j < 4; ++j) s = s + h[j].reparametrize(a, b, c, d) * minv(i, j);
        h2.push_back(s);
      }
      auto rep = splitting_report(pullback_tangent(linear_substitute(f, m), h2));
      o.require(rep.type == SplittingType{{2, 1}}, "PGL invariance");
      o.require(rep.rr_twists.size() == 5, "five extra twists");
      for (int l : rep.rr_twists) {
        o.require(rep.h0.at(l) == h0_of_splitting(rep.type, l), "Riemann-Roch at twist " + std::to_string(l));
        ++rr_checks;
      }
    }
    int sums = 0;
    for (int t = 0; t < 20; ++t) {
      const int d1 = static_cast<int>(rng() % 9) - 3, d2 = static_cast<int>(rng() % 9) - 3;
      const SplittingType want{{std::max(d1, d2), std::min(d1, d2)}};
      // O(d1) + O(d2) + coker(O(x+y-c) -> O(x) + O(y)) with the cokernel killed by beta
      const int x = 1 + static_cast<int>(rng() % 3), y = 1 + static_cast<int>(rng() % 3);
      const int c = std::max({x, y, d1, d2}) + 1 + static_cast<int>(rng() % 2);
      const int a = x + y - c;
      MonadP1 m;
      m.field = &F;
      m.b = {d1, d2};
      if (d1 >= a && d2 >= a) {
        BinaryForm b2 = bf("1", F), b3 = bf("1", F);
        for (int i = 0; i < c - x; ++i) b2 = b2 * bf("U+V", F);
        for (int i = 0; i < c - y; ++i) b3 = b3 * bf("U-V", F);
        m.a = a;
        m.c = c;
        m.b = {d1, d2, x, y};
        m.beta = std::vector<BinaryForm>{BinaryForm(F, c - d1), BinaryForm(F, c - d2), b2, b3};
        m.alpha = std::vector<BinaryForm>{BinaryForm(F, d1 - a), BinaryForm(F, d2 - a), b3, -b2};
        o.require(validate_monad(m).ok, "direct-sum monad valid");
      }
      o.require(splitting_type(m) == want, "direct sum " + want.to_string());
      ++sums;
    }
    const Field& F5 = Field::finite(5);
    int smooth = 0, singular = 0;
    for (int t = 0; t < 30; ++t) {
      auto g = random_form(F5, 4, 3, rng);
      if (t % 2 == 1) {
        // force a singular point at a random rational point: drop X0^3 and X0^2 Xi after moving it to (1:0:0:0)
        MultiPolyBuilder b(F5, 4);
        for (const auto& term : g.terms())
          if (term.mono[0] < 2) b.add(term.mono, term.coeff);
        g = linear_substitute(b.build(), random_invertible(F5, 4, rng));
      }
      bool pd = false;
      auto gb = singular_points(g, 6, &pd);
      bool sm = is_smooth(g);
      o.require(sm == (gb.empty() && !pd), "is_smooth vs Groebner points");
      if (pd) continue;
      const Field& W = gb.empty() ? F5 : gb.front().field();
      unsigned e = W.degree();
      auto scan = singular_points_scan(g, std::min(e, 2u));
      std::vector<ProjPoint> scan_w;
      for (const auto& p : scan) scan_w.push_back(p.embed(W));
      std::sort(scan_w.begin(), scan_w.end());
      std::vector<ProjPoint> gb_low;
      mpz_class q2 = F5.extension(std::min(e, 2u)).order();
      for (const auto& p : gb)
        if (std::all_of(p.coords.begin(), p.coords.end(), [&](const Scalar& s) { return s.pow(q2) == s; })) gb_low.push_back(p);
      std::sort(gb_low.begin(), gb_low.end());
      o.require(scan_w == gb_low, "Groebner vs scan on cubic " + std::to_string(t));
      (sm ? smooth : singular) += 1;
    }
    o.note << "20 PGL trials, " << rr_checks << " Riemann-Roch twists, " << sums << " direct sums, 30 cubics over F5 ("
           << smooth << " smooth, " << singular << " singular)";
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
