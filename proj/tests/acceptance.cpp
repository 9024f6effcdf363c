// Acceptance suite: one PASS/FAIL line per criterion.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fiperiod/cohom.hpp"
#include "fiperiod/oracles.hpp"
#include "fiperiod/periodcalc.hpp"
#include "fiperiod/periodet.hpp"
#include "support.hpp"

using namespace fiperiod;
using fimod::Element;
using fimod::FIPresentation;
using fimod::FreeShape;
using fimod::Injection;

namespace {

// Every level evaluated by the suite, for the Coxeter check in criterion 10.
std::vector<fimod::LevelData> g_levels;

fimod::LevelData eval(const FIPresentation& P, int n) {
  auto L = fimod::evaluate(P, n);
  g_levels.push_back(L);
  return L;
}

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

long peak_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss / 1024;
}

Injection identity_injection(int m) {
  Injection id(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) id[static_cast<std::size_t>(j)] = j + 1;
  return id;
}

Injection swapped(int m, int i) {
  auto f = identity_injection(m);
  std::swap(f[static_cast<std::size_t>(i - 1)], f[static_cast<std::size_t>(i)]);
  return f;
}

FIPresentation trivial_w(std::uint32_t p, int m) {
  FreeShape sh(p, {m});
  std::vector<Element> rels;
  for (int i = 1; i < m; ++i) rels.push_back(Element(sh, m).add(0, identity_injection(m)).add(0, swapped(m, i), -1));
  return FIPresentation::presented(sh, rels);
}

FIPresentation single_relation_w(std::uint32_t p, int m) {
  FreeShape sh(p, {m});
  return FIPresentation::presented(sh, {Element(sh, m).add(0, identity_injection(m)).add(0, swapped(m, 1), 1)});
}

int criterion1(Outcome& o) {
  const auto P = oracles::intro_kernel_presentation();
  for (int n = 2; n <= 12; ++n) {
    const auto h = static_cast<int>(cohom::invariants_dim(eval(P, n)));
    o.expect(h == (n % 2 == 0 ? 1 : 0), "n=" + std::to_string(n));
  }
  o.note << "intro kernel H0 parity for n=2..12";
  return 10;
}

int criterion2(Outcome& o) {
  const auto P = oracles::example1_presentation(3);
  for (int n = 3; n <= 12; ++n) {
    const int closed = oracles::binom_mod_p(static_cast<std::uint64_t>(n - 2), 1, 2) == 0 ? 2 : 1;
    o.expect(static_cast<int>(cohom::invariants_dim(eval(P, n))) == closed, "n=" + std::to_string(n));
  }
  const auto r = periodet::detect_period(oracles::oracle_series("example1", 2, 3, 3, 100));
  o.expect(r.period == 2, "detected period");
  o.note << "d=3 invariants match for n=3..12; period " << r.period.value_or(-1) << " over n<=100";
  return 60;
}

int criterion3(Outcome& o) {
  const auto P = oracles::example1_presentation(5);
  for (int n = 5; n <= 10; ++n)
    o.expect(static_cast<int>(cohom::invariants_dim(eval(P, n))) == oracles::example1_dim(5, n), "n=" + std::to_string(n));
  const auto r = periodet::detect_period(oracles::oracle_series("example1", 2, 5, 5, 200));
  o.expect(r.period == 4, "detected period");
  const periodcalc::CoverShape cover(2, {0, 5});
  const auto exponent = periodcalc::op_I(periodcalc::op_D(periodcalc::PeriodProfile::zero(cover)));
  o.expect(exponent == 4, "cover (0,5) exponent");
  o.expect(r.conclusive() && periodet::check_divides_bound(r, 2, exponent), "period divides 2^4");
  const auto rss = peak_rss_mb();
  o.expect(rss < 2048, "peak memory");
  o.note << "d=5 invariants match for n=5..10; period " << r.period.value_or(-1) << " over n=5..200; exponent "
         << exponent << "; peak RSS " << rss << " MB";
  return 1800;
}

int criterion4(Outcome& o) {
  std::size_t checked = 0, divisible = 0;
  auto vp_fact = [](int b, int p) {
    int v = 0;
    for (int q = p; q <= b; q *= p) v += b / q;
    return v;
  };
  for (int m = 0; m <= 4; ++m)
    for (int n = m; n <= 12; ++n)
      for (int a = 0; a <= n; ++a)
        for (int u = 1; u <= 4; ++u) {
          const auto brute = testsupport::brute_class_sizes(m, n, a, u);
          std::map<std::vector<int>, std::uint64_t> closed;
          for (const auto& f : symcore::all_subsets(m, n)) {
            const auto key = symcore::class_key(f, a, u);
            std::vector<int> k2;
            for (int x : f.elements) k2.push_back(x <= n - a ? x : -1000 - (x % u));
            closed[k2] = symcore::class_size(key).size;
          }
          o.expect(closed == brute, "class sizes m=" + std::to_string(m) + " n=" + std::to_string(n));
          ++checked;
          for (int p : {2, 3})
            for (const auto& c : symcore::equiv_classes(m, n, a, u)) {
              const auto cs = symcore::class_size(c.key);
              if (cs.b == 0 || a == 0) continue;
              int pw = 1;
              for (int k = 0; k <= vp_fact(cs.b, p); ++k) pw *= p;
              if (a % (u * pw) == 0) {
                o.expect(cs.size % static_cast<std::uint64_t>(p) == 0, "divisibility");
                ++divisible;
              }
            }
        }
  o.note << checked << " (m,n,a,u) cases match brute force; " << divisible << " divisibility cases";
  return 60;
}

int criterion5(Outcome& o) {
  int cases = 0;
  for (std::uint32_t p : {2u, 3u})
    for (int m = 0; m <= 3; ++m) {
      std::vector<FIPresentation> ws{trivial_w(p, m)};
      if (m >= 2) ws.push_back(single_relation_w(p, m));
      for (const auto& W : ws) {
        const auto w = cohom::invariants_dim(eval(W, m));
        for (int n = 3; n <= 9; ++n) {
          o.expect(cohom::invariants_dim(eval(W, n)) == w, "p=" + std::to_string(p) + " m=" + std::to_string(m));
          ++cases;
        }
      }
    }
  o.note << cases << " (W, n) cases with n=3..9";
  return 0;
}

int criterion6(Outcome& o) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto base = cohom::h1_dim(eval(FIPresentation::free(p, {0}), 3));
    for (int n = 4; n <= 7; ++n) o.expect(cohom::h1_dim(eval(FIPresentation::free(p, {0}), n)) == base, "constancy");
    o.expect(base == (p == 2 ? 1u : 0u), "value at p=" + std::to_string(p));
    o.note << "p=" << p << ": " << base << "; ";
  }
  o.note << "constant for n=3..7";
  return 0;
}

int criterion7(Outcome& o) {
  for (std::uint32_t p : {2u, 3u}) {
    cohom::CohomologyTable triv{"trivial", {}};
    for (int k = 1; k <= 7; ++k) {
      const auto L = eval(FIPresentation::free(p, {0}), k);
      triv.set(k, 0, static_cast<std::int64_t>(cohom::invariants_dim(L)));
      triv.set(k, 1, static_cast<std::int64_t>(cohom::h1_dim(L)));
    }
    cohom::CohomologyTable w{"M(1) at level 1", {}};
    const auto L1 = eval(FIPresentation::free(p, {1}), 1);
    w.set(1, 0, static_cast<std::int64_t>(cohom::invariants_dim(L1)));
    w.set(1, 1, static_cast<std::int64_t>(cohom::h1_dim(L1)));
    for (int n = 3; n <= 8; ++n) {
      const auto h = static_cast<std::int64_t>(cohom::h1_dim(eval(FIPresentation::free(p, {1}), n)));
      o.expect(h == cohom::induced_cohomology_dims(w, triv, 1, n, 1), "p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  }
  o.note << "H1(M(1)_n) equals the assembly for p=2,3 and n=3..8";
  return 0;
}

int criterion8(Outcome& o) {
  using namespace periodcalc;
  int ex = 0;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int m = 1; m <= 12; ++m) {
      const CoverShape c(p, {0, m});
      const auto dq = op_D(PeriodProfile::zero(c));
      const auto dh = delta_h(m, 0, p);
      o.expect(dq.at(1) == dh && dq.at(2) == 0, "D((0,0)) for m=" + std::to_string(m));
      o.expect(op_I(dq) == dh, "I(D(0)) for m=" + std::to_string(m));
      ++ex;
    }
  std::mt19937_64 rng(2024);
  int profiles = 0;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int it = 0; it < 1000; ++it) {
      CoverShape c(p, testsupport::random_degrees(rng, 6, 8));
      std::vector<Exponent> e;
      for (int i = 0; i < c.d(); ++i) e.push_back(static_cast<Exponent>(rng() % 10));
      o.expect(bound_boundonM(PeriodProfile(c, e)).holds, "boundonM");
      ++profiles;
    }
  int shapes = 0;
  for (int it = 0; it < 120; ++it) {
    const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[it % 3];
    ResolutionShape sh;
    sh.p = p;
    const int cols = 1 + static_cast<int>(rng() % 3);
    for (int x = 0; x < cols; ++x) {
      ResolutionColumn col;
      col.rows.emplace_back(p, testsupport::random_degrees(rng, 3, 6));
      col.Dx = col.rows[0].D();
      sh.columns.push_back(col);
    }
    for (int x = 0; x + 1 < cols; ++x) {
      const auto& a = sh.columns[static_cast<std::size_t>(x)].rows[0];
      const auto& b = sh.columns[static_cast<std::size_t>(x + 1)].rows[0];
      std::vector<std::pair<int, int>> pairs;
      std::vector<bool> used(static_cast<std::size_t>(b.d()) + 1, false);
      for (int i = 1; i <= a.d(); ++i)
        for (int j = 1; j <= b.d(); ++j)
          if (!used[static_cast<std::size_t>(j)] && a.m(i) == b.m(j)) {
            used[static_cast<std::size_t>(j)] = true;
            pairs.emplace_back(i, j);
            break;
          }
      sh.wiring.push_back({SequentialWiring(a, b, pairs)});
    }
    const int t = static_cast<int>(rng() % 5);
    const auto tab = resolution_recursion(sh, t);
    const auto bc = check_bound_main(sh, tab);
    o.expect(bc.M_ok && bc.SD_ok, "bound-main");
    ++shapes;
  }
  o.note << ex << " cover (0,m) operator values; " << profiles << " random profiles; " << shapes << " shapes";
  return 60;
}

int criterion9(Outcome& o) {
  // A window ending in p-1 equal values passes the default margin of 3 for P = 1,
  // so this criterion asks for ten confirmed periods.
  constexpr int margin = 10;
  const auto cb = periodcalc::config_bound(1);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto s = oracles::oracle_series("sphere_h1", p, 0, 1, 20 * static_cast<int>(p));
    const auto r = periodet::detect_period(s, margin);
    const auto r3 = periodet::detect_period(s, 3);
    o.expect(r.period == (p == 2 ? 1 : static_cast<int>(p)), "p=" + std::to_string(p));
    o.expect(r.conclusive() && periodet::check_divides_bound(r, p, cb), "config bound p=" + std::to_string(p));
    o.note << "p=" << p << ": " << r.period.value_or(-1) << " (margin 3: " << r3.period.value_or(-1) << "); ";
  }
  o.note << "min_margin " << margin;
  return 0;
}

int criterion10(Outcome& o) {
  std::mt19937_64 rng(10);
  int tuples = 0;
  for (; tuples < 12000; ++tuples) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int m = static_cast<int>(rng() % (n + 1));
    const auto a = symcore::Permutation::random(n, rng);
    const auto b = symcore::Permutation::random(n, rng);
    const auto ginv = symcore::gamma(symcore::beta(m, a)).inverse();
    o.expect(symcore::trace_embedded(m, a * b) == symcore::trace_embedded(m, a) * symcore::trace_embedded(m, ginv * b),
             "trace identity");
    std::vector<int> img;
    for (int x : symcore::beta(m, a).elements) img.push_back(b.inverse()(x));
    std::sort(img.begin(), img.end());
    o.expect(symcore::beta(m, a * b).elements == img, "beta identity");
    o.expect(symcore::beta(m, a * b) == symcore::beta(m, ginv * b), "beta identity");
    // a second permutation with the same trace
    const auto subsets = symcore::all_subsets(m, n);
    const auto s2 = symcore::trace_embedded(m, a) * symcore::gamma(subsets[rng() % subsets.size()]).inverse();
    const auto q = s2.inverse() * a;
    std::vector<int> moved;
    for (int x : symcore::beta(m, a).elements) moved.push_back(q(x));
    o.expect(std::is_sorted(moved.begin(), moved.end()) && moved == symcore::beta(m, s2).elements, "order preserving");
  }

  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 10; ++n) {
      const auto lhs = eval(FIPresentation::free(2, {m}), n + 1).dim();
      std::size_t rhs = eval(FIPresentation::free(2, {m}), n).dim();
      if (m > 0) rhs += static_cast<std::size_t>(m) * eval(FIPresentation::free(2, {m - 1}), n).dim();
      o.expect(lhs == rhs, "shift decomposition");
      o.expect(fimod::evaluate(fimod::shift(FIPresentation::free(2, {m}), 1), n).dim() == rhs, "shifted module");
    }

  std::size_t levels = 0, words = 0;
  for (const auto& L : g_levels) {
    if (L.n() < 1) continue;
    const auto pres = symcore::coxeter_presentation(L.n());
    if (const auto* pm = L.permutation_model(); pm && pm->ambient_dim > 400) {
      // relation words on the ambient permutation basis
      for (const auto& w : pres.relations) {
        for (std::size_t y = 0; y < pm->ambient_dim; ++y) {
          std::uint32_t z = static_cast<std::uint32_t>(y);
          for (auto it = w.rbegin(); it != w.rend(); ++it) z = pm->generator_perms[static_cast<std::size_t>(*it - 1)][z];
          if (z != y) {
            o.expect(false, "relation word on level n=" + std::to_string(L.n()));
            break;
          }
        }
        ++words;
      }
    } else {
      const auto& acts = L.generator_actions();
      const auto I = gfla::GFMatrix::identity(L.field(), L.dim());
      for (const auto& w : pres.relations) {
        auto prod = I;
        for (int g : w) prod = prod * acts[static_cast<std::size_t>(g - 1)];
        o.expect(prod == I, "relation word on level n=" + std::to_string(L.n()));
        ++words;
      }
    }
    ++levels;
  }
  o.note << tuples << " random tuples; shift identity for m<=4, n<=10; " << words << " relation words on " << levels
         << " levels";
  return 120;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::function<int(Outcome&)> run;
  };
  // criterion 10 runs last so it sees every level built by the others
  const std::vector<Criterion> all{{1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
                                   {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
                                   {9, criterion9}, {10, criterion10}};
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    int limit = 0;
    try {
      limit = c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && secs > limit) o.expect(false, "time limit " + std::to_string(limit) + "s");
    std::printf("criterion %d: %s (%s; %.2fs)\n", c.id, o.ok ? "PASS" : "FAIL", o.note.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
