// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "treerep/forms.hpp"
#include "treerep/io.hpp"
#include "treerep/synthesis.hpp"

using namespace treerep;

namespace {

struct Check {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

long ipow(long b, int e) {
  long out = 1;
  while (e-- > 0) out *= b;
  return out;
}

long transitive_dim(long d, int n) {
  if (n == 0) return 1;
  if (n == 1) return d - 1;
  return d * (d - 2) * ipow(d - 1, n - 2);
}

long semi_dim(long r, long s, int n) {
  if (n == 0) return 1;
  if (n == 1) return r - 1;
  if (n == 2) return r * (s - 2);
  const int k = (n + 1) / 2;
  if (n % 2 == 1) return r * (r - 2) * ipow(r - 1, k - 2) * ipow(s - 1, k - 1);
  return r * ipow(r - 1, k - 1) * (s - 2) * ipow(s - 1, k - 1);
}

int address_distance(const PathAddress& a, const PathAddress& b) {
  std::size_t k = 0;
  while (k < a.length() && k < b.length() && a.steps[k] == b.steps[k]) ++k;
  return static_cast<int>(a.length() + b.length() - 2 * k);
}

Check dimensions() {
  Check c;
  for (long d : {3, 4, 5}) {
    const auto shape = TreeShape::homogeneous(static_cast<int>(d));
    for (int n = 0; n <= 6; ++n) {
      const auto want = static_cast<std::uint64_t>(transitive_dim(d, n));
      c.require(expected_dimension(shape, Scalar(1, 2), n) == want, shape.name() + " closed form n=" + std::to_string(n));
      c.require(block_layout(shape, n)->dimension() == want, shape.name() + " layout n=" + std::to_string(n));
      if (n <= 3) c.require(basis_Hn(shape, Scalar(1, 2), n).basis.size() == want, shape.name() + " basis");
    }
  }
  for (auto [r, s] : {std::pair{3L, 3L}, {3L, 4L}, {4L, 5L}}) {
    const auto shape = TreeShape::semi_homogeneous(static_cast<int>(r), static_cast<int>(s));
    for (int n = 0; n <= 6; ++n) {
      const auto want = static_cast<std::uint64_t>(semi_dim(r, s, n));
      c.require(expected_dimension(shape, Scalar(1, 2), n) == want, shape.name() + " closed form n=" + std::to_string(n));
      c.require(block_layout(shape, n)->dimension() == want, shape.name() + " layout n=" + std::to_string(n));
      if (n <= 3) c.require(basis_Hn(shape, Scalar(1, 2), n).basis.size() == want, shape.name() + " basis");
    }
  }
  return c;
}

Check recursion() {
  Check c;
  const char* alphas[] = {"1/2", "-1/2", "1/3", "-2/5", "3/2", "2", "-3", "0", "5/7", "-1/9"};
  for (const char* text : alphas) {
    const Scalar a = Scalar::parse(text);
    for (int d : {3, 4}) {
      const auto shape = TreeShape::homogeneous(d);
      const auto f = radial_function(shape, a, 8);
      c.require(is_eigen(f), shape.name() + " not eigen at alpha " + text);
      const auto p = radial_eigen(shape, a, 2);
      c.require(p.at(2) == (a * a * Scalar(d) - Scalar(1)) / Scalar(d - 1), "f(2) closed form");
      // Neighbour means straight from adjacency, on B_3.
      const auto& ball = f.ball();
      for (Vertex v = 0; v < static_cast<Vertex>(ball.size_through(3)); ++v) {
        Scalar sum;
        for (Vertex w : ball.neighbors(v)) sum += f[w];
        c.require(sum == a * Scalar(d) * f[v], "adjacency oracle");
      }
    }
    for (auto [r, s] : {std::pair{3, 4}, {4, 5}}) {
      const auto shape = TreeShape::semi_homogeneous(r, s);
      c.require(is_eigen(radial_function(shape, a, 8)), shape.name() + " not eigen at alpha " + text);
      const auto p = radial_eigen(shape, a, 4);
      const Scalar closed = (Scalar(r * (s - 1)) * a * a - Scalar(s - 2) * a - Scalar(1)) / Scalar((r - 1) * (s - 1));
      c.require(p.at(2) == a && p.at(4) == closed, "f(4) closed form");
    }
  }
  return c;
}

Check invariance() {
  Check c;
  auto run = [&c](const TreeShape& shape, const char* alpha, int cutoff) {
    const auto q = assemble_Q(shape, Scalar::parse(alpha));
    std::mt19937_64 rng(7);
    std::vector<Automorphism> gens{base_swap(shape)};
    for (int k = 0; k < 50; ++k) gens.push_back(random_k_element(shape, rng, cutoff - 1));
    const auto rep = invariance_check(q, gens, cutoff);
    std::size_t pairs = 0;
    for (auto n : rep.pairs_checked) pairs += n;
    c.require(rep.passed() && pairs > 0, shape.name() + " alpha " + alpha);
  };
  for (int d : {3, 4})
    for (const char* a : {"1/2", "3/2", "0", "-2/5"}) run(TreeShape::homogeneous(d), a, 4);
  for (const char* a : {"1/3", "2", "-1/3", "-1/2"}) run(TreeShape::semi_homogeneous(3, 4), a, 6);
  return c;
}

Check index_trichotomy() {
  Check c;
  const auto h3 = TreeShape::homogeneous(3);
  c.require(form_signature(assemble_Q(h3, Scalar(1, 2)), 3) == Signature{12, 0, 0}, "h3 1/2");
  c.require(form_signature(assemble_Q(h3, Scalar(3, 2)), 3) == Signature{11, 1, 0}, "h3 3/2");
  const auto sh = TreeShape::semi_homogeneous(3, 4);
  const auto q = assemble_Q(sh, Scalar(-1, 2));
  std::size_t previous = 0;
  for (int cutoff : {4, 6}) {
    std::uint64_t odd = 0;
    for (int n = 1; n <= cutoff; n += 2) odd += static_cast<std::uint64_t>(semi_dim(3, 4, n));
    const auto s = form_signature(q, cutoff);
    c.require(s.neg == odd && s.zero == 0, "sh3,4 -1/2 negative part at cutoff " + std::to_string(cutoff));
    c.require(s.neg > previous, "index grows");
    previous = s.neg;
  }
  const auto qd = assemble_Q(sh, Scalar(-1, 3));
  const auto s = form_signature(qd, 6);
  c.require(s.neg == 0 && s.zero == 0, "sh3,4 -1/3 definite");
  for (int n = 1; n <= 6; n += 2) c.require(basis_Hn(sh, Scalar(-1, 3), n).basis.empty(), "odd block not empty");
  return c;
}

Check rigidity() {
  Check c;
  const char* real[] = {"1/2", "3/5", "-2/5", "2", "1/7"};
  const char* complex[] = {"i/2", "1/2+i/3", "-1/3+i", "2i", "3/4-i/5"};
  for (const char* name : {"h3", "h4", "sh3,4"}) {
    const auto shape = TreeShape::parse(name);
    for (const char* text : real) {
      const Scalar a = Scalar::parse(text);
      const auto r = span_fh_rigidity(shape, a);
      bool ok = r.solutions.size() == 1;
      for (const auto& sol : r.solutions) {
        const Scalar bf = sol[0], bh = sol[1];
        if (shape.is_homogeneous()) {
          ok = ok && bf == (Scalar(1) - a * a) * bh;
        } else {
          const Scalar one_minus = Scalar(1) - a;
          ok = ok && one_minus * one_minus * bh == (Scalar(1) - a * a) * bf;
        }
        ok = ok && !bh.is_zero();
      }
      c.require(ok, std::string(name) + " real alpha " + text);
    }
    for (const char* text : complex) {
      const auto r = span_fh_rigidity(shape, Scalar::parse(text));
      c.require(r.solutions.empty(), std::string(name) + " complex alpha " + text);
    }
  }
  return c;
}

Check uniqueness() {
  Check c;
  const auto r = truncated_form_solver(TreeShape::homogeneous(3), Scalar(1, 2), 3);
  c.require(r.restricted.size() == 1, "restricted dimension " + std::to_string(r.restricted.size()));
  c.require(r.proportional_to_Q, "not proportional to Q");
  c.require(r.block_diagonal, "cross-block entries");
  if (r.restricted.size() == 1) {
    // Off-block entries checked here as well, from the flat basis layout.
    const auto basis = flat_basis(TreeShape::homogeneous(3), Scalar(1, 2), r.restricted_cutoff);
    const Matrix& m = r.restricted.front();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (basis.block_of[i] != basis.block_of[j]) c.require(m(i, j).is_zero(), "cross-block entry");
  }
  return c;
}

// sum_i c_i f(d(g_i o, x)) against the target, from the closed-form profile.
bool reproduces(const TranslateCombination& comb, const EigenFunction& h, int depth) {
  const auto target = extend(h, depth);
  const auto& ball = target.ball();
  std::vector<PathAddress> centres;
  int reach_max = 0;
  for (const auto& t : comb.terms) {
    centres.push_back(t.word.apply(PathAddress{}));
    reach_max = std::max(reach_max, static_cast<int>(centres.back().length()));
  }
  const auto profile = radial_eigen(comb.shape, comb.alpha, depth + reach_max + 2);
  for (Vertex v = 0; v < static_cast<Vertex>(ball.size_through(depth)); ++v) {
    if (!target.in_lattice(v)) continue;
    const PathAddress x = ball.address(v);
    Scalar sum;
    for (std::size_t i = 0; i < centres.size(); ++i) sum += comb.terms[i].coefficient * profile.at(address_distance(x, centres[i]));
    if (!(sum == target[v])) return false;
  }
  return true;
}

Check synthesis() {
  Check c;
  struct Mode {
    const char* shape;
    const char* alpha;
    int cutoff;
    int depth;
  };
  for (const Mode m : {Mode{"h3", "2/7", 2, 3}, Mode{"sh3,4", "1/3", 2, 4}, Mode{"sh3,4", "-1/3", 2, 4}}) {
    const auto shape = TreeShape::parse(m.shape);
    const Scalar a = Scalar::parse(m.alpha);
    std::mt19937_64 rng(20);
    std::vector<EigenFunction> targets{act(base_swap(shape), radial_function(shape, a, 2), m.depth)};
    while (targets.size() < 20) targets.push_back(random_element(shape, a, m.cutoff, rng));
    for (const auto& h : targets) {
      const auto comb = synthesize(h, m.depth);
      c.require(reproduces(comb, h, m.depth), std::string(m.shape) + " alpha " + m.alpha + " mismatch");
      if (is_degenerate(shape, a)) c.require(comb.residual_checks > 0, "no R(v) assertions made");
    }
    if (is_degenerate(shape, a)) {
      bool rejected = false;
      try {
        synthesize(hd1_function(shape, a, Scalar(1), Scalar(1)), m.depth);
      } catch (const std::domain_error&) {
        rejected = true;
      }
      c.require(rejected, "inadmissible input accepted");
    }
  }
  return c;
}

Check orthogonality() {
  Check c;
  const auto sh = TreeShape::semi_homogeneous(3, 4);
  const Scalar a(1, 3);
  const auto q = assemble_Q(sh, a);
  const auto j = hd2_function(sh, a);
  for (auto [x, y] : {std::pair{1L, 0L}, {0L, 1L}, {2L, -3L}}) {
    const auto h = hd1_function(sh, a, Scalar(x), Scalar(y));
    c.require(eval_Q(q, h, j).is_zero() && eval_Q(q, j, h).is_zero(), "H_D(1) vs H_D(2) at 1/3");
  }
  const Scalar b(-1, 3);
  const auto qd = assemble_Q(sh, b);
  const auto jd = hd2_function(sh, b);
  for (long x : {1L, 3L}) {
    // 2a + (s - 2) b = 0
    const auto h = hd1_function(sh, b, Scalar(x), Scalar(-x));
    c.require(eval_Q(qd, h, jd).is_zero(), "constrained H_D(1) vs H_D(2) at -1/3");
  }
  return c;
}

Check group_action() {
  Check c;
  for (const char* name : {"h3", "sh3,4"}) {
    const auto shape = TreeShape::parse(name);
    std::mt19937_64 rng(9);
    const auto g0 = base_swap(shape);
    const TreeBall ball(shape, 4);
    for (Vertex v = 0; v < static_cast<Vertex>(ball.size()); ++v) {
      c.require(g0.apply(g0.apply(ball.address(v))) == ball.address(v), "swap not an involution");
    }
    const auto f = act(g0, radial_function(shape, Scalar(1, 3), 2), 2);
    for (int trial = 0; trial < 10; ++trial) {
      auto word = [&](int len) {
        Automorphism g = Automorphism::identity(shape);
        for (int k = 0; k < len; ++k) g = g * (rng() % 2 ? g0 : random_k_element(shape, rng, 2, 1));
        return g;
      };
      const auto g = word(1 + trial % 4);
      const auto h = word(1 + (trial + 2) % 4);
      c.require(preserves_adjacency(g, 3), "adjacency");
      c.require(agree_on(act(g * h, f, 2), act(g, act(h, f, 2), 2), 3), "representation property");
    }
    const int depth = shape.is_homogeneous() ? 5 : 4;
    const TreeBall big(shape, depth);
    for (int n = 0; n <= depth; ++n) {
      const auto orbit = k_orbit(big, big.sphere_begin(n));
      const std::set<Vertex> seen(orbit.begin(), orbit.end());
      bool same = seen.size() == big.sphere_count(n);
      for (Vertex v : seen) same = same && big.sphere(v) == n;
      c.require(same, std::string(name) + " K-orbit at sphere " + std::to_string(n));
    }
    for (Vertex v = 0; v < static_cast<Vertex>(ball.size()); ++v) {
      const auto target = ball.address(v);
      if (shape.is_semi() && target.length() % 2 == 1) continue;
      const auto g = reach(shape, target);
      c.require(g.apply(PathAddress{}) == target && preserves_adjacency(g, 2), "reach " + to_string(target));
    }
  }
  return c;
}

Check cone_shift() {
  Check c;
  const auto shape = TreeShape::homogeneous(3);
  const Scalar a(1, 2);
  const auto g = base_swap(shape);
  std::size_t up = 0, down = 0;
  for (int n = 2; n <= 3; ++n) {
    const auto b = basis_Hn(shape, a, n);
    for (const auto& h : b.basis) {
      const Vertex v = h.ball().index(PathAddress{{0}});
      const SupportSide side = support_side(h, v);
      const auto moved = act(g, h, 1);
      const auto peeled = peel_decompose(moved);
      if (side == SupportSide::cone) {
        ++down;
        c.require(peeled.components.size() == 1 && peeled.components.begin()->first == n - 1, "H_n^v -> H_{n-1}^o");
        c.require(support_side(moved, v) == SupportSide::anti_cone, "image side");
      } else if (side == SupportSide::anti_cone) {
        ++up;
        c.require(peeled.components.size() == 1 && peeled.components.begin()->first == n + 1, "H_n^o -> H_{n+1}^v");
        c.require(support_side(moved, v) == SupportSide::cone, "image side");
      }
    }
  }
  c.require(up > 0 && down > 0, "both directions exercised");
  c.note = c.ok ? std::to_string(up) + " outward, " + std::to_string(down) + " inward" : c.note;
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {"dimension formulas", dimensions},
      {"eigen recursion and closed forms", recursion},
      {"exact invariance of Q", invariance},
      {"index trichotomy", index_trichotomy},
      {"rigidity on span{f,h}", rigidity},
      {"uniqueness at truncation", uniqueness},
      {"translate synthesis", synthesis},
      {"H_D orthogonality", orthogonality},
      {"group action soundness", group_action},
      {"cone-shift structure", cone_shift},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criteria[k].run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %zu: %s (%.1fs)%s%s\n", result.ok ? "PASS" : "FAIL", k + 1, criteria[k].title, secs,
                result.note.empty() ? "" : " - ", result.note.c_str());
    std::fflush(stdout);
    failed += result.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
