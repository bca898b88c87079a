#include "gapamp/svp.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace gapamp {

namespace {

Int rat_floor(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

Int rat_round(const Rat& x) { return rat_floor(x + Rat(1, 2)); }

// Exact Gram-Schmidt data of the basis columns: mu[i][j] = <b_i, b*_j> / ||b*_j||^2
// for j < i, bsq[i] = ||b*_i||^2.
struct Gso {
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> bsq;
};

Gso compute_gso(const IntMatrix& b) {
  const std::size_t m = b.cols;
  Gso g;
  g.mu.assign(m, std::vector<Rat>(m, Rat(0)));
  g.bsq.assign(m, Rat(0));
  // r[i][j] = <b_i, b*_j>; built incrementally from integer dot products.
  std::vector<std::vector<Rat>> r(m, std::vector<Rat>(m, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rat s = Rat(dot(b.col(i), b.col(j)));
      for (std::size_t k = 0; k < j; ++k) s -= g.mu.at(j).at(k) * r.at(i).at(k);
      r.at(i).at(j) = s;
      if (j < i) g.mu.at(i).at(j) = (g.bsq[j] == 0) ? Rat(0) : s / g.bsq[j];
    }
    g.bsq[i] = r.at(i).at(i);
  }
  return g;
}

}  // namespace

Lattice lll_reduce(const Lattice& l, const Rat& delta) {
  if (delta <= Rat(1, 4) || delta >= 1) fail_param("lll_reduce: delta must lie in (1/4, 1)");
  if (l.rank <= 1) return l;
  IntMatrix b = l.basis;
  Gso g = compute_gso(b);

  auto size_reduce = [&](std::size_t i, std::size_t j) {
    Rat m = g.mu.at(i).at(j);
    if (m >= Rat(-1, 2) && m <= Rat(1, 2)) return;
    Int r = rat_round(m);
    b.addmul_col(i, j, -r);
    for (std::size_t k = 0; k < j; ++k) g.mu.at(i).at(k) -= Rat(r) * g.mu.at(j).at(k);
    g.mu.at(i).at(j) -= Rat(r);
  };

  std::size_t k = 1;
  while (k < l.rank) {
    for (std::size_t j = k; j-- > 0;) size_reduce(k, j);
    Rat lhs = (delta - g.mu.at(k).at(k - 1) * g.mu.at(k).at(k - 1)) * g.bsq[k - 1];
    if (g.bsq[k] >= lhs) {
      ++k;
    } else {
      b.swap_cols(k, k - 1);
      g = compute_gso(b);  // small ranks: full recompute is simplest and exact
      k = (k > 1) ? k - 1 : 1;
    }
  }
  return Lattice::from_basis_unchecked(std::move(b));
}

bool is_lll_reduced(const Lattice& l, const Rat& delta) {
  if (l.rank <= 1) return true;
  Gso g = compute_gso(l.basis);
  for (std::size_t i = 1; i < l.rank; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rat m = g.mu.at(i).at(j);
      if (m > Rat(1, 2) || m < Rat(-1, 2)) return false;
    }
    Rat lhs = (delta - g.mu.at(i).at(i - 1) * g.mu.at(i).at(i - 1)) * g.bsq[i - 1];
    if (g.bsq[i] < lhs) return false;
  }
  return true;
}

namespace {

// Depth-first Schnorr-Euchner walk. Visits every coefficient vector whose
// projected partial norm stays within the bound; the visitor sees exact
// integer vectors. Bound semantics: keep subtrees with partial <= bound()
// (callers shrink bound() as better candidates appear).
struct Enumerator {
  const IntMatrix& b;
  const Gso& g;
  std::uint64_t nodes = 0;

  std::vector<Int> x;
  std::vector<Rat> center;
  std::vector<Rat> partial;  // partial[i] = contribution of levels > i... stored shifted

  explicit Enumerator(const IntMatrix& basis, const Gso& gso) : b(basis), g(gso) {
    x.assign(b.cols, Int(0));
    center.assign(b.cols, Rat(0));
    partial.assign(b.cols + 1, Rat(0));
  }

  template <typename Bound, typename Leaf>
  void walk(std::size_t level, const Bound& bound, const Leaf& leaf) {
    if (level == 0) return;
    const std::size_t i = level - 1;
    Rat c = Rat(0);
    for (std::size_t j = level; j < b.cols; ++j) c -= g.mu.at(j).at(i) * Rat(x[j]);
    center[i] = c;
    Int x0 = rat_round(c);
    // Zig-zag around the center: x0, x0+1, x0-1, x0+2, ...
    for (Int step = 0;; ++step) {
      bool any = false;
      for (int side = 0; side < 2; ++side) {
        if (step == 0 && side == 1) continue;
        Int xi = (side == 0) ? Int(x0 + step) : Int(x0 - step);
        Rat diff = Rat(xi) - c;
        Rat term = diff * diff * g.bsq[i];
        Rat rho = partial[level] + term;
        ++nodes;
        if (rho > bound()) continue;
        any = true;
        x[i] = xi;
        partial[i] = rho;
        if (i == 0) {
          leaf();
        } else {
          walk(i, bound, leaf);
        }
      }
      if (!any && step > 0) break;
      // step 0 alone may fail while step 1 succeeds when the center sits
      // between integers; only stop after a fully empty nonzero step.
    }
    x[i] = 0;
  }
};

}  // namespace

SvpResult lambda1_exact(const Lattice& l, std::size_t ceiling) {
  if (l.rank == 0) fail_param("lambda1_exact: the zero lattice has no nonzero vectors");
  if (l.rank > ceiling)
    fail_resource("lambda1_exact: rank " + std::to_string(l.rank) + " exceeds enumeration ceiling " +
                  std::to_string(ceiling));
  Lattice red = lll_reduce(l);
  Gso g = compute_gso(red.basis);

  SvpResult best;
  best.norm_sq = -1;
  for (std::size_t j = 0; j < red.rank; ++j) {
    IntVec v = red.basis.col(j);
    Int ns = norm_sq(v);
    if (best.norm_sq < 0 || ns < best.norm_sq) {
      best.norm_sq = ns;
      best.vector = v;
    }
  }

  Enumerator en(red.basis, g);
  auto bound = [&]() { return Rat(best.norm_sq); };
  auto leaf = [&]() {
    if (std::all_of(en.x.begin(), en.x.end(), [](const Int& v) { return v == 0; })) return;
    IntVec v = mul_vec(red.basis, en.x);
    Int ns = norm_sq(v);  // integer authority over the rational partials
    if (ns != 0 && ns < best.norm_sq) {
      best.norm_sq = ns;
      best.vector = v;
    }
  };
  en.walk(red.rank, bound, leaf);
  best.nodes = en.nodes;
  return best;
}

std::vector<IntVec> enumerate_ball(const Lattice& l, const Int& bound_sq, std::size_t ceiling,
                                   std::uint64_t* nodes) {
  if (l.rank > ceiling)
    fail_resource("enumerate_ball: rank " + std::to_string(l.rank) + " exceeds enumeration ceiling " +
                  std::to_string(ceiling));
  std::set<IntVec> out;
  if (l.rank == 0 || bound_sq < 0) return {};
  Lattice red = lll_reduce(l);
  Gso g = compute_gso(red.basis);
  Enumerator en(red.basis, g);
  auto bound = [&]() { return Rat(bound_sq); };
  auto leaf = [&]() {
    IntVec v = mul_vec(red.basis, en.x);
    Int ns = norm_sq(v);
    if (ns == 0 || ns > bound_sq) return;
    for (const Int& c : v) {
      if (c == 0) continue;
      if (c < 0)
        for (Int& e : v) e = -e;
      break;
    }
    out.insert(std::move(v));
  };
  en.walk(red.rank, bound, leaf);
  if (nodes) *nodes = en.nodes;
  return std::vector<IntVec>(out.begin(), out.end());
}

Int kth_root_floor(const Int& x, unsigned k) {
  if (x < 0) fail_internal("kth_root_floor: negative input");
  if (k == 0) fail_internal("kth_root_floor: zeroth root");
  if (x == 0 || x == 1 || k == 1) return x;
  Int lo = 0, hi = 1;
  auto powk = [&](const Int& v) {
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) r *= v;
    return r;
  };
  while (powk(hi) <= x) hi <<= 1;
  while (lo + 1 < hi) {
    Int mid = (lo + hi) / 2;
    if (powk(mid) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

LpResult lambda1_lp(const Lattice& l, NormSel p, std::size_t ceiling) {
  if (l.rank == 0) fail_param("lambda1_lp: the zero lattice has no nonzero vectors");
  if (!p.inf && p.p == 2) {
    SvpResult r = lambda1_exact(l, ceiling);
    return LpResult{r.vector, r.norm_sq, p, r.nodes};
  }
  if (l.rank > ceiling)
    fail_resource("lambda1_lp: rank " + std::to_string(l.rank) + " exceeds enumeration ceiling " +
                  std::to_string(ceiling));
  Lattice red = lll_reduce(l);
  auto value_of = [&](const IntVec& v) { return p.inf ? linf_norm(v) : lp_norm_pow(v, p.p); };

  IntVec bestv = red.basis.col(0);
  Int best = value_of(bestv);
  for (std::size_t j = 1; j < red.rank; ++j) {
    IntVec v = red.basis.col(j);
    Int val = value_of(v);
    if (val < best) {
      best = val;
      bestv = v;
    }
  }

  const Int n = Int(l.ambient);
  auto l2_cap = [&](const Int& bestval) -> Int {
    // Any v at least as short in lp fits in this l2 ball (integer bridges).
    if (p.inf) return n * bestval * bestval;
    if (p.p < 2) return bestval * bestval;
    Int z = bestval * bestval;
    for (unsigned i = 0; i + 2 < p.p; ++i) z *= n;  // n^(p-2) * best^2
    return kth_root_floor(z, p.p);
  };

  std::uint64_t nodes = 0;
  std::vector<IntVec> ball = enumerate_ball(red, l2_cap(best), ceiling, &nodes);
  for (const IntVec& v : ball) {
    Int val = value_of(v);
    if (val < best) {
      best = val;
      bestv = v;
    }
  }
  return LpResult{bestv, best, p, nodes};
}

MinkowskiReport minkowski_check(const Lattice& l, std::size_t ceiling) {
  MinkowskiReport rep;
  rep.det_g = det_gram(l.basis);
  rep.lambda_sq = lambda1_exact(l, ceiling).norm_sq;
  Int rr = 1, lp = 1;
  for (std::size_t i = 0; i < l.rank; ++i) {
    rr *= Int(l.rank);
    lp *= rep.lambda_sq;
  }
  rep.lhs = rep.det_g * rr;
  rep.rhs = lp;
  rep.holds = rep.lhs >= rep.rhs;
  return rep;
}

GapVerdict decide_gap(const GapInstance& inst, std::size_t ceiling) {
  if (inst.threshold <= 0) fail_param("decide_gap: threshold must be positive");
  Lattice l = Lattice::from_basis(inst.basis);
  LpResult r = lambda1_lp(l, inst.p, ceiling);
  Rat lam = Rat(r.value);
  Rat s_pow = inst.threshold;
  if (!inst.p.inf) {
    s_pow = 1;
    for (unsigned i = 0; i < inst.p.p; ++i) s_pow *= inst.threshold;
  }
  if (lam <= inst.gamma_pow * s_pow) return GapVerdict::yes;
  if (lam > s_pow) return GapVerdict::no;
  return GapVerdict::indeterminate;
}

}  // namespace gapamp
