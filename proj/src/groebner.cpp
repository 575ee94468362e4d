#include "udg/groebner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace udg {

namespace {

struct LimitHit {};

// Working representation inside the completion loop: terms sorted
// descending under the active order so the leading term is t.front().
struct OrderedPoly {
  std::vector<std::pair<Monomial, Rational>> t;

  bool zero() const { return t.empty(); }
  const Monomial& lm() const { return t.front().first; }
  const Rational& lc() const { return t.front().second; }
};

OrderedPoly order_poly(const Polynomial& p, const MonomialOrder& ord) {
  OrderedPoly out;
  out.t.assign(p.terms().begin(), p.terms().end());
  std::sort(out.t.begin(), out.t.end(),
            [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first) > 0; });
  return out;
}

Polynomial to_poly(const OrderedPoly& p) {
  Polynomial out;
  for (const auto& [m, c] : p.t) out.add_term(m, c);
  return out;
}

void make_monic(OrderedPoly& p) {
  if (p.zero()) return;
  Rational inv = p.lc();
  if (inv == 1) return;
  for (auto& [m, c] : p.t) c /= inv;
}

// a -= c * x^shift * b, keeping descending order. Both operands are sorted,
// so a single merge pass suffices.
void sub_scaled(OrderedPoly& a, const Rational& c, const Monomial& shift, const OrderedPoly& b,
                const MonomialOrder& ord) {
  std::vector<std::pair<Monomial, Rational>> merged;
  merged.reserve(a.t.size() + b.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size()) {
      merged.push_back(std::move(a.t[i++]));
      continue;
    }
    Monomial bm = b.t[j].first * shift;
    Rational bc = -c * b.t[j].second;
    if (i == a.t.size()) {
      merged.emplace_back(std::move(bm), std::move(bc));
      ++j;
      continue;
    }
    int cmp = ord.compare(a.t[i].first, bm);
    if (cmp > 0) {
      merged.push_back(std::move(a.t[i++]));
    } else if (cmp < 0) {
      merged.emplace_back(std::move(bm), std::move(bc));
      ++j;
    } else {
      Rational sum = a.t[i].second + bc;
      if (sum != 0) merged.emplace_back(std::move(bm), std::move(sum));
      ++i;
      ++j;
    }
  }
  a.t = std::move(merged);
}

struct Budget {
  const BuchbergerLimits& limits;
  GroebnerStats& stats;

  void charge_work(uint64_t units) {
    stats.workUnits += units;
    if (stats.workUnits > limits.maxWork) throw LimitHit{};
  }
  void note_degree(const OrderedPoly& p) {
    if (p.zero()) return;
    int d = p.lm().total_degree();
    stats.maxIntermediateDegree = std::max(stats.maxIntermediateDegree, d);
    if (d > limits.maxTotalDegree) throw LimitHit{};
  }
};

OrderedPoly s_poly_ordered(const OrderedPoly& p, const OrderedPoly& q, const MonomialOrder& ord) {
  Monomial l = Monomial::lcm(p.lm(), q.lm());
  OrderedPoly s;
  s.t.clear();
  // S = (l / lm(p)) * p / lc(p) - (l / lm(q)) * q / lc(q)
  Monomial sp = l.div(p.lm());
  for (const auto& [m, c] : p.t) s.t.emplace_back(m * sp, c / p.lc());
  sub_scaled(s, Rational(1) / q.lc(), l.div(q.lm()), q, ord);
  return s;
}

// Complete reduction: every remainder term is out of reach of all basis
// leading terms. Returns the remainder; charges work per cancellation.
OrderedPoly reduce_full(OrderedPoly p, const std::vector<OrderedPoly>& basis,
                        const MonomialOrder& ord, Budget* budget) {
  OrderedPoly rem;
  while (!p.zero()) {
    if (budget) budget->note_degree(p);
    bool reduced = false;
    for (const OrderedPoly& g : basis) {
      if (g.zero()) continue;
      if (g.lm().divides(p.lm())) {
        Rational factor = p.lc() / g.lc();
        sub_scaled(p, factor, p.lm().div(g.lm()), g, ord);
        if (budget) budget->charge_work(1 + g.t.size());
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.t.push_back(p.t.front());
      p.t.erase(p.t.begin());
    }
  }
  return rem;
}

struct PairEntry {
  int i, j;
  Monomial lcm;
  int degree;
  uint64_t tiebreak;
};

uint64_t mix_tiebreak(uint64_t seed, int i, int j) {
  uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
  h ^= static_cast<uint64_t>(i) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= static_cast<uint64_t>(j) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Polynomial s_polynomial(const Polynomial& p, const Polynomial& q, const MonomialOrder& order) {
  if (p.is_zero() || q.is_zero())
    throw std::invalid_argument("s_polynomial of a zero polynomial");
  OrderedPoly op = order_poly(p, order), oq = order_poly(q, order);
  return to_poly(s_poly_ordered(op, oq, order));
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order) {
  std::vector<OrderedPoly> ob;
  for (const Polynomial& g : basis) {
    if (g.is_zero()) throw std::invalid_argument("normal_form against a zero basis element");
    ob.push_back(order_poly(g, order));
  }
  return to_poly(reduce_full(order_poly(p, order), ob, order, nullptr));
}

GroebnerResult buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                          const BuchbergerLimits& limits) {
  GroebnerResult result;
  Budget budget{limits, result.stats};

  std::vector<OrderedPoly> basis;
  for (const Polynomial& p : gens) {
    if (p.is_zero()) continue;
    OrderedPoly op = order_poly(p, order);
    make_monic(op);
    basis.push_back(std::move(op));
  }

  auto finish_infeasible = [&]() {
    result.basis = {Polynomial::constant(1)};
    result.status = GroebnerStatus::Infeasible;
  };

  for (const OrderedPoly& p : basis)
    if (p.lm().is_one()) {
      finish_infeasible();
      return result;
    }

  if (basis.empty()) {
    result.status = GroebnerStatus::Feasible;
    return result;
  }

  try {
    std::vector<PairEntry> queue;
    std::set<std::pair<int, int>> processed;
    auto push_pair = [&](int i, int j) {
      Monomial l = Monomial::lcm(basis[i].lm(), basis[j].lm());
      // Product criterion: coprime leading monomials reduce to zero.
      if (l == basis[i].lm() * basis[j].lm()) {
        processed.insert({i, j});
        return;
      }
      queue.push_back({i, j, l, l.total_degree(), mix_tiebreak(limits.tieBreakSeed, i, j)});
    };
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(basis.size()); ++j) push_pair(i, j);

    while (!queue.empty()) {
      // Normal strategy: smallest lcm degree first, seeded tie-break.
      size_t pick = 0;
      for (size_t k = 1; k < queue.size(); ++k) {
        if (queue[k].degree < queue[pick].degree ||
            (queue[k].degree == queue[pick].degree &&
             queue[k].tiebreak < queue[pick].tiebreak))
          pick = k;
      }
      PairEntry pair = queue[pick];
      queue.erase(queue.begin() + pick);

      // Chain criterion: some basis element divides the lcm and both of its
      // pairs with i and j are already done.
      bool skip = false;
      for (int k = 0; k < static_cast<int>(basis.size()) && !skip; ++k) {
        if (k == pair.i || k == pair.j) continue;
        if (!basis[k].lm().divides(pair.lcm)) continue;
        auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        if (processed.count(key(pair.i, k)) && processed.count(key(pair.j, k))) skip = true;
      }
      processed.insert({pair.i, pair.j});
      if (skip) continue;

      result.stats.pairsProcessed++;
      if (result.stats.pairsProcessed > limits.maxPairs) throw LimitHit{};

      OrderedPoly s = s_poly_ordered(basis[pair.i], basis[pair.j], order);
      OrderedPoly r = reduce_full(std::move(s), basis, order, &budget);
      if (r.zero()) {
        result.stats.reductionsToZero++;
        continue;
      }
      make_monic(r);
      if (r.lm().is_one()) {
        finish_infeasible();
        return result;
      }
      basis.push_back(std::move(r));
      int newIdx = static_cast<int>(basis.size()) - 1;
      for (int i = 0; i < newIdx; ++i) push_pair(i, newIdx);
    }
  } catch (const LimitHit&) {
    result.status = GroebnerStatus::LimitExceeded;
    for (const OrderedPoly& g : basis) result.basis.push_back(to_poly(g));
    return result;
  }

  // Minimalize: drop elements whose leading monomial another one divides.
  std::vector<char> keep(basis.size(), 1);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (!keep[i]) continue;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !keep[j]) continue;
      if (basis[j].lm().divides(basis[i].lm()) &&
          !(basis[j].lm() == basis[i].lm() && j > i)) {
        keep[i] = 0;
        break;
      }
    }
  }
  std::vector<OrderedPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(basis[i]));

  // Inter-reduce tails so the basis is fully reduced.
  std::vector<OrderedPoly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<OrderedPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    OrderedPoly r = reduce_full(minimal[i], others, order, nullptr);
    make_monic(r);
    if (!r.zero()) reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
    return order.compare(a.lm(), b.lm()) > 0;
  });

  if (limits.selfCheck) {
    // Buchberger criterion on the final basis.
    for (size_t i = 0; i < reduced.size(); ++i)
      for (size_t j = i + 1; j < reduced.size(); ++j) {
        OrderedPoly s = s_poly_ordered(reduced[i], reduced[j], order);
        if (!reduce_full(std::move(s), reduced, order, nullptr).zero())
          throw std::logic_error("basis failed the S-pair self-check");
      }
  }

  result.status = GroebnerStatus::Feasible;
  if (reduced.size() == 1 && reduced.front().lm().is_one())
    result.status = GroebnerStatus::Infeasible;
  for (const OrderedPoly& g : reduced) result.basis.push_back(to_poly(g));
  return result;
}

GroebnerResult buchberger(const ConstraintSystem& sys, const MonomialOrder& order,
                          const BuchbergerLimits& limits) {
  return buchberger(sys.polys, order, limits);
}

MonomialOrder default_order(const ConstraintSystem& sys, MonomialOrder::Kind kind) {
  MonomialOrder o = MonomialOrder::lex(sys.vars.size());
  o.kind = kind;
  return o;
}

// ---------------------------------------------------------------------------
// Univariate real roots and triangular back-substitution.

namespace {

double eval_poly(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
  return d;
}

double bisect_root(const std::vector<double>& c, double lo, double hi, double tol) {
  double flo = eval_poly(c, lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fmid = eval_poly(c, mid);
    if (fmid == 0.0 || hi - lo < tol * std::max(1.0, std::abs(mid))) return mid;
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coeffs, double lo, double hi,
                               double tol) {
  // Strip trailing (leading-degree) coefficients that are negligible
  // relative to the largest one.
  double maxc = 0.0;
  for (double c : coeffs) maxc = std::max(maxc, std::abs(c));
  if (maxc == 0.0) return {};
  std::vector<double> c = coeffs;
  while (c.size() > 1 && std::abs(c.back()) < 1e-14 * maxc) c.pop_back();
  if (c.size() <= 1) return {};
  if (c.size() == 2) {
    double r = -c[0] / c[1];
    if (r >= lo && r <= hi) return {r};
    return {};
  }

  // Roots are separated by critical points; p is monotone between them, so
  // a sign change on each subinterval pins down exactly one root.
  double bound = 0.0;
  for (size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c.back()));
  bound += 1.0;
  double a = std::max(lo, -bound), b = std::min(hi, bound);
  if (a > b) return {};

  std::vector<double> crit = real_roots(derivative(c), a, b, tol);
  std::vector<double> pts{a};
  for (double x : crit)
    if (x > pts.back()) pts.push_back(x);
  if (b > pts.back()) pts.push_back(b);

  std::vector<double> roots;
  auto push_root = [&](double r) {
    if (!roots.empty() && std::abs(r - roots.back()) < 1e-9 * std::max(1.0, std::abs(r))) return;
    roots.push_back(r);
  };
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double fl = eval_poly(c, pts[i]), fr = eval_poly(c, pts[i + 1]);
    double scale = 0.0;
    for (double x : {pts[i], pts[i + 1]}) scale = std::max(scale, std::pow(std::abs(x) + 1, 2.0));
    if (std::abs(fl) <= 1e-11 * maxc * scale) push_root(pts[i]);
    if ((fl < 0) != (fr < 0) && fl != 0.0)
      push_root(bisect_root(c, pts[i], pts[i + 1], tol));
    if (i + 2 == pts.size() && std::abs(fr) <= 1e-11 * maxc * scale) push_root(pts[i + 1]);
  }
  return roots;
}

namespace {

// One basis element with exact terms; numeric substitution happens against
// this as assignments accumulate.
struct NumericTerm {
  Monomial mono;
  double coef;
};

struct BranchState {
  std::vector<double> values;       // per variable, NaN = unassigned
  std::vector<char> assigned;
};

// Substitutes every assigned variable; returns the surviving terms grouped
// by their (unassigned-variable) monomial.
std::map<Monomial, double> substitute_numeric(const Polynomial& p, const BranchState& st) {
  std::map<Monomial, double> out;
  for (const auto& [m, c] : p.terms()) {
    double coef = to_double(c);
    Monomial rest = Monomial::one();
    for (int v = 0; v <= m.max_var(); ++v) {
      uint32_t e = m.exp(v);
      if (e == 0) continue;
      if (st.assigned[v]) {
        for (uint32_t k = 0; k < e; ++k) coef *= st.values[v];
      } else {
        rest = rest * Monomial::var(v, e);
      }
    }
    out[rest] += coef;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (std::abs(it->second) < 1e-13)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

int sole_variable(const std::map<Monomial, double>& terms) {
  int var = -1;
  for (const auto& [m, c] : terms) {
    for (int v = 0; v <= m.max_var(); ++v) {
      if (m.exp(v) == 0) continue;
      if (var < 0) var = v;
      if (v != var) return -2;  // more than one variable
    }
  }
  return var;  // -1 = constant
}

}  // namespace

SolutionSet extract_solutions(const GroebnerResult& result, const ConstraintSystem& sys,
                              double refineTol) {
  SolutionSet out;
  if (result.status != GroebnerStatus::Feasible)
    throw std::invalid_argument("extract_solutions requires a Feasible result");

  const int nvars = sys.vars.size();
  if (result.basis.empty()) {
    // Fully pinned system; the empty assignment is the one solution.
    out.assignments.push_back(std::vector<double>(nvars, 0.0));
    return out;
  }

  std::vector<std::vector<double>> found;
  BranchState root{std::vector<double>(nvars, 0.0), std::vector<char>(nvars, 0)};

  // Depth-first branch over univariate elements; at most
  // prod(deg) branches, tiny for the systems this handles.
  std::vector<BranchState> stack{root};
  bool nonTriangular = false;
  while (!stack.empty()) {
    BranchState st = std::move(stack.back());
    stack.pop_back();

    bool allAssigned = true;
    for (int v = 0; v < nvars; ++v)
      if (!st.assigned[v]) allAssigned = false;

    // Find a basis element that is now univariate in one unassigned
    // variable; verify consistency of fully assigned ones along the way.
    int bestVar = -1;
    std::vector<double> bestCoeffs;
    bool inconsistent = false;
    bool progress = false;
    for (const Polynomial& g : result.basis) {
      auto terms = substitute_numeric(g, st);
      int var = sole_variable(terms);
      if (var == -2) continue;
      if (var == -1) {
        double c = terms.empty() ? 0.0 : terms.begin()->second;
        if (std::abs(c) > 1e-7) inconsistent = true;
        continue;
      }
      uint32_t deg = 0;
      for (const auto& [m, c] : terms) deg = std::max(deg, m.exp(var));
      std::vector<double> coeffs(deg + 1, 0.0);
      for (const auto& [m, c] : terms) coeffs[m.exp(var)] += c;
      if (bestVar < 0 || var > bestVar) {
        // Prefer the least significant variable (largest index under the
        // natural precedence) to mimic lex back-substitution order.
        bestVar = var;
        bestCoeffs = coeffs;
      }
      progress = true;
    }
    if (inconsistent) continue;

    if (allAssigned) {
      // Residual check against the original system before accepting.
      bool ok = true;
      for (const Polynomial& p : sys.polys)
        if (std::abs(p.eval(st.values)) > 1e-9) ok = false;
      if (ok) found.push_back(st.values);
      continue;
    }

    if (!progress) {
      nonTriangular = true;
      continue;
    }

    std::vector<double> roots = real_roots(bestCoeffs, -1e6, 1e6, refineTol);
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
      BranchState next = st;
      next.values[bestVar] = *it;
      next.assigned[bestVar] = 1;
      stack.push_back(std::move(next));
    }
  }

  if (nonTriangular && found.empty()) {
    out.status = ExtractionStatus::NonTriangular;
    out.notes.push_back("basis is not triangular under the lex order; no back-substitution");
    return out;
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end(),
                          [](const auto& a, const auto& b) {
                            for (size_t i = 0; i < a.size(); ++i)
                              if (std::abs(a[i] - b[i]) > 1e-9) return false;
                            return true;
                          }),
              found.end());
  out.assignments = std::move(found);
  return out;
}

std::vector<DistinctReport> check_distinct(const SolutionSet& solutions,
                                           const ConstraintSystem& sys, double tol) {
  std::vector<DistinctReport> out;
  const Graph& g = sys.graph;
  for (const auto& assignment : solutions.assignments) {
    DistinctReport rep;
    rep.coords.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
      auto pin = sys.pins.find(g.label(v));
      if (pin != sys.pins.end()) {
        rep.coords[v] = {to_double(pin->second.first), to_double(pin->second.second)};
      } else {
        rep.coords[v] = {assignment[sys.var_of(v, 'x')], assignment[sys.var_of(v, 'y')]};
      }
    }
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = u + 1; v < g.vertex_count(); ++v) {
        double dx = rep.coords[u][0] - rep.coords[v][0];
        double dy = rep.coords[u][1] - rep.coords[v][1];
        if (std::sqrt(dx * dx + dy * dy) < tol) rep.duplicates.push_back({u, v});
      }
    rep.pass = rep.duplicates.empty();
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace udg
