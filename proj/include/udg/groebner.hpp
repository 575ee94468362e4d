#pragma once

#include "udg/constraints.hpp"
#include "udg/poly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace udg {

struct BuchbergerLimits {
  uint64_t maxPairs = 1'000'000;   // S-pair reductions before giving up
  int maxTotalDegree = 40;         // cap on intermediate monomial degree
  uint64_t maxWork = 500'000'000;  // cancellation steps across all reductions
  uint64_t tieBreakSeed = 0;       // permutes equal-degree pair choices
  bool selfCheck = true;           // assert all basis S-pairs reduce to zero
};

enum class GroebnerStatus { Feasible, Infeasible, LimitExceeded };

struct GroebnerStats {
  uint64_t pairsProcessed = 0;
  uint64_t reductionsToZero = 0;
  uint64_t workUnits = 0;
  int maxIntermediateDegree = 0;
};

// basis is the unique reduced Groebner basis (monic, sorted descending by
// leading term) when status != LimitExceeded. Infeasible iff basis == {1},
// which certifies emptiness over the complex numbers; Feasible does NOT
// certify a real embedding.
struct GroebnerResult {
  std::vector<Polynomial> basis;
  GroebnerStatus status = GroebnerStatus::Feasible;
  GroebnerStats stats;
};

// S(p,q) = lcm/lt(p) * p/lc(p) - lcm/lt(q) * q/lc(q); leading terms cancel.
Polynomial s_polynomial(const Polynomial& p, const Polynomial& q, const MonomialOrder& order);

// Complete multivariate division: remainder has no term divisible by any
// basis leading term. Deterministic given order and basis sequence.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order);

GroebnerResult buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                          const BuchbergerLimits& limits = {});
GroebnerResult buchberger(const ConstraintSystem& sys, const MonomialOrder& order,
                          const BuchbergerLimits& limits = {});

// Natural precedence for a system: the VarTable construction order
// (x/y per vertex in label order, auxiliaries last).
MonomialOrder default_order(const ConstraintSystem& sys,
                            MonomialOrder::Kind kind = MonomialOrder::Kind::Lex);

// All real roots of a double-coefficient univariate polynomial inside
// [lo, hi], ascending, refined by bisection to `tol`. coeffs[k] multiplies x^k.
std::vector<double> real_roots(const std::vector<double>& coeffs, double lo = -1e6,
                               double hi = 1e6, double tol = 1e-12);

enum class ExtractionStatus { Solutions, NonTriangular };

// Numeric back-substitution through a triangular lex basis. Assignments are
// aligned to the system VarTable. NonTriangular is reported when no
// remaining basis element becomes univariate in one unknown.
struct SolutionSet {
  ExtractionStatus status = ExtractionStatus::Solutions;
  std::vector<std::vector<double>> assignments;
  std::vector<std::string> notes;
};

SolutionSet extract_solutions(const GroebnerResult& result, const ConstraintSystem& sys,
                              double refineTol = 1e-12);

// Per-solution coordinates for every graph vertex (pins re-attached) and the
// vertex pairs embedded closer than `tol`. A solution passes iff none.
struct DistinctReport {
  std::vector<std::array<double, 2>> coords;
  std::vector<std::pair<int, int>> duplicates;
  bool pass = false;
};

std::vector<DistinctReport> check_distinct(const SolutionSet& solutions,
                                           const ConstraintSystem& sys, double tol = 1e-9);

}  // namespace udg
