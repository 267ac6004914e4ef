// Preperiodic points: certificates, numeric clusters and exact rational search.
#pragma once

#include "arithdyn/poly.hpp"
#include "arithdyn/qpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adyn {

// A place where one map has explicit good reduction and the other has only
// its constant coefficient outside the unit disk.
std::optional<PlaceQ> disjoint_certificate(const MonicPoly& f, const MonicPoly& g);

struct PrepCluster {
  cplx z;
  int m = 0, n = 0;  // minimal tag: n = preperiod, m - n = exact period
};

constexpr long kDefaultDegreeBudget = 1024;

// Points with f^m = f^n for some n < m <= m_cap and n <= n_cap.
std::vector<PrepCluster> preperiodic_complex(const MonicPoly& f, int m_cap, int n_cap, double tol,
                                             long degree_budget = kDefaultDegreeBudget);

// Exact test for f^m(x) = f^n(x) with m > n, by orbit repetition.
bool is_preperiodic_exact(const MonicPoly& f, const Rat& x, int max_steps = 256);

struct PrepCaps {
  int m_cap = 6;
  long degree_budget = kDefaultDegreeBudget;
  double tol = 1e-8;
  bool force_search = false;  // search even when a certificate exists
};

enum class Verdict { disjoint, intersection, inconclusive };
std::string to_string(Verdict v);

struct SharedPoints {
  QPoly minpoly;  // monic, squarefree; all roots are shared preperiodic points
  bool rational = false;
  double hf = 0, hg = 0;
  int f_m = 0, f_n = 0, g_m = 0, g_n = 0;
};

struct PrepCertificate {
  Verdict verdict = Verdict::inconclusive;
  std::optional<PlaceQ> witness;
  std::vector<SharedPoints> points;
  PrepCaps caps;
  int m_used_f = 0, m_used_g = 0;  // after the degree budget
  bool caps_hit = false;
  int numeric_matches = 0;
  int uncertified = 0;
  std::vector<int> matches_by_level;
  bool suspected_equal = false;
  int shared_count() const;
};

PrepCertificate prep_intersect(const MonicPoly& f, const MonicPoly& g, const PrepCaps& caps = {});

std::vector<Rat> rational_prep(const MonicPoly& f, long height_cap);

// Nearest fraction with denominator at most max_den.
Rat best_rational(double x, long max_den);

}  // namespace adyn
