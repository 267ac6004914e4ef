// Canonical heights, energy pairings and the bound evaluators built on them.
#pragma once

#include "arithdyn/arch.hpp"
#include "arithdyn/log_value.hpp"
#include "arithdyn/poly.hpp"
#include "arithdyn/qpoly.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace adyn {

struct HeightValue {
  LogValue exact;      // contributions known in closed form
  double numeric = 0;  // remaining contributions
  double err = 0;      // absolute error bound on numeric
  bool preperiodic = false;
  double value() const { return exact.value() + numeric; }
};

HeightValue canonical_height(const MonicPoly& f, const Rat& x);

struct AlgebraicPoint {
  std::vector<mpz_class> minpoly;  // primitive, positive leading coefficient
  std::vector<cplx> embeddings;
  bool irreducible_verified = false;

  static AlgebraicPoint from_poly(const QPoly& m);
  static AlgebraicPoint rational(const Rat& x);
  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
  QPoly poly() const { return QPoly::from_integers(minpoly); }
  std::string to_string() const { return poly().to_string(); }
};

// Irreducible modulo some small prime (sufficient for irreducibility over Q).
bool irreducible_mod_some_prime(const QPoly& m);

struct AlgHeight {
  double value = 0;
  double err = 0;
  bool preperiodic = false;  // exact orbit repetition found
};

constexpr long kDefaultDegreeCap = 5000;
AlgHeight canonical_height_alg(const MonicPoly& f, const AlgebraicPoint& x, int n,
                               long degree_cap = kDefaultDegreeCap);
// Height of an algebraic point of the given minimal data.
double algebraic_height(const std::vector<mpz_class>& primitive_poly, const std::vector<cplx>& roots);

enum class PairingTag { exact, numeric, interval };
enum class Provenance { good_assoc, one_sided_good, trivial, identical, bad, archimedean };
std::string to_string(PairingTag t);
std::string to_string(Provenance p);

struct PairingEntry {
  PlaceQ v;
  PairingTag tag = PairingTag::exact;
  Provenance provenance = Provenance::trivial;
  std::optional<CoeffId> assoc;
  LogValue lo, hi;       // finite places
  double value = 0;      // archimedean estimate
  double err = 0;        // archimedean standard error
};

PairingEntry local_pairing(const MonicPoly& f, const MonicPoly& g, const PlaceQ& v);

struct PairingReport {
  std::vector<PairingEntry> entries;  // finite places increasing, then infinity
  LogValue finite_lo, finite_hi;
  ArchPairing arch;
  double total_lo = 0, total_hi = 0;  // arch taken at +-2 standard errors
  double estimate() const { return 0.5 * (finite_lo.value() + finite_hi.value()) + arch.value; }
  LogValue good_sum() const;  // sum of exact entries at good places
  LogValue bad_mass() const;  // sum of interval upper ends
};

PairingReport global_pairing(const MonicPoly& f, const MonicPoly& g, int N, std::mt19937_64& rng);
PairingReport global_pairing(const MonicPoly& f, const MonicPoly& g, const EquilibriumSample& sf,
                             const EquilibriumSample& sg, std::mt19937_64& rng);

struct BoundReport {
  std::string name;
  double lhs = 0, rhs = 0;
  bool satisfied = false;
  bool shape_only = false;
};

std::vector<BoundReport> sandwich_check(const MonicPoly& f, const MonicPoly& g, long X, const PairingReport& pr);
std::vector<BoundReport> sandwich_check(const MonicPoly& f, const MonicPoly& g, long X, int N, std::mt19937_64& rng);

Rat fudge_min(int d, int j, const Rat& log_aj);

struct RadiusEntry {
  PlaceQ v;
  bool explicit_good = false;
  double alpha = 1;
  double eps = 1;
};

struct EquidistributionReport {
  std::vector<RadiusEntry> radii_f, radii_g;
  double rhs_shape = 0;  // d (log N / N)(max(h(f), h(g)) + 1), no absolute constant
  BoundReport bound;
};

double adelic_radius(double alpha, int d, long N);
EquidistributionReport equidistribution_bounds(const MonicPoly& f, const MonicPoly& g, long N);

}  // namespace adyn
