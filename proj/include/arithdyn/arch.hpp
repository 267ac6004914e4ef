// Archimedean dynamics: Green function, equilibrium sampling, pairing.
#pragma once

#include "arithdyn/poly.hpp"

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace adyn {

// G_{f,inf}(z) to absolute accuracy tol.
double green_arch(const MonicPoly& f, cplx z, double tol = 1e-12);

struct EquilibriumSample {
  std::vector<cplx> points;
  int generation = 0;
  std::string source;
  // points come in consecutive groups of this size (full two-level preimage trees)
  int group = 1;
};

EquilibriumSample equilibrium_sample(const MonicPoly& f, int N, std::mt19937_64& rng);
cplx moment(const EquilibriumSample& s, int k);
void write_csv(const EquilibriumSample& s, std::ostream& os);

struct HolderConstants {
  double R = 0, M = 0, A = 0, alpha = 0;
  // 3 d M |z1 - z2|^alpha
  double bound(int d, double dist) const;
};

HolderConstants holder_constants(const MonicPoly& f);

struct NumericEstimate {
  double value = 0;
  double se = 0;
};

// Mean of G_f over a sample of mu_g, with block-bootstrap standard error.
NumericEstimate mean_green(const MonicPoly& f, const EquilibriumSample& s, std::mt19937_64& rng);

struct ArchPairing {
  double value = 0;
  double se = 0;
  // sampling bias: walks stop at a finite generation and the points carry
  // a few ulps of roundoff
  double bias = 0;
  double err() const { return se + bias; }
  NumericEstimate f_over_g;  // int G_f dmu_g
  NumericEstimate g_over_f;  // int G_g dmu_f
};

ArchPairing arch_pairing(const MonicPoly& f, const MonicPoly& g, int N, std::mt19937_64& rng);
ArchPairing arch_pairing(const MonicPoly& f, const MonicPoly& g, const EquilibriumSample& sf,
                         const EquilibriumSample& sg, std::mt19937_64& rng);

}  // namespace adyn
