// Non-archimedean local theory at a finite place. Every radius, energy and
// capacity below is a Rat q standing for q log p.
#pragma once

#include "arithdyn/poly.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adyn {

struct LocalShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NewtonSegment {
  Rat slope;  // roots on this segment have absolute value p^slope
  int length = 0;
};

struct NewtonPolygon {
  std::uint64_t p = 0;
  std::vector<std::pair<int, Rat>> points;  // (i, v_p(a_i)) for a_i != 0
  std::vector<NewtonSegment> hull;
  int zero_roots = 0;  // multiplicity of the root 0
  // (log_p |root|, multiplicity)
  std::vector<std::pair<Rat, int>> root_abs() const;
};

// valuations[i] = v_p(a_i), empty for a_i = 0; valuations.back() must be 0.
NewtonPolygon newton_polygon(const std::vector<std::optional<Rat>>& valuations, std::uint64_t p);
NewtonPolygon newton_polygon(const std::vector<Rat>& coeffs, std::uint64_t p);

struct Stratum {
  Rat log_r;
  Rat mass;
  Rat energy;
};

struct StrataMeasure {
  PlaceQ v;
  int d = 0;
  int j = 0;
  Rat L;  // log|a_j|_v
  std::vector<Stratum> strata;  // three strata for j >= 1, one sphere for j = 0
};

StrataMeasure strata_closed_form(int d, int j, const Rat& L);
StrataMeasure strata(const MonicPoly& f, const PlaceQ& v);
std::array<Rat, 3> strata_pullback_simulate(int d, int j);
// alpha-weighted total energy; vanishes identically
Rat strata_total_energy(const StrataMeasure& s);
// Potential of mu_{f,v} on stratum i: alpha_i I_i + sum_{k != i} alpha_k log max(r_i, r_k)
Rat strata_row_energy(const StrataMeasure& s, size_t i);

struct GreenValue {
  Rat value;
  bool upper_bound_only = false;
};

// G_{f,v} at a point of absolute value p^{log_radius}.
GreenValue green_nonarch(const MonicPoly& f, const PlaceQ& v, const Rat& log_radius);
GreenValue green_strata(const StrataMeasure& s, const Rat& log_radius);

Rat capacity_union(const Rat& s1_log, const Rat& I1, const Rat& I2);

struct BerkSetDescriptor {
  enum class Kind { unit_disk, gauss_point, strata_support, union_with_point, disk };
  Kind kind = Kind::unit_disk;
  std::uint64_t p = 0;
  std::vector<int> strata_indices;  // for strata_support / union_with_point
  std::optional<Rat> log_radius;    // R for union_with_point, radius for disk
  Rat capacity;
  std::string to_string() const;
};

BerkSetDescriptor unit_disk(std::uint64_t p);
// S^cup = {zeta(0, R)} with R = |a_j|^{j/(d^2-j^2)}, union supp mu_1
BerkSetDescriptor union_set(const StrataMeasure& s);
// S^cap = supp mu_2 union supp mu_3
BerkSetDescriptor intersection_set(const StrataMeasure& s);

// 1 <= j <= d-1 with |b_j|_v > 1, if any.
std::optional<int> mass_outside_unit(const MonicPoly& g, const PlaceQ& v);

}  // namespace adyn
