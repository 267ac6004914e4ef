// Monic polynomials over Q, local profiles and place classification.
#pragma once

#include "arithdyn/log_value.hpp"
#include "arithdyn/rat.hpp"

#include <complex>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace adyn {

using cplx = std::complex<double>;

class MonicPoly {
 public:
  // z^d + a_{d-1} z^{d-1} + ... + a_0 with lower = {a_0, ..., a_{d-1}}.
  explicit MonicPoly(std::vector<Rat> lower);
  // Text form such as "z^3 + (3/4)z + 7".
  static MonicPoly parse(const std::string& text);
  static MonicPoly power(int d);

  int degree() const { return static_cast<int>(a_.size()); }
  // a_i for 0 <= i <= d, with a_d = 1.
  Rat coeff(int i) const;
  const std::vector<Rat>& lower() const { return a_; }
  bool centered() const { return a_.back().is_zero(); }
  bool is_power_map() const;

  Rat operator()(const Rat& x) const;
  cplx operator()(cplx z) const;
  // f(z) and f'(z)
  void eval_with_derivative(cplx z, cplx& w, cplx& dw) const;
  const std::vector<cplx>& complex_coeffs() const { return ca_; }

  // Primes dividing some coefficient denominator.
  std::vector<std::uint64_t> denominator_primes() const;

  std::string to_string() const;
  friend bool operator==(const MonicPoly& f, const MonicPoly& g) { return f.a_ == g.a_; }

 private:
  std::vector<Rat> a_;
  std::vector<cplx> ca_;
};

// exponent -> coefficient, as written (not necessarily monic)
std::map<int, Rat> parse_polynomial_terms(const std::string& text);

enum class Reduction { explicit_good, bad };

struct LocalProfile {
  PlaceQ v;
  LogValue log_M;  // log max(1, |a_i|_v)
  LogValue log_R;  // log R_{f,v}
  Reduction reduction = Reduction::bad;
  std::vector<std::optional<LogValue>> coeff_abs;  // log|a_i|_v, empty for a_i = 0
};

LocalProfile local_profile(const MonicPoly& f, const PlaceQ& v);
double radius_at(const MonicPoly& f, const PlaceQ& v);
bool explicit_good(const MonicPoly& f, std::uint64_t p);
LogValue height(const MonicPoly& f);
LogValue log_M_at(const MonicPoly& f, const PlaceQ& v);

struct CoeffId {
  bool of_g = false;  // false: a_j of f, true: b_j of g
  int j = 0;
  std::string to_string() const;
  friend bool operator==(const CoeffId&, const CoeffId&) = default;
};

struct PlaceClass {
  PlaceQ v;
  std::optional<CoeffId> assoc;  // empty: bad place
  bool good() const { return assoc.has_value(); }
};

struct PairProfile {
  MonicPoly f, g;
  std::vector<PlaceClass> places;  // nontrivial finite places, increasing p
  LocalProfile arch_f, arch_g;
  const PlaceClass* find(std::uint64_t p) const;
};

PairProfile classify_places(const MonicPoly& f, const MonicPoly& g);

struct OrdinaryResult {
  bool ordinary = true;
  std::string witness;  // first violated condition
};

// Pairs must lie in P_c(X) x P(X). Zero coefficients are exempt from both conditions.
OrdinaryResult is_ordinary(const MonicPoly& f, const MonicPoly& g, long X, double eps);
bool in_height_box(const MonicPoly& f, long X);

// Sum over places associated to a coefficient of log|c|_v.
LogValue assoc_mass(const PairProfile& prof, const CoeffId& c);

// Coefficients in `fixed` are pinned. When `free` is nonempty, indices in
// neither set are zero; otherwise every unpinned index is sampled.
struct SliceSpec {
  std::map<int, Rat> fixed;
  std::set<int> free;
  void validate(int d, bool centered) const;
};

MonicPoly sample(int d, long X, bool centered, const std::optional<SliceSpec>& slice,
                 std::mt19937_64& rng);

}  // namespace adyn
