// Monte Carlo surveys over height boxes, radical statistics, the upper-bound
// adelic set and the closing constants.
#pragma once

#include "arithdyn/log_value.hpp"
#include "arithdyn/nonarch.hpp"
#include "arithdyn/poly.hpp"
#include "arithdyn/prep.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace adyn {

struct SurveyConfig {
  int d = 6;
  long X = 10;
  long samples = 1000;
  double eps = 0.2;
  std::uint64_t seed = 1;
  std::optional<SliceSpec> slice;
  PrepCaps caps{2, kDefaultDegreeBudget, 1e-8, false};
  int pairing_N = 0;  // 0 skips the pairing columns
  std::string out;    // CSV path, empty for none
  void validate() const;
};

// Proof case of a pair (f, g): 1, 2 or 3.
int survey_case(const MonicPoly& f, const MonicPoly& g);

struct SurveyRow {
  long index = 0;
  std::string f, g;
  int pair_case = 0;
  int shared_count = 0;
  std::optional<double> pairing_lo, pairing_hi;
  double hf = 0, hg = 0;
  bool ordinary = false;
};

struct Interval {
  double lo = 0, hi = 0;
};

struct SurveyResult {
  double mean = 0;
  Interval ci;
  std::map<int, double> case_freq;
  std::map<int, long> case_count;
  std::map<int, double> case_mean;
  long failures = 0;
  std::vector<std::string> failure_log;
  std::vector<SurveyRow> rows;
};

SurveyResult survey_average_prep(const SurveyConfig& cfg);
void write_survey_csv(const SurveyResult& r, std::ostream& os);

struct Proportion {
  double p = 0;
  Interval ci;
  long n = 0;
};

Proportion survey_ordinary(int d, long X, double eps, long samples, std::uint64_t seed);

struct OrdinaryLadder {
  std::vector<long> X;
  std::vector<Proportion> props;
  bool increasing = false;
};

// X, 2X, 4X, ...
OrdinaryLadder ordinary_ladder(int d, long X0, int rungs, double eps, long samples, std::uint64_t seed);

struct RadicalStats {
  long X = 0;
  std::optional<Rat> sum_exact;  // for X <= 10^4
  double sum = 0;
  double eps = 0;
  std::uint64_t smooth_count = 0;  // rationals of height <= X with rad(den) <= X^{1-2 eps}
  std::uint64_t total = 0;         // all rationals of height <= X
};

RadicalStats radical_stats(long X, double eps = 0.2);

struct RadicalLadder {
  std::vector<RadicalStats> stats;
  std::vector<double> ratio;  // log(sum)/log X
  bool decreasing = false;
};

RadicalLadder radical_ladder(const std::vector<long>& Xs, double eps = 0.2);

struct AdelicEntry {
  BerkSetDescriptor set;
  std::optional<CoeffId> assoc;
  std::string note;  // set when a fallback was used
};

struct AdelicSet {
  double c = 0;
  std::map<std::uint64_t, AdelicEntry> entries;  // unit disk elsewhere, unit circle at infinity
  LogValue V;
  double V_float = 0;
};

double alpha_upper();  // (sqrt 17 - 1)/8

struct OrdinaryCheck {
  long X;
  double eps;
};

AdelicSet build_upper_adelic_set(const MonicPoly& f, const MonicPoly& g, double c,
                                 const std::optional<OrdinaryCheck>& check = std::nullopt);

// First c on the grid with V >= 0, else the grid maximizer.
AdelicSet search_adelic_c(const MonicPoly& f, const MonicPoly& g, int grid = 64,
                          const std::optional<OrdinaryCheck>& check = std::nullopt);

struct Constants {
  double ln2 = 0;
  double C = 0;
  double C_closed = 0;  // log((9 + sqrt 17)/8) + alpha
  // -log(1 - alpha)/2 against -log(2 alpha); (2 alpha)^2 = 1 - alpha, so the
  // unsigned form log(2 alpha) is off by a sign
  double identity_lhs = 0, identity_rhs = 0;
  double identity_literal_rhs = 0;
  double integral_left = 0, integral_right = 0;  // both log(2)/2
};

Constants constants();

}  // namespace adyn
