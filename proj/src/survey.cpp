#include "arithdyn/survey.hpp"

#include "arithdyn/heights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace adyn {

namespace {

unsigned thread_count() {
  if (const char* s = std::getenv("ARITHDYN_THREADS")) {
    long n = std::strtol(s, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n) on the configured threads.
template <class Body>
void parallel_for(long n, Body&& body) {
  unsigned t = std::min<unsigned long>(thread_count(), static_cast<unsigned long>(std::max(1L, n)));
  if (t <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < t; ++k)
    pool.emplace_back([&, k] {
      for (long i = k; i < n; i += t) body(i);
    });
  for (auto& th : pool) th.join();
}

Interval bootstrap_mean_ci(const std::vector<double>& x, std::uint64_t seed) {
  if (x.empty()) return {0, 0};
  auto rng = stream_rng(seed, 0xb007);
  std::uniform_int_distribution<size_t> pick(0, x.size() - 1);
  std::vector<double> means;
  for (int b = 0; b < 1000; ++b) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[pick(rng)];
    means.push_back(s / static_cast<double>(x.size()));
  }
  std::sort(means.begin(), means.end());
  return {means[25], means[974]};
}

bool only_constant_large(const MonicPoly& g, std::uint64_t p) {
  const auto& b = g.lower();
  if (b[0].is_zero() || valuation(b[0], p) >= 0) return false;
  for (size_t j = 1; j < b.size(); ++j)
    if (!b[j].is_zero() && valuation(b[j], p) < 0) return false;
  return true;
}

}  // namespace

void SurveyConfig::validate() const {
  if (d < 2) throw std::invalid_argument("survey: d >= 2");
  if (X < 1) throw std::invalid_argument("survey: X >= 1");
  if (samples < 1) throw std::invalid_argument("survey: samples >= 1");
  if (!(eps > 0 && eps < 0.25)) throw std::invalid_argument("survey: eps in (0, 1/4)");
  if (pairing_N != 0 && pairing_N < 1000) throw std::invalid_argument("survey: pairing_N is 0 or >= 1000");
  if (slice) {
    slice->validate(d, true);
    slice->validate(d, false);
  }
}

int survey_case(const MonicPoly& f, const MonicPoly& g) {
  std::set<std::uint64_t> primes;
  for (auto p : f.denominator_primes()) primes.insert(p);
  for (auto p : g.denominator_primes()) primes.insert(p);
  bool case2 = false;
  for (auto p : primes) {
    if (!explicit_good(f, p)) continue;
    if (only_constant_large(g, p)) return 1;
    if (!explicit_good(g, p)) case2 = true;
  }
  return case2 ? 2 : 3;
}

SurveyResult survey_average_prep(const SurveyConfig& cfg) {
  cfg.validate();
  const long n = cfg.samples;
  std::vector<std::optional<SurveyRow>> rows(static_cast<size_t>(n));
  std::vector<std::string> errors(static_cast<size_t>(n));
  parallel_for(n, [&](long i) {
    auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(i));
    MonicPoly f = adyn::sample(cfg.d, cfg.X, true, cfg.slice, rng);
    MonicPoly g = adyn::sample(cfg.d, cfg.X, false, cfg.slice, rng);
    while (g == f) g = adyn::sample(cfg.d, cfg.X, false, cfg.slice, rng);
    try {
      SurveyRow r;
      r.index = i;
      r.f = f.to_string();
      r.g = g.to_string();
      r.pair_case = survey_case(f, g);
      r.shared_count = prep_intersect(f, g, cfg.caps).shared_count();
      r.hf = height(f).value();
      r.hg = height(g).value();
      r.ordinary = is_ordinary(f, g, cfg.X, cfg.eps).ordinary;
      if (cfg.pairing_N > 0) {
        auto pr = global_pairing(f, g, cfg.pairing_N, rng);
        r.pairing_lo = pr.total_lo;
        r.pairing_hi = pr.total_hi;
      }
      rows[static_cast<size_t>(i)] = std::move(r);
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(i)] = std::string("sample ") + std::to_string(i) + ": " + e.what();
    }
  });

  SurveyResult res;
  std::vector<double> counts;
  std::map<int, double> case_sum;
  for (long i = 0; i < n; ++i) {
    auto& r = rows[static_cast<size_t>(i)];
    if (!r) {
      ++res.failures;
      res.failure_log.push_back(errors[static_cast<size_t>(i)]);
      continue;
    }
    counts.push_back(r->shared_count);
    ++res.case_count[r->pair_case];
    case_sum[r->pair_case] += r->shared_count;
    res.rows.push_back(std::move(*r));
  }
  long total = 0;
  for (auto& [c, k] : res.case_count) total += k;
  if (total != static_cast<long>(res.rows.size())) throw std::logic_error("survey: case split does not partition");
  if (!counts.empty()) {
    res.mean = std::accumulate(counts.begin(), counts.end(), 0.0) / static_cast<double>(counts.size());
    res.ci = bootstrap_mean_ci(counts, cfg.seed);
    for (auto& [c, k] : res.case_count) {
      res.case_freq[c] = static_cast<double>(k) / static_cast<double>(counts.size());
      res.case_mean[c] = case_sum[c] / static_cast<double>(k);
    }
  }
  return res;
}

void write_survey_csv(const SurveyResult& r, std::ostream& os) {
  os << "seed-index,f,g,case,shared_count,pairing_lo,pairing_hi,hf,hg,ordinary\n";
  os.precision(12);
  for (auto& row : r.rows) {
    os << row.index << ",\"" << row.f << "\",\"" << row.g << "\"," << row.pair_case << ',' << row.shared_count << ',';
    if (row.pairing_lo) os << *row.pairing_lo;
    os << ',';
    if (row.pairing_hi) os << *row.pairing_hi;
    os << ',' << row.hf << ',' << row.hg << ',' << (row.ordinary ? "true" : "false") << '\n';
  }
}

Proportion survey_ordinary(int d, long X, double eps, long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("survey_ordinary: samples >= 1");
  if (!(eps > 0 && eps < 0.25)) throw std::invalid_argument("survey_ordinary: eps in (0, 1/4)");
  std::vector<char> ok(static_cast<size_t>(samples), 0);
  parallel_for(samples, [&](long i) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    MonicPoly f = adyn::sample(d, X, true, std::nullopt, rng);
    MonicPoly g = adyn::sample(d, X, false, std::nullopt, rng);
    while (g == f) g = adyn::sample(d, X, false, std::nullopt, rng);
    ok[static_cast<size_t>(i)] = is_ordinary(f, g, X, eps).ordinary;
  });
  Proportion pr;
  pr.n = samples;
  pr.p = static_cast<double>(std::count(ok.begin(), ok.end(), 1)) / static_cast<double>(samples);
  // Wilson score interval
  const double z = 1.959963984540054, nn = static_cast<double>(samples);
  double den = 1 + z * z / nn;
  double mid = (pr.p + z * z / (2 * nn)) / den;
  double half = z * std::sqrt(pr.p * (1 - pr.p) / nn + z * z / (4 * nn * nn)) / den;
  pr.ci = {mid - half, mid + half};
  return pr;
}

OrdinaryLadder ordinary_ladder(int d, long X0, int rungs, double eps, long samples, std::uint64_t seed) {
  OrdinaryLadder L;
  long X = X0;
  for (int k = 0; k < rungs; ++k, X *= 2) {
    L.X.push_back(X);
    L.props.push_back(survey_ordinary(d, X, eps, samples, seed + static_cast<std::uint64_t>(k)));
  }
  L.increasing = true;
  for (size_t k = 1; k < L.props.size(); ++k)
    if (!(L.props[k].p > L.props[k - 1].p)) L.increasing = false;
  return L;
}

RadicalStats radical_stats(long X, double eps) {
  if (X < 1 || X > 10000000) throw std::invalid_argument("radical_stats: 1 <= X <= 10^7");
  RadicalStats st;
  st.X = X;
  st.eps = eps;
  std::vector<std::uint32_t> spf(static_cast<size_t>(X) + 1, 0);
  for (long i = 2; i <= X; ++i)
    if (spf[static_cast<size_t>(i)] == 0)
      for (long j = i; j <= X; j += i)
        if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = static_cast<std::uint32_t>(i);

  const double T = std::pow(static_cast<double>(X), 1.0 - 2.0 * eps);
  long double sum = 0;
  Rat exact(0);
  const bool want_exact = X <= 10000;
  std::vector<std::uint64_t> primes;
  for (long n = 1; n <= X; ++n) {
    primes.clear();
    std::uint64_t rad = 1;
    for (long m = n; m > 1;) {
      std::uint64_t p = spf[static_cast<size_t>(m)];
      primes.push_back(p);
      rad *= p;
      while (m % static_cast<long>(p) == 0) m /= static_cast<long>(p);
    }
    sum += 1.0L / static_cast<long double>(rad);
    if (want_exact) exact += Rat(1, static_cast<long>(rad));
    // #{1 <= a <= X : gcd(a, n) = 1} by inclusion-exclusion
    std::int64_t coprime = 0;
    const size_t k = primes.size();
    for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
      std::int64_t prod = 1;
      int bits = 0;
      for (size_t i = 0; i < k; ++i)
        if (mask >> i & 1) {
          prod *= static_cast<std::int64_t>(primes[i]);
          ++bits;
        }
      coprime += (bits % 2 ? -1 : 1) * (X / prod);
    }
    std::uint64_t here = 2 * static_cast<std::uint64_t>(coprime) + (n == 1 ? 1 : 0);
    st.total += here;
    if (static_cast<double>(rad) <= T) st.smooth_count += here;
  }
  st.sum = static_cast<double>(sum);
  if (want_exact) st.sum_exact = exact;
  return st;
}

RadicalLadder radical_ladder(const std::vector<long>& Xs, double eps) {
  RadicalLadder L;
  for (long X : Xs) {
    L.stats.push_back(radical_stats(X, eps));
    L.ratio.push_back(std::log(L.stats.back().sum) / std::log(static_cast<double>(X)));
  }
  L.decreasing = true;
  for (size_t k = 1; k < L.ratio.size(); ++k)
    if (!(L.ratio[k] < L.ratio[k - 1])) L.decreasing = false;
  return L;
}

double alpha_upper() { return (std::sqrt(17.0) - 1.0) / 8.0; }

AdelicSet build_upper_adelic_set(const MonicPoly& f, const MonicPoly& g, double c,
                                 const std::optional<OrdinaryCheck>& check) {
  const double alpha = alpha_upper();
  if (!(c > 0 && c < 1 - 2 * alpha)) throw std::invalid_argument("build_upper_adelic_set: 0 < c < 1 - 2 alpha");
  if (check) {
    auto o = is_ordinary(f, g, check->X, check->eps);
    if (!o.ordinary) throw std::invalid_argument("build_upper_adelic_set: pair not ordinary: " + o.witness);
  }
  auto prof = classify_places(f, g);
  AdelicSet A;
  A.c = c;
  const int d = f.degree();
  for (auto& pc : prof.places) {
    if (!pc.assoc) continue;
    const CoeffId id = *pc.assoc;
    const double t = static_cast<double>(id.j) / d;
    const MonicPoly& h = id.of_g ? g : f;
    AdelicEntry e;
    e.assoc = id;
    e.set = unit_disk(pc.v.p);
    bool want_union = id.j > 0 && t < alpha + c;
    bool want_inter = t > 2 * alpha && t < 1;
    if (want_union || want_inter) {
      try {
        auto s = strata(h, pc.v);
        e.set = want_union ? union_set(s) : intersection_set(s);
      } catch (const LocalShapeError& err) {
        e.note = std::string("unit disk fallback: ") + err.what();
      }
    }
    A.V += LogValue::log_prime(pc.v.p, e.set.capacity);
    A.entries.emplace(pc.v.p, std::move(e));
  }
  A.V_float = A.V.value();
  return A;
}

AdelicSet search_adelic_c(const MonicPoly& f, const MonicPoly& g, int grid, const std::optional<OrdinaryCheck>& check) {
  if (grid < 1) throw std::invalid_argument("search_adelic_c: grid >= 1");
  const double top = 1 - 2 * alpha_upper();
  std::optional<AdelicSet> best;
  for (int k = 1; k <= grid; ++k) {
    double c = top * k / (grid + 1);
    auto A = build_upper_adelic_set(f, g, c, k == 1 ? check : std::nullopt);
    if (A.V_float >= 0) return A;
    if (!best || A.V_float > best->V_float) best = std::move(A);
  }
  return *best;
}

namespace {

template <class F>
double simpson(F&& fn, double a, double b, int n) {
  double h = (b - a) / n, s = fn(a) + fn(b);
  for (int i = 1; i < n; ++i) s += fn(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

Constants constants() {
  Constants k;
  const double a = alpha_upper();
  k.ln2 = std::log(2.0);
  k.C = -std::log1p(-a) + a;
  k.C_closed = std::log((9 + std::sqrt(17.0)) / 8) + a;
  k.identity_lhs = -0.5 * std::log1p(-a);
  k.identity_rhs = -std::log(2 * a);
  k.identity_literal_rhs = std::log(2 * a);
  k.integral_left = simpson([](double t) { return 1 / (2 * (1 - t)); }, 0.0, 0.5, 2000);
  k.integral_right = simpson([](double t) { return 1 / (2 * t); }, 0.5, 1.0, 2000);
  return k;
}

}  // namespace adyn
