#include "arithdyn/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace adyn;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MonicPoly parse_poly(const std::string& s) {
  try {
    return MonicPoly::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad polynomial '") + s + "': " + e.what());
  }
}

Rat parse_rat(const std::string& s) {
  try {
    return Rat::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad rational '") + s + "': " + e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  return os;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arithmetic dynamics of monic polynomials over Q"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "master seed")->capture_default_str();

  std::string f_text, g_text, x_text, out;

  auto* height_cmd = app.add_subcommand("height", "canonical height of a point");
  std::string minpoly_text;
  int depth = 6;
  height_cmd->add_option("f", f_text)->required();
  height_cmd->add_option("x", x_text, "rational point");
  height_cmd->add_option("--minpoly", minpoly_text, "algebraic point by a squarefree polynomial in z");
  height_cmd->add_option("--depth", depth, "iteration depth for algebraic points")->capture_default_str();

  auto* green_cmd = app.add_subcommand("green", "escape-rate function and equilibrium samples");
  double re = 0, im = 0;
  std::uint64_t place = 0;
  std::string log_radius = "0";
  int sample_n = 0;
  green_cmd->add_option("f", f_text)->required();
  green_cmd->add_option("--re", re)->capture_default_str();
  green_cmd->add_option("--im", im)->capture_default_str();
  green_cmd->add_option("--place", place, "finite place p (default: archimedean)");
  green_cmd->add_option("--log-radius", log_radius, "log_p |z| at a finite place")->capture_default_str();
  green_cmd->add_option("--sample", sample_n, "write N equilibrium sample points to --out");
  green_cmd->add_option("--out", out);

  auto* pairing_cmd = app.add_subcommand("pairing", "global energy pairing");
  int N = 20000;
  long X = 0;
  pairing_cmd->add_option("f", f_text)->required();
  pairing_cmd->add_option("g", g_text)->required();
  pairing_cmd->add_option("--N", N, "sample size per measure")->capture_default_str();
  pairing_cmd->add_option("--X", X, "height box for the sandwich bounds");

  auto* prep_cmd = app.add_subcommand("prep-intersect", "common preperiodic points");
  PrepCaps caps;
  prep_cmd->add_option("f", f_text)->required();
  prep_cmd->add_option("g", g_text)->required();
  prep_cmd->add_option("--m-cap", caps.m_cap)->capture_default_str();
  prep_cmd->add_option("--budget", caps.degree_budget)->capture_default_str();
  prep_cmd->add_option("--tol", caps.tol)->capture_default_str();
  prep_cmd->add_flag("--force", caps.force_search, "search even when a certificate exists");

  auto* ord_cmd = app.add_subcommand("ordinary-check", "eps-ordinary test for a pair");
  double eps = 0.2;
  ord_cmd->add_option("f", f_text)->required();
  ord_cmd->add_option("g", g_text)->required();
  ord_cmd->add_option("--X", X)->required();
  ord_cmd->add_option("--eps", eps)->capture_default_str();

  auto* survey_cmd = app.add_subcommand("survey", "Monte Carlo surveys");
  SurveyConfig cfg;
  std::string mode = "prep";
  survey_cmd->add_option("--mode", mode)->check(CLI::IsMember({"prep", "ordinary", "radical"}))->capture_default_str();
  survey_cmd->add_option("--d", cfg.d)->capture_default_str();
  survey_cmd->add_option("--X", cfg.X)->capture_default_str();
  survey_cmd->add_option("--samples", cfg.samples)->capture_default_str();
  survey_cmd->add_option("--eps", cfg.eps)->capture_default_str();
  survey_cmd->add_option("--m-cap", cfg.caps.m_cap)->capture_default_str();
  survey_cmd->add_option("--pairing-N", cfg.pairing_N)->capture_default_str();
  survey_cmd->add_option("--out", out, "CSV output path");

  auto* robin_cmd = app.add_subcommand("robin", "upper-bound adelic set and its Robin constant");
  double c = 0;
  robin_cmd->add_option("f", f_text)->required();
  robin_cmd->add_option("g", g_text)->required();
  robin_cmd->add_option("--c", c, "threshold parameter (default: grid search)");
  robin_cmd->add_option("--X", X, "check eps-ordinariness in this box");
  robin_cmd->add_option("--eps", eps)->capture_default_str();

  app.add_subcommand("constants", "closing constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::mt19937_64 rng(seed);
    if (*height_cmd) {
      auto f = parse_poly(f_text);
      if (!minpoly_text.empty()) {
        auto m = QPoly::parse(minpoly_text);
        auto pt = AlgebraicPoint::from_poly(m);
        auto h = canonical_height_alg(f, pt, depth);
        emit(envelope("height", {{"f", to_json(f)},
                                 {"minpoly", pt.to_string()},
                                 {"irreducible_verified", pt.irreducible_verified},
                                 {"value", h.value},
                                 {"err", h.err},
                                 {"preperiodic", h.preperiodic}}));
      } else {
        if (x_text.empty()) throw UsageError("height: give x or --minpoly");
        auto x = parse_rat(x_text);
        emit(envelope("height", {{"f", to_json(f)}, {"x", x.to_string()}, {"height", to_json(canonical_height(f, x))}}));
      }
    } else if (*green_cmd) {
      auto f = parse_poly(f_text);
      if (sample_n > 0) {
        if (out.empty()) throw UsageError("green --sample needs --out");
        auto s = equilibrium_sample(f, sample_n, rng);
        auto os = open_out(out);
        write_csv(s, os);
        emit(envelope("green-sample", {{"f", to_json(f)}, {"N", sample_n}, {"out", out}}));
      } else if (place != 0) {
        auto v = PlaceQ::prime(place);
        auto gv = green_nonarch(f, v, parse_rat(log_radius));
        LogValue lv;
        if (!gv.value.is_zero()) lv = LogValue::log_prime(place, gv.value);
        emit(envelope("green", {{"f", to_json(f)},
                                {"place", v.to_string()},
                                {"log_radius", log_radius},
                                {"value", to_json(lv)},
                                {"upper_bound_only", gv.upper_bound_only}}));
      } else {
        double g = green_arch(f, cplx(re, im));
        emit(envelope("green", {{"f", to_json(f)}, {"place", "inf"}, {"z", {re, im}}, {"value", g}}));
      }
    } else if (*pairing_cmd) {
      auto f = parse_poly(f_text), g = parse_poly(g_text);
      auto r = global_pairing(f, g, N, rng);
      json body = to_json(r);
      if (X > 0) {
        json b = json::array();
        for (auto& br : sandwich_check(f, g, X, r)) b.push_back(to_json(br));
        body["bounds"] = b;
      }
      emit(envelope("pairing", body));
    } else if (*prep_cmd) {
      auto f = parse_poly(f_text), g = parse_poly(g_text);
      emit(envelope("prep-intersect", to_json(prep_intersect(f, g, caps))));
    } else if (*ord_cmd) {
      auto f = parse_poly(f_text), g = parse_poly(g_text);
      auto r = is_ordinary(f, g, X, eps);
      json body = {{"ordinary", r.ordinary}, {"X", X}, {"eps", eps}};
      if (!r.ordinary) body["witness"] = r.witness;
      emit(envelope("ordinary-check", body));
    } else if (*survey_cmd) {
      cfg.seed = seed;
      if (mode == "prep") {
        auto r = survey_average_prep(cfg);
        if (!out.empty()) {
          auto os = open_out(out);
          write_survey_csv(r, os);
        }
        json body = to_json(r);
        body["config"] = {{"d", cfg.d}, {"X", cfg.X}, {"samples", cfg.samples}, {"eps", cfg.eps}, {"seed", seed}};
        emit(envelope("survey", body));
      } else if (mode == "ordinary") {
        auto p = survey_ordinary(cfg.d, cfg.X, cfg.eps, cfg.samples, seed);
        emit(envelope("survey-ordinary", {{"proportion", p.p}, {"ci", {p.ci.lo, p.ci.hi}}, {"n", p.n}}));
      } else {
        auto st = radical_stats(cfg.X, cfg.eps);
        json body = {{"X", st.X}, {"sum", st.sum}, {"smooth_count", st.smooth_count}, {"total", st.total}};
        if (st.sum_exact) body["sum_exact"] = st.sum_exact->to_string();
        emit(envelope("radical-stats", body));
      }
    } else if (*robin_cmd) {
      auto f = parse_poly(f_text), g = parse_poly(g_text);
      std::optional<OrdinaryCheck> chk;
      if (X > 0) chk = OrdinaryCheck{X, eps};
      auto A = c > 0 ? build_upper_adelic_set(f, g, c, chk) : search_adelic_c(f, g, 64, chk);
      emit(envelope("robin", to_json(A)));
    } else {
      emit(envelope("constants", to_json(constants())));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
