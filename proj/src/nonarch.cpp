#include "arithdyn/nonarch.hpp"

#include <sstream>

namespace adyn {

std::vector<std::pair<Rat, int>> NewtonPolygon::root_abs() const {
  std::vector<std::pair<Rat, int>> out;
  for (auto& s : hull) out.emplace_back(s.slope, s.length);
  return out;
}

NewtonPolygon newton_polygon(const std::vector<std::optional<Rat>>& valuations, std::uint64_t p) {
  if (valuations.size() < 2) throw std::invalid_argument("newton_polygon: need degree >= 1");
  if (!valuations.back() || !valuations.back()->is_zero())
    throw std::invalid_argument("newton_polygon: leading valuation must be 0");
  NewtonPolygon np;
  np.p = p;
  for (size_t i = 0; i < valuations.size(); ++i)
    if (valuations[i]) np.points.emplace_back(static_cast<int>(i), *valuations[i]);
  np.zero_roots = np.points.front().first;
  std::vector<std::pair<int, Rat>> h;
  for (auto& pt : np.points) {
    while (h.size() >= 2) {
      auto& a = h[h.size() - 2];
      auto& b = h[h.size() - 1];
      Rat cross = Rat(b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * Rat(pt.first - a.first);
      if (cross.sign() > 0) break;
      h.pop_back();
    }
    h.push_back(pt);
  }
  for (size_t k = 1; k < h.size(); ++k) {
    int len = h[k].first - h[k - 1].first;
    np.hull.push_back({(h[k].second - h[k - 1].second) / Rat(len), len});
  }
  return np;
}

NewtonPolygon newton_polygon(const std::vector<Rat>& coeffs, std::uint64_t p) {
  std::vector<std::optional<Rat>> v;
  for (auto& c : coeffs) v.push_back(c.is_zero() ? std::nullopt : std::optional<Rat>(Rat(valuation(c, p))));
  if (v.back()) {
    Rat shift = *v.back();
    for (auto& x : v)
      if (x) *x -= shift;
  }
  return newton_polygon(v, p);
}

StrataMeasure strata_closed_form(int d, int j, const Rat& L) {
  if (d < 2 || j < 0 || j > d - 1) throw std::invalid_argument("strata: need 0 <= j <= d-1");
  StrataMeasure s;
  s.d = d;
  s.j = j;
  s.L = L;
  if (j == 0) {
    s.strata.push_back({L / Rat(d), Rat(1), Rat(0)});
    return s;
  }
  Rat D(d), J(j), K(d - j);
  s.strata.push_back({L / K, K / D, -(J / (K * K)) * L});
  s.strata.push_back({(Rat(1) / J) * (Rat(1) / K - Rat(1)) * L, J * K / (D * D),
                      -(Rat(1) / J + Rat(1) / (K * K)) * L});
  s.strata.push_back({-L / J, J * J / (D * D), -(Rat(1) / J + Rat(1) / (J * J)) * L});
  return s;
}

StrataMeasure strata(const MonicPoly& f, const PlaceQ& v) {
  if (v.is_archimedean()) throw std::invalid_argument("strata: finite place required");
  const std::uint64_t p = v.p;
  std::vector<int> large;
  for (int i = 0; i < f.degree(); ++i) {
    const Rat& c = f.lower()[static_cast<size_t>(i)];
    if (!c.is_zero() && valuation(c, p) < 0) large.push_back(i);
  }
  if (large.empty()) throw LocalShapeError("strata: explicit good reduction at " + v.to_string());
  if (large.size() > 1) throw LocalShapeError("strata: more than one large coefficient at " + v.to_string());
  int j = large.front();
  if (j >= 1) {
    const Rat& a0 = f.lower().front();
    if (a0.is_zero() || valuation(a0, p) != 0)
      throw LocalShapeError("strata: |a_0|_v != 1 at " + v.to_string());
  }
  Rat L(-valuation(f.lower()[static_cast<size_t>(j)], p));
  StrataMeasure s = strata_closed_form(f.degree(), j, L);
  s.v = v;
  return s;
}

namespace {

// Solve A x = b exactly (A square, nonsingular).
std::vector<Rat> solve(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
  size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && A[piv][c].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("solve: singular system");
    std::swap(A[piv], A[c]);
    std::swap(b[piv], b[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c].is_zero()) continue;
      Rat t = A[r][c] / A[c][c];
      for (size_t k = c; k < n; ++k) A[r][k] -= t * A[c][k];
      b[r] -= t * b[c];
    }
  }
  for (size_t r = 0; r < n; ++r) b[r] /= A[r][r];
  return b;
}

}  // namespace

std::array<Rat, 3> strata_pullback_simulate(int d, int j) {
  if (j < 1 || j > d - 1) throw std::invalid_argument("strata_pullback_simulate: 1 <= j <= d-1");
  Rat D(d);
  std::vector<std::vector<Rat>> T = {
      {Rat(d - j) / D, Rat(d - j) / D, Rat(d - j) / D},
      {Rat(j) / D, Rat(0), Rat(0)},
      {Rat(0), Rat(j) / D, Rat(j) / D},
  };
  // (T - I) x = 0 on the first two rows, sum x = 1
  std::vector<std::vector<Rat>> A(3, std::vector<Rat>(3));
  for (size_t r = 0; r < 2; ++r)
    for (size_t c = 0; c < 3; ++c) A[r][c] = T[r][c] - Rat(r == c ? 1 : 0);
  A[2] = {Rat(1), Rat(1), Rat(1)};
  auto x = solve(A, {Rat(0), Rat(0), Rat(1)});
  return {x[0], x[1], x[2]};
}

Rat strata_total_energy(const StrataMeasure& s) {
  Rat e(0);
  const auto& st = s.strata;
  for (size_t i = 0; i < st.size(); ++i) {
    e += st[i].mass * st[i].mass * st[i].energy;
    for (size_t k = i + 1; k < st.size(); ++k) e += Rat(2) * st[i].mass * st[k].mass * max(st[i].log_r, st[k].log_r);
  }
  return e;
}

Rat strata_row_energy(const StrataMeasure& s, size_t i) {
  const auto& st = s.strata;
  Rat e = st.at(i).mass * st[i].energy;
  for (size_t k = 0; k < st.size(); ++k)
    if (k != i) e += st[k].mass * max(st[i].log_r, st[k].log_r);
  return e;
}

GreenValue green_strata(const StrataMeasure& s, const Rat& x) {
  const Rat D(s.d), J(s.j);
  if (s.j == 0) {
    const Rat& r = s.strata[0].log_r;
    return {max(x, r), x == r};
  }
  const Rat &r1 = s.strata[0].log_r, &r2 = s.strata[1].log_r, &r3 = s.strata[2].log_r;
  bool edge = x == r1 || x == r2 || x == r3;
  if (x >= r1) return {x, edge};
  if (x >= r2) return {(J / D) * x + s.L / D, edge};
  if (x >= r3) return {(J * J / (D * D)) * x + Rat(s.j + 1) * s.L / (D * D), edge};
  return {s.L / (D * D), edge};
}

GreenValue green_nonarch(const MonicPoly& f, const PlaceQ& v, const Rat& log_radius) {
  if (v.is_archimedean()) throw std::invalid_argument("green_nonarch: finite place required");
  if (explicit_good(f, v.p)) return {max(log_radius, Rat(0)), false};
  StrataMeasure s;
  try {
    s = strata(f, v);
  } catch (const LocalShapeError& e) {
    throw LocalShapeError(std::string("bad-place: bounds only (") + e.what() + ")");
  }
  return green_strata(s, log_radius);
}

Rat capacity_union(const Rat& s1_log, const Rat& I1, const Rat& I2) {
  Rat den = Rat(2) * s1_log - I1 - I2;
  if (den.is_zero()) return s1_log;
  return (s1_log * s1_log - I1 * I2) / den;
}

std::string BerkSetDescriptor::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::unit_disk: os << "unit-disk"; break;
    case Kind::gauss_point: os << "gauss-point"; break;
    case Kind::strata_support: os << "strata-support"; break;
    case Kind::union_with_point: os << "union-with-point"; break;
    case Kind::disk: os << "disk"; break;
  }
  if (!strata_indices.empty()) {
    os << "(";
    for (size_t i = 0; i < strata_indices.size(); ++i) os << (i ? "," : "") << strata_indices[i];
    os << ")";
  }
  if (log_radius) os << " log_p R = " << log_radius->to_string();
  return os.str();
}

BerkSetDescriptor unit_disk(std::uint64_t p) {
  BerkSetDescriptor b;
  b.kind = BerkSetDescriptor::Kind::unit_disk;
  b.p = p;
  b.log_radius = Rat(0);
  b.capacity = Rat(0);
  return b;
}

BerkSetDescriptor union_set(const StrataMeasure& s) {
  if (s.j < 1) throw LocalShapeError("union_set: needs 1 <= j <= d-1");
  BerkSetDescriptor b;
  b.kind = BerkSetDescriptor::Kind::union_with_point;
  b.p = s.v.p;
  b.strata_indices = {1};
  Rat logR = Rat(s.j, s.d * s.d - s.j * s.j) * s.L;
  b.log_radius = logR;
  b.capacity = capacity_union(s.strata[0].log_r, s.strata[0].energy, logR);
  return b;
}

BerkSetDescriptor intersection_set(const StrataMeasure& s) {
  if (s.j < 1) throw LocalShapeError("intersection_set: needs 1 <= j <= d-1");
  BerkSetDescriptor b;
  b.kind = BerkSetDescriptor::Kind::strata_support;
  b.p = s.v.p;
  b.strata_indices = {2, 3};
  b.capacity = capacity_union(s.strata[1].log_r, s.strata[1].energy, s.strata[2].energy);
  return b;
}

std::optional<int> mass_outside_unit(const MonicPoly& g, const PlaceQ& v) {
  if (v.is_archimedean()) throw std::invalid_argument("mass_outside_unit: finite place required");
  for (int j = 1; j < g.degree(); ++j) {
    const Rat& c = g.lower()[static_cast<size_t>(j)];
    if (!c.is_zero() && valuation(c, v.p) < 0) return j;
  }
  return std::nullopt;
}

}  // namespace adyn
