#pragma once

// Level-curve topography of the zeta function in a strip: the "thick"
// lines where Im zeta = 0 and the "thin" lines where Re zeta = 0.
// Pipeline: sample_grid evaluates zeta on a rectangular grid (row-shared
// rotating phasors make the Euler-Maclaurin main sum incremental in t),
// trace_level_curves runs marching squares and links cell segments into
// polylines with every vertex Newton-polished onto the curve,
// classify_escape decides which thick lines run out to the right, and
// assign_numbers orders all crossings of a reference vertical line by
// height. The membership of a line number in SQ1/SQ2/SQ3 is plain
// residue arithmetic.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hexwave/wheel.hpp"
#include "hexwave/zeta.hpp"

namespace hexwave {

struct GridSpec {
  double sigma_lo = -1.0, sigma_hi = 2.0;
  double t_lo = 0.0, t_hi = 40.0;
  u64 nx = 0, ny = 0;  // node counts

  void validate() const {
    if (!(sigma_lo < sigma_hi) || !(t_lo < t_hi))
      throw std::domain_error("GridSpec: empty rectangle");
    if (nx < 8 || ny < 8) throw std::domain_error("GridSpec: need nx, ny >= 8");
    if (sigma_lo < -2.0) throw std::domain_error("GridSpec: sigma_lo below -2 unsupported");
    if (t_lo < 0.0 || t_hi > 520.0) throw std::domain_error("GridSpec: t range outside [0, 520]");
  }
  double dsigma() const { return (sigma_hi - sigma_lo) / double(nx - 1); }
  double dt() const { return (t_hi - t_lo) / double(ny - 1); }
  double sigma_at(u64 i) const { return sigma_lo + double(i) * dsigma(); }
  double t_at(u64 j) const { return t_lo + double(j) * dt(); }
};

struct Field {
  GridSpec spec;
  std::vector<float> re, im;  // node (i, j) at j*nx + i; NaN = masked
  std::vector<std::array<u64, 2>> masked_nodes;
  std::vector<std::array<u64, 2>> zero_cells;  // both components change sign

  bool masked(u64 i, u64 j) const { return std::isnan(re[j * spec.nx + i]); }
};

namespace detail {

/// One grid row of zeta values by Euler-Maclaurin with shared phasors.
/// powtab[i * stride + n] = n^{-sigma_i}; phasor[n] = e^{-i t ln n}.
inline void eval_row(const GridSpec& g, double t, const std::vector<double>& powtab, u64 stride,
                     const std::vector<double>& ph_re, const std::vector<double>& ph_im,
                     float* out_re, float* out_im, std::vector<std::array<u64, 2>>* masked,
                     u64 j) {
  const int N = em_terms(std::abs(t));
  const double lnN = std::log(double(N));
  const double cN = std::cos(-t * lnN), sN = std::sin(-t * lnN);
  const auto& bern = bern_over_fact();
  for (u64 i = 0; i < g.nx; ++i) {
    const double sigma = g.sigma_at(i);
    if (std::abs(sigma - 1.0) < 0.25 * g.dsigma() && std::abs(t) < 0.25 * g.dt()) {
      out_re[i] = out_im[i] = std::numeric_limits<float>::quiet_NaN();
      if (masked) masked->push_back({i, j});
      continue;
    }
    const double* pw = &powtab[i * stride];
    double ar = 1.0, ai = 0.0;  // n = 1
    for (int n = 2; n < N; ++n) {
      const double c = pw[n];
      ar += c * ph_re[n];
      ai += c * ph_im[n];
    }
    const cplx s(sigma, t);
    const cplx Nms = pw[N] * cplx(cN, sN);
    cplx acc(ar, ai);
    acc += 0.5 * Nms;
    acc += Nms * double(N) / (s - 1.0);
    cplx poch = s;
    cplx nf = Nms / double(N);
    for (int k = 1; k <= 12; ++k) {
      acc += bern[k - 1] * poch * nf;
      poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
      nf /= double(N) * double(N);
    }
    out_re[i] = float(acc.real());
    out_im[i] = float(acc.imag());
  }
}

}  // namespace detail

/// Evaluate zeta over the grid. Rows are processed in fixed blocks whose
/// phasors are re-seeded exactly at the block start, so the result is
/// bit-identical for any thread count.
inline Field sample_grid(const GridSpec& spec, unsigned threads = 1) {
  spec.validate();
  Field f;
  f.spec = spec;
  f.re.assign(spec.nx * spec.ny, 0.f);
  f.im.assign(spec.nx * spec.ny, 0.f);

  const int n_max = detail::em_terms(std::max(std::abs(spec.t_lo), std::abs(spec.t_hi)));
  const u64 stride = u64(n_max) + 1;
  std::vector<double> powtab(spec.nx * stride);
  for (u64 i = 0; i < spec.nx; ++i) {
    const double sigma = spec.sigma_at(i);
    for (int n = 1; n <= n_max; ++n) powtab[i * stride + n] = std::pow(double(n), -sigma);
  }
  std::vector<double> lnn(stride);
  for (int n = 1; n <= n_max; ++n) lnn[n] = std::log(double(n));

  constexpr u64 block_rows = 2048;
  const u64 n_blocks = (spec.ny + block_rows - 1) / block_rows;
  std::vector<std::vector<std::array<u64, 2>>> masked_per_block(n_blocks);

  auto work = [&](u64 bi) {
    const u64 j0 = bi * block_rows, j1 = std::min(spec.ny, j0 + block_rows);
    const int n_block = detail::em_terms(std::abs(spec.t_at(j1 - 1)));
    std::vector<double> ph_re(n_block + 1), ph_im(n_block + 1), rot_re(n_block + 1), rot_im(n_block + 1);
    const double t0 = spec.t_at(j0), dt = spec.dt();
    for (int n = 1; n <= n_block; ++n) {
      ph_re[n] = std::cos(-t0 * lnn[n]);
      ph_im[n] = std::sin(-t0 * lnn[n]);
      rot_re[n] = std::cos(-dt * lnn[n]);
      rot_im[n] = std::sin(-dt * lnn[n]);
    }
    for (u64 j = j0; j < j1; ++j) {
      if (j > j0)
        for (int n = 1; n <= n_block; ++n) {
          const double pr = ph_re[n] * rot_re[n] - ph_im[n] * rot_im[n];
          ph_im[n] = ph_re[n] * rot_im[n] + ph_im[n] * rot_re[n];
          ph_re[n] = pr;
        }
      detail::eval_row(spec, spec.t_at(j), powtab, stride, ph_re, ph_im,
                       &f.re[j * spec.nx], &f.im[j * spec.nx], &masked_per_block[bi], j);
    }
  };
  if (threads <= 1) {
    for (u64 bi = 0; bi < n_blocks; ++bi) work(bi);
  } else {
    std::atomic<u64> next{0};
    std::vector<std::future<void>> futs;
    for (unsigned k = 0; k < threads; ++k)
      futs.push_back(std::async(std::launch::async, [&] {
        for (u64 bi = next.fetch_add(1); bi < n_blocks; bi = next.fetch_add(1)) work(bi);
      }));
    for (auto& fu : futs) fu.get();
  }
  for (auto& chunk : masked_per_block)
    f.masked_nodes.insert(f.masked_nodes.end(), chunk.begin(), chunk.end());

  // cells where both Re and Im change sign: zero neighborhoods
  auto sgn = [](float v) { return !(v < 0.f); };
  for (u64 j = 0; j + 1 < spec.ny; ++j)
    for (u64 i = 0; i + 1 < spec.nx; ++i) {
      const u64 a = j * spec.nx + i, b = a + 1, c = a + spec.nx, d = c + 1;
      if (std::isnan(f.re[a]) || std::isnan(f.re[b]) || std::isnan(f.re[c]) || std::isnan(f.re[d]))
        continue;
      bool re_mix = !(sgn(f.re[a]) == sgn(f.re[b]) && sgn(f.re[a]) == sgn(f.re[c]) &&
                      sgn(f.re[a]) == sgn(f.re[d]));
      bool im_mix = !(sgn(f.im[a]) == sgn(f.im[b]) && sgn(f.im[a]) == sgn(f.im[c]) &&
                      sgn(f.im[a]) == sgn(f.im[d]));
      if (re_mix && im_mix) f.zero_cells.push_back({i, j});
    }
  return f;
}

enum class Parity { thick, thin };  // thick: Im zeta = 0, thin: Re zeta = 0

inline const char* to_string(Parity p) { return p == Parity::thick ? "thick" : "thin"; }

struct CurvePoint {
  double sigma, t;
};

struct LevelCurve {
  Parity parity = Parity::thick;
  std::vector<CurvePoint> points;
  bool closed = false;
  bool escapes_right = false;
  bool indeterminate = false;          // cut by the grid before the escape decision
  std::optional<int> asym_index;
  std::optional<int> label;            // primary (smallest) reference-line label
  std::vector<int> labels;             // all labels of this curve's crossings
};

struct TraceResult {
  Parity parity;
  std::vector<LevelCurve> curves;
  std::vector<CurvePoint> gaps;  // cells left unresolved after refinement
};

inline constexpr double curve_vertex_tol = 1e-8;

namespace detail {

// edge ids: horizontal edge (i..i+1, j) -> j*(nx-1)+i; vertical edge
// (i, j..j+1) -> H + j*nx + i
struct EdgeIndexer {
  u64 nx, ny, h_count;
  explicit EdgeIndexer(const GridSpec& g) : nx(g.nx), ny(g.ny), h_count((g.nx - 1) * g.ny) {}
  u64 h(u64 i, u64 j) const { return j * (nx - 1) + i; }
  u64 v(u64 i, u64 j) const { return h_count + j * nx + i; }
  bool is_h(u64 id) const { return id < h_count; }
  std::array<u64, 2> h_cell(u64 id) const { return {id % (nx - 1), id / (nx - 1)}; }
  std::array<u64, 2> v_cell(u64 id) const { return {(id - h_count) % nx, (id - h_count) / nx}; }
};

inline double interp(double x0, double x1, double g0, double g1) {
  return x0 + (x1 - x0) * (g0 / (g0 - g1));
}

/// Newton-polish a vertex onto the level set of one component. Boundary
/// vertices move only along their boundary line.
inline CurvePoint polish_vertex(CurvePoint p, Parity parity, const GridSpec& g) {
  const double dsig = g.dsigma(), dt = g.dt();
  const bool on_left = std::abs(p.sigma - g.sigma_lo) < 1e-12;
  const bool on_right = std::abs(p.sigma - g.sigma_hi) < 1e-12;
  const bool on_bottom = std::abs(p.t - g.t_lo) < 1e-12;
  const bool on_top = std::abs(p.t - g.t_hi) < 1e-12;
  const double max_step = 2.0 * std::hypot(dsig, dt);
  for (int it = 0; it < 8; ++it) {
    auto [z, dz] = zeta_with_deriv(cplx(p.sigma, p.t));
    const double gval = parity == Parity::thick ? z.imag() : z.real();
    if (std::abs(gval) <= 0.1 * curve_vertex_tol) break;
    // grad(Im) = (Im z', Re z'); grad(Re) = (Re z', -Im z')
    double gx = parity == Parity::thick ? dz.imag() : dz.real();
    double gy = parity == Parity::thick ? dz.real() : -dz.imag();
    double dx, dy;
    if (on_left || on_right) {
      if (gy == 0.0) break;
      dx = 0.0;
      dy = -gval / gy;
    } else if (on_bottom || on_top) {
      if (gx == 0.0) break;
      dx = -gval / gx;
      dy = 0.0;
    } else {
      const double n2 = gx * gx + gy * gy;
      if (n2 == 0.0) break;
      dx = -gval * gx / n2;
      dy = -gval * gy / n2;
    }
    const double len = std::hypot(dx, dy);
    if (len > max_step) {
      dx *= max_step / len;
      dy *= max_step / len;
    }
    p.sigma = std::clamp(p.sigma + dx, g.sigma_lo, g.sigma_hi);
    p.t = std::clamp(p.t + dy, g.t_lo, g.t_hi);
  }
  return p;
}

}  // namespace detail

/// Extract the level curves of one component by marching squares.
/// Ambiguous (four-crossing) cells are resolved by a fresh evaluation at
/// the cell centre; a centre too close to zero means a saddle, which is
/// split straight through. Every vertex is polished to
/// |component| <= 1e-8.
inline TraceResult trace_level_curves(const Field& f, Parity parity, bool polish = true) {
  const GridSpec& g = f.spec;
  const std::vector<float>& comp = parity == Parity::thick ? f.im : f.re;
  detail::EdgeIndexer ex(g);
  auto sgn = [](float v) { return !(v < 0.f); };  // zero counts positive

  std::unordered_map<u64, std::array<u64, 2>> adj;  // edge -> up to 2 partners
  std::unordered_map<u64, int> deg;
  adj.reserve(1 << 16);
  auto link = [&](u64 a, u64 b) {
    auto& pa = adj[a];
    auto& da = deg[a];
    if (da < 2) pa[da] = b;
    ++da;
    auto& pb = adj[b];
    auto& db = deg[b];
    if (db < 2) pb[db] = a;
    ++db;
  };

  TraceResult result;
  result.parity = parity;

  for (u64 j = 0; j + 1 < g.ny; ++j) {
    for (u64 i = 0; i + 1 < g.nx; ++i) {
      const u64 a = j * g.nx + i;
      const float v00 = comp[a], v10 = comp[a + 1], v01 = comp[a + g.nx], v11 = comp[a + g.nx + 1];
      if (std::isnan(v00) || std::isnan(v10) || std::isnan(v01) || std::isnan(v11)) continue;
      const bool s00 = sgn(v00), s10 = sgn(v10), s01 = sgn(v01), s11 = sgn(v11);
      u64 crossed[4];
      int nc = 0;
      if (s00 != s10) crossed[nc++] = ex.h(i, j);          // bottom
      if (s01 != s11) crossed[nc++] = ex.h(i, j + 1);      // top
      if (s00 != s01) crossed[nc++] = ex.v(i, j);          // left
      if (s10 != s11) crossed[nc++] = ex.v(i + 1, j);      // right
      if (nc == 0) continue;
      if (nc == 2) {
        link(crossed[0], crossed[1]);
        continue;
      }
      // four crossings: diagonal pattern, resolve with the cell centre
      const double cs = g.sigma_at(i) + 0.5 * g.dsigma();
      const double ct = g.t_at(j) + 0.5 * g.dt();
      double centre;
      bool gap = false;
      try {
        cplx z = zeta(cplx(cs, ct));
        centre = parity == Parity::thick ? z.imag() : z.real();
      } catch (const std::exception&) {
        gap = true;
        centre = 0.0;
      }
      const u64 bottom = ex.h(i, j), top = ex.h(i, j + 1), left = ex.v(i, j), right = ex.v(i + 1, j);
      const double scale = std::max({std::abs(double(v00)), std::abs(double(v10)),
                                     std::abs(double(v01)), std::abs(double(v11))});
      if (gap) {
        result.gaps.push_back({cs, ct});
      } else if (std::abs(centre) < 1e-9 * std::max(scale, 1.0)) {
        // saddle on the curve: straight-through continuation
        link(bottom, top);
        link(left, right);
      } else if ((centre >= 0.0) == s00) {
        // corner (i,j) joins the centre: isolate the two opposite corners
        link(bottom, right);
        link(left, top);
      } else {
        link(bottom, left);
        link(top, right);
      }
    }
  }

  // crossing point on an edge
  auto point_on = [&](u64 id) -> CurvePoint {
    if (ex.is_h(id)) {
      auto [i, j] = ex.h_cell(id);
      const double g0 = comp[j * g.nx + i], g1 = comp[j * g.nx + i + 1];
      return {detail::interp(g.sigma_at(i), g.sigma_at(i + 1), g0, g1), g.t_at(j)};
    }
    auto [i, j] = ex.v_cell(id);
    const double g0 = comp[j * g.nx + i], g1 = comp[(j + 1) * g.nx + i];
    return {g.sigma_at(i), detail::interp(g.t_at(j), g.t_at(j + 1), g0, g1)};
  };

  std::unordered_map<u64, bool> visited;
  visited.reserve(adj.size());
  auto walk = [&](u64 start, bool closed) {
    LevelCurve curve;
    curve.parity = parity;
    curve.closed = closed;
    u64 cur = start, prev = u64(-1);
    while (true) {
      visited[cur] = true;
      curve.points.push_back(point_on(cur));
      const auto& partners = adj[cur];
      const int d = std::min(deg[cur], 2);
      u64 next = u64(-1);
      for (int k = 0; k < d; ++k)
        if (partners[k] != prev && !visited[partners[k]]) { next = partners[k]; break; }
      if (next == u64(-1)) {
        if (closed) curve.points.push_back(curve.points.front());
        break;
      }
      prev = cur;
      cur = next;
    }
    if (polish)
      for (auto& p : curve.points) p = detail::polish_vertex(p, parity, g);
    if (curve.points.size() >= 2) result.curves.push_back(std::move(curve));
  };

  std::vector<u64> endpoints;
  for (const auto& [id, d] : deg)
    if (d == 1) endpoints.push_back(id);
  std::sort(endpoints.begin(), endpoints.end());
  for (u64 id : endpoints)
    if (!visited[id]) walk(id, false);
  std::vector<u64> rest;
  for (const auto& [id, d] : deg)
    if (!visited[id]) rest.push_back(id);
  std::sort(rest.begin(), rest.end());
  for (u64 id : rest)
    if (!visited[id]) walk(id, true);

  // deterministic curve order: by first point (t, sigma)
  std::sort(result.curves.begin(), result.curves.end(), [](const LevelCurve& a, const LevelCurve& b) {
    if (a.points.front().t != b.points.front().t) return a.points.front().t < b.points.front().t;
    return a.points.front().sigma < b.points.front().sigma;
  });
  return result;
}

inline constexpr double escape_t_variation = std::numbers::pi / (2.0 * std::numbers::ln2);

/// Escape decision for one curve: it must reach sigma_right, continue with
/// monotone sigma to the right grid border, and keep its t-variation under
/// pi/(2 ln 2) out there. Thick escapers get the asymptotic family index
/// round(t_end ln 2 / pi).
inline std::pair<bool, std::optional<int>> classify_escape(LevelCurve& curve, const GridSpec& g,
                                                           double sigma_right = 2.0) {
  if (g.sigma_hi < sigma_right + 1.0)
    throw std::domain_error("classify_escape: grid must extend past sigma_right + 1");
  curve.escapes_right = false;
  curve.asym_index.reset();
  const double eps = 0.5 * g.dsigma();
  const bool front_right = std::abs(curve.points.front().sigma - g.sigma_hi) < eps;
  const bool back_right = std::abs(curve.points.back().sigma - g.sigma_hi) < eps;
  if (!front_right && !back_right) {
    // never reaches the right border; truncation by top or bottom with
    // sigma beyond sigma_right leaves the call undecided
    double max_sigma = g.sigma_lo;
    for (const auto& p : curve.points) max_sigma = std::max(max_sigma, p.sigma);
    if (!curve.closed && max_sigma >= sigma_right) {
      const auto& f = curve.points.front();
      const auto& b = curve.points.back();
      const bool f_cut = std::abs(f.t - g.t_hi) < 1e-9 || std::abs(f.t - g.t_lo) < 1e-9;
      const bool b_cut = std::abs(b.t - g.t_hi) < 1e-9 || std::abs(b.t - g.t_lo) < 1e-9;
      if (f_cut || b_cut) curve.indeterminate = true;
    }
    return {false, std::nullopt};
  }
  // traverse from the right border inward
  std::vector<CurvePoint> pts = curve.points;
  if (front_right && !back_right) std::reverse(pts.begin(), pts.end());
  const double t_end = pts.back().t;
  const double jitter = std::max(0.05, 2.0 * g.dsigma());  // polyline tolerance on "monotone"
  bool ok = true;
  double prev_sigma = pts.back().sigma;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    if (it->sigma < sigma_right) break;
    if (it->sigma > prev_sigma + jitter) { ok = false; break; }  // sigma must grow rightward
    if (std::abs(it->t - t_end) >= escape_t_variation) { ok = false; break; }
    prev_sigma = std::min(prev_sigma, it->sigma);
  }
  // must actually cross sigma_right, not just touch the border
  double min_sigma = g.sigma_hi;
  for (const auto& p : pts) min_sigma = std::min(min_sigma, p.sigma);
  if (min_sigma > sigma_right - 0.5) ok = false;
  if (!ok) return {false, std::nullopt};
  curve.escapes_right = true;
  if (curve.parity == Parity::thick)
    curve.asym_index = int(std::lround(t_end * std::numbers::ln2 / std::numbers::pi));
  return {true, curve.asym_index};
}

struct Crossing {
  int label;
  size_t curve;  // index into the curve list given to assign_numbers
  Parity parity;
  double t;
};

struct NumberingResult {
  std::vector<Crossing> crossings;          // ordered by t
  std::vector<int> alternation_violations;  // labels where the merged t-order breaks thick/thin alternation
  double gap_ceiling = std::numeric_limits<double>::infinity();
};

/// Order every crossing of the vertical reference line by t. Thick lines
/// take the odd numbers 1, 3, 5, ... in order of height, thin lines the
/// even numbers; when thick and thin strictly alternate (the observed
/// rule in the strip) this is the same as numbering all crossings
/// consecutively, and places where the alternation breaks are flagged.
/// The real-axis line (t = 0) belongs to the boundary, not the count.
/// Numbering stops below the first unresolved gap.
inline NumberingResult assign_numbers(std::vector<LevelCurve>& curves, const GridSpec& g,
                                      double reference_sigma = -1.0,
                                      const std::vector<CurvePoint>& gaps = {}) {
  NumberingResult res;
  for (const auto& gp : gaps) res.gap_ceiling = std::min(res.gap_ceiling, gp.t);
  const bool boundary_mode = std::abs(reference_sigma - g.sigma_lo) < 0.5 * g.dsigma();
  std::vector<Crossing> raw;
  for (size_t ci = 0; ci < curves.size(); ++ci) {
    auto& c = curves[ci];
    c.labels.clear();
    c.label.reset();
    if (boundary_mode) {
      auto consider = [&](const CurvePoint& p) {
        if (std::abs(p.sigma - g.sigma_lo) < 1e-9 && p.t > 0.5 * g.dt())
          raw.push_back({0, ci, c.parity, p.t});
      };
      if (!c.closed) {
        consider(c.points.front());
        consider(c.points.back());
      }
    } else {
      for (size_t k = 0; k + 1 < c.points.size(); ++k) {
        const double a = c.points[k].sigma - reference_sigma;
        const double b = c.points[k + 1].sigma - reference_sigma;
        if ((a < 0) != (b < 0)) {
          double t = c.points[k].t + (c.points[k + 1].t - c.points[k].t) * (a / (a - b));
          if (t > 0.5 * g.dt()) raw.push_back({0, ci, c.parity, t});
        }
      }
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Crossing& a, const Crossing& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.curve < b.curve;
  });
  int n_thick = 0, n_thin = 0, position = 0;
  for (auto& cr : raw) {
    if (cr.t >= res.gap_ceiling) break;
    ++position;
    cr.label = cr.parity == Parity::thick ? 2 * (++n_thick) - 1 : 2 * (++n_thin);
    if (cr.label != position) res.alternation_violations.push_back(cr.label);
    curves[cr.curve].labels.push_back(cr.label);
    if (!curves[cr.curve].label || cr.label < *curves[cr.curve].label)
      curves[cr.curve].label = cr.label;
    res.crossings.push_back(cr);
  }
  return res;
}

/// SQ class of an odd line number: 5 mod 6 -> SQ1, 1 -> SQ2, 3 -> SQ3.
inline SeqId sq_membership(int label) {
  if (label < 1 || label % 2 == 0)
    throw std::domain_error("sq_membership: thick (odd) labels only");
  switch (label % 6) {
    case 5: return SeqId::SQ1;
    case 1: return SeqId::SQ2;
    default: return SeqId::SQ3;
  }
}

/// t-position of the m-th escaping line at a given sigma: the root of
/// Im zeta(sigma + it) near m pi / ln 2.
inline double escape_line_position(double sigma, int m) {
  if (m < 1 || sigma < 3.0)
    throw std::domain_error("escape_line_position: need m >= 1 and sigma >= 3");
  const double tm = double(m) * std::numbers::pi / std::numbers::ln2;
  double a = tm - 2.2, b = tm + 2.2;
  auto f = [&](double t) { return zeta(cplx(sigma, t)).imag(); };
  double fa = f(a), fb = f(b);
  if ((fa < 0) == (fb < 0))
    throw std::runtime_error("escape_line_position: no bracket around the family point");
  for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
    const double mid = 0.5 * (a + b), fm = f(mid);
    if ((fa < 0) != (fm < 0)) b = mid;
    else { a = mid; fa = fm; }
  }
  return 0.5 * (a + b);
}

}  // namespace hexwave
