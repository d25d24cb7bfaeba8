#include "kobest/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <vector>

#include "kobest/quadrature.hpp"

namespace kobest {

namespace {

// Best certified pointwise upper bound on the metric (exact where known).
double metric_best_upper(const Domain& d, const CVec& z, const CVec& v) {
  if (auto m = d.exact_metric(z, v)) return *m;
  return norm(v) / d.dir_boundary_dist_cert_lower(z, v);
}

// Integral of the metric upper bound along the straight segment [a, b].
double edge_weight(const Domain& d, const CVec& a, const CVec& b) {
  CVec dir = sub(b, a);
  if (norm2(dir) == 0.0) return 0.0;
  QuadOptions opt;
  opt.rel_tol = 1e-6;
  opt.abs_tol = 1e-12;
  opt.max_depth = 14;
  QuadResult r = integrate(
      [&](double t) { return metric_best_upper(d, axpy(a, Cx(t, 0), dir), dir); }, 0.0, 1.0, opt);
  return r.value;
}

// Planar lattice over a 2d coordinate chart embedded in the domain.
struct PlanarChart {
  // chart(x, y) must be complex-affine in x + iy so straight chart segments
  // are straight segments in the domain.
  std::function<CVec(double, double)> at;
  double x0, x1, y0, y1;
};

struct Graph {
  double h = 0;
  int nx = 0, ny = 0;
  std::vector<int> vid;            // (ix, iy) -> vertex id or -1
  std::vector<CVec> pts;           // vertex id -> point
  std::vector<std::pair<double, double>> xy;  // vertex id -> chart coords
  std::vector<std::vector<std::pair<int, double>>> adj;

  int index(int ix, int iy) const { return iy * nx + ix; }
};

const std::array<std::pair<int, int>, 16> kOffsets = {{{1, 0},
                                                       {0, 1},
                                                       {-1, 0},
                                                       {0, -1},
                                                       {1, 1},
                                                       {1, -1},
                                                       {-1, 1},
                                                       {-1, -1},
                                                       {2, 1},
                                                       {2, -1},
                                                       {-2, 1},
                                                       {-2, -1},
                                                       {1, 2},
                                                       {1, -2},
                                                       {-1, 2},
                                                       {-1, -2}}};

Graph build_graph(const Domain& d, const PlanarChart& chart, double h) {
  Graph g;
  g.h = h;
  g.nx = static_cast<int>(std::floor((chart.x1 - chart.x0) / h)) + 1;
  g.ny = static_cast<int>(std::floor((chart.y1 - chart.y0) / h)) + 1;
  g.vid.assign(static_cast<std::size_t>(g.nx) * g.ny, -1);

  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      double x = chart.x0 + ix * h, y = chart.y0 + iy * h;
      CVec z = chart.at(x, y);
      if (d.contains(z)) {
        g.vid[g.index(ix, iy)] = static_cast<int>(g.pts.size());
        g.pts.push_back(std::move(z));
        g.xy.emplace_back(x, y);
      }
    }
  }
  g.adj.resize(g.pts.size());
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      int a = g.vid[g.index(ix, iy)];
      if (a < 0) continue;
      for (const auto& [dx, dy] : kOffsets) {
        int jx = ix + dx, jy = iy + dy;
        if (jx < 0 || jy < 0 || jx >= g.nx || jy >= g.ny) continue;
        int b = g.vid[g.index(jx, jy)];
        if (b <= a) continue;  // one direction; mirror below
        if (!d.segment_inside(g.pts[a], g.pts[b])) continue;
        double w = edge_weight(d, g.pts[a], g.pts[b]);
        g.adj[a].emplace_back(b, w);
        g.adj[b].emplace_back(a, w);
      }
    }
  }
  return g;
}

double dijkstra(const Domain& d, const Graph& g, const CVec& p, const CVec& q,
                double connect_radius, std::pair<double, double> pxy,
                std::pair<double, double> qxy, bool direct_edge) {
  const int n = static_cast<int>(g.pts.size());
  const int src = n, dst = n + 1;
  std::vector<std::vector<std::pair<int, double>>> extra(2);

  auto connect = [&](const CVec& e, std::pair<double, double> exy, int /*node*/,
                     std::vector<std::pair<int, double>>& out) {
    for (int v = 0; v < n; ++v) {
      double dx = g.xy[v].first - exy.first, dy = g.xy[v].second - exy.second;
      if (std::hypot(dx, dy) > connect_radius) continue;
      if (!d.segment_inside(e, g.pts[v])) continue;
      out.emplace_back(v, edge_weight(d, e, g.pts[v]));
    }
  };
  connect(p, pxy, src, extra[0]);
  connect(q, qxy, dst, extra[1]);
  double direct = kInf;
  if (direct_edge && d.segment_inside(p, q)) direct = edge_weight(d, p, q);
  if (extra[0].empty() && !std::isfinite(direct))
    throw MeshError("distance_upper_mesh: cannot connect start point; refine the resolution");
  if (extra[1].empty() && !std::isfinite(direct))
    throw MeshError("distance_upper_mesh: cannot connect end point; refine the resolution");

  std::vector<double> distv(n + 2, kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  distv[src] = 0;
  heap.emplace(0.0, src);
  if (std::isfinite(direct)) {
    distv[dst] = direct;
    heap.emplace(direct, dst);
  }
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > distv[u]) continue;
    if (u == dst) return du;
    auto relax = [&](int v, double w) {
      if (du + w < distv[v]) {
        distv[v] = du + w;
        heap.emplace(distv[v], v);
      }
    };
    if (u == src) {
      for (const auto& [v, w] : extra[0]) relax(v, w);
    } else {
      for (const auto& [v, w] : g.adj[u]) relax(v, w);
      // reverse connectors into dst
      for (const auto& [v, w] : extra[1])
        if (v == u) relax(dst, w);
    }
  }
  throw MeshError("distance_upper_mesh: endpoints not connected at this resolution");
}

struct GraphCache {
  std::mutex mu;
  std::map<std::pair<const Domain*, int>, Graph> graphs;
};

GraphCache& cache() {
  static GraphCache c;
  return c;
}

double mesh_dim1(const Domain& d, const CVec& p, const CVec& q, const MeshOptions& opts) {
  RealBox box = d.bounding_box();
  PlanarChart chart{[](double x, double y) { return CVec{Cx(x, y)}; }, box.lo[0], box.hi[0],
                    box.lo[1], box.hi[1]};
  double value = kInf;
  for (int level = 0;; ++level) {
    double h = 1.0 / (opts.points_per_unit * (1 << level));
    const Graph* g = nullptr;
    {
      std::lock_guard<std::mutex> lock(cache().mu);
      auto key = std::make_pair(&d, level);
      auto it = cache().graphs.find(key);
      if (it == cache().graphs.end())
        it = cache().graphs.emplace(key, build_graph(d, chart, h)).first;
      g = &it->second;
    }
    double v = dijkstra(d, *g, p, q, opts.connect_radius_mult * h,
                        {p[0].real(), p[0].imag()}, {q[0].real(), q[0].imag()}, true);
    if (level > 0 && std::abs(v - value) <= opts.refine_rel_change * std::abs(v))
      return std::min(v, value);
    value = std::min(v, value);
    if (level >= opts.max_refines) return value;
  }
}

double mesh_slice(const Domain& d, const CVec& p, const CVec& q, const MeshOptions& opts) {
  CVec u = sub(q, p);
  double L = norm(u);
  CVec uh = scale(1.0 / L, u);
  double D = d.diameter();
  PlanarChart chart{[&](double x, double y) { return axpy(p, Cx(x, y), uh); }, -D, D, -D, D};
  double value = kInf;
  for (int level = 0;; ++level) {
    double h = 1.0 / (opts.points_per_unit * (1 << level));
    // slice graphs are pair-specific; no cache
    Graph g = build_graph(d, chart, h);
    double v = dijkstra(d, g, p, q, opts.connect_radius_mult * h, {0.0, 0.0}, {L, 0.0}, true);
    if (level > 0 && std::abs(v - value) <= opts.refine_rel_change * std::abs(v))
      return std::min(v, value);
    value = std::min(v, value);
    if (level >= opts.max_refines) return value;
  }
}

}  // namespace

double distance_upper_mesh(const Domain& domain, const CVec& p, const CVec& q,
                           const MeshOptions& opts) {
  domain.require_inside(p, "distance_upper_mesh");
  domain.require_inside(q, "distance_upper_mesh");
  if (!domain.bounded()) throw std::domain_error("distance_upper_mesh: domain must be bounded");
  if (dist(p, q) == 0.0) return 0.0;

  auto factors = domain.product_factors();
  if (!factors.empty()) {
    double v = 0.0;
    for (const auto& f : factors) {
      CVec pf(p.begin() + f.offset, p.begin() + f.offset + f.domain->dimension());
      CVec qf(q.begin() + f.offset, q.begin() + f.offset + f.domain->dimension());
      if (dist(pf, qf) == 0.0) continue;
      v = std::max(v, distance_upper_mesh(*f.domain, pf, qf, opts));
    }
    return v;
  }
  if (domain.dimension() == 1) return mesh_dim1(domain, p, q, opts);
  return mesh_slice(domain, p, q, opts);
}

}  // namespace kobest
