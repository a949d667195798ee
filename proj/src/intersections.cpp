#include "cdflow/intersections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "cdflow/errors.hpp"

namespace cdflow {

namespace {

struct Box {
  double x0, y0, x1, y1;
};

Box box_of(Vec2 a, Vec2 b, double pad) {
  return {std::min(a.x, b.x) - pad, std::min(a.y, b.y) - pad, std::max(a.x, b.x) + pad,
          std::max(a.y, b.y) + pad};
}

bool overlap(const Box& a, const Box& b) {
  return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1;
}

Vec2 closest_on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return a + t * d;
}

/// Contact point of segments ab and cd when they cross or come within eps.
std::optional<Vec2> contact(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double denom = cross(r, s);
  if (denom != 0.0) {
    const double t = cross(c - a, s) / denom;
    const double u = cross(c - a, r) / denom;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return a + t * r;
  }
  // Closest approach is attained at an endpoint when there is no proper crossing.
  double best = std::numeric_limits<double>::infinity();
  Vec2 where{};
  auto consider = [&](Vec2 p, Vec2 q) {
    const double dist = norm(p - q);
    if (dist < best) {
      best = dist;
      where = 0.5 * (p + q);
    }
  };
  consider(a, closest_on_segment(a, c, d));
  consider(b, closest_on_segment(b, c, d));
  consider(c, closest_on_segment(c, a, b));
  consider(d, closest_on_segment(d, a, b));
  if (best <= eps) return where;
  return std::nullopt;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

/// Number of cyclically consecutive runs in a set of segment indices.
int count_runs(std::vector<std::size_t> idx, std::size_t n) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.size() == n) return 1;
  int runs = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::size_t prev = idx[(i + idx.size() - 1) % idx.size()];
    if ((prev + 1) % n != idx[i]) ++runs;
  }
  return runs;
}

}  // namespace

double default_geometry_eps(const SampledCurve& curve) { return 1e-6 * curve_length(curve); }

CrossingSet find_crossings(const SampledCurve& curve, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("geometry epsilon must be positive");
  const std::size_t n = curve.size();
  CrossingSet set;
  set.eps = eps;

  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) boxes[i] = box_of(curve[i], curve[i + 1], eps);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (!overlap(boxes[i], boxes[j])) continue;
      if (auto p = contact(curve[i], curve[i + 1], curve[j], curve[j + 1], eps)) {
        set.crossings.push_back({*p, i, j, 0});
      }
    }
  }

  const std::size_t k = set.crossings.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (norm(set.crossings[a].point - set.crossings[b].point) <= eps) {
        parent[find_root(parent, a)] = find_root(parent, b);
      }
    }
  }
  std::vector<std::size_t> label(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t root = find_root(parent, a);
    if (label[root] == k) {
      label[root] = set.clusters.size();
      set.clusters.emplace_back();
    }
    set.crossings[a].cluster = label[root];
    set.clusters[label[root]].push_back(a);
  }

  for (const auto& members : set.clusters) {
    std::vector<std::size_t> segments;
    for (std::size_t a : members) {
      segments.push_back(set.crossings[a].segment_a);
      segments.push_back(set.crossings[a].segment_b);
    }
    const int b = std::max(2, count_runs(std::move(segments), n));
    set.branches.push_back(b);
    set.multiplicity = std::max(set.multiplicity, b);
  }
  return set;
}

CrossingSet find_crossings(const SampledCurve& curve) {
  return find_crossings(curve, default_geometry_eps(curve));
}

bool is_embedded(const SampledCurve& curve, double eps) { return find_crossings(curve, eps).crossings.empty(); }

bool is_embedded(const SampledCurve& curve) { return is_embedded(curve, default_geometry_eps(curve)); }

nlohmann::json to_json(const CrossingSet& set) {
  auto crossings = nlohmann::json::array();
  for (const auto& c : set.crossings) {
    crossings.push_back({{"point", {c.point.x, c.point.y}},
                         {"segments", {c.segment_a, c.segment_b}},
                         {"cluster", c.cluster}});
  }
  auto clusters = nlohmann::json::array();
  for (std::size_t i = 0; i < set.clusters.size(); ++i) {
    clusters.push_back({{"crossings", set.clusters[i]}, {"branches", set.branches[i]}});
  }
  return {{"crossings", crossings},
          {"clusters", clusters},
          {"multiplicity", set.multiplicity},
          {"eps", set.eps},
          {"grazing_contacts_count", true}};
}

}  // namespace cdflow
