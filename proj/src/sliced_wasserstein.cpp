#include "pdsw/sliced_wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>

#include "pdsw/errors.hpp"
#include "summation.hpp"

namespace pdsw {

using std::numbers::pi;

Direction::Direction(double angle) : angle_(angle) {
  if (!(angle >= -pi / 2 && angle <= pi / 2)) {
    throw ArgumentError("direction angle must lie in [-pi/2, pi/2]");
  }
  cos_ = std::cos(angle);
  sin_ = std::sin(angle);
}

std::vector<double> project_and_sort(const PersistenceDiagram& d,
                                     const PersistenceDiagram& augment, Direction theta) {
  std::vector<double> out;
  out.reserve(d.size() + augment.size());
  for (const auto& p : d.points()) out.push_back(p.birth * theta.x() + p.death * theta.y());
  for (const auto& p : augment.points()) {
    const auto q = project_diagonal(p);
    out.push_back(q.birth * theta.x() + q.death * theta.y());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void grid_direction(std::size_t index, std::size_t direction_count, DirectionGrid grid,
                    double& ux, double& uy) noexcept {
  const double step = pi / static_cast<double>(direction_count);
  const double offset = grid == DirectionGrid::midpoint ? 0.5 : 0.0;
  const double a = (static_cast<double>(index) + offset) * step;
  ux = std::sin(a);
  uy = -std::cos(a);
}

SlicedSignature::SlicedSignature(const PersistenceDiagram& d, std::size_t direction_count,
                                 DirectionGrid grid)
    : direction_count_(direction_count), point_count_(d.size()), grid_(grid) {
  if (direction_count == 0) {
    throw ArgumentError("direction count must be at least 1");
  }
  points_.resize(direction_count * point_count_);
  diagonal_.resize(direction_count * point_count_);
  for (std::size_t i = 0; i < direction_count; ++i) {
    double ux, uy;
    grid_direction(i, direction_count, grid, ux, uy);
    double* pts = points_.data() + i * point_count_;
    double* diag = diagonal_.data() + i * point_count_;
    for (std::size_t k = 0; k < point_count_; ++k) {
      const DiagramPoint p = d[k];
      const DiagramPoint q = project_diagonal(p);
      pts[k] = p.birth * ux + p.death * uy;
      diag[k] = q.birth * ux + q.death * uy;
    }
    std::sort(pts, pts + point_count_);
    std::sort(diag, diag + point_count_);
  }
}

namespace {

// Streams the ascending merge of two sorted runs.
class MergeCursor {
 public:
  MergeCursor(const double* a, std::size_t na, const double* b, std::size_t nb)
      : a_(a), a_end_(a + na), b_(b), b_end_(b + nb) {}
  double next() noexcept {
    if (b_ == b_end_ || (a_ != a_end_ && *a_ <= *b_)) return *a_++;
    return *b_++;
  }

 private:
  const double* a_;
  const double* a_end_;
  const double* b_;
  const double* b_end_;
};

}  // namespace

double sw_from_signatures(const SlicedSignature& s1, const SlicedSignature& s2) {
  if (s1.direction_count() != s2.direction_count() || s1.grid() != s2.grid()) {
    throw ArgumentError("signatures were built on different direction grids");
  }
  const std::size_t m = s1.direction_count();
  const std::size_t n1 = s1.point_count();
  const std::size_t n2 = s2.point_count();
  const std::size_t total = n1 + n2;
  const double step = pi / static_cast<double>(m);
  double sw = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    // V1 = Dg1 + diag(Dg2), V2 = Dg2 + diag(Dg1), both ascending.
    MergeCursor v1(s1.points(i), n1, s2.diagonal(i), n2);
    MergeCursor v2(s2.points(i), n2, s1.diagonal(i), n1);
    double l1 = 0.0;
    for (std::size_t k = 0; k < total; ++k) l1 += std::abs(v1.next() - v2.next());
    sw += step * l1;
  }
  return sw / pi;
}

SwResult sw_approx(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   std::size_t direction_count) {
  if (direction_count < 1) throw ArgumentError("direction count must be at least 1");
  const SlicedSignature s1(d1, direction_count, DirectionGrid::left_endpoint);
  const SlicedSignature s2(d2, direction_count, DirectionGrid::left_endpoint);
  return {sw_from_signatures(s1, s2), SwMethod::approx, direction_count};
}

SwResult sw_numeric_oracle(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                           std::size_t direction_count) {
  if (direction_count < 1) throw ArgumentError("direction count must be at least 1");
  const SlicedSignature s1(d1, direction_count, DirectionGrid::midpoint);
  const SlicedSignature s2(d2, direction_count, DirectionGrid::midpoint);
  return {sw_from_signatures(s1, s2), SwMethod::numeric, direction_count};
}

namespace {

struct Vec2 {
  double x, y;
};

// Integral of |cos| from 0 to x.
double abs_cos_primitive(double x) noexcept {
  const double k = std::floor((x + pi / 2) / pi);
  return 2.0 * k + std::sin(x - k * pi);
}

// One augmented diagram: its points and their current sorted order along u(theta).
struct SweepSide {
  std::vector<Vec2> pts;
  std::vector<std::uint32_t> order;  // rank -> point
  std::vector<std::uint32_t> rank;   // point -> rank

  void init_order() {
    const std::size_t n = pts.size();
    order.resize(n);
    std::iota(order.begin(), order.end(), 0u);
    // At -pi/2 the projection is -y and its angular derivative is x.
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (pts[a].y != pts[b].y) return pts[a].y > pts[b].y;
      return pts[a].x < pts[b].x;
    });
    rank.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = static_cast<std::uint32_t>(r);
  }
};

struct Event {
  double angle;
  std::uint32_t a;  // top bit: side
  std::uint32_t b;
};

constexpr std::uint32_t kSideBit = 0x80000000u;

void collect_events(const SweepSide& side, std::uint32_t side_tag, std::vector<Event>& out) {
  const auto n = static_cast<std::uint32_t>(side.pts.size());
  for (std::uint32_t j = 0; j < n; ++j) {
    for (std::uint32_t k = j + 1; k < n; ++k) {
      const double dx = side.pts[j].x - side.pts[k].x;
      const double dy = side.pts[j].y - side.pts[k].y;
      // dy == 0: tie only at the endpoints, settled by the initial order.
      if (dy == 0.0) continue;
      // Normal to (dx, dy) with positive x component, so the angle is in (-pi/2, pi/2).
      const double nx = dy > 0 ? dy : -dy;
      const double ny = dy > 0 ? -dx : dx;
      out.push_back({std::atan2(ny, nx), j | side_tag, k});
    }
  }
}

class Sweep {
 public:
  Sweep(SweepSide a, SweepSide b) : sides_{std::move(a), std::move(b)} {
    const std::size_t n = sides_[0].pts.size();
    start_.assign(n, -pi / 2);
  }

  double run() {
    std::vector<Event> events;
    const std::size_t n = sides_[0].pts.size();
    events.reserve(n * (n - 1));
    collect_events(sides_[0], 0, events);
    collect_events(sides_[1], kSideBit, events);
    std::sort(events.begin(), events.end(), [](const Event& l, const Event& r) {
      if (l.angle != r.angle) return l.angle < r.angle;
      if (l.a != r.a) return l.a < r.a;
      return l.b < r.b;
    });

    std::size_t g = 0;
    while (g < events.size()) {
      std::size_t h = g + 1;
      const std::uint32_t side_tag = events[g].a & kSideBit;
      while (h < events.size() && events[h].angle == events[g].angle &&
             (events[h].a & kSideBit) == side_tag) {
        ++h;
      }
      const int side = side_tag ? 1 : 0;
      if (h - g == 1) {
        apply_swap(side, events[g]);
      } else {
        apply_block(side, events[g].angle, std::span<const Event>(events.data() + g, h - g));
      }
      g = h;
    }
    for (std::size_t r = 0; r < n; ++r) close(r, pi / 2);
    return total_.value() / pi;
  }

 private:
  // Adds the integral of rank r's matched pair from its last change to theta.
  void close(std::size_t r, double theta) {
    const Vec2 a = sides_[0].pts[sides_[0].order[r]];
    const Vec2 b = sides_[1].pts[sides_[1].order[r]];
    const double vx = a.x - b.x;
    const double vy = a.y - b.y;
    if (vx != 0.0 || vy != 0.0) {
      // <v, u(t)> = |v| cos(t - phi)
      const double phi = std::atan2(vy, vx);
      const double len = std::hypot(vx, vy);
      total_.add(len * (abs_cos_primitive(theta - phi) - abs_cos_primitive(start_[r] - phi)));
    }
    start_[r] = theta;
  }

  void apply_swap(int side, const Event& e) {
    SweepSide& s = sides_[side];
    const std::uint32_t p = e.a & ~kSideBit;
    const std::uint32_t q = e.b;
    std::uint32_t rp = s.rank[p];
    std::uint32_t rq = s.rank[q];
    if (rp > rq) std::swap(rp, rq);
    if (rq - rp != 1) {
      throw DegeneracyError(
          "non-adjacent swap in angular sweep (near-collinear points); perturb the diagrams "
          "into general position");
    }
    close(rp, e.angle);
    close(rq, e.angle);
    std::swap(s.order[rp], s.order[rq]);
    s.rank[s.order[rp]] = rp;
    s.rank[s.order[rq]] = rq;
  }

  // Several pairs swap at the same angle: the points involved split into
  // collinear blocks, each contiguous in the current order. Right after the
  // angle a block is ordered by the angular derivative of the projection.
  void apply_block(int side, double theta, std::span<const Event> group) {
    SweepSide& s = sides_[side];
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    std::vector<std::uint32_t> members;
    std::vector<std::uint32_t> parent;
    auto id_of = [&](std::uint32_t p) {
      auto [it, inserted] = local.try_emplace(p, static_cast<std::uint32_t>(members.size()));
      if (inserted) {
        members.push_back(p);
        parent.push_back(it->second);
      }
      return it->second;
    };
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (const Event& e : group) {
      const std::uint32_t u = find(id_of(e.a & ~kSideBit));
      const std::uint32_t v = find(id_of(e.b));
      if (u != v) parent[std::max(u, v)] = std::min(u, v);
    }
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> blocks;
    for (std::uint32_t i = 0; i < members.size(); ++i) blocks[find(i)].push_back(s.rank[members[i]]);

    const double dx = -std::sin(theta);
    const double dy = std::cos(theta);
    for (auto& [root, ranks] : blocks) {
      std::sort(ranks.begin(), ranks.end());
      if (ranks.back() - ranks.front() + 1 != ranks.size()) {
        throw DegeneracyError(
            "coincident critical angles with non-contiguous projections; perturb the diagrams "
            "into general position");
      }
      for (const std::uint32_t r : ranks) close(r, theta);
      std::vector<std::uint32_t> pts;
      pts.reserve(ranks.size());
      for (const std::uint32_t r : ranks) pts.push_back(s.order[r]);
      std::stable_sort(pts.begin(), pts.end(), [&](std::uint32_t l, std::uint32_t r) {
        return s.pts[l].x * dx + s.pts[l].y * dy < s.pts[r].x * dx + s.pts[r].y * dy;
      });
      for (std::size_t k = 0; k < ranks.size(); ++k) {
        s.order[ranks[k]] = pts[k];
        s.rank[pts[k]] = ranks[k];
      }
    }
  }

  SweepSide sides_[2];
  std::vector<double> start_;
  detail::CompensatedSum total_;
};

SweepSide augmented_side(const PersistenceDiagram& own, const PersistenceDiagram& other) {
  SweepSide side;
  side.pts.reserve(own.size() + other.size());
  for (const auto& p : own.points()) side.pts.push_back({p.birth, p.death});
  for (const auto& p : other.points()) {
    const auto q = project_diagonal(p);
    side.pts.push_back({q.birth, q.death});
  }
  side.init_order();
  return side;
}

}  // namespace

SwResult sw_exact(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  // Canonical argument order makes the result bit-symmetric.
  const bool flip = std::lexicographical_compare(d2.points().begin(), d2.points().end(),
                                                 d1.points().begin(), d1.points().end());
  const PersistenceDiagram& a = flip ? d2 : d1;
  const PersistenceDiagram& b = flip ? d1 : d2;
  if (a.size() + b.size() == 0) return {0.0, SwMethod::exact, 0};
  if (a.size() + b.size() >= kSideBit) throw ArgumentError("diagrams too large for exact sweep");
  Sweep sweep(augmented_side(a, b), augmented_side(b, a));
  return {sweep.run(), SwMethod::exact, 0};
}

}  // namespace pdsw
