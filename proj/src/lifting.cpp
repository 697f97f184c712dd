#include "newtongraph/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "newtongraph/error.hpp"

namespace newtongraph {

namespace {

constexpr int kMaxHalvings = 40;

struct Corrected {
  bool ok = false;
  Complex z;
};

// Newton on N(z) - w D(z) = 0.
// Near a fold the iteration stalls at rounding level above the strict
// threshold, so a small final step is also accepted.
Corrected correct(const NewtonMap& f, Complex w, Complex z) {
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 12; ++it) {
    Complex n, dn, m, dm;
    f.numerator().eval_with_derivative(z, n, dn);
    f.denominator().eval_with_derivative(z, m, dm);
    const Complex dF = dn - w * dm;
    if (dF == Complex{}) return {false, z};
    const Complex step = (n - w * m) / dF;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return {false, z};
    last = std::abs(step);
    if (last <= 1e-14 * std::max(1.0, std::abs(z))) return {true, z};
  }
  return {last <= 1e-9 * std::max(1.0, std::abs(z)), z};
}

Complex predict(const NewtonMap& f, Complex w0, Complex w1, Complex z) {
  Complex n, dn, m, dm;
  f.numerator().eval_with_derivative(z, n, dn);
  f.denominator().eval_with_derivative(z, m, dm);
  const Complex dF = dn - w0 * dm;
  if (dF == Complex{}) return z;
  return z + (w1 - w0) * m / dF;
}

bool acceptable(Complex from, Complex predicted, const Corrected& c, double limit) {
  if (!c.ok) return false;
  const double tiny = 1e-12 * std::max(1.0, std::abs(from));
  if (std::abs(c.z - predicted) > 0.25 * std::abs(predicted - from) + tiny) return false;
  return std::abs(c.z - from) <= limit;
}

struct BranchTracker {
  const NewtonMap& f;
  const std::function<double(Complex)>& max_step;
  std::vector<Complex>& out;

  void advance(Complex wa, Complex wb, Complex& z, int depth) {
    const Complex zp = predict(f, wa, wb, z);
    const Corrected c = correct(f, wb, zp);
    const double limit = max_step ? max_step(z) : std::numeric_limits<double>::infinity();
    if (acceptable(z, zp, c, limit)) {
      z = c.z;
      out.push_back(z);
      return;
    }
    if (depth >= kMaxHalvings)
      throw Error(ErrorCode::BranchJump, "continuation step underflow near (" + std::to_string(z.real()) + ", " +
                                             std::to_string(z.imag()) + ")");
    const Complex wm = 0.5 * (wa + wb);
    advance(wa, wm, z, depth + 1);
    advance(wm, wb, z, depth + 1);
  }
};

// All d branches move together; each must stay well inside its own
// separation disk, which rules out jumping onto a neighbour.
struct FiberTracker {
  const NewtonMap& f;
  std::vector<std::vector<Complex>>& out;

  void advance(Complex wa, Complex wb, std::vector<Complex>& zs, int depth) {
    const std::size_t n = zs.size();
    std::vector<Complex> next(n);
    bool ok = true;
    std::size_t failed = 0;
    for (std::size_t b = 0; b < n && ok; ++b) {
      failed = b;
      double sep = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < n; ++c)
        if (c != b) sep = std::min(sep, std::abs(zs[b] - zs[c]));
      const Complex zp = predict(f, wa, wb, zs[b]);
      const Corrected cor = correct(f, wb, zp);
      ok = acceptable(zs[b], zp, cor, 0.25 * sep);
      next[b] = cor.z;
    }
    if (ok) {
      zs = next;
      for (std::size_t b = 0; b < n; ++b) out[b].push_back(zs[b]);
      return;
    }
    if (depth >= kMaxHalvings)
      throw Error(ErrorCode::BranchJump, "fiber continuation step underflow at w = (" + std::to_string(wa.real()) +
                                             ", " + std::to_string(wa.imag()) + "), branch (" +
                                             std::to_string(zs[failed].real()) + ", " +
                                             std::to_string(zs[failed].imag()) + ")");
    const Complex wm = 0.5 * (wa + wb);
    advance(wa, wm, zs, depth + 1);
    advance(wm, wb, zs, depth + 1);
  }
};

std::vector<std::vector<Complex>> track_fiber(const NewtonMap& f, const std::vector<Complex>& path,
                                              std::vector<Complex> zs) {
  std::vector<std::vector<Complex>> out(zs.size());
  for (std::size_t b = 0; b < zs.size(); ++b) out[b].push_back(zs[b]);
  FiberTracker t{f, out};
  for (std::size_t i = 1; i < path.size(); ++i) t.advance(path[i - 1], path[i], zs, 0);
  return out;
}

int snap(const Fiber& fiber, Complex z, const char* which) {
  double best = std::numeric_limits<double>::infinity(), second = best;
  int idx = -1;
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    const double d = chordal_distance(fiber[i].point, z);
    if (d < best) {
      second = best;
      best = d;
      idx = static_cast<int>(i);
    } else if (d < second) {
      second = d;
    }
  }
  if (idx < 0 || second < 3.0 * best)
    throw Error(ErrorCode::EndpointUnmatched, std::string("ambiguous ") + which + " endpoint near (" +
                                                  std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  return idx;
}

}  // namespace

Fiber lift_point(const NewtonMap& f, const SpherePoint& w) {
  if (w.is_infinity()) {
    Fiber out = f.poles;
    out.push_back({SpherePoint::infinity(), 1});
    return out;
  }
  return roots_of(f.numerator() - w.value() * f.denominator(), f.tol.root_tol);
}

std::vector<Complex> continue_branch(const NewtonMap& f, const std::vector<Complex>& path, Complex start,
                                     const std::function<double(Complex)>& max_step,
                                     std::vector<std::size_t>* lifted_index) {
  std::vector<Complex> out{start};
  if (lifted_index) lifted_index->assign(1, 0);
  if (path.empty()) return out;
  const Corrected c0 = correct(f, path[0], start);
  if (!c0.ok || std::abs(c0.z - start) > 1e-6 * std::max(1.0, std::abs(start)))
    throw Error(ErrorCode::InvalidArgument, "start is not a preimage of the path origin");
  out[0] = c0.z;
  BranchTracker t{f, max_step, out};
  Complex z = c0.z;
  for (std::size_t i = 1; i < path.size(); ++i) {
    t.advance(path[i - 1], path[i], z, 0);
    if (lifted_index) lifted_index->push_back(out.size() - 1);
  }
  return out;
}

std::vector<EdgeLift> lift_edge_all(const NewtonMap& f, const Polyline& edge, const Fiber& tail_fiber,
                                    const Fiber& head_fiber) {
  const auto& pts = edge.points;
  if (pts.size() < 3) throw Error(ErrorCode::InvalidArgument, "edge needs an interior sample to be lifted");
  std::vector<Complex> interior;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (pts[i].is_infinity()) throw Error(ErrorCode::InvalidArgument, "infinity inside an edge");
    interior.push_back(pts[i].value());
  }
  const std::size_t mid = interior.size() / 2;
  const Fiber start = lift_point(f, SpherePoint(interior[mid]));
  std::vector<Complex> zs;
  for (const auto& r : start) {
    if (r.multiplicity != 1) throw Error(ErrorCode::BranchJump, "edge interior meets a critical value");
    zs.push_back(r.point.value());
  }

  const std::vector<Complex> fwd_path(interior.begin() + static_cast<std::ptrdiff_t>(mid), interior.end());
  std::vector<Complex> back_path(interior.begin(), interior.begin() + static_cast<std::ptrdiff_t>(mid) + 1);
  std::reverse(back_path.begin(), back_path.end());
  const auto fwd = track_fiber(f, fwd_path, zs);
  const auto back = track_fiber(f, back_path, zs);

  std::vector<EdgeLift> lifts;
  std::vector<int> tail_count(tail_fiber.size(), 0), head_count(head_fiber.size(), 0);
  for (std::size_t b = 0; b < zs.size(); ++b) {
    EdgeLift lift;
    lift.line.owner = edge.owner;
    lift.tail = snap(tail_fiber, back[b].back(), "tail");
    lift.head = snap(head_fiber, fwd[b].back(), "head");
    ++tail_count[lift.tail];
    ++head_count[lift.head];
    auto& out = lift.line.points;
    out.push_back(tail_fiber[lift.tail].point);
    for (auto it = back[b].rbegin(); it != back[b].rend(); ++it) out.emplace_back(*it);
    for (std::size_t i = 1; i < fwd[b].size(); ++i) out.emplace_back(fwd[b][i]);
    out.push_back(head_fiber[lift.head].point);
    lifts.push_back(std::move(lift));
  }
  for (std::size_t i = 0; i < tail_fiber.size(); ++i)
    if (tail_count[i] != tail_fiber[i].multiplicity)
      throw Error(ErrorCode::EndpointUnmatched, "lift count at a tail preimage differs from its local degree");
  for (std::size_t i = 0; i < head_fiber.size(); ++i)
    if (head_count[i] != head_fiber[i].multiplicity)
      throw Error(ErrorCode::EndpointUnmatched, "lift count at a head preimage differs from its local degree");
  return lifts;
}

Polyline lift_edge(const NewtonMap& f, const Polyline& edge, const SpherePoint& start) {
  if (edge.points.size() < 2) throw Error(ErrorCode::InvalidArgument, "edge has fewer than two points");
  const Fiber tail = lift_point(f, edge.points.front());
  const Fiber head = lift_point(f, edge.points.back());
  int idx = -1;
  for (std::size_t i = 0; i < tail.size(); ++i)
    if (near(tail[i].point, start, f.tol.match_tol)) idx = static_cast<int>(i);
  if (idx < 0) throw Error(ErrorCode::InvalidArgument, "start is not a preimage of the edge tail");
  for (auto& lift : lift_edge_all(f, edge, tail, head))
    if (lift.tail == idx) return std::move(lift.line);
  throw Error(ErrorCode::EndpointUnmatched, "no lift starts at the given point");
}

}  // namespace newtongraph
