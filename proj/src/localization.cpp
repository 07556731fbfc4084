#include "wsnloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wsnloc {

LaterationProblem::LaterationProblem(std::vector<RangedAnchor> anchors) : anchors_(std::move(anchors)) {
    if (anchors_.size() < kMinAnchors || anchors_.size() > kMaxAnchors) {
        throw std::invalid_argument("LaterationProblem: needs 4 to 6 anchors, got " +
                                    std::to_string(anchors_.size()));
    }
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
        const auto& a = anchors_[i];
        if (!(a.distance_m > 0.0) || !std::isfinite(a.distance_m)) {
            throw std::invalid_argument("LaterationProblem: distances must be finite and > 0");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (anchors_[j].position == a.position) {
                throw std::invalid_argument("LaterationProblem: duplicate anchor position");
            }
        }
    }
}

Position LaterationProblem::centroid() const {
    Position c;
    for (const auto& a : anchors_) {
        c.x += a.position.x;
        c.y += a.position.y;
    }
    const auto n = static_cast<double>(anchors_.size());
    return {c.x / n, c.y / n};
}

bool LaterationProblem::collinear() const {
    // Smallest eigenvalue of the anchor scatter matrix relative to the largest.
    const Position c = centroid();
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& a : anchors_) {
        const double dx = a.position.x - c.x;
        const double dy = a.position.y - c.y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const double mean = (sxx + syy) / 2.0;
    const double spread = std::hypot((sxx - syy) / 2.0, sxy);
    const double largest = mean + spread;
    const double smallest = mean - spread;
    return largest <= 0.0 || smallest <= 1e-10 * largest;
}

std::vector<double> lateration_residuals(const Position& candidate, const LaterationProblem& problem) {
    std::vector<double> r;
    r.reserve(problem.anchors().size());
    for (const auto& a : problem.anchors()) r.push_back(a.distance_m - distance(a.position, candidate));
    return r;
}

double lateration_objective(const Position& candidate, const LaterationProblem& problem) {
    double s = 0.0;
    for (const auto& a : problem.anchors()) {
        const double f = a.distance_m - distance(a.position, candidate);
        s += f * f;
    }
    return s;
}

namespace {

LaterationSolution descend(const LaterationProblem& problem, const Plane& plane, Position start,
                           const LevenbergMarquardtOptions& options) {
    LaterationSolution out;
    Position p = plane.clamp(start);
    double cost = lateration_objective(p, problem);
    double lambda = options.initial_damping;

    for (int it = 0; it < options.max_iterations; ++it) {
        out.iterations = it + 1;

        // Normal equations J^T J and gradient J^T f for the 2-D unknown.
        double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
        for (const auto& anchor : problem.anchors()) {
            const double dx = p.x - anchor.position.x;
            const double dy = p.y - anchor.position.y;
            const double range = std::hypot(dx, dy);
            if (range == 0.0) continue;  // derivative undefined on the anchor itself
            const double jx = -dx / range;
            const double jy = -dy / range;
            const double f = anchor.distance_m - range;
            a11 += jx * jx;
            a12 += jx * jy;
            a22 += jy * jy;
            g1 += jx * f;
            g2 += jy * f;
        }

        // Coordinates on a plane edge whose descent direction points outward
        // stay fixed; the rest is solved on its own.
        const bool fix_x = (p.x <= 0.0 && g1 > 0.0) || (p.x >= plane.width && g1 < 0.0);
        const bool fix_y = (p.y <= 0.0 && g2 > 0.0) || (p.y >= plane.height && g2 < 0.0);
        if (fix_x && fix_y) {
            out.converged = true;
            break;
        }

        bool accepted = false;
        while (!accepted && lambda < 1e12) {
            const double m11 = a11 + lambda;
            const double m22 = a22 + lambda;
            double sx = 0.0, sy = 0.0;
            if (fix_x) {
                sy = -g2 / m22;
            } else if (fix_y) {
                sx = -g1 / m11;
            } else {
                const double det = m11 * m22 - a12 * a12;
                if (det <= 0.0 || !std::isfinite(det)) {
                    lambda *= options.damping_factor;
                    continue;
                }
                sx = (-g1 * m22 + g2 * a12) / det;
                sy = (-g2 * m11 + g1 * a12) / det;
            }
            const Position trial = plane.clamp({p.x + sx, p.y + sy});
            const double trial_cost = lateration_objective(trial, problem);
            if (trial_cost < cost) {
                const double step = distance(trial, p);
                p = trial;
                cost = trial_cost;
                lambda /= options.damping_factor;
                accepted = true;
                if (step < options.step_tolerance_m) {
                    out.converged = true;
                }
            } else {
                lambda *= options.damping_factor;
            }
        }
        // No descent direction left at any damping: p is a (constrained) minimum.
        if (!accepted) out.converged = true;
        if (out.converged) break;
    }

    out.position = p;
    out.objective = cost;
    return out;
}

// Reflection of p across the anchors' principal axis.
Position mirror_across_axis(const Position& p, const LaterationProblem& problem) {
    const Position c = problem.centroid();
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& a : problem.anchors()) {
        const double dx = a.position.x - c.x;
        const double dy = a.position.y - c.y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const double ux = std::cos(theta), uy = std::sin(theta);
    const double vx = p.x - c.x, vy = p.y - c.y;
    const double along = vx * ux + vy * uy;
    return {c.x + 2.0 * along * ux - vx, c.y + 2.0 * along * uy - vy};
}

}  // namespace

LaterationSolution solve_lateration(const LaterationProblem& problem, const Plane& plane,
                                    const LevenbergMarquardtOptions& options) {
    const Position c = problem.centroid();
    LaterationSolution best = descend(problem, plane, c, options);

    // The objective is not convex; restart from the mirror image of the
    // first answer and from each anchor's range circle on both sides.
    std::vector<Position> starts = {mirror_across_axis(best.position, problem)};
    for (const auto& a : problem.anchors()) {
        const double len = distance(a.position, c);
        if (len == 0.0) continue;
        const double ux = (c.x - a.position.x) / len, uy = (c.y - a.position.y) / len;
        starts.push_back({a.position.x + a.distance_m * ux, a.position.y + a.distance_m * uy});
        starts.push_back({a.position.x - a.distance_m * ux, a.position.y - a.distance_m * uy});
    }
    for (const auto& s : starts) {
        auto candidate = descend(problem, plane, s, options);
        if (candidate.objective < best.objective) best = candidate;
    }

    best.degenerate = problem.collinear();
    return best;
}

Position oracle_lateration(const LaterationProblem& problem, const Plane& plane, double grid_step_m) {
    if (!(grid_step_m > 0.0)) {
        throw std::invalid_argument("oracle_lateration: grid step must be > 0");
    }
    const auto nx = static_cast<long>(std::floor(plane.width / grid_step_m + 1e-9));
    const auto ny = static_cast<long>(std::floor(plane.height / grid_step_m + 1e-9));
    Position best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (long i = 0; i <= nx; ++i) {
        for (long j = 0; j <= ny; ++j) {
            const Position p{static_cast<double>(i) * grid_step_m, static_cast<double>(j) * grid_step_m};
            const double c = lateration_objective(p, problem);
            if (c < best_cost) {
                best_cost = c;
                best = p;
            }
        }
    }
    return best;
}

LocationArea raw_location_area(std::span<const BoxAnchor> anchors, const Plane& plane) {
    LocationArea la = plane.area();
    for (const auto& a : anchors) {
        la.x_min = std::max(la.x_min, a.position.x - a.range_m);
        la.x_max = std::min(la.x_max, a.position.x + a.range_m);
        la.y_min = std::max(la.y_min, a.position.y - a.range_m);
        la.y_max = std::min(la.y_max, a.position.y + a.range_m);
    }
    return la;
}

BoundingBoxResult bounding_box(std::span<const BoxAnchor> anchors, const Plane& plane) {
    if (anchors.empty()) {
        throw std::invalid_argument("bounding_box: needs at least one anchor");
    }
    std::vector<BoxAnchor> kept(anchors.begin(), anchors.end());
    BoundingBoxResult out;
    out.area = raw_location_area(kept, plane);
    if (out.area.empty()) {
        out.fallback = true;
        // Strongest first, so pop_back() drops the weakest remaining anchor.
        std::stable_sort(kept.begin(), kept.end(), [](const BoxAnchor& l, const BoxAnchor& r) {
            return l.mean_rssi_dbm > r.mean_rssi_dbm;
        });
        while (out.area.empty() && kept.size() > 1) {
            kept.pop_back();
            out.area = raw_location_area(kept, plane);
        }
    }
    out.anchors_used = kept.size();
    out.estimate = out.area.center();
    return out;
}

}  // namespace wsnloc
