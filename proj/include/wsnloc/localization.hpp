#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wsnloc/types.hpp"

namespace wsnloc {

struct RangedAnchor {
    Position position;
    double distance_m = 0.0;
};

/// Multilateration input: 4 to 6 anchors with positive range estimates at
/// pairwise distinct positions. The constructor enforces this and throws
/// std::invalid_argument otherwise.
class LaterationProblem {
public:
    static constexpr std::size_t kMinAnchors = 4;
    static constexpr std::size_t kMaxAnchors = 6;

    explicit LaterationProblem(std::vector<RangedAnchor> anchors);

    std::span<const RangedAnchor> anchors() const { return anchors_; }

    /// Anchor centroid, the solver's starting point.
    Position centroid() const;
    /// True when the anchors lie (numerically) on one line.
    bool collinear() const;

private:
    std::vector<RangedAnchor> anchors_;
};

/// f_i = d_i - |anchor_i - candidate| for each anchor, in problem order.
std::vector<double> lateration_residuals(const Position& candidate, const LaterationProblem& problem);

/// Sum of squared residuals.
double lateration_objective(const Position& candidate, const LaterationProblem& problem);

struct LaterationSolution {
    Position position;
    double objective = 0.0;  // m^2
    int iterations = 0;
    bool converged = false;
    bool degenerate = false;  // collinear anchors
};

struct LevenbergMarquardtOptions {
    double initial_damping = 1e-3;
    double damping_factor = 10.0;
    double step_tolerance_m = 1e-6;
    int max_iterations = 100;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) on the residuals, started at
/// the anchor centroid and kept inside `plane` by projecting every trial
/// step. Always returns the best iterate; check `converged`/`degenerate`.
LaterationSolution solve_lateration(const LaterationProblem& problem, const Plane& plane,
                                    const LevenbergMarquardtOptions& options = {});

/// Exhaustive grid search for the objective minimum over the plane. Ties go
/// to the smallest x, then the smallest y.
Position oracle_lateration(const LaterationProblem& problem, const Plane& plane, double grid_step_m);

struct BoxAnchor {
    Position position;
    double range_m = 0.0;
    double mean_rssi_dbm = 0.0;  // fallback drop order, weakest first
};

struct BoundingBoxResult {
    LocationArea area;
    Position estimate;
    std::size_t anchors_used = 0;
    bool fallback = false;  // raw intersection was empty
};

/// Intersection of the plane with every anchor's square of half-width
/// range. May be empty.
LocationArea raw_location_area(std::span<const BoxAnchor> anchors, const Plane& plane);

/// Bounding-Box estimate: the LA centre. An empty intersection is resolved
/// by dropping the weakest-RSSI anchors one at a time. Throws
/// std::invalid_argument for an empty anchor list.
BoundingBoxResult bounding_box(std::span<const BoxAnchor> anchors, const Plane& plane);

}  // namespace wsnloc
