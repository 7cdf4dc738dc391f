#include "origami/transition_graph.hpp"

#include "origami/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace origami {

namespace {

constexpr double kHalfPi = kPi / 2.0;

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kPi))
        throw DomainError("fold angle theta=" + std::to_string(theta) + " outside [0, pi]");
}

}  // namespace

double TransitionGraphDesign::total_length() const noexcept {
    return std::accumulate(lengths.begin(), lengths.end(), 0.0);
}

void TransitionGraphDesign::validate() const {
    if (lengths.empty()) throw DomainError("design needs at least one transition vector");
    if (shape_angles.size() + 1 != lengths.size())
        throw DomainError("design needs exactly one shape angle per zigzag crease (lengths - 1)");
    for (std::size_t i = 0; i < lengths.size(); ++i)
        if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i]))
            throw DomainError("length l_" + std::to_string(i) + " must be positive");
    for (std::size_t i = 0; i < shape_angles.size(); ++i) {
        const double b = shape_angles[i];
        if (!(b > 0.0 && b < kPi))
            throw DomainError("shape angle beta_" + std::to_string(i + 1) + " outside (0, pi)");
        if (b == kHalfPi)
            throw DegenerateAngleError("shape angle beta_" + std::to_string(i + 1) + " equals pi/2");
    }
}

std::vector<Vec2> PlanarState::polyline() const {
    std::vector<Vec2> pts;
    pts.reserve(vectors.size() + 1);
    pts.push_back(start);
    for (const auto& v : vectors) pts.push_back(pts.back() + v.displacement());
    return pts;
}

double initial_alpha(double theta) {
    check_theta(theta);
    if (theta == kPi) return kHalfPi;
    const double c = std::max(0.0, std::cos(theta / 2.0));
    const double r = std::sqrt(2.0 * c / (1.0 + c));
    return std::acos(std::min(1.0, r));
}

double transition_delta(double beta, double theta, EntryFlag prev_flag) {
    check_theta(theta);
    if (!(beta > 0.0 && beta < kPi)) throw DomainError("shape angle outside (0, pi)");
    if (beta == kHalfPi) throw DegenerateAngleError("shape angle pi/2 has undefined tangent");
    const double sign = prev_flag == EntryFlag::Mountain ? 1.0 : -1.0;
    return 2.0 * std::atan(std::sin(theta / 2.0) * std::tan(beta) * sign);
}

double shape_angle(double delta_alpha, double p, EntryFlag prev_flag) {
    if (!(std::abs(delta_alpha) < kPi)) throw DomainError("|delta alpha| must be below pi");
    if (!(p <= 1.0) || p < 0.0) throw DomainError("folding ratio outside (0, 1]");
    if (p == 0.0) throw DegenerateAngleError("folding ratio 0 has no defined shape angle");
    const double base = std::atan(std::tan(std::abs(delta_alpha) / 2.0) / std::sin(p * kPi / 2.0));
    const bool mountain = prev_flag == EntryFlag::Mountain;
    const bool acute = (delta_alpha >= 0.0 && mountain) || (delta_alpha < 0.0 && !mountain);
    return acute ? base : kPi - base;
}

PlanarState fold_state(const TransitionGraphDesign& design, double theta) {
    check_theta(theta);
    design.validate();
    PlanarState state;
    state.theta = theta;
    state.start = design.start;
    state.vectors.reserve(design.vector_count());

    double alpha = initial_alpha(theta);
    Vec2 end = design.start;
    for (std::size_t i = 0; i < design.vector_count(); ++i) {
        if (i > 0) alpha += transition_delta(design.shape_angles[i - 1], theta, design.flag(i - 1));
        TransitionVector v{design.lengths[i], alpha, design.flag(i)};
        end += v.displacement();
        state.vectors.push_back(v);
    }
    state.endpoint = end;
    return state;
}

std::vector<PlanarState> sample_trajectory(const TransitionGraphDesign& design, double step) {
    if (!(step > 0.0)) throw DomainError("trajectory step must be positive");
    const double count = kPi / step;
    const double rounded = std::round(count);
    if (rounded < 1.0 || std::abs(count - rounded) > 1e-9 * std::max(1.0, count))
        throw DomainError("trajectory step does not divide [0, pi] evenly");
    const auto intervals = static_cast<std::size_t>(rounded);
    std::vector<PlanarState> states;
    states.reserve(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double theta = k == intervals ? kPi : kPi * static_cast<double>(k) / rounded;
        states.push_back(fold_state(design, theta));
    }
    return states;
}

bool polyline_self_intersects(const PlanarState& state, double tol) {
    const auto pts = state.polyline();
    const std::size_t segs = pts.size() - 1;
    for (std::size_t i = 0; i < segs; ++i) {
        for (std::size_t j = i + 1; j < segs; ++j) {
            if (j == i + 1) {
                // Adjacent segments share pts[j]; they overlap if the far end of either one
                // lies on the other segment.
                const bool overlap = point_segment_distance(pts[i], pts[j], pts[j + 1]) <= tol ||
                                     point_segment_distance(pts[j + 1], pts[i], pts[j]) <= tol;
                if (overlap) return true;
                // Doubling back: directions opposite and collinear.
                const Vec2 a = pts[i] - pts[j];
                const Vec2 b = pts[j + 1] - pts[j];
                if (std::abs(cross2(a.normalized(), b.normalized())) <= tol && a.dot(b) > 0.0) return true;
                continue;
            }
            if (segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1], tol)) return true;
        }
    }
    return false;
}

}  // namespace origami
