#pragma once
// Planar transition-graph model of a Miura-ori string. A design is a chain of transition
// vectors whose lengths stay fixed for every main-crease angle theta; absolute angles
// accumulate from the first vector plus the signed turn at each zigzag crease.
//
// The turn at zigzag crease i is driven by the entry flag of the vector before it
// (EF_{i-1}). shape_angle takes that same flag, so
// shape_angle(transition_delta(beta, p*pi, f), p, f) == beta.

#include "origami/geometry.hpp"

#include <cstdint>
#include <vector>

namespace origami {

/// Crease kind of the main crease running along a transition vector.
enum class EntryFlag : std::uint8_t { Mountain = 0, Valley = 1 };

constexpr EntryFlag flip(EntryFlag f) noexcept {
    return f == EntryFlag::Mountain ? EntryFlag::Valley : EntryFlag::Mountain;
}
constexpr int flag_value(EntryFlag f) noexcept { return static_cast<int>(f); }

struct TransitionVector {
    double length = 0.0;          // mm
    double absolute_angle = 0.0;  // rad
    EntryFlag entry_flag = EntryFlag::Mountain;

    Vec2 displacement() const { return length * Vec2(std::cos(absolute_angle), std::sin(absolute_angle)); }
};

/// The design genome: lengths {l_0..l_n}, shape angles {beta_1..beta_n}, EF_0 and T_s.
struct TransitionGraphDesign {
    Vec2 start = Vec2::Zero();
    std::vector<double> lengths;
    std::vector<double> shape_angles;
    EntryFlag first_flag = EntryFlag::Mountain;

    std::size_t vector_count() const noexcept { return lengths.size(); }
    EntryFlag flag(std::size_t i) const noexcept {
        return (i % 2 == 0) ? first_flag : flip(first_flag);
    }
    double total_length() const noexcept;

    /// Throws DomainError / DegenerateAngleError when the invariants do not hold.
    void validate() const;
};

struct PlanarState {
    double theta = 0.0;
    std::vector<TransitionVector> vectors;
    Vec2 start = Vec2::Zero();
    Vec2 endpoint = Vec2::Zero();

    /// Polyline vertices T_s, T_s+v_0, ..., T_e.
    std::vector<Vec2> polyline() const;
};

/// Angle of the first transition vector, arccos sqrt(2cos(theta/2) / (1 + cos(theta/2))).
double initial_alpha(double theta);

/// Signed turn at a zigzag crease: 2 arctan(sin(theta/2) tan(beta) (-1)^prev_flag).
double transition_delta(double beta, double theta, EntryFlag prev_flag);

/// Inverse of `transition_delta` for folding ratio p = theta/pi.
double shape_angle(double delta_alpha, double p, EntryFlag prev_flag);

PlanarState fold_state(const TransitionGraphDesign& design, double theta);

/// States at theta = 0, step, 2 step, ..., pi. `step` must divide pi.
std::vector<PlanarState> sample_trajectory(const TransitionGraphDesign& design,
                                           double step = deg_to_rad(4.0));

/// Non-adjacent segments that meet, or adjacent ones that overlap past their joint.
bool polyline_self_intersects(const PlanarState& state, double tol = 1e-9);

}  // namespace origami
