#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "notchwave/spectral.hpp"
#include "notchwave/types.hpp"

namespace notchwave {

// Block-wise synthesis with overlapping windows: each window solves the
// convex program
//
//   minimize   || c - c0 ||^2          (over the window's free samples)
//   subject to || [prefix; c] ||^2           <= radius^2
//              form_k([prefix; c])           <= e_k      k = 1..K
//
// where form_k is the band interference energy and the prefix is the tail
// of the previously emitted block, held fixed. The objective is a Euclidean
// distance, so the solution is the projection of c0 onto the intersection
// of K+1 closed convex sets; it is computed with Dykstra's alternating
// projections. Each band projection is exact: with no prefix it is a radial
// scaling of the in-band component, with a prefix it solves a secular
// equation in the band's eigenbasis by safeguarded bisection on the
// Lagrange multiplier.

struct SolverConfig {
    double feasibility_tol = 1e-9;  // relative to each constraint cap
    double optimality_tol = 1e-8;   // max-norm change of the iterate per sweep
    int max_iters = 5000;

    void validate() const {
        if (!(feasibility_tol > 0) || !(optimality_tol > 0) || max_iters < 1)
            throw std::invalid_argument("SolverConfig: invalid tolerances");
    }
};

// thrown when a window's fixed prefix alone makes a band cap unreachable
class InfeasibleConstraint : public std::runtime_error {
public:
    explicit InfeasibleConstraint(const std::string& msg)
        : std::runtime_error(msg) {}
};

// Euclidean projection onto { c : ||c||^2 <= radius_sq }.
ComplexSequence project_ball(const ComplexSequence& c, double radius_sq);

// Euclidean projection of the free segment c onto
//   { x : (a + B^H x)^H (a + B^H x) / width <= e_max },  a = Q_fix^H prefix,
// where op spans the full window and B is its restriction to the free
// sample positions. Without a prefix this reduces to scaling the in-band
// component onto the boundary; e_max = 0 removes the in-band component
// exactly (no multiplier search at the degenerate cap).
ComplexSequence project_band_constraint(
    const ComplexSequence& c, const BandOperator& op, double e_max,
    const ComplexSequence* fixed_prefix = nullptr);

struct BandConstraint {
    BandOperator op;
    double e_max = 0.0;  // cap on the band form value c^H R c
};

struct BlockDiagnostics {
    int iterations = 0;
    bool converged = true;
    bool feasible = true;
    double objective = 0.0;  // ||c - c0||^2 over the free samples
    double ball_value = 0.0;
    double ball_limit = 0.0;
    std::vector<double> band_values;
    std::vector<double> band_limits;
};

// Projection of c0_block onto the intersection of the ball and all band
// constraint sets. With a fixed prefix, c0_block and the result cover only
// the free samples; constraints apply to [prefix; c].
ComplexSequence solve_block(const ComplexSequence& c0_block,
                            const std::vector<BandConstraint>& bands,
                            double radius_sq,
                            const ComplexSequence* fixed_prefix,
                            const SolverConfig& cfg,
                            BlockDiagnostics* diag = nullptr);

struct QcqpDesignSpec {
    std::size_t n_total = 0;
    std::size_t block_len = 0;
    std::size_t overlap = 0;  // W, within [0, block_len/2]
    std::vector<StopBand> bands;
    ComplexSequence reference;  // empty: generate internally from seed
    std::uint64_t seed = 0;
    SolverConfig solver;
};

struct WindowDiagnostics {
    std::size_t index = 0;
    std::size_t start = 0;       // first free sample in the output
    std::size_t window_len = 0;  // prefix + free
    std::size_t free_len = 0;
    int iterations = 0;
    bool converged = true;
    double objective = 0.0;
    double ball_slack_rel = 0.0;               // (cap - value)/cap
    std::vector<double> band_slacks_rel;       // per band, relative to cap
};

struct BlockwiseResult {
    ComplexSequence waveform;
    std::vector<WindowDiagnostics> windows;
    bool all_converged = true;
};

// Sequential overlapped-window synthesis. The first window spans block_len
// samples; every later window re-optimizes block_len - overlap fresh samples
// with the previous overlap samples pinned. Windows must run in index order
// (each depends on its predecessor's tail). The optional sink receives each
// emitted block as soon as it is final, so a consumer can stream.
BlockwiseResult design_blockwise(
    const QcqpDesignSpec& spec,
    const std::function<void(std::size_t start, const ComplexSequence& block)>&
        block_sink = nullptr);

}  // namespace notchwave
