#include "notchwave/design_qcqp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

#include "notchwave/design_projection.hpp"
#include "notchwave/fft.hpp"

namespace notchwave {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Per-band working data for one window geometry (window length n, first
// fixed samples of count w_fix). For w_fix > 0 the eigendecomposition of
// M = B^H B = I - Qfix^H Qfix drives the multiplier search; M is assembled
// from closed-form geometric sums, never from dense steering columns.
struct BandGeometry {
    std::vector<std::size_t> bins;
    double width = 0.0;
    std::size_t n = 0;
    std::size_t w_fix = 0;
    MatrixXcd eigvec;  // V
    VectorXd eigval;   // mu in [0, 1]

    BandGeometry(const StopBand& band, std::size_t n_, std::size_t w_fix_)
        : bins(band_grid_indices(band, FrequencyGrid(n_))),
          width(band.width()),
          n(n_),
          w_fix(w_fix_) {
        if (w_fix == 0) return;
        const auto S = static_cast<Eigen::Index>(bins.size());
        MatrixXcd m(S, S);
        const double inv_n = 1.0 / static_cast<double>(n);
        for (Eigen::Index i = 0; i < S; ++i) {
            for (Eigen::Index k = 0; k <= i; ++k) {
                cplx g;
                if (i == k) {
                    g = cplx(static_cast<double>(w_fix) * inv_n, 0.0);
                } else {
                    const double d = static_cast<double>(bins[i]) -
                                     static_cast<double>(bins[k]);
                    const cplx x = std::polar(1.0, kTwoPi * d * inv_n);
                    const cplx xw =
                        std::polar(1.0, kTwoPi * d * static_cast<double>(w_fix) * inv_n);
                    g = (xw - cplx(1.0, 0.0)) / (x - cplx(1.0, 0.0)) * inv_n;
                }
                m(i, k) = (i == k ? cplx(1.0, 0.0) - g : -g);
                m(k, i) = std::conj(m(i, k));
            }
        }
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
        eigvec = es.eigenvectors();
        eigval = es.eigenvalues().cwiseMax(0.0);
    }

    // spectral coefficients of the free segment placed after w_fix zeros
    VectorXcd free_coefficients(const ComplexSequence& z) const {
        ComplexSequence full(n, cplx(0.0, 0.0));
        std::copy(z.begin(), z.end(), full.begin() + static_cast<long>(w_fix));
        ComplexSequence coef = spectrum_analysis(full);
        VectorXcd out(static_cast<Eigen::Index>(bins.size()));
        for (std::size_t i = 0; i < bins.size(); ++i)
            out(static_cast<Eigen::Index>(i)) = coef[bins[i]];
        return out;
    }

    // spectral coefficients of the prefix segment (zero-extended)
    VectorXcd prefix_coefficients(const ComplexSequence& prefix) const {
        ComplexSequence full(n, cplx(0.0, 0.0));
        std::copy(prefix.begin(), prefix.end(), full.begin());
        ComplexSequence coef = spectrum_analysis(full);
        VectorXcd out(static_cast<Eigen::Index>(bins.size()));
        for (std::size_t i = 0; i < bins.size(); ++i)
            out(static_cast<Eigen::Index>(i)) = coef[bins[i]];
        return out;
    }

    // free-sample rows of Q w
    ComplexSequence synthesize_free(const VectorXcd& w) const {
        ComplexSequence spec(n, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < bins.size(); ++i)
            spec[bins[i]] = w(static_cast<Eigen::Index>(i));
        ComplexSequence t = spectrum_synthesis(spec);
        return ComplexSequence(t.begin() + static_cast<long>(w_fix), t.end());
    }
};

double phi(const VectorXd& u2, const VectorXd& mu, double lam) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < u2.size(); ++i) {
        const double d = 1.0 + lam * mu(i);
        s += u2(i) / (d * d);
    }
    return s;
}

// Projection of z onto { x : ||a + B^H x||^2 <= cap } for one band.
// cap is on the coefficient norm (form value times width).
ComplexSequence project_one_band(const BandGeometry& g, const VectorXcd& a,
                                 const ComplexSequence& z, double cap) {
    VectorXcd w0 = g.free_coefficients(z);
    if (a.size() > 0) w0 += a;
    const double v = w0.squaredNorm();
    if (v <= cap) return z;

    if (g.w_fix == 0) {
        // orthonormal columns: scale the in-band component onto the boundary
        const double s = cap > 0.0 ? std::sqrt(cap / v) : 0.0;
        ComplexSequence corr = g.synthesize_free((1.0 - s) * w0);
        ComplexSequence out = z;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= corr[i];
        return out;
    }

    const VectorXcd u = g.eigvec.adjoint() * w0;
    const VectorXd u2 = u.cwiseAbs2();
    const VectorXd& mu = g.eigval;

    if (cap <= 0.0) {
        // exact null requested: least-squares removal of everything the free
        // samples can reach, feasible only if nothing survives
        const double mu_floor = 1e-12;
        VectorXcd d(u.size());
        double residual = 0.0;
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            if (mu(i) > mu_floor) {
                d(i) = u(i) / mu(i);
            } else {
                d(i) = cplx(0.0, 0.0);
                residual += u2(i);
            }
        }
        if (residual > 1e-16)
            throw InfeasibleConstraint(
                "band cap unreachable: fixed prefix alone exceeds it");
        ComplexSequence corr = g.synthesize_free(g.eigvec * d);
        ComplexSequence out = z;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= corr[i];
        return out;
    }

    double hi = 1.0;
    while (phi(u2, mu, hi) > cap && hi < 1e18) hi *= 8.0;
    if (phi(u2, mu, hi) > cap * (1.0 + 1e-6))
        throw InfeasibleConstraint(
            "band cap unreachable: fixed prefix alone exceeds it");
    double lo = hi > 1.0 ? hi / 8.0 : 0.0;
    if (phi(u2, mu, lo) <= cap) lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (phi(u2, mu, mid) > cap)
            lo = mid;
        else
            hi = mid;
    }
    const double lam = hi;  // feasible side
    VectorXcd w(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) w(i) = u(i) / (1.0 + lam * mu(i));
    ComplexSequence corr = g.synthesize_free(g.eigvec * w);
    ComplexSequence out = z;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= lam * corr[i];
    return out;
}

double band_value(const BandGeometry& g, const VectorXcd& a,
                  const ComplexSequence& x) {
    VectorXcd w = g.free_coefficients(x);
    if (a.size() > 0) w += a;
    return w.squaredNorm();
}

struct ReducedProblem {
    const std::vector<BandGeometry>* geoms = nullptr;
    std::vector<VectorXcd> prefix_coef;  // a_k, empty vectors when no prefix
    std::vector<double> caps;            // on coefficient norms
    double ball_radius_sq = 0.0;
};

ComplexSequence dykstra_solve(const ComplexSequence& z, const ReducedProblem& p,
                              const SolverConfig& cfg, BlockDiagnostics* diag) {
    const std::size_t n_sets = 1 + p.geoms->size();
    ComplexSequence x = z;
    std::vector<ComplexSequence> inc(n_sets, ComplexSequence(z.size(), cplx(0, 0)));

    auto apply_set = [&](std::size_t i, const ComplexSequence& y) {
        if (i == 0) return project_ball(y, p.ball_radius_sq);
        const std::size_t k = i - 1;
        return project_one_band((*p.geoms)[k], p.prefix_coef[k], y, p.caps[k]);
    };
    auto feasible = [&](const ComplexSequence& v) {
        if (energy(v) > p.ball_radius_sq * (1.0 + cfg.feasibility_tol) + 1e-300)
            return false;
        for (std::size_t k = 0; k < p.geoms->size(); ++k) {
            const double val = band_value((*p.geoms)[k], p.prefix_coef[k], v);
            if (val > p.caps[k] * (1.0 + cfg.feasibility_tol) + 1e-300) return false;
        }
        return true;
    };

    int iters = 0;
    bool converged = false;
    ComplexSequence prev(z.size());
    for (; iters < cfg.max_iters; ++iters) {
        prev = x;
        for (std::size_t i = 0; i < n_sets; ++i) {
            ComplexSequence y = x;
            for (std::size_t m = 0; m < y.size(); ++m) y[m] += inc[i][m];
            ComplexSequence xn = apply_set(i, y);
            for (std::size_t m = 0; m < y.size(); ++m) inc[i][m] = y[m] - xn[m];
            x = std::move(xn);
        }
        double delta = 0.0;
        for (std::size_t m = 0; m < x.size(); ++m)
            delta = std::max(delta, std::abs(x[m] - prev[m]));
        if (delta < cfg.optimality_tol) {
            converged = true;
            ++iters;
            break;
        }
    }

    // pull the iterate exactly inside the caps; movement is below the
    // optimality tolerance once Dykstra has settled
    for (int round = 0; round < 200 && !feasible(x); ++round) {
        for (std::size_t k = 0; k < p.geoms->size(); ++k)
            x = project_one_band((*p.geoms)[k], p.prefix_coef[k], x, p.caps[k]);
        if (energy(x) > p.ball_radius_sq) x = project_ball(x, p.ball_radius_sq);
    }

    if (diag) {
        diag->iterations = iters;
        diag->converged = converged;
        diag->feasible = feasible(x);
        double obj = 0.0;
        for (std::size_t m = 0; m < x.size(); ++m) obj += std::norm(x[m] - z[m]);
        diag->objective = obj;
        diag->ball_value = energy(x);
        diag->ball_limit = p.ball_radius_sq;
        diag->band_values.clear();
        diag->band_limits.clear();
        for (std::size_t k = 0; k < p.geoms->size(); ++k) {
            diag->band_values.push_back(
                band_value((*p.geoms)[k], p.prefix_coef[k], x));
            diag->band_limits.push_back(p.caps[k]);
        }
    }
    return x;
}

}  // namespace

ComplexSequence project_ball(const ComplexSequence& c, double radius_sq) {
    if (radius_sq < 0.0)
        throw std::invalid_argument("project_ball: radius_sq must be >= 0");
    const double e = energy(c);
    if (e <= radius_sq) return c;
    const double s = radius_sq > 0.0 ? std::sqrt(radius_sq / e) : 0.0;
    ComplexSequence out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * s;
    return out;
}

ComplexSequence project_band_constraint(const ComplexSequence& c,
                                        const BandOperator& op, double e_max,
                                        const ComplexSequence* fixed_prefix) {
    if (e_max < 0.0)
        throw std::invalid_argument("project_band_constraint: e_max must be >= 0");
    const std::size_t w_fix = fixed_prefix ? fixed_prefix->size() : 0;
    if (c.size() + w_fix != op.length())
        throw std::invalid_argument(
            "project_band_constraint: free segment plus prefix must span the window");
    BandGeometry g(op.band(), op.length(), w_fix);
    VectorXcd a;
    if (w_fix > 0) a = g.prefix_coefficients(*fixed_prefix);
    const double cap = e_max * op.width_norm();
    return project_one_band(g, a, c, cap);
}

ComplexSequence solve_block(const ComplexSequence& c0_block,
                            const std::vector<BandConstraint>& bands,
                            double radius_sq,
                            const ComplexSequence* fixed_prefix,
                            const SolverConfig& cfg, BlockDiagnostics* diag) {
    cfg.validate();
    validate_sequence(c0_block, "solve_block");
    const std::size_t w_fix = fixed_prefix ? fixed_prefix->size() : 0;
    const std::size_t win_len = c0_block.size() + w_fix;

    std::vector<BandGeometry> geoms;
    ReducedProblem p;
    geoms.reserve(bands.size());
    for (const BandConstraint& bc : bands) {
        if (bc.op.length() != win_len)
            throw std::invalid_argument("solve_block: band operator length mismatch");
        if (bc.e_max < 0.0)
            throw std::invalid_argument("solve_block: negative band cap");
        geoms.emplace_back(bc.op.band(), win_len, w_fix);
        p.caps.push_back(bc.e_max * bc.op.width_norm());
    }
    p.geoms = &geoms;
    p.prefix_coef.resize(bands.size());
    double prefix_energy = 0.0;
    if (w_fix > 0) {
        prefix_energy = energy(*fixed_prefix);
        for (std::size_t k = 0; k < geoms.size(); ++k)
            p.prefix_coef[k] = geoms[k].prefix_coefficients(*fixed_prefix);
    }
    p.ball_radius_sq = radius_sq - prefix_energy;
    if (p.ball_radius_sq < 0.0) {
        if (p.ball_radius_sq < -1e-12 * std::max(radius_sq, 1.0))
            throw InfeasibleConstraint("energy cap exceeded by the fixed prefix");
        p.ball_radius_sq = 0.0;
    }

    return dykstra_solve(c0_block, p, cfg, diag);
}

BlockwiseResult design_blockwise(
    const QcqpDesignSpec& spec,
    const std::function<void(std::size_t, const ComplexSequence&)>& block_sink) {
    if (spec.n_total == 0)
        throw std::invalid_argument("design_blockwise: n_total must be >= 1");
    if (spec.block_len == 0)
        throw std::invalid_argument("design_blockwise: block_len must be >= 1");
    const std::size_t nbar = std::min(spec.block_len, spec.n_total);
    const std::size_t w = std::min(spec.overlap, nbar / 2);
    if (spec.overlap > spec.block_len / 2)
        throw std::invalid_argument("design_blockwise: overlap must be <= block_len/2");
    spec.solver.validate();

    const std::size_t n = spec.n_total;
    const double num_blocks = std::ceil(static_cast<double>(n) /
                                        static_cast<double>(spec.block_len));

    ComplexSequence reference = spec.reference;
    if (reference.empty()) reference = generate_reference(n, spec.seed);
    if (reference.size() != n)
        throw std::invalid_argument("design_blockwise: reference length mismatch");

    // caps per full-length window; shortened final windows scale them by
    // their length fraction so the per-sample budget is preserved
    const double ball_cap_full = 1.0 / num_blocks;
    ensure_disjoint_on_grid(spec.bands, FrequencyGrid(nbar));

    std::map<std::pair<std::size_t, std::size_t>, std::vector<BandGeometry>>
        geom_cache;
    auto geoms_for = [&](std::size_t win_len,
                         std::size_t w_fix) -> std::vector<BandGeometry>& {
        auto key = std::make_pair(win_len, w_fix);
        auto it = geom_cache.find(key);
        if (it != geom_cache.end()) return it->second;
        std::vector<BandGeometry> gs;
        gs.reserve(spec.bands.size());
        for (const StopBand& b : spec.bands) gs.emplace_back(b, win_len, w_fix);
        return geom_cache.emplace(key, std::move(gs)).first->second;
    };

    BlockwiseResult result;
    result.waveform.assign(n, cplx(0.0, 0.0));

    auto record = [&](std::size_t index, std::size_t start, std::size_t win_len,
                      std::size_t free_len, const BlockDiagnostics& d) {
        WindowDiagnostics wd;
        wd.index = index;
        wd.start = start;
        wd.window_len = win_len;
        wd.free_len = free_len;
        wd.iterations = d.iterations;
        wd.converged = d.converged;
        wd.objective = d.objective;
        wd.ball_slack_rel = d.ball_limit > 0.0
                                ? (d.ball_limit - d.ball_value) / d.ball_limit
                                : 0.0;
        for (std::size_t k = 0; k < d.band_values.size(); ++k) {
            const double cap = d.band_limits[k];
            wd.band_slacks_rel.push_back(
                cap > 0.0 ? (cap - d.band_values[k]) / cap : -d.band_values[k]);
        }
        if (!d.converged) result.all_converged = false;
        result.windows.push_back(std::move(wd));
    };

    auto solve_window = [&](std::size_t index, std::size_t start,
                            std::size_t free_len, const ComplexSequence* prefix) {
        const std::size_t w_fix = prefix ? prefix->size() : 0;
        const std::size_t win_len = w_fix + free_len;
        const double scale = static_cast<double>(win_len) / static_cast<double>(nbar);

        ReducedProblem p;
        p.geoms = &geoms_for(win_len, w_fix);
        p.prefix_coef.resize(spec.bands.size());
        double prefix_energy = 0.0;
        if (w_fix > 0) {
            prefix_energy = energy(*prefix);
            for (std::size_t k = 0; k < p.geoms->size(); ++k)
                p.prefix_coef[k] = (*p.geoms)[k].prefix_coefficients(*prefix);
        }
        for (const StopBand& b : spec.bands)
            p.caps.push_back(b.max_energy / num_blocks * b.width() * scale);
        p.ball_radius_sq = std::max(ball_cap_full * scale - prefix_energy, 0.0);

        ComplexSequence z(reference.begin() + static_cast<long>(start),
                          reference.begin() + static_cast<long>(start + free_len));
        BlockDiagnostics d;
        ComplexSequence x;
        try {
            x = dykstra_solve(z, p, spec.solver, &d);
        } catch (const InfeasibleConstraint& e) {
            throw InfeasibleConstraint("window " + std::to_string(index) + ": " +
                                       e.what());
        }
        record(index, start, win_len, free_len, d);
        std::copy(x.begin(), x.end(),
                  result.waveform.begin() + static_cast<long>(start));
        if (block_sink) block_sink(start, x);
    };

    solve_window(0, 0, nbar, nullptr);
    std::size_t pos = nbar;
    std::size_t index = 1;
    while (pos < n) {
        const std::size_t free_len = std::min(nbar - w, n - pos);
        ComplexSequence prefix;
        const ComplexSequence* prefix_ptr = nullptr;
        if (w > 0) {
            prefix.assign(result.waveform.begin() + static_cast<long>(pos - w),
                          result.waveform.begin() + static_cast<long>(pos));
            prefix_ptr = &prefix;
        }
        solve_window(index, pos, free_len, prefix_ptr);
        pos += free_len;
        ++index;
    }
    return result;
}

}  // namespace notchwave
