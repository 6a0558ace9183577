#pragma once

// Brownian loop-measure interaction term: mass of loops in the disk meeting
// at least two of the n curves, counted with the multiplicity (N-1)^+ where N
// is the number of curves met. Estimated two independent ways:
//   - bridge_mc: importance-sampled rooted Brownian bridges with analytic
//     step-crossing probabilities,
//   - lattice_det: random-walk loop measure via log-determinants of killed
//     walk operators, mesh-extrapolated.

#include <span>
#include <vector>

#include "mrsle/parallel.hpp"
#include "mrsle/rng.hpp"
#include "mrsle/slit_map.hpp"
#include "mrsle/stats.hpp"

namespace mrsle {

enum class LoopMethod { bridge_mc, lattice_det };

struct LoopEstimate {
    double mass = 0;
    double stderr_ = 0;
    long n_samples = 0;
    double t_min = 0, t_max = 0;
    LoopMethod method = LoopMethod::bridge_mc;
    double cutoff_bias_bound = 0;  // gaussian-tail bound on the t_min truncation
    double mesh = 0;               // finest lattice mesh (lattice_det only)
};

// Polyline segments bucketed by log-radius; supports proximity and
// step-crossing queries at all scales.
class CurveIndex {
  public:
    explicit CurveIndex(std::span<const cplx> pts);

    double min_distance(cplx p, double cutoff) const;
    // probability that a Brownian step a -> b of duration tau crosses the
    // curve (1 on a realized polyline crossing, else the one-sided
    // barrier-crossing formula exp(-2 d_a d_b / tau) against the nearest
    // segments)
    double crossing_prob(cplx a, cplx b, double tau) const;
    // discrete thickened test: step passes within radius r
    bool within(cplx a, cplx b, double r) const;

    double radius_lo() const { return r_lo_; }
    double radius_hi() const { return r_hi_; }

  private:
    struct Seg {
        cplx a, b;
    };
    std::vector<Seg> segs_;
    std::vector<std::vector<int>> bins_;
    double log_lo_ = 0, bin_w_ = 0;
    double r_lo_ = 0, r_hi_ = 0;
    int nbins_ = 0;

    void candidates(double r, double d, std::vector<int>& out) const;
    mutable std::vector<int> scratch_;
};

struct CurveSet {
    std::vector<std::vector<cplx>> curves;
    int n() const { return static_cast<int>(curves.size()); }
    double min_pairwise_distance() const;
};

struct BridgeParams {
    long n_samples = 200000;
    double t_min = 0;  // 0: auto, (delta/6)^2
    double t_max = 8.0;
    int m_min = 256, m_max = 4096;
    double points_per_unit_time = 4096;  // bridge nodes scale with duration
    double root_focus = 8.0;             // mixture component: uniform on |z| < focus*sqrt(t)
    bool crossing_correction = true;     // false: plain thickened polyline test
    RngKey key;
    RunMode mode = RunMode::openmp;
};

LoopEstimate estimate_loop_term(const CurveSet& curves, const BridgeParams& p);

// A fixed battery of rooted loops evaluated against many curve sets with
// common random numbers (keeps paired comparisons and per-sample reweighting
// low-variance).
class LoopBattery {
  public:
    LoopBattery(const BridgeParams& p, long n_loops);
    double mass(const CurveSet& curves) const;
    long size() const { return static_cast<long>(loops_.size()); }

  private:
    struct Loop {
        std::vector<cplx> nodes;
        std::vector<double> taus;  // per-step durations
        double weight;             // importance weight including survival factor
    };
    std::vector<Loop> loops_;
    bool crossing_;
    RunMode mode_;
};

struct LatticeParams {
    double mesh = 1.0 / 64;  // coarsest mesh; two halvings are added
    int refinements = 2;
};

LoopEstimate lattice_loop_oracle(const CurveSet& curves, const LatticeParams& p);

struct SlopeResult {
    double slope = 0, stderr_ = 0;
    std::vector<double> T, mass, mass_err;
    LineFit fit;
};

// Loop mass along the zero-energy equally spaced evolution (exact radial fan)
// on a horizon grid; the growth slope is fitted over the largest half.
SlopeResult slope_experiment(int n, std::vector<double> T_grid, BridgeParams p);

// Exact radial-fan curve set at common time T: n equally spaced radial
// segments with the closed-form tip radius.
CurveSet radial_fan_curves(int n, double T, double offset = 0.0, int pts_per_efold = 64);

}  // namespace mrsle
