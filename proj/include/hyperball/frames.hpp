// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hyperball/voice.hpp"

namespace hyperball {

// Smooth bump on [0,1): exp(1 - 1/(1-s^2)), 1 at s = 0, 0 for s >= 1.
double bump_chi(double s);

class CoveringError : public DomainError {
public:
    using DomainError::DomainError;
};

// Hyperbolic discs of radius delta about ring-lattice centers: rings at k*delta with
// ceil(pi sinh(2 k delta) / delta) points (n = 1), plus the origin.
struct BallCovering {
    double delta = 0.5;
    double T_work = 2.0;
    std::vector<cplx> centers;
    std::vector<double> center_t;  // hyperbolic radius of each center
    std::vector<int> ring_counts;  // points per ring, ring 0 = origin
    std::vector<int> color;
    int r0 = 0;
    double mu_U = 0.0;  // mu(U_j) = sinh^2(delta), the same for every j

    std::size_t size() const { return centers.size(); }
    // chi(d(z_j, w) / delta)
    double bump(std::size_t j, cplx w) const;
    // centers whose disc contains w
    std::vector<std::size_t> containing(cplx w) const;
};

struct CoveringCheck {
    std::size_t samples = 0;
    std::size_t uncovered = 0;
    double worst_distance = 0.0;  // max over samples of the distance to the nearest center
};

// Throws CoveringError when the sampled check finds an uncovered point.
BallCovering build_ball_covering(double delta, double T_work, std::uint64_t seed = 1, std::size_t n_check = 10000);
CoveringCheck check_ball_covering(const BallCovering& cov, std::uint64_t seed, std::size_t n_check);

// t^v_y(x) = y + x / v_{2n-1}(y)
double weighted_translation(double y, double x, int n = 1);

struct FrequencyCovering {
    double h = 0.5;
    double Lambda = 40.0;
    std::vector<double> centers;     // ascending, symmetric, contains 0
    std::vector<double> half_width;  // h / v_{2n-1}(x_k)
    std::vector<double> nu_measure;  // nu(V_k) with S_k = S
    std::vector<int> color;
    int s0 = 0;

    std::size_t size() const { return centers.size(); }
    double lo(std::size_t k) const { return centers[k] - half_width[k]; }
    double hi(std::size_t k) const { return centers[k] + half_width[k]; }
    // chi(|lambda - x_k| / half_width_k)
    double bump(std::size_t k, double lambda) const;
    double nu_ratio() const;
};

FrequencyCovering build_frequency_covering(double h, double Lambda);

// Product partition phi_jk(w, lambda, zeta) = B_j(w) Bhat_k(lambda) with
// B_j = b_j / sum b, Bhat_k = beta_k / sum beta; frame nodes X_jk = (z_j, (x_k, zeta0)).
class PartitionOfUnity {
public:
    PartitionOfUnity(BallCovering ball, FrequencyCovering freq, double zeta0_angle = 0.0);

    const BallCovering& ball() const { return ball_; }
    const FrequencyCovering& freq() const { return freq_; }
    double zeta0() const { return zeta0_; }
    std::size_t J() const { return ball_.size(); }
    std::size_t K() const { return freq_.size(); }
    std::size_t size() const { return J() * K(); }
    std::size_t index(std::size_t j, std::size_t k) const { return j * K() + k; }

    // Throw CoveringError outside the covered region.
    double spatial(std::size_t j, cplx w) const;
    double spectral(std::size_t k, double lambda) const;
    double operator()(std::size_t j, std::size_t k, cplx w, double lambda) const {
        return spatial(j, w) * spectral(k, lambda);
    }
    // All nonzero B_j(w) / Bhat_k(lambda)
    std::vector<std::pair<std::size_t, double>> spatial_all(cplx w) const;
    std::vector<std::pair<std::size_t, double>> spectral_all(double lambda) const;

    PhasePoint node(std::size_t j, std::size_t k) const {
        return PhasePoint::make(ball_.centers[j], freq_.centers[k], zeta0_);
    }

private:
    BallCovering ball_;
    FrequencyCovering freq_;
    double zeta0_;
};

struct PartitionCheck {
    std::size_t samples = 0;
    double max_sum_deviation = 0.0;  // max |sum phi - 1|
    double min_value = 0.0;
    double max_value = 0.0;
    std::size_t support_violations = 0;  // nonzero phi_jk outside U_j x V_k at probe points
};
PartitionCheck check_partition(const PartitionOfUnity& pou, std::uint64_t seed, std::size_t n_samples);

// C0 bounding m(X)/m(Y) for X, Y in one U_jk, from the initial set U_o x V_0.
double weight_quotient_bound(const PartitionOfUnity& pou, const WeightSpec& m);
// max over (j,k) of the extreme m(X)/m(Y) with X, Y in U_jk (closed form over the radial and lambda ranges)
double max_weight_quotient(const PartitionOfUnity& pou, const WeightSpec& m);

// tau_X Z = (phi_{w_X}(w_Z), (lambda_X - lambda_Z, zeta_Z)); the unitary part is the identity.
PhasePoint phase_translate(const PhasePoint& X, const PhasePoint& Z);

// Probe lattice in the initial set: radii {0, delta/2, delta} x 3 angles x lambda in {-h, 0, h} (per side count 3).
std::vector<PhasePoint> initial_set_probes(const PartitionOfUnity& pou, int per_axis = 3);

// max over probes Z of |R(tau_X Z, Y) - R(X, Y)| (a lower estimate of the supremum).
double oscillation_estimate(const PartitionOfUnity& pou, const PhasePoint& X, const PhasePoint& Y, const Window& psi,
                            const BallGrid& grid, int per_axis = 3);

struct OscillationReport {
    double osc_integral = 0.0;  // int osc(X, Y) dxi(Y)
    double C_psi = 0.0;         // int |R(X, Y)| dxi(Y)
    double gamma = 0.0;         // osc_integral / C_psi
};
// Integrals over the phase grid for a fixed X, via voice transforms of atom differences.
OscillationReport oscillation_integral(const PartitionOfUnity& pou, const PhasePoint& X, const Window& psi,
                                       std::shared_ptr<const PhaseGrid> pg, std::shared_ptr<const BallGrid> grid,
                                       int per_axis = 3);

// Dense T_phi / S_phi on a phase grid (row-major, P x P, guarded at 4e8 entries):
// (T F)(X) = sum_jk <F, phi_jk>_xi R(X_jk, X),  (S F)(X) = sum_jk <phi_jk, R(X, .)>_xi F(X_jk).
// F(X_jk) for S is read from the nearest phase node; small grids only.
CVec assemble_T(const PartitionOfUnity& pou, const Window& psi, const PhaseGrid& pg, const BallGrid& grid);
CVec assemble_S(const PartitionOfUnity& pou, const Window& psi, const PhaseGrid& pg, const BallGrid& grid);
CVec apply_dense(const CVec& M, const CVec& x);

using LinearMap = std::function<CVec(const CVec&)>;

class NonContractive : public DomainError {
public:
    using DomainError::DomainError;
};
class IterationLimit : public DomainError {
public:
    using DomainError::DomainError;
};

struct NeumannResult {
    CVec solution;
    int iterations = 0;
    double residual = 0.0;  // ||op G - F|| / ||F||
};

// Solves op G = F by G_{k+1} = G_k + (F - op G_k). `contraction` is the measured ||Id - op||;
// values >= 1 are refused. `inner_weights` define the norm (empty = Euclidean).
NeumannResult neumann_invert(const LinearMap& op, const CVec& F, double contraction, double tol, int max_iter,
                             const std::vector<double>& inner_weights = {});

// Largest ||(Id - op) x|| / ||x|| over span(basis), by Rayleigh-Ritz on the Gram matrices.
double restricted_distance_to_identity(const LinearMap& op, const std::vector<CVec>& basis,
                                       const std::vector<double>& inner_weights);
// Power iteration for ||Id - op|| on the whole (weighted) space; `adjoint` applies op^*.
double power_distance_to_identity(const LinearMap& op, const LinearMap& adjoint, std::size_t dim,
                                  const std::vector<double>& inner_weights, int iterations, std::uint64_t seed);

// Matrix-free realization of T_phi and S_phi on L2(B, mu), unitarily equivalent to their action on
// V_psi(L2) for a normalized window:
//   T f = sum_jk <f, a_jk> e_jk,  S f = sum_jk <f, e_jk> a_jk = T^* f,
//   e_jk = rho(X_jk) psi,  a_jk = V_psi^* phi_jk = (psi-blur of B_j) * (int Bhat_k phi_lambda dnu).
struct FrameOperatorSpec {
    int local_radial = 10;   // quadrature on U_o for the psi-blur
    int local_angular = 20;
    int oversample = 6;      // s-grid oversampling of the frequency band
    int lambda_nodes = 8;    // Gauss nodes per elementary lambda segment
};

class FrameOperator {
public:
    FrameOperator(const PartitionOfUnity& pou, const Window& psi, std::shared_ptr<const BallGrid> grid,
                  FrameOperatorSpec spec = {});

    std::size_t atoms() const { return J_ * K_; }
    const BallGrid& grid() const { return *grid_; }
    std::shared_ptr<const BallGrid> grid_ptr() const { return grid_; }
    const Window& window() const { return psi_; }

    // <f, a_jk>
    CVec dual_coefficients(const CVec& f) const;
    // <f, e_jk> = V_psi f(X_jk)
    CVec samples(const CVec& f) const;
    // sum c_jk e_jk
    CVec synthesis(const CVec& c) const;
    // sum d_jk a_jk
    CVec dual_synthesis(const CVec& d) const;

    CVec apply_T(const CVec& f) const { return synthesis(dual_coefficients(f)); }
    CVec apply_S(const CVec& f) const { return dual_synthesis(samples(f)); }

    // sum_j A_j(u): the psi-blur of the covered region (diagnostic)
    CVec blur_sum() const;

private:
    PartitionOfUnity pou_;
    Window psi_;
    std::shared_ptr<const BallGrid> grid_;
    FrameOperatorSpec spec_;
    std::size_t J_ = 0, K_ = 0, N_ = 0;
    int rings_ = 0;
    std::vector<double> W_;      // grid weights
    std::vector<int> ring_;      // ring of node
    std::vector<double> amp_;    // P_{0,zeta0}(z)
    std::vector<int> s_start_;   // interpolation stencil start on the s-grid
    std::vector<double> s_w_;    // stencil weights, 8 per node
    int M_ = 0;                  // s-grid size
    std::vector<cplx> Psi_;      // J x N, psi(phi_{z_j} z)
    std::vector<cplx> A_;        // J x N, psi-blur of B_j
    std::vector<double> Bk_;     // K x rings
    std::vector<cplx> Phase_;    // K x M, exp(i x_k s_m)
};

struct CoefficientSequence {
    CVec values;
    std::vector<double> weights;  // m(X_jk)
};

// ||(c_jk m(X_jk))||_{l^p}
double sequence_norm(const CoefficientSequence& c, PNorm p);
// (1 - |z|^2)^{-s} (1 + x_k^2)^{r/2} at every frame node
std::vector<double> node_weights(const PartitionOfUnity& pou, const WeightSpec& m);

struct FrameBounds {
    double A = 0.0;
    double A_prime = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;
};
// A = min, A' = max over signals of ||(V f(X_jk))||_{l^p_m} / ||f||_{M^p_m}.
FrameBounds empirical_frame_bounds(const std::vector<double>& sequence_norms, const std::vector<double>& coorbit_norms);

struct SchurBounds {
    double row = 0.0;  // max_X sum_Y |K(X,Y)| m(X)/m(Y) xi(Y)
    double col = 0.0;  // max_Y sum_X |K(X,Y)| m(X)/m(Y) xi(X)
};
// K row-major P x P over the phase grid with xi-weights.
SchurBounds kernel_schur_bounds(const CVec& K, const std::vector<double>& xi, const std::vector<double>& m);
// (K f)(X) = sum_Y K(X,Y) f(Y) xi(Y)
CVec apply_kernel(const CVec& K, const std::vector<double>& xi, const CVec& f);
// ||f m||_{L^p(xi)} on the grid
double weighted_lp(const CVec& f, const std::vector<double>& xi, const std::vector<double>& m, PNorm p);
// Exact L^2_m -> L^2_m operator norm (largest singular value of the weighted matrix).
double kernel_l2_norm(const CVec& K, const std::vector<double>& xi, const std::vector<double>& m);

// Columns: j,k,w_re,w_im,λ,ζ_angle,weight,re,im
void write_csv(std::ostream& os, const CoefficientSequence& c, const PartitionOfUnity& pou);

}  // namespace hyperball
