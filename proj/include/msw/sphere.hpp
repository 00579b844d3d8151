#pragma once

#include <optional>
#include <vector>

#include "msw/measure.hpp"
#include "msw/rng.hpp"

namespace msw {

// von Mises-Fisher parameters: mean direction and concentration. kappa = 0 is
// the uniform distribution on the sphere, kappa -> inf a point mass at the
// location.
struct VmfParams {
    Direction location;
    double concentration = 0.0;
};

// g / ||g|| for g a vector of d independent standard normals.
Direction sample_uniform_sphere(std::size_t d, RngStream& rng);

// Rejection sampler for vMF in d >= 2: draws the cosine omega against the
// mean via a Beta proposal, assembles (omega, sqrt(1-omega^2) v) around e1,
// and reflects e1 onto the location with a Householder map. kappa = 0
// short-circuits to the uniform sampler.
Direction sample_vmf(const VmfParams& params, RngStream& rng);

// Classical Gram-Schmidt. Throws on (near-)dependent input: residual norm
// below 1e-12 before normalization.
std::vector<Direction> gram_schmidt(const std::vector<Vec>& vectors);

// K orthonormal directions uniform on the Stiefel manifold V_K(R^d): K i.i.d.
// Gaussian vectors, orthonormalized. K = 1 matches sample_uniform_sphere
// draw-for-draw.
std::vector<Direction> sample_stiefel_uniform(std::size_t d, std::size_t K, RngStream& rng);

// Normalized component of theta_new orthogonal to theta_prev, or nullopt when
// the inputs are (near-)parallel and the caller should redraw theta_new.
std::optional<Direction> project_orthocomplement(const Vec& theta_new, const Direction& theta_prev);

// v / ||v||. Throws on the zero vector.
Direction retract_to_sphere(const Vec& v);

}  // namespace msw
