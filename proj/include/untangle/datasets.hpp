#pragma once

#include <array>
#include <cstdint>

#include "untangle/geometry.hpp"
#include "untangle/rng.hpp"

namespace untangle {

// Uniform samples of a ball (interior by rejection, or surface via normalized
// gaussians). Deterministic in (seed); guard is 0 — samples are the set.
PointCloud sample_ball_cloud(const Ball& b, std::size_t count, std::uint64_t seed,
                             bool surfaceOnly = false);

// Two unit disks and an annulus ring around them:
//   label 0: disk center (-1, 1), radius 1      (source ball radius 1.1)
//   label 1: disk center (1, -1), radius 1      (source ball radius 1.1)
//   label 2: annulus 3 <= ||x|| <= 5            (no disjoint source ball exists)
// Substreams: label k draws from stream k of the seed.
LabeledDataset gen_toy_abc(std::size_t countPerClass, std::uint64_t seed);

// Two linked circles of radius 2:
//   label 0 in the z = 0 plane around (-1, 0, 0),
//   label 1 in the y = 0 plane around (1, 0, 0),
// sampled at uniform angles (deterministic, no seed).
LabeledDataset gen_hopf_link(std::size_t countPerCircle);

// psi(s, t) = (s, t cos t + 15, t sin t + 15) on [0,12] x [t0,t1], grid-sampled.
struct SwissRoll {
    PointCloud cloud;
    std::vector<std::array<double, 2>> params;  // (s, t) per point, same order
    double t0 = 0.0, t1 = 0.0;
};

SwissRoll gen_swiss_roll(double t0, double t1, std::size_t sGrid, std::size_t tGrid);

// Inverts psi: s = x, t = radius in the (y-15, z-15) plane. Errors when the
// point is off the surface (angle-radius residual above 1e-6).
std::array<double, 2> unroll_swiss(const Vec& p);

// Gauss linking number of two closed polygonal loops in R^3 by midpoint
// quadrature over segment pairs; near +-1 for linked circles.
double linking_number(const std::vector<Vec>& loop1, const std::vector<Vec>& loop2);

}  // namespace untangle
