#pragma once

#include <vector>

#include "untangle/flows.hpp"
#include "untangle/geometry.hpp"

namespace untangle {

// One labeled compact sample inside its known enclosing ball. Waypoints, when
// given, replace automatic path planning for this set's transport (the escape
// hatch when the single-detour planner reports no clearing path).
struct RelocationSet {
    PointCloud cloud;
    Ball source;
    std::vector<Vec> waypoints;
};

// Move sets[i] into targets[i], i in order. Sources must be pairwise
// disjoint, targets pairwise disjoint, and every target disjoint from every
// source.
struct RelocationProblem {
    std::vector<RelocationSet> sets;
    std::vector<Ball> targets;
};

struct RelocationResult {
    DiffeoPipeline pipeline;
    std::vector<PointCloud> images;  // sets pushed through the pipeline
};

// Per-set compression into a small ball around the source center, then ordered
// ball-chain transports; transport i treats the not-yet-moved sources (j > i)
// and the already-filled targets (j < i) as obstacles. Delivery and far-field
// identity are re-verified on the samples before returning.
RelocationResult relocate_disjoint(const RelocationProblem& problem);

// l target balls of the given radius on the +x1 axis, starting at
// (max source extent + 10*radius) and spaced 2.5*radius, pushed further out
// by 5*radius until disjoint from every source.
std::vector<Ball> layout_targets(std::size_t l, const std::vector<Ball>& sources,
                                 double radius);

// Sub-balls inside each label's ball, one per class entry carrying that label:
// k entries split the ball's x1 diameter into k slots of radius radius/(2k).
// labelBalls align with the distinct labels in order of first appearance;
// the result aligns with d.classes.
std::vector<Ball> assign_label_subtargets(const LabeledDataset& d,
                                          const std::vector<Ball>& labelBalls);

// Lift to R^{n+1}: class j goes to height heights[j]; every class must fit in
// B(0, boundR) and heights must be pairwise more than 4*boundR apart.
struct LiftSpec {
    double boundR = 0.0;
    std::vector<double> heights;
};

LabeledDataset lift_embed(const LabeledDataset& d, const LiftSpec& spec);
PointCloud project_down(const PointCloud& cloud, std::size_t n);

struct LiftRelocateResult {
    DiffeoPipeline pipeline;         // acts in R^{n+1}
    std::vector<PointCloud> images;  // projected back to R^n, inside finalTargets
    LiftSpec spec;
};

// Untangling route for sets that are not relocatable in place: lift each class
// to its own height (gap 5R, or liftGap if positive), relocate in R^{n+1} to
// shrunken targets at height -3R, project back down.
LiftRelocateResult lift_relocate_project(const LabeledDataset& d,
                                         const std::vector<Ball>& finalTargets,
                                         double liftGap = 0.0);

}  // namespace untangle
