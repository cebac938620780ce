#pragma once

#include <memory>
#include <optional>

#include <json.hpp>

#include "untangle/linalg.hpp"

namespace untangle {

// Smooth embedding g of the closed unit ball into R^n. Implementations must
// report points outside the image via inverse() returning nullopt, never by
// guessing; the flow machinery relies on that to zero the pushforward field.
struct Chart {
    virtual ~Chart() = default;
    virtual std::size_t dim() const = 0;
    virtual Vec forward(const Vec& u) const = 0;
    virtual std::optional<Vec> inverse(const Vec& y) const = 0;
    virtual Mat jacobian(const Vec& u) const = 0;
    // Upper bound on sup ||g(u)|| over the unit ball; used for support bounds.
    virtual double image_radius_bound() const = 0;
    // Upper bound on ||Dg|| * ||Dg^-1|| over the unit ball; the pushforward of a
    // field with Lipschitz constant L has Lipschitz constant at most this times L,
    // which sizes the integrator steps.
    virtual double conditioning_bound() const = 0;
    virtual nlohmann::json descriptor() const = 0;
};

using ChartPtr = std::shared_ptr<const Chart>;

// g(u) = A u + b with A invertible.
ChartPtr make_affine_chart(Mat a, Vec b);

// g = id restricted to the unit ball.
ChartPtr make_identity_chart(std::size_t n);

ChartPtr chart_from_descriptor(const nlohmann::json& j);

}  // namespace untangle
