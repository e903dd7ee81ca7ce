#pragma once

#include <cstddef>

#include "cfuse/fusion/fusion.hpp"
#include "cfuse/raster/image.hpp"

namespace cfuse::metrics {

using raster::BrightnessTable;

/// A pixel p = (x1, y1) and a distinct neighbor q = (x2, y2).
struct PixelPair {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;
};

struct Offset {
    int dx = 0;
    int dy = 0;
};

/// Signed local contrast k = (q - p) / ((q + p) / 2) of the pair in the
/// table. A pair of two zero pixels yields 0 by convention. The value is
/// scale-invariant and bounded by [-2, 2] for non-negative tables.
double local_contrast(const BrightnessTable& table, const PixelPair& pair);

struct ContrastMap {
    BrightnessTable map;
    std::size_t boundary_pixels = 0;
};

/// Local contrast of every pixel against its neighbor at the given offset.
/// Pixels whose neighbor falls outside the table are set to 0 and counted
/// in boundary_pixels.
ContrastMap contrast_map(const BrightnessTable& table, Offset offset);

struct TContrastPrediction {
    double exact = 0.0;
    double approx = 0.0;
};

/// Closed-form contrast of the phase-tangent image from the two partial
/// contrasts. Neg: exact = (k_b - k_a) / (1 - k_a*k_b/4), approx = k_b - k_a;
/// Pos negates both. Raises DegenerateDenominator when |1 - k_a*k_b/4| < 1e-12.
TContrastPrediction predict_t_contrast(double k_a, double k_b, fusion::Ordering ordering);

/// Local-contrast summary of a two-pixel, two-channel instance.
/// k_t_exact / k_t_approx follow the Neg ordering; negate for Pos.
/// k_t_approx is a difference of two contrasts, so it ranges over [-4, 4];
/// every other field is a true local contrast bounded by [-2, 2].
struct ContrastReport {
    double k_a = 0.0;
    double k_b = 0.0;
    double k_t_exact = 0.0;
    double k_t_approx = 0.0;
    double k_s = 0.0;
    double omega_u = 0.0;
    double omega_v = 0.0;
};

/// Predicts the simple-fusion contrast k_s = omega_u*k_a + omega_v*k_b with
/// omega_u = mean(u) / (mean(u) + mean(v)) from the four pixel values, and
/// fills in the tangent-image predictions for cross-reference.
/// Raises ZeroBrightnessPair when all four values are zero.
ContrastReport predict_simple_contrast(double u_p, double u_q, double v_p, double v_q);

} // namespace cfuse::metrics
