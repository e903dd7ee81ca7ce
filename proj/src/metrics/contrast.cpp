#include "cfuse/metrics/contrast.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace cfuse::metrics {

namespace {

constexpr double kDegenerateTolerance = 1e-12;

double pair_contrast(double p, double q) {
    if (p == 0.0 && q == 0.0) {
        return 0.0;
    }
    const double mean = (q + p) / 2.0;
    return (q - p) / mean;
}

} // namespace

double local_contrast(const BrightnessTable& table, const PixelPair& pair) {
    if (!table.in_bounds(pair.x1, pair.y1) || !table.in_bounds(pair.x2, pair.y2)) {
        raise(ErrorCode::OutOfBounds, "pixel pair outside the table");
    }
    if (pair.x1 == pair.x2 && pair.y1 == pair.y2) {
        raise(ErrorCode::InvalidArgument, "pixel pair must name two distinct pixels");
    }
    return pair_contrast(table(pair.x1, pair.y1), table(pair.x2, pair.y2));
}

ContrastMap contrast_map(const BrightnessTable& table, Offset offset) {
    if (offset.dx == 0 && offset.dy == 0) {
        raise(ErrorCode::InvalidOffset, "offset (0, 0) pairs every pixel with itself");
    }
    if (std::abs(offset.dx) >= table.width() || std::abs(offset.dy) >= table.height()) {
        raise(ErrorCode::InvalidOffset, "offset magnitude exceeds table dimensions");
    }

    std::vector<double> out(table.pixel_count(), 0.0);
    std::size_t boundary = 0;
    for (int y = 0; y < table.height(); ++y) {
        for (int x = 0; x < table.width(); ++x) {
            const int qx = x + offset.dx;
            const int qy = y + offset.dy;
            const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(table.width()) +
                           static_cast<std::size_t>(x);
            if (!table.in_bounds(qx, qy)) {
                ++boundary; // neighbor off the edge: zero-filled, tallied
                continue;
            }
            out[i] = pair_contrast(table(x, y), table(qx, qy));
        }
    }
    return ContrastMap{BrightnessTable(table.width(), table.height(), std::move(out),
                                       {-2.0, 2.0}),
                       boundary};
}

TContrastPrediction predict_t_contrast(double k_a, double k_b, fusion::Ordering ordering) {
    if (std::abs(k_a) > 2.0 || std::abs(k_b) > 2.0) {
        raise(ErrorCode::RangeViolation, "local contrasts are bounded by [-2, 2]");
    }
    const double denom = 1.0 - k_a * k_b / 4.0;
    if (std::abs(denom) < kDegenerateTolerance) {
        raise(ErrorCode::DegenerateDenominator,
              "1 - k_a*k_b/4 vanishes for k_a=" + std::to_string(k_a) +
                  ", k_b=" + std::to_string(k_b));
    }
    TContrastPrediction p;
    p.exact = (k_b - k_a) / denom;
    p.approx = k_b - k_a;
    if (ordering == fusion::Ordering::Pos) {
        p.exact = -p.exact;
        p.approx = -p.approx;
    }
    return p;
}

ContrastReport predict_simple_contrast(double u_p, double u_q, double v_p, double v_q) {
    if (u_p < 0.0 || u_q < 0.0 || v_p < 0.0 || v_q < 0.0) {
        raise(ErrorCode::NegativeValue, "brightness values must be non-negative");
    }
    const double u_mean = (u_p + u_q) / 2.0;
    const double v_mean = (v_p + v_q) / 2.0;
    if (u_mean + v_mean == 0.0) {
        raise(ErrorCode::ZeroBrightnessPair, "all four brightness values are zero");
    }

    ContrastReport r;
    r.k_a = pair_contrast(u_p, u_q);
    r.k_b = pair_contrast(v_p, v_q);
    r.omega_u = u_mean / (u_mean + v_mean);
    r.omega_v = v_mean / (u_mean + v_mean);
    r.k_s = r.omega_u * r.k_a + r.omega_v * r.k_b;

    const TContrastPrediction t = predict_t_contrast(r.k_a, r.k_b, fusion::Ordering::Neg);
    r.k_t_exact = t.exact;
    r.k_t_approx = t.approx;
    return r;
}

} // namespace cfuse::metrics
