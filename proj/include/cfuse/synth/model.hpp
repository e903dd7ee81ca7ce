#pragma once

#include <utility>

#include "cfuse/metrics/contrast.hpp"
#include "cfuse/raster/image.hpp"

namespace cfuse::synth {

using raster::BrightnessTable;
using raster::ChannelTag;

struct Rect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    bool empty() const noexcept { return width == 0 || height == 0; }
};

struct PaintedRect {
    Rect rect;
    double brightness = 0.0;
};

/// Test-pattern description: an outer background field, a large square and a
/// small target square, painted in that order (later rectangles overwrite
/// earlier ones). Nesting must hold: small inside big inside background
/// inside canvas; empty rectangles are allowed anywhere.
struct ModelSpec {
    int canvas_width = 0;
    int canvas_height = 0;
    PaintedRect background;
    PaintedRect big_square;
    PaintedRect small_square;
};

/// Paints the spec onto a zero canvas. Deterministic.
/// Raises GeometryViolation on broken nesting or out-of-range brightness.
BrightnessTable generate_model(const ModelSpec& spec, ChannelTag tag = ChannelTag::Fused);

/// Spec for one channel of the canonical pair: a 64x64 field of
/// `field_brightness` (background and big square alike) holding a centered
/// 8x8 target of `target_brightness`. Both levels strictly positive in the
/// canonical pair, which keeps every ratio image finite without
/// regularization.
ModelSpec model_spec_default(double target_brightness, double field_brightness);

/// The canonical visible/infrared pair: u = target 0.4 on field 0.5,
/// v = target 0.5 on field 0.4, tagged VisibleA / InfraredB.
std::pair<BrightnessTable, BrightnessTable> model_pair_default();

/// Pixel pair spanning the target's left edge (p inside the target,
/// q its left neighbor in the field) for the default geometry.
metrics::PixelPair model_target_edge_pair();

} // namespace cfuse::synth
