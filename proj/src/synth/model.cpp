#include "cfuse/synth/model.hpp"

#include <string>
#include <vector>

namespace cfuse::synth {

namespace {

// Empty rectangles nest anywhere.
bool contains(const Rect& outer, const Rect& inner) {
    if (inner.empty()) {
        return true;
    }
    return inner.x >= outer.x && inner.y >= outer.y &&
           inner.x + inner.width <= outer.x + outer.width &&
           inner.y + inner.height <= outer.y + outer.height;
}

void require_valid_rect(const Rect& r, const char* name) {
    if (r.width < 0 || r.height < 0) {
        raise(ErrorCode::GeometryViolation, std::string(name) + " has negative size");
    }
}

void require_brightness(double b, const char* name) {
    if (!(b >= 0.0 && b <= 1.0)) {
        raise(ErrorCode::GeometryViolation,
              std::string(name) + " brightness must lie in [0, 1]");
    }
}

void paint(std::vector<double>& values, int canvas_width, const PaintedRect& p) {
    for (int y = p.rect.y; y < p.rect.y + p.rect.height; ++y) {
        for (int x = p.rect.x; x < p.rect.x + p.rect.width; ++x) {
            values[static_cast<std::size_t>(y) * static_cast<std::size_t>(canvas_width) +
                   static_cast<std::size_t>(x)] = p.brightness;
        }
    }
}

} // namespace

BrightnessTable generate_model(const ModelSpec& spec, ChannelTag tag) {
    if (spec.canvas_width <= 0 || spec.canvas_height <= 0) {
        raise(ErrorCode::GeometryViolation, "canvas dimensions must be positive");
    }
    require_valid_rect(spec.background.rect, "background");
    require_valid_rect(spec.big_square.rect, "big square");
    require_valid_rect(spec.small_square.rect, "small square");
    require_brightness(spec.background.brightness, "background");
    require_brightness(spec.big_square.brightness, "big square");
    require_brightness(spec.small_square.brightness, "small square");

    const Rect canvas{0, 0, spec.canvas_width, spec.canvas_height};
    if (!contains(canvas, spec.background.rect)) {
        raise(ErrorCode::GeometryViolation, "background outside the canvas");
    }
    if (!contains(spec.background.rect, spec.big_square.rect)) {
        raise(ErrorCode::GeometryViolation, "big square outside the background");
    }
    if (!contains(spec.big_square.rect, spec.small_square.rect)) {
        raise(ErrorCode::GeometryViolation, "small square outside the big square");
    }

    std::vector<double> values(static_cast<std::size_t>(spec.canvas_width) *
                                   static_cast<std::size_t>(spec.canvas_height),
                               0.0);
    paint(values, spec.canvas_width, spec.background);
    paint(values, spec.canvas_width, spec.big_square);
    paint(values, spec.canvas_width, spec.small_square);

    return BrightnessTable(spec.canvas_width, spec.canvas_height, std::move(values),
                           {0.0, 1.0}, tag);
}

ModelSpec model_spec_default(double target_brightness, double field_brightness) {
    ModelSpec spec;
    spec.canvas_width = 64;
    spec.canvas_height = 64;
    spec.background = {{0, 0, 64, 64}, field_brightness};
    spec.big_square = {{16, 16, 32, 32}, field_brightness};
    spec.small_square = {{28, 28, 8, 8}, target_brightness};
    return spec;
}

std::pair<BrightnessTable, BrightnessTable> model_pair_default() {
    BrightnessTable u = generate_model(model_spec_default(0.4, 0.5), ChannelTag::VisibleA);
    BrightnessTable v = generate_model(model_spec_default(0.5, 0.4), ChannelTag::InfraredB);
    return {std::move(u), std::move(v)};
}

metrics::PixelPair model_target_edge_pair() {
    // p = left edge of the target square, q = its neighbor in the field
    return metrics::PixelPair{28, 32, 27, 32};
}

} // namespace cfuse::synth
