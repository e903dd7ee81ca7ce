#include "cfuse/fusion/fusion.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace cfuse::fusion {

namespace {

constexpr double kUnitNormTolerance = 1e-12;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_same_dimensions(const BrightnessTable& a, const BrightnessTable& b,
                             const char* op) {
    if (!a.same_dimensions(b)) {
        raise(ErrorCode::DimensionMismatch,
              std::string(op) + ": " + std::to_string(a.width()) + "x" +
                  std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                  std::to_string(b.height()));
    }
}

void require_non_negative(const BrightnessTable& t, const char* op) {
    for (double v : t.values()) {
        if (v < 0.0) {
            raise(ErrorCode::NegativeValue,
                  std::string(op) + " requires non-negative brightness values");
        }
    }
}

} // namespace

const char* to_string(Ordering ordering) noexcept {
    return ordering == Ordering::Neg ? "neg" : "pos";
}

ChannelWeights::ChannelWeights() : w_a_(std::numbers::sqrt2 / 2.0), w_b_(std::numbers::sqrt2 / 2.0) {}

ChannelWeights::ChannelWeights(double w_a, double w_b) : w_a_(w_a), w_b_(w_b) {
    if (!(w_a >= 0.0) || !(w_b >= 0.0)) {
        raise(ErrorCode::NegativeValue, "channel weights must be non-negative");
    }
    const double norm = std::hypot(w_a, w_b);
    if (std::abs(norm - 1.0) > kUnitNormTolerance) {
        raise(ErrorCode::InvalidArgument,
              "channel weights must have unit Euclidean norm, got " + std::to_string(norm));
    }
}

ChannelWeights ChannelWeights::normalized(double w_a, double w_b) {
    if (!(w_a >= 0.0) || !(w_b >= 0.0)) {
        raise(ErrorCode::NegativeValue, "channel weights must be non-negative");
    }
    const double norm = std::hypot(w_a, w_b);
    if (norm == 0.0) {
        raise(ErrorCode::InvalidArgument, "channel weights cannot both be zero");
    }
    ChannelWeights w;
    w.w_a_ = w_a / norm;
    w.w_b_ = w_b / norm;
    return w;
}

Epsilon::Epsilon(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0) {
        raise(ErrorCode::InvalidArgument, "epsilon must be finite and >= 0");
    }
}

ComplexImage::ComplexImage(BrightnessTable re, BrightnessTable im, Ordering ordering)
    : re_(std::move(re)), im_(std::move(im)), ordering_(ordering) {
    require_same_dimensions(re_, im_, "ComplexImage");
    require_non_negative(re_, "ComplexImage");
    require_non_negative(im_, "ComplexImage");
}

BrightnessTable simple_fuse(const BrightnessTable& u, const BrightnessTable& v) {
    require_same_dimensions(u, v, "simple_fuse");
    std::vector<double> out(u.pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = u.values()[i] + v.values()[i];
    }
    const raster::ValueRange range{u.value_range().lo + v.value_range().lo,
                                   u.value_range().hi + v.value_range().hi};
    return BrightnessTable(u.width(), u.height(), std::move(out), range);
}

BrightnessTable weighted_fuse(const BrightnessTable& u, const BrightnessTable& v,
                              double w_a, double w_b) {
    require_same_dimensions(u, v, "weighted_fuse");
    if (!(w_a >= 0.0) || !(w_b >= 0.0)) {
        raise(ErrorCode::NegativeValue, "weighted_fuse weights must be non-negative");
    }
    std::vector<double> out(u.pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = w_a * u.values()[i] + w_b * v.values()[i];
    }
    const raster::ValueRange range{w_a * u.value_range().lo + w_b * v.value_range().lo,
                                   w_a * u.value_range().hi + w_b * v.value_range().hi};
    return BrightnessTable(u.width(), u.height(), std::move(out), range);
}

BrightnessTable channel_sum(std::span<const BrightnessTable> images,
                            std::span<const double> weights) {
    if (images.empty()) {
        raise(ErrorCode::EmptySequence, "channel_sum needs at least one image");
    }
    if (weights.size() != images.size()) {
        raise(ErrorCode::WeightLengthMismatch,
              std::to_string(weights.size()) + " weights for " +
                  std::to_string(images.size()) + " images");
    }
    for (double w : weights) {
        if (!(w >= 0.0)) {
            raise(ErrorCode::NegativeValue, "channel_sum weights must be non-negative");
        }
    }
    const BrightnessTable& first = images[0];
    for (const BrightnessTable& img : images.subspan(1)) {
        require_same_dimensions(first, img, "channel_sum");
    }

    std::vector<double> out(first.pixel_count(), 0.0);
    raster::ValueRange range{0.0, 0.0};
    for (std::size_t k = 0; k < images.size(); ++k) {
        const auto& vals = images[k].values();
        const double w = weights[k];
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += w * vals[i];
        }
        range.lo += w * images[k].value_range().lo;
        range.hi += w * images[k].value_range().hi;
    }
    return BrightnessTable(first.width(), first.height(), std::move(out), range, first.tag());
}

BrightnessTable channel_sum(std::span<const BrightnessTable> images) {
    if (images.empty()) {
        raise(ErrorCode::EmptySequence, "channel_sum needs at least one image");
    }
    const std::vector<double> weights(images.size(), 1.0 / static_cast<double>(images.size()));
    return channel_sum(images, weights);
}

ComplexImage make_complex(const BrightnessTable& u, const BrightnessTable& v,
                          Ordering ordering, const ChannelWeights& weights) {
    require_same_dimensions(u, v, "make_complex");
    if (u.tag() != raster::ChannelTag::VisibleA || v.tag() != raster::ChannelTag::InfraredB) {
        raise(ErrorCode::ChannelTagMismatch,
              std::string("make_complex expects (VisibleA, InfraredB), got (") +
                  raster::to_string(u.tag()) + ", " + raster::to_string(v.tag()) + ")");
    }
    require_non_negative(u, "make_complex");
    require_non_negative(v, "make_complex");

    auto scaled = [](const BrightnessTable& t, double w) {
        std::vector<double> out(t.pixel_count());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = w * t.values()[i];
        }
        return BrightnessTable(t.width(), t.height(), std::move(out),
                               {w * t.value_range().lo, w * t.value_range().hi}, t.tag());
    };

    BrightnessTable wu = scaled(u, weights.w_a());
    BrightnessTable wv = scaled(v, weights.w_b());
    if (ordering == Ordering::Neg) {
        return ComplexImage(std::move(wu), std::move(wv), ordering);
    }
    return ComplexImage(std::move(wv), std::move(wu), ordering);
}

BrightnessTable amplitude(const ComplexImage& c) {
    const auto& re = c.re().values();
    const auto& im = c.im().values();
    std::vector<double> out(re.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
    }
    const auto rr = c.re().value_range();
    const auto ir = c.im().value_range();
    const raster::ValueRange range{std::hypot(rr.lo, ir.lo), std::hypot(rr.hi, ir.hi)};
    return BrightnessTable(c.re().width(), c.re().height(), std::move(out), range);
}

BrightnessTable tangent_image(const BrightnessTable& u, const BrightnessTable& v,
                              Ordering ordering, Epsilon eps) {
    require_same_dimensions(u, v, "tangent_image");
    require_non_negative(u, "tangent_image");
    require_non_negative(v, "tangent_image");

    const BrightnessTable& num = ordering == Ordering::Neg ? v : u;
    const BrightnessTable& den = ordering == Ordering::Neg ? u : v;
    const double e = eps.value();
    if (e == 0.0) {
        for (double d : den.values()) {
            if (d == 0.0) {
                raise(ErrorCode::DivisionByZero,
                      "tangent_image with eps = 0 needs a strictly positive denominator");
            }
        }
    }

    std::vector<double> out(u.pixel_count());
    double max_raw = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = num.values()[i] / (den.values()[i] + e);
        max_raw = out[i] > max_raw ? out[i] : max_raw;
    }
    return BrightnessTable(u.width(), u.height(), std::move(out), {0.0, max_raw});
}

BrightnessTable phi_image(const BrightnessTable& u, const BrightnessTable& v,
                          Ordering ordering, Epsilon eps,
                          std::size_t* indeterminate_pixels) {
    require_same_dimensions(u, v, "phi_image");
    require_non_negative(u, "phi_image");
    require_non_negative(v, "phi_image");

    const BrightnessTable& num = ordering == Ordering::Neg ? v : u;
    const BrightnessTable& den = ordering == Ordering::Neg ? u : v;
    const double e = eps.value();

    std::size_t indeterminate = 0;
    std::vector<double> out(u.pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double n = num.values()[i];
        const double d = den.values()[i] + e;
        if (d == 0.0) {
            if (n == 0.0) {
                ++indeterminate; // 0/0: resolve to phase 0 and count it
                out[i] = 0.0;
            } else {
                out[i] = 1.0; // z/0: phase saturates at pi/2
            }
        } else {
            out[i] = std::atan(n / d) / kHalfPi;
        }
    }
    if (indeterminate_pixels != nullptr) {
        *indeterminate_pixels = indeterminate;
    }
    return BrightnessTable(u.width(), u.height(), std::move(out), {0.0, 1.0});
}

BrightnessTable sin2phi_image(const ComplexImage& c) {
    const auto& re = c.re().values();
    const auto& im = c.im().values();
    std::vector<double> out(re.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 2.0 * re[i] * im[i];
    }
    const auto rr = c.re().value_range();
    const auto ir = c.im().value_range();
    return BrightnessTable(c.re().width(), c.re().height(), std::move(out),
                           {2.0 * rr.lo * ir.lo, 2.0 * rr.hi * ir.hi});
}

BrightnessTable cos2phi_image(const ComplexImage& c) {
    const auto& re = c.re().values();
    const auto& im = c.im().values();
    std::vector<double> out(re.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = re[i] * re[i] - im[i] * im[i];
    }
    const auto rr = c.re().value_range();
    const auto ir = c.im().value_range();
    return BrightnessTable(c.re().width(), c.re().height(), std::move(out),
                           {rr.lo * rr.lo - ir.hi * ir.hi, rr.hi * rr.hi - ir.lo * ir.lo});
}

ComplexImage fuse_multi(std::span<const BrightnessTable> us,
                        std::span<const BrightnessTable> vs,
                        std::span<const double> wu, std::span<const double> wv,
                        Ordering ordering, const ChannelWeights& weights) {
    // channel_sum carries each stack's tag through, so make_complex still
    // enforces the (VisibleA, InfraredB) pairing.
    BrightnessTable su = channel_sum(us, wu);
    BrightnessTable sv = channel_sum(vs, wv);
    return make_complex(su, sv, ordering, weights);
}

} // namespace cfuse::fusion
