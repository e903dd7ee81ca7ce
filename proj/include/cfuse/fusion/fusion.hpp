#pragma once

#include <cstddef>
#include <span>

#include "cfuse/raster/image.hpp"

namespace cfuse::fusion {

using raster::BrightnessTable;

/// Cross-channel weight pair (w_a, w_b) constrained to unit Euclidean norm:
/// sqrt(w_a^2 + w_b^2) = 1 within 1e-12. Defaults to the symmetric pair
/// (1/sqrt2, 1/sqrt2).
class ChannelWeights {
public:
    ChannelWeights();
    ChannelWeights(double w_a, double w_b);

    /// Rescales an arbitrary non-negative pair onto the unit circle.
    static ChannelWeights normalized(double w_a, double w_b);

    double w_a() const noexcept { return w_a_; }
    double w_b() const noexcept { return w_b_; }

private:
    double w_a_;
    double w_b_;
};

/// Which channel supplies the real part of the complex image.
/// Neg: (re, im) = (u, v).  Pos: (re, im) = (v, u).
enum class Ordering { Neg, Pos };

const char* to_string(Ordering ordering) noexcept;

/// Additive denominator offset for the ratio-based images. Zero selects the
/// analytic (unregularized) form.
class Epsilon {
public:
    Epsilon() : value_(0.0) {}
    explicit Epsilon(double value);

    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Paired real/imaginary brightness tables of equal dimensions. Both parts
/// are non-negative, so the per-pixel phase lies in [0, pi/2].
class ComplexImage {
public:
    ComplexImage(BrightnessTable re, BrightnessTable im, Ordering ordering);

    const BrightnessTable& re() const noexcept { return re_; }
    const BrightnessTable& im() const noexcept { return im_; }
    Ordering ordering() const noexcept { return ordering_; }

private:
    BrightnessTable re_;
    BrightnessTable im_;
    Ordering ordering_;
};

/// Pixel-wise sum u + v. Output range is declared as the sum of the input
/// ranges; no clamping or rescaling is applied.
BrightnessTable simple_fuse(const BrightnessTable& u, const BrightnessTable& v);

/// Pixel-wise w_a*u + w_b*v for any non-negative weight pair (no unit-norm
/// requirement here).
BrightnessTable weighted_fuse(const BrightnessTable& u, const BrightnessTable& v,
                              double w_a, double w_b);

/// Pixel-wise weighted sum of several same-channel images.
BrightnessTable channel_sum(std::span<const BrightnessTable> images,
                            std::span<const double> weights);

/// Equal weights summing to 1.
BrightnessTable channel_sum(std::span<const BrightnessTable> images);

/// Builds the complex image from a VisibleA table u and an InfraredB table v.
/// Neg: (re, im) = (w_a*u, w_b*v); Pos swaps the parts.
ComplexImage make_complex(const BrightnessTable& u, const BrightnessTable& v,
                          Ordering ordering, const ChannelWeights& weights = {});

/// Per-pixel modulus sqrt(re^2 + im^2). Identical for both orderings.
BrightnessTable amplitude(const ComplexImage& c);

/// Phase-tangent image: Neg -> v / (u + eps), Pos -> u / (v + eps).
/// Returned raw (unnormalized); callers normalize for display. With eps = 0
/// the denominator table must be strictly positive (DivisionByZero otherwise).
BrightnessTable tangent_image(const BrightnessTable& u, const BrightnessTable& v,
                              Ordering ordering, Epsilon eps);

/// Phase-argument image, scaled by 2/pi so values lie in [0, 1].
/// With eps = 0 a zero denominator under a positive numerator resolves
/// analytically to 1 (phase pi/2); a 0/0 pixel resolves to 0 by convention
/// and is tallied into *indeterminate_pixels when provided.
BrightnessTable phi_image(const BrightnessTable& u, const BrightnessTable& v,
                          Ordering ordering, Epsilon eps,
                          std::size_t* indeterminate_pixels = nullptr);

/// Product image 2*re*im (= |psi|^2 sin 2phi), raw. Ordering-invariant.
BrightnessTable sin2phi_image(const ComplexImage& c);

/// Difference image re^2 - im^2 (= |psi|^2 cos 2phi), raw and signed.
/// Swapping the ordering negates it. Display via minmax_rescale.
BrightnessTable cos2phi_image(const ComplexImage& c);

/// Multi-image fusion: each channel's stack is reduced with channel_sum and
/// the two results are combined via make_complex under the given ordering.
ComplexImage fuse_multi(std::span<const BrightnessTable> us,
                        std::span<const BrightnessTable> vs,
                        std::span<const double> wu, std::span<const double> wv,
                        Ordering ordering, const ChannelWeights& weights = {});

} // namespace cfuse::fusion
