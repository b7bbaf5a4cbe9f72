#ifndef LISAE_TILT_HPP
#define LISAE_TILT_HPP

#include <algorithm>

namespace lisae {

/// Negative-shaping term shared by the linear and deep trainers:
/// beta * (gamma - mean negative reconstruction error)^2. The quadratic form
/// pulls the negative loss toward gamma from both sides; the hinge variant
/// zeroes the term once the negative loss exceeds gamma.
struct TiltTerm {
    double beta;
    double gamma;
    bool hinge;

    double value(double neg_mean) const {
        if (hinge && neg_mean >= gamma) return 0.0;
        const double gap = gamma - neg_mean;
        return beta * gap * gap;
    }

    /// d(value)/d(neg_mean); multiply the negative batch's reconstruction
    /// gradient by this scalar.
    double derivative(double neg_mean) const {
        if (hinge && neg_mean >= gamma) return 0.0;
        return -2.0 * beta * (gamma - neg_mean);
    }
};

} // namespace lisae

#endif // LISAE_TILT_HPP
