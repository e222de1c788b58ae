#pragma once

#include <cmath>

#include "core/potential.hpp"

namespace qpl {

/// phi(x) = (V'''(x) / 8 hbar)^(1/3), real cube root, sign following V'''.
/// The multiplicative coupling of the quasi-noise force hbar phi(x) R(t).
class PhiField {
public:
    PhiField(const Potential1D& pot, double hbar) : pot_(&pot), hbar_(hbar) {
        if (!(hbar > 0.0)) throw UsageError("PhiField: hbar must be positive");
    }

    double operator()(double x) const {
        return std::cbrt(pot_->eval(x, 3) / (8.0 * hbar_));
    }

    double third_derivative(double x) const { return pot_->eval(x, 3); }
    double hbar() const { return hbar_; }

private:
    const Potential1D* pot_;
    double hbar_;
};

inline double phi(const PhiField& field, double x) { return field(x); }

}  // namespace qpl
