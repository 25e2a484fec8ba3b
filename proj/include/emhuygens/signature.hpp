// signature.hpp -- causal scalar waveforms f(t) with exact derivatives and a
//                  cached antiderivative; every time dependence in the library
//                  enters through one of these
#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "emhuygens/quadrature.hpp"

namespace emh {

/// Causal waveform: f(t) = 0 for t <= start(). Derivative orders up to 3 are
/// required because field time-derivatives shift the whole retarded chain
/// (f, f', f'') up by one. antiderivative(t) = integral of f from start() to t.
class Signature {
public:
    virtual ~Signature() = default;
    virtual double value(double t) const = 0;
    virtual double derivative(double t, int order) const = 0;
    virtual double antiderivative(double t) const = 0;
    virtual double start() const = 0;
    /// end of compact support; f and all derivatives vanish beyond it
    virtual double end() const = 0;

    /// chain accessor: order -1 -> antiderivative, 0 -> value, k -> f^(k)
    double chain(double t, int order) const {
        if (order == -1) return antiderivative(t);
        if (order == 0) return value(t);
        return derivative(t, order);
    }
};

/// Hann-windowed sinusoid on [t0, t0+width]:
///   f(t) = (1 - cos(a u))/2 * sin(w u),  u = t - t0,  a = 2 pi / width
/// (pure Hann bump when the carrier w is zero). C^2 across the endpoints;
/// all derivatives are closed-form via the product-to-sum expansion
///   f = 1/2 sin(w u) - 1/4 sin((w+a)u) - 1/4 sin((w-a)u).
/// The antiderivative is a cached 32-panel Gauss rule over the support,
/// built at construction; evaluation afterwards is read-only.
class HannPulse final : public Signature {
public:
    HannPulse(double t0, double width, double carrier)
        : t0_(t0), width_(width), carrier_(carrier) {
        if (!(width > 0.0)) throw std::invalid_argument("hann_pulse: width must be positive");
        if (carrier < 0.0) throw std::invalid_argument("hann_pulse: carrier must be >= 0");
        build_antiderivative_cache();
    }

    double value(double t) const override { return eval(t, 0); }
    double derivative(double t, int order) const override {
        if (order < 1 || order > 3)
            throw std::invalid_argument("hann_pulse: derivative order must be 1..3");
        return eval(t, order);
    }

    double antiderivative(double t) const override {
        if (t <= t0_) return 0.0;
        if (t >= t0_ + width_) return cumulative_.back();
        const double panel_w = width_ / kPanels;
        int k = static_cast<int>((t - t0_) / panel_w);
        if (k >= kPanels) k = kPanels - 1;
        const double a = t0_ + k * panel_w;
        double tail = 0.0;
        for (int j = 0; j < kPanelOrder; ++j) {
            const double half = 0.5 * (t - a);
            const double node = a + half * (1.0 + panel_rule_.nodes[j]);
            tail += half * panel_rule_.weights[j] * eval(node, 0);
        }
        return cumulative_[k] + tail;
    }

    double start() const override { return t0_; }
    double end() const override { return t0_ + width_; }
    double carrier() const { return carrier_; }
    double width() const { return width_; }

private:
    static constexpr int kPanels = 32;
    static constexpr int kPanelOrder = 16;

    double t0_, width_, carrier_;
    std::vector<double> cumulative_; // integral up to each panel boundary
    QuadRule1D panel_rule_ = gauss_legendre(kPanelOrder);

    double eval(double t, int order) const {
        const double u = t - t0_;
        if (u <= 0.0 || u >= width_) return 0.0;
        const double a = 2.0 * 3.14159265358979323846 / width_;
        const double w = carrier_;
        if (w == 0.0) {
            // f = 1/2 - 1/2 cos(a u)
            switch (order) {
                case 0: return 0.5 - 0.5 * std::cos(a * u);
                default: {
                    // d^k: -1/2 d^k cos(a u) = -1/2 a^k cos(a u + k pi/2)
                    const double ph = order * 1.57079632679489661923;
                    return -0.5 * std::pow(a, order) * std::cos(a * u + ph);
                }
            }
        }
        const double ph = order * 1.57079632679489661923;
        auto term = [&](double c, double om) {
            return c * std::pow(om, order) * std::sin(om * u + ph);
        };
        return term(0.5, w) + term(-0.25, w + a) + term(-0.25, w - a);
    }

    void build_antiderivative_cache() {
        cumulative_.assign(kPanels + 1, 0.0);
        const double panel_w = width_ / kPanels;
        for (int k = 0; k < kPanels; ++k) {
            const double a = t0_ + k * panel_w;
            double s = 0.0;
            for (int j = 0; j < kPanelOrder; ++j) {
                const double half = 0.5 * panel_w;
                const double node = a + half * (1.0 + panel_rule_.nodes[j]);
                s += half * panel_rule_.weights[j] * eval(node, 0);
            }
            cumulative_[k + 1] = cumulative_[k] + s;
        }
    }
};

inline std::shared_ptr<const Signature> hann_pulse(double t0, double width, double carrier) {
    return std::make_shared<HannPulse>(t0, width, carrier);
}

} // namespace emh
