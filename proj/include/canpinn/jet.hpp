#pragma once

#include "canpinn/point.hpp"
#include "canpinn/tape.hpp"

#include <array>
#include <span>
#include <stdexcept>

namespace canpinn {

/// Value of a field at a point together with its first and diagonal second
/// derivatives with respect to the spatial-temporal inputs, each component a
/// tape node so that anything built from them stays parameter-differentiable.
/// Mixed second derivatives are not carried; no residual in this project
/// needs them.
///
/// `order` limits which components exist: 0 = value only, 1 = value + grad,
/// 2 = all. Lower orders are a fast path for losses that never read the
/// missing components; reading an absent component throws.
struct Jet2 {
    Var value;
    std::array<Var, 3> grad{};
    std::array<Var, 3> diag2{};
    int dim = 0;
    int order = 2;

    Var grad_at(int axis) const {
        if (order < 1 || axis < 0 || axis >= dim)
            throw std::logic_error("Jet2: first derivative not carried for this axis");
        return grad[static_cast<std::size_t>(axis)];
    }
    Var diag2_at(int axis) const {
        if (order < 2 || axis < 0 || axis >= dim)
            throw std::logic_error("Jet2: second derivative not carried for this axis");
        return diag2[static_cast<std::size_t>(axis)];
    }
};

namespace jet {

/// Jet of a constant: zero derivatives of both orders.
Jet2 constant(Tape& t, double v, int dim, int order = 2);

/// Jet of a bare tape scalar (e.g. a trainable coefficient): the node carries
/// parameter sensitivity but no input-derivative content.
Jet2 of_scalar(Tape& t, Var v, int dim, int order = 2);

/// Seed jet of coordinate `axis` at point p: value x_axis, grad e_axis, zero
/// second derivatives.
Jet2 input(Tape& t, const Point& p, int axis, int order = 2);

Jet2 add(Tape& t, const Jet2& f, const Jet2& g);
Jet2 sub(Tape& t, const Jet2& f, const Jet2& g);
Jet2 mul(Tape& t, const Jet2& f, const Jet2& g);
Jet2 div(Tape& t, const Jet2& f, const Jet2& g);
Jet2 neg(Tape& t, const Jet2& f);
Jet2 scale(Tape& t, const Jet2& f, double c);
Jet2 sin(Tape& t, const Jet2& f);
Jet2 cos(Tape& t, const Jet2& f);
Jet2 tanh(Tape& t, const Jet2& f);
Jet2 exp(Tape& t, const Jet2& f);
Jet2 pow_int(Tape& t, const Jet2& f, int n);
Jet2 sqrt(Tape& t, const Jet2& f);

/// Uniform entry point dispatching on op kind; `c` carries the Scale constant
/// or the PowInt exponent.
Jet2 apply(Tape& t, OpKind op, std::span<const Jet2> inputs, double c = 0.0);

} // namespace jet
} // namespace canpinn
