#include "canpinn/jet.hpp"

#include <algorithm>

namespace canpinn::jet {

namespace {

int common_order(const Jet2& f, const Jet2& g) { return std::min(f.order, g.order); }

void require_same_dim(const Jet2& f, const Jet2& g) {
    if (f.dim != g.dim) throw std::invalid_argument("jet: input dimension mismatch");
}

Jet2 make(int dim, int order) {
    Jet2 h;
    h.dim = dim;
    h.order = order;
    return h;
}

/// Chain rule for h = sigma(f) given nodes for sigma(f), sigma'(f), sigma''(f).
Jet2 unary_chain(Tape& t, const Jet2& f, Var value, Var d1, Var d2) {
    Jet2 h = make(f.dim, f.order);
    h.value = value;
    for (int i = 0; i < f.dim && f.order >= 1; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h.grad[k] = t.mul(d1, f.grad[k]);
        if (f.order >= 2) {
            const Var g2 = t.mul(f.grad[k], f.grad[k]);
            h.diag2[k] = t.add(t.mul(d2, g2), t.mul(d1, f.diag2[k]));
        }
    }
    return h;
}

} // namespace

Jet2 constant(Tape& t, double v, int dim, int order) {
    Jet2 h = make(dim, order);
    h.value = t.constant(v);
    if (order >= 1) {
        const Var zero = t.constant(0.0);
        for (int i = 0; i < dim; ++i) {
            h.grad[static_cast<std::size_t>(i)] = zero;
            if (order >= 2) h.diag2[static_cast<std::size_t>(i)] = zero;
        }
    }
    return h;
}

Jet2 of_scalar(Tape& t, Var v, int dim, int order) {
    Jet2 h = constant(t, 0.0, dim, order);
    h.value = v;
    return h;
}

Jet2 input(Tape& t, const Point& p, int axis, int order) {
    if (axis < 0 || axis >= p.dim()) throw std::invalid_argument("jet::input: axis out of range");
    Jet2 h = make(p.dim(), order);
    h.value = t.constant(p[axis]);
    if (order >= 1) {
        const Var zero = t.constant(0.0);
        const Var one = t.constant(1.0);
        for (int i = 0; i < p.dim(); ++i) {
            const auto k = static_cast<std::size_t>(i);
            h.grad[k] = (i == axis) ? one : zero;
            if (order >= 2) h.diag2[k] = zero;
        }
    }
    return h;
}

Jet2 add(Tape& t, const Jet2& f, const Jet2& g) {
    require_same_dim(f, g);
    Jet2 h = make(f.dim, common_order(f, g));
    h.value = t.add(f.value, g.value);
    for (int i = 0; i < h.dim && h.order >= 1; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h.grad[k] = t.add(f.grad[k], g.grad[k]);
        if (h.order >= 2) h.diag2[k] = t.add(f.diag2[k], g.diag2[k]);
    }
    return h;
}

Jet2 sub(Tape& t, const Jet2& f, const Jet2& g) {
    require_same_dim(f, g);
    Jet2 h = make(f.dim, common_order(f, g));
    h.value = t.sub(f.value, g.value);
    for (int i = 0; i < h.dim && h.order >= 1; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h.grad[k] = t.sub(f.grad[k], g.grad[k]);
        if (h.order >= 2) h.diag2[k] = t.sub(f.diag2[k], g.diag2[k]);
    }
    return h;
}

Jet2 mul(Tape& t, const Jet2& f, const Jet2& g) {
    require_same_dim(f, g);
    Jet2 h = make(f.dim, common_order(f, g));
    h.value = t.mul(f.value, g.value);
    for (int i = 0; i < h.dim && h.order >= 1; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h.grad[k] = t.add(t.mul(f.grad[k], g.value), t.mul(f.value, g.grad[k]));
        if (h.order >= 2) {
            const Var cross = t.scale(t.mul(f.grad[k], g.grad[k]), 2.0);
            h.diag2[k] = t.add(t.add(t.mul(f.diag2[k], g.value), cross), t.mul(f.value, g.diag2[k]));
        }
    }
    return h;
}

Jet2 div(Tape& t, const Jet2& f, const Jet2& g) {
    require_same_dim(f, g);
    Jet2 h = make(f.dim, common_order(f, g));
    h.value = t.div(f.value, g.value);
    for (int i = 0; i < h.dim && h.order >= 1; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h.grad[k] = t.div(t.sub(f.grad[k], t.mul(h.value, g.grad[k])), g.value);
        if (h.order >= 2) {
            const Var two_hg = t.scale(t.mul(h.grad[k], g.grad[k]), 2.0);
            const Var num = t.sub(t.sub(f.diag2[k], two_hg), t.mul(h.value, g.diag2[k]));
            h.diag2[k] = t.div(num, g.value);
        }
    }
    return h;
}

Jet2 neg(Tape& t, const Jet2& f) {
    Jet2 h = make(f.dim, f.order);
    h.value = t.neg(f.value);
    for (int i = 0; i < h.dim && h.order >= 1; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h.grad[k] = t.neg(f.grad[k]);
        if (h.order >= 2) h.diag2[k] = t.neg(f.diag2[k]);
    }
    return h;
}

Jet2 scale(Tape& t, const Jet2& f, double c) {
    Jet2 h = make(f.dim, f.order);
    h.value = t.scale(f.value, c);
    for (int i = 0; i < h.dim && h.order >= 1; ++i) {
        const auto k = static_cast<std::size_t>(i);
        h.grad[k] = t.scale(f.grad[k], c);
        if (h.order >= 2) h.diag2[k] = t.scale(f.diag2[k], c);
    }
    return h;
}

Jet2 sin(Tape& t, const Jet2& f) {
    const Var s = t.sin(f.value);
    const Var c = t.cos(f.value);
    return unary_chain(t, f, s, c, t.neg(s));
}

Jet2 cos(Tape& t, const Jet2& f) {
    const Var c = t.cos(f.value);
    const Var s = t.sin(f.value);
    return unary_chain(t, f, c, t.neg(s), t.neg(c));
}

Jet2 tanh(Tape& t, const Jet2& f) {
    const Var v = t.tanh(f.value);
    const Var d1 = t.sub(t.constant(1.0), t.mul(v, v));
    const Var d2 = t.scale(t.mul(v, d1), -2.0);
    return unary_chain(t, f, v, d1, d2);
}

Jet2 exp(Tape& t, const Jet2& f) {
    const Var e = t.exp(f.value);
    return unary_chain(t, f, e, e, e);
}

Jet2 pow_int(Tape& t, const Jet2& f, int n) {
    const Var v = t.pow_int(f.value, n);
    const Var d1 = (n == 0) ? t.constant(0.0) : t.scale(t.pow_int(f.value, n - 1), static_cast<double>(n));
    const Var d2 = (n == 0 || n == 1)
                       ? t.constant(0.0)
                       : t.scale(t.pow_int(f.value, n - 2), static_cast<double>(n) * static_cast<double>(n - 1));
    return unary_chain(t, f, v, d1, d2);
}

Jet2 sqrt(Tape& t, const Jet2& f) {
    const Var s = t.sqrt(f.value);
    const Var d1 = t.div(t.constant(0.5), s);
    const Var d2 = t.scale(t.div(d1, f.value), -0.5);
    return unary_chain(t, f, s, d1, d2);
}

Jet2 apply(Tape& t, OpKind op, std::span<const Jet2> in, double c) {
    auto unary = [&](auto fn) {
        if (in.size() != 1) throw std::invalid_argument("jet::apply: unary op needs one input");
        return fn(t, in[0]);
    };
    auto binary = [&](auto fn) {
        if (in.size() != 2) throw std::invalid_argument("jet::apply: binary op needs two inputs");
        return fn(t, in[0], in[1]);
    };
    switch (op) {
    case OpKind::Add: return binary([](Tape& tp, const Jet2& f, const Jet2& g) { return add(tp, f, g); });
    case OpKind::Sub: return binary([](Tape& tp, const Jet2& f, const Jet2& g) { return sub(tp, f, g); });
    case OpKind::Mul: return binary([](Tape& tp, const Jet2& f, const Jet2& g) { return mul(tp, f, g); });
    case OpKind::Div: return binary([](Tape& tp, const Jet2& f, const Jet2& g) { return div(tp, f, g); });
    case OpKind::Neg: return unary([](Tape& tp, const Jet2& f) { return neg(tp, f); });
    case OpKind::Scale:
        if (in.size() != 1) throw std::invalid_argument("jet::apply: scale needs one input");
        return scale(t, in[0], c);
    case OpKind::Sin: return unary([](Tape& tp, const Jet2& f) { return sin(tp, f); });
    case OpKind::Cos: return unary([](Tape& tp, const Jet2& f) { return cos(tp, f); });
    case OpKind::Tanh: return unary([](Tape& tp, const Jet2& f) { return tanh(tp, f); });
    case OpKind::Exp: return unary([](Tape& tp, const Jet2& f) { return exp(tp, f); });
    case OpKind::PowInt:
        if (in.size() != 1) throw std::invalid_argument("jet::apply: pow needs one input");
        return pow_int(t, in[0], static_cast<int>(c));
    case OpKind::Sqrt: return unary([](Tape& tp, const Jet2& f) { return sqrt(tp, f); });
    default:
        throw std::invalid_argument("jet::apply: op kind has no jet rule");
    }
}

} // namespace canpinn::jet
