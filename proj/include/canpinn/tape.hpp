#pragma once

#include "canpinn/param_store.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace canpinn {

/// Handle to a scalar node on a Tape.
struct Var {
    std::int32_t idx = -1;
    bool valid() const { return idx >= 0; }
};

enum class OpKind : std::uint8_t {
    Constant,
    Param,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Scale, // multiply by compile-time constant
    Sin,
    Cos,
    Tanh,
    Exp,
    PowInt,
    Sqrt,
};

/// Raised for operations outside their domain (division by zero, square root
/// of a non-positive value, ...) so they fail loudly instead of producing NaN.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Recorded computation graph over scalars. Forward values are computed at
/// record time; `backward` runs a reverse sweep from any scalar node and
/// accumulates d(node)/d(param) into a caller-owned gradient buffer.
///
/// A tape and the ParamStore bound to it form a single-owner unit: one tape
/// must not be shared between threads mid-recording. Independent tapes are
/// fully isolated.
class Tape {
public:
    /// Drop all nodes (capacity retained) and bind the parameter vector whose
    /// entries `param()` will read.
    void rewind(const ParamStore& params) {
        nodes_.clear();
        params_ = &params;
    }
    /// Rewind with no parameters bound (pure input-jet computations).
    void rewind() {
        nodes_.clear();
        params_ = nullptr;
    }

    /// Drop every node recorded after `mark` (from an earlier `size()` call).
    /// Nodes at indices below `mark` stay valid.
    void truncate(std::size_t mark) {
        if (mark > nodes_.size()) throw std::invalid_argument("Tape::truncate: mark beyond end");
        nodes_.resize(mark);
    }

    std::size_t size() const { return nodes_.size(); }

    Var constant(double v) { return push(OpKind::Constant, -1, -1, v, 0.0); }

    Var param(std::size_t slot) {
        if (!params_) throw std::logic_error("Tape::param: no ParamStore bound");
        if (slot >= params_->size()) throw std::out_of_range("Tape::param: slot out of range");
        return push(OpKind::Param, static_cast<std::int32_t>(slot), -1, (*params_)[slot], 0.0);
    }

    Var add(Var x, Var y) { return push(OpKind::Add, x.idx, y.idx, val(x) + val(y), 0.0); }
    Var sub(Var x, Var y) { return push(OpKind::Sub, x.idx, y.idx, val(x) - val(y), 0.0); }
    Var mul(Var x, Var y) { return push(OpKind::Mul, x.idx, y.idx, val(x) * val(y), 0.0); }

    Var div(Var x, Var y) {
        const double d = val(y);
        if (d == 0.0) throw DomainError("tape: division by zero");
        return push(OpKind::Div, x.idx, y.idx, val(x) / d, 1.0 / d);
    }

    Var neg(Var x) { return push(OpKind::Neg, x.idx, -1, -val(x), 0.0); }

    Var scale(Var x, double c) { return push(OpKind::Scale, x.idx, -1, c * val(x), c); }

    // Unary rules stash their local derivative in `aux` at record time, so the
    // reverse sweep is a single fused multiply-add per node.
    Var sin(Var x) {
        const double v = val(x);
        return push(OpKind::Sin, x.idx, -1, std::sin(v), std::cos(v));
    }
    Var cos(Var x) {
        const double v = val(x);
        return push(OpKind::Cos, x.idx, -1, std::cos(v), -std::sin(v));
    }
    Var tanh(Var x) {
        const double t = std::tanh(val(x));
        return push(OpKind::Tanh, x.idx, -1, t, 1.0 - t * t);
    }
    Var exp(Var x) {
        const double e = std::exp(val(x));
        return push(OpKind::Exp, x.idx, -1, e, e);
    }
    Var pow_int(Var x, int n) {
        const double v = val(x);
        if (v == 0.0 && n < 0) throw DomainError("tape: zero base with negative exponent");
        const double p = ipow(v, n);
        const double d = (n == 0) ? 0.0 : static_cast<double>(n) * ipow(v, n - 1);
        return push(OpKind::PowInt, x.idx, -1, p, d);
    }
    Var sqrt(Var x) {
        const double v = val(x);
        if (v <= 0.0) throw DomainError("tape: square root of non-positive value");
        const double s = std::sqrt(v);
        return push(OpKind::Sqrt, x.idx, -1, s, 0.5 / s);
    }

    double value(Var x) const { return val(x); }

    OpKind op(Var x) const { return nodes_[static_cast<std::size_t>(check(x).idx)].op; }

    /// Reverse sweep from `output`. Accumulates seed * d(output)/d(param[k])
    /// into grad[k]; the caller controls zeroing, which is what makes
    /// gradient accumulation across losses exact term by term.
    void backward(Var output, std::span<double> grad, double seed = 1.0) const {
        check(output);
        if (params_ && grad.size() != params_->size())
            throw std::invalid_argument("Tape::backward: gradient buffer size mismatch");
        const std::size_t n = static_cast<std::size_t>(output.idx) + 1;
        adj_.assign(n, 0.0);
        adj_[n - 1] = seed;
        for (std::size_t k = n; k-- > 0;) {
            const double w = adj_[k];
            if (w == 0.0) continue;
            const Node& nd = nodes_[k];
            switch (nd.op) {
            case OpKind::Constant:
                break;
            case OpKind::Param:
                grad[static_cast<std::size_t>(nd.a)] += w;
                break;
            case OpKind::Add:
                adj_[static_cast<std::size_t>(nd.a)] += w;
                adj_[static_cast<std::size_t>(nd.b)] += w;
                break;
            case OpKind::Sub:
                adj_[static_cast<std::size_t>(nd.a)] += w;
                adj_[static_cast<std::size_t>(nd.b)] -= w;
                break;
            case OpKind::Mul:
                adj_[static_cast<std::size_t>(nd.a)] += w * nodes_[static_cast<std::size_t>(nd.b)].val;
                adj_[static_cast<std::size_t>(nd.b)] += w * nodes_[static_cast<std::size_t>(nd.a)].val;
                break;
            case OpKind::Div:
                adj_[static_cast<std::size_t>(nd.a)] += w * nd.aux;
                adj_[static_cast<std::size_t>(nd.b)] -= w * nd.val * nd.aux;
                break;
            case OpKind::Neg:
                adj_[static_cast<std::size_t>(nd.a)] -= w;
                break;
            default: // Scale and all unary rules: local derivative cached in aux
                adj_[static_cast<std::size_t>(nd.a)] += w * nd.aux;
                break;
            }
        }
    }

    const ParamStore* bound_params() const { return params_; }

private:
    struct Node {
        double val;
        double aux;
        std::int32_t a;
        std::int32_t b;
        OpKind op;
    };

    static double ipow(double x, int n) {
        if (n < 0) return 1.0 / ipow(x, -n);
        double r = 1.0, base = x;
        for (unsigned e = static_cast<unsigned>(n); e; e >>= 1) {
            if (e & 1u) r *= base;
            base *= base;
        }
        return r;
    }

    Var check(Var x) const {
        if (!x.valid() || static_cast<std::size_t>(x.idx) >= nodes_.size())
            throw std::invalid_argument("Tape: invalid node handle");
        return x;
    }

    double val(Var x) const { return nodes_[static_cast<std::size_t>(check(x).idx)].val; }

    Var push(OpKind op, std::int32_t a, std::int32_t b, double v, double aux) {
        nodes_.push_back(Node{v, aux, a, b, op});
        return Var{static_cast<std::int32_t>(nodes_.size() - 1)};
    }

    std::vector<Node> nodes_;
    mutable std::vector<double> adj_;
    const ParamStore* params_ = nullptr;
};

} // namespace canpinn
