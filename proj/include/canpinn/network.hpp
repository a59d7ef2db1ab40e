#pragma once

#include "canpinn/jet.hpp"
#include "canpinn/param_store.hpp"
#include "canpinn/point.hpp"
#include "canpinn/tape.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace canpinn {

struct HeadSpec {
    std::string name;
    std::vector<int> widths; // hidden widths of the branch; may be empty
};

/// Fully connected trunk with one scalar output branch per head. The first
/// hidden layer is a sinusoidal feature map sin(2*pi*(Wv + b)); deeper hidden
/// layers use plain sine activation and every output layer is affine.
struct NetworkConfig {
    std::vector<std::string> inputs; // axis names, e.g. {"x","y"}
    std::vector<int> trunk;          // hidden widths, first entry is the feature layer
    std::vector<HeadSpec> heads;
    bool sinusoidal_first = true;
    double first_layer_sigma = 1.0;

    int input_dim() const { return static_cast<int>(inputs.size()); }

    /// Parse strings like "(x,y)-64-20-20-20-[20-20-20-(u), 20-20-20-(v)]"
    /// or the single-head form "(x)-64-20-20-20-(u)".
    static NetworkConfig from_topology(const std::string& s);
    std::string topology() const;

    void validate() const;
};

class Network {
public:
    explicit Network(NetworkConfig cfg);

    const NetworkConfig& config() const { return cfg_; }

    struct Layer {
        std::string weight_slice;
        std::string bias_slice;
        int in = 0;
        int out = 0;
    };

    const std::vector<Layer>& trunk_layers() const { return trunk_; }
    /// Per head: hidden layers followed by the affine output layer.
    const std::vector<std::vector<Layer>>& head_layers() const { return heads_; }

    int head_count() const { return static_cast<int>(heads_.size()); }
    int head_index(std::string_view name) const; // -1 if absent

    std::size_t param_count() const { return param_count_; }

    /// Feature-layer weights ~ Normal(0, sigma^2), every later weight matrix
    /// ~ He uniform over its fan-in, all biases zero. Deterministic in seed.
    ParamStore init_params(std::uint64_t seed) const;

    /// Check a store laid out by init_params (slice names and sizes).
    void check_store(const ParamStore& params) const;

private:
    NetworkConfig cfg_;
    std::vector<Layer> trunk_;
    std::vector<std::vector<Layer>> heads_;
    std::size_t param_count_ = 0;
};

/// Network bound to one tape and one parameter store: parameter nodes are
/// recorded once and every forward pass reuses them, so repeated probe
/// evaluations within one loss stay cheap.
class BoundNetwork {
public:
    BoundNetwork(Tape& tape, const Network& net, const ParamStore& params);

    /// Jets for every head at p, carrying derivatives up to `order`.
    std::vector<Jet2> forward(const Point& p, int order = 2);
    Jet2 forward_head(const Point& p, int head, int order = 2);

    const Network& network() const { return net_; }
    Tape& tape() { return *tape_; }

private:
    struct BoundLayer {
        std::vector<Var> w; // row-major [out][in]
        std::vector<Var> b;
        int in = 0;
        int out = 0;
    };

    std::vector<Jet2> trunk_out(const Point& p, int order);
    Jet2 head_out(std::vector<Jet2> h, int head, int order);
    std::vector<Jet2> affine(const BoundLayer& l, const std::vector<Jet2>& in, int order);
    std::vector<Jet2> first_layer(const Point& p, int order);

    Tape* tape_;
    const Network& net_;
    std::vector<BoundLayer> trunk_;
    std::vector<std::vector<BoundLayer>> heads_;
};

/// BoundNetwork plus per-point memoisation. Residual assemblers evaluate the
/// same stencil point through several terms; the cache makes those free and
/// shares the trunk between heads. Entries are keyed by exact coordinates.
class CachedNetwork {
public:
    CachedNetwork(Tape& tape, const Network& net, const ParamStore& params);

    Jet2 head(const Point& p, int head, int order);
    /// Value-only convenience (order 0).
    Var head_value(const Point& p, int head);

    void clear();

    const Network& network() const { return net_.network(); }
    Tape& tape() { return net_.tape(); }

private:
    struct Entry {
        Point p;
        int trunk_order = -1;
        std::vector<Jet2> trunk;
        std::vector<int> head_order; // -1 = not computed
        std::vector<Jet2> heads;
    };
    Entry& entry_for(const Point& p);

    BoundNetwork net_;
    std::vector<Entry> entries_;
};

} // namespace canpinn
