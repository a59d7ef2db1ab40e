#include "canpinn/network.hpp"

#include "canpinn/rng.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>
#include <sstream>

namespace canpinn {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) throw std::invalid_argument("topology: expected '" + std::string(1, c) + "' at position " + std::to_string(i));
    }
    std::string ident() {
        std::size_t start = i;
        while (!done() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (i == start) throw std::invalid_argument("topology: expected a name at position " + std::to_string(i));
        return s.substr(start, i - start);
    }
    int number() {
        std::size_t start = i;
        while (!done() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw std::invalid_argument("topology: expected a width at position " + std::to_string(i));
        return std::stoi(s.substr(start, i - start));
    }
};

// A branch is "w-w-...-(name)" with the width list possibly empty.
HeadSpec parse_branch(Cursor& c) {
    HeadSpec h;
    while (!c.eat('(')) {
        h.widths.push_back(c.number());
        c.expect('-');
    }
    h.name = c.ident();
    c.expect(')');
    return h;
}

} // namespace

NetworkConfig NetworkConfig::from_topology(const std::string& raw) {
    std::string s;
    s.reserve(raw.size());
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);

    Cursor c{s};
    NetworkConfig cfg;

    c.expect('(');
    cfg.inputs.push_back(c.ident());
    while (c.eat(',')) cfg.inputs.push_back(c.ident());
    c.expect(')');

    // trunk widths until the head part starts
    while (true) {
        c.expect('-');
        if (c.peek() == '(' || c.peek() == '[') break;
        cfg.trunk.push_back(c.number());
    }

    if (c.eat('[')) {
        cfg.heads.push_back(parse_branch(c));
        while (c.eat(',')) cfg.heads.push_back(parse_branch(c));
        c.expect(']');
    } else {
        cfg.heads.push_back(parse_branch(c));
    }
    if (!c.done()) throw std::invalid_argument("topology: trailing characters at position " + std::to_string(c.i));

    cfg.validate();
    return cfg;
}

std::string NetworkConfig::topology() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < inputs.size(); ++i) out << (i ? "," : "") << inputs[i];
    out << ')';
    for (int w : trunk) out << '-' << w;
    auto branch = [&out](const HeadSpec& h) {
        for (int w : h.widths) out << w << '-';
        out << '(' << h.name << ')';
    };
    if (heads.size() == 1 && heads[0].widths.empty()) {
        out << '-';
        branch(heads[0]);
    } else {
        out << "-[";
        for (std::size_t i = 0; i < heads.size(); ++i) {
            if (i) out << ", ";
            branch(heads[i]);
        }
        out << ']';
    }
    return out.str();
}

void NetworkConfig::validate() const {
    if (inputs.empty() || inputs.size() > 3) throw std::invalid_argument("network: 1 to 3 inputs required");
    if (trunk.empty()) throw std::invalid_argument("network: at least one hidden layer required");
    for (int w : trunk)
        if (w < 1) throw std::invalid_argument("network: trunk widths must be >= 1");
    if (heads.empty()) throw std::invalid_argument("network: at least one head required");
    for (const HeadSpec& h : heads) {
        if (h.name.empty()) throw std::invalid_argument("network: empty head name");
        for (int w : h.widths)
            if (w < 1) throw std::invalid_argument("network: head widths must be >= 1");
    }
    for (std::size_t i = 0; i < heads.size(); ++i)
        for (std::size_t j = i + 1; j < heads.size(); ++j)
            if (heads[i].name == heads[j].name)
                throw std::invalid_argument("network: duplicate head name " + heads[i].name);
    if (first_layer_sigma <= 0.0) throw std::invalid_argument("network: sigma must be positive");
}

Network::Network(NetworkConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    int prev = cfg_.input_dim();
    for (std::size_t i = 0; i < cfg_.trunk.size(); ++i) {
        const std::string base = "trunk." + std::to_string(i);
        trunk_.push_back(Layer{base + ".w", base + ".b", prev, cfg_.trunk[i]});
        prev = cfg_.trunk[i];
    }
    const int trunk_width = prev;
    for (const HeadSpec& h : cfg_.heads) {
        std::vector<Layer> layers;
        prev = trunk_width;
        for (std::size_t i = 0; i < h.widths.size(); ++i) {
            const std::string base = "head." + h.name + "." + std::to_string(i);
            layers.push_back(Layer{base + ".w", base + ".b", prev, h.widths[i]});
            prev = h.widths[i];
        }
        const std::string base = "head." + h.name + ".out";
        layers.push_back(Layer{base + ".w", base + ".b", prev, 1});
        heads_.push_back(std::move(layers));
    }
    param_count_ = 0;
    auto count = [this](const Layer& l) { param_count_ += static_cast<std::size_t>(l.in) * l.out + l.out; };
    for (const Layer& l : trunk_) count(l);
    for (const auto& hl : heads_)
        for (const Layer& l : hl) count(l);
}

int Network::head_index(std::string_view name) const {
    for (std::size_t i = 0; i < cfg_.heads.size(); ++i)
        if (cfg_.heads[i].name == name) return static_cast<int>(i);
    return -1;
}

ParamStore Network::init_params(std::uint64_t seed) const {
    ParamStore store;
    Rng rng(seed);
    bool first = true;
    auto init_layer = [&](const Layer& l) {
        const std::size_t w_off = store.add_slice(l.weight_slice, static_cast<std::size_t>(l.in) * l.out);
        store.add_slice(l.bias_slice, static_cast<std::size_t>(l.out)); // biases stay zero
        if (first) {
            for (std::size_t k = 0; k < static_cast<std::size_t>(l.in) * l.out; ++k)
                store[w_off + k] = cfg_.first_layer_sigma * rng.normal();
            first = false;
        } else {
            const double bound = std::sqrt(6.0 / static_cast<double>(l.in));
            for (std::size_t k = 0; k < static_cast<std::size_t>(l.in) * l.out; ++k)
                store[w_off + k] = rng.uniform(-bound, bound);
        }
    };
    for (const Layer& l : trunk_) init_layer(l);
    for (const auto& hl : heads_)
        for (const Layer& l : hl) init_layer(l);
    return store;
}

void Network::check_store(const ParamStore& params) const {
    auto check = [&](const Layer& l) {
        const ParamStore::Slice* w = params.find_slice(l.weight_slice);
        const ParamStore::Slice* b = params.find_slice(l.bias_slice);
        if (!w || !b || w->count != static_cast<std::size_t>(l.in) * l.out || b->count != static_cast<std::size_t>(l.out))
            throw std::invalid_argument("network: parameter store does not match configuration at " + l.weight_slice);
    };
    for (const Layer& l : trunk_) check(l);
    for (const auto& hl : heads_)
        for (const Layer& l : hl) check(l);
}

BoundNetwork::BoundNetwork(Tape& tape, const Network& net, const ParamStore& params) : tape_(&tape), net_(net) {
    net.check_store(params);
    if (tape.bound_params() != &params)
        throw std::invalid_argument("BoundNetwork: tape is not rewound onto this parameter store");
    auto bind = [&](const Network::Layer& l) {
        BoundLayer bl;
        bl.in = l.in;
        bl.out = l.out;
        const ParamStore::Slice* w = params.find_slice(l.weight_slice);
        const ParamStore::Slice* b = params.find_slice(l.bias_slice);
        bl.w.reserve(w->count);
        for (std::size_t k = 0; k < w->count; ++k) bl.w.push_back(tape.param(w->offset + k));
        bl.b.reserve(b->count);
        for (std::size_t k = 0; k < b->count; ++k) bl.b.push_back(tape.param(b->offset + k));
        return bl;
    };
    for (const auto& l : net.trunk_layers()) trunk_.push_back(bind(l));
    for (const auto& hl : net.head_layers()) {
        std::vector<BoundLayer> bls;
        for (const auto& l : hl) bls.push_back(bind(l));
        heads_.push_back(std::move(bls));
    }
}

// The feature layer sees raw coordinates, so its pre-activations have the
// weights themselves as first derivatives and vanishing second derivatives;
// building them directly keeps the tape small.
std::vector<Jet2> BoundNetwork::first_layer(const Point& p, int order) {
    Tape& t = *tape_;
    const BoundLayer& l = trunk_.front();
    const int d = p.dim();
    std::array<Var, 3> x{};
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = t.constant(p[i]);
    const Var zero = (order >= 1) ? t.constant(0.0) : Var{};

    std::vector<Jet2> out;
    out.reserve(static_cast<std::size_t>(l.out));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < l.out; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * d;
        Var acc = t.mul(l.w[row], x[0]);
        for (int i = 1; i < d; ++i) acc = t.add(acc, t.mul(l.w[row + static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i)]));
        acc = t.add(acc, l.b[static_cast<std::size_t>(j)]);

        Jet2 z;
        z.dim = d;
        z.order = order;
        z.value = acc;
        for (int i = 0; i < d && order >= 1; ++i) {
            z.grad[static_cast<std::size_t>(i)] = l.w[row + static_cast<std::size_t>(i)];
            if (order >= 2) z.diag2[static_cast<std::size_t>(i)] = zero;
        }
        out.push_back(net_.config().sinusoidal_first ? jet::sin(t, jet::scale(t, z, two_pi)) : jet::sin(t, z));
    }
    return out;
}

std::vector<Jet2> BoundNetwork::affine(const BoundLayer& l, const std::vector<Jet2>& in, int order) {
    Tape& t = *tape_;
    std::vector<Jet2> out;
    out.reserve(static_cast<std::size_t>(l.out));
    const int d = in.front().dim;
    for (int j = 0; j < l.out; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(l.in);
        auto weighted = [&](std::size_t i) {
            const Var w = l.w[row + i];
            const Jet2& f = in[i];
            Jet2 h;
            h.dim = d;
            h.order = order;
            h.value = t.mul(w, f.value);
            for (int k = 0; k < d && order >= 1; ++k) {
                const auto kk = static_cast<std::size_t>(k);
                h.grad[kk] = t.mul(w, f.grad[kk]);
                if (order >= 2) h.diag2[kk] = t.mul(w, f.diag2[kk]);
            }
            return h;
        };
        Jet2 acc = weighted(0);
        for (std::size_t i = 1; i < static_cast<std::size_t>(l.in); ++i) acc = jet::add(t, acc, weighted(i));
        acc.value = t.add(acc.value, l.b[static_cast<std::size_t>(j)]);
        out.push_back(acc);
    }
    return out;
}

std::vector<Jet2> BoundNetwork::trunk_out(const Point& p, int order) {
    if (p.dim() != net_.config().input_dim())
        throw std::invalid_argument("network: point dimension does not match inputs");
    std::vector<Jet2> h = first_layer(p, order);
    for (std::size_t i = 1; i < trunk_.size(); ++i) {
        h = affine(trunk_[i], h, order);
        for (Jet2& z : h) z = jet::sin(*tape_, z);
    }
    return h;
}

Jet2 BoundNetwork::head_out(std::vector<Jet2> h, int head, int order) {
    for (Jet2& z : h) z.order = std::min(z.order, order);
    const auto& layers = heads_[static_cast<std::size_t>(head)];
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        h = affine(layers[i], h, order);
        for (Jet2& z : h) z = jet::sin(*tape_, z);
    }
    return affine(layers.back(), h, order).front();
}

Jet2 BoundNetwork::forward_head(const Point& p, int head, int order) {
    if (head < 0 || head >= static_cast<int>(heads_.size()))
        throw std::invalid_argument("network: no such head");
    return head_out(trunk_out(p, order), head, order);
}

std::vector<Jet2> BoundNetwork::forward(const Point& p, int order) {
    std::vector<Jet2> trunk = trunk_out(p, order);
    std::vector<Jet2> out;
    out.reserve(heads_.size());
    for (std::size_t h = 0; h < heads_.size(); ++h) out.push_back(head_out(trunk, static_cast<int>(h), order));
    return out;
}

CachedNetwork::CachedNetwork(Tape& tape, const Network& net, const ParamStore& params) : net_(tape, net, params) {}

CachedNetwork::Entry& CachedNetwork::entry_for(const Point& p) {
    for (Entry& e : entries_)
        if (e.p == p) return e;
    Entry e;
    e.p = p;
    e.head_order.assign(static_cast<std::size_t>(net_.network().head_count()), -1);
    e.heads.resize(static_cast<std::size_t>(net_.network().head_count()));
    entries_.push_back(std::move(e));
    return entries_.back();
}

Jet2 CachedNetwork::head(const Point& p, int head, int order) {
    if (head < 0 || head >= net_.network().head_count()) throw std::invalid_argument("network: no such head");
    Entry& e = entry_for(p);
    if (e.trunk_order < order) {
        e.trunk = net_.trunk_out(p, order);
        e.trunk_order = order;
        std::fill(e.head_order.begin(), e.head_order.end(), -1);
    }
    auto h = static_cast<std::size_t>(head);
    if (e.head_order[h] < order) {
        e.heads[h] = net_.head_out(e.trunk, head, order);
        e.head_order[h] = order;
    }
    return e.heads[h];
}

Var CachedNetwork::head_value(const Point& p, int head) { return this->head(p, head, 0).value; }

void CachedNetwork::clear() { entries_.clear(); }

} // namespace canpinn
