#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace canpinn {

/// Flat trainable-parameter vector with named, contiguous, non-overlapping
/// slices (layer weight blocks, bias blocks, scalar inverse-problem
/// parameters). Slices are appended in registration order and jointly cover
/// the vector.
class ParamStore {
public:
    struct Slice {
        std::string name;
        std::size_t offset = 0;
        std::size_t count = 0;
    };

    std::size_t add_slice(std::string name, std::size_t count) {
        if (count == 0) throw std::invalid_argument("ParamStore: empty slice " + name);
        if (find_slice(name)) throw std::invalid_argument("ParamStore: duplicate slice " + name);
        const std::size_t offset = values_.size();
        slices_.push_back(Slice{std::move(name), offset, count});
        values_.resize(offset + count, 0.0);
        return offset;
    }

    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    const std::vector<Slice>& slices() const { return slices_; }

    const Slice* find_slice(std::string_view name) const {
        for (const Slice& s : slices_)
            if (s.name == name) return &s;
        return nullptr;
    }

    std::span<double> slice(std::string_view name) {
        const Slice* s = find_slice(name);
        if (!s) throw std::invalid_argument("ParamStore: no slice named " + std::string(name));
        return {values_.data() + s->offset, s->count};
    }
    std::span<const double> slice(std::string_view name) const {
        const Slice* s = find_slice(name);
        if (!s) throw std::invalid_argument("ParamStore: no slice named " + std::string(name));
        return {values_.data() + s->offset, s->count};
    }

    /// Name of the slice containing a flat index (diagnostics).
    const std::string& slice_name_of(std::size_t index) const {
        for (const Slice& s : slices_)
            if (index >= s.offset && index < s.offset + s.count) return s.name;
        throw std::out_of_range("ParamStore: index outside all slices");
    }

private:
    std::vector<double> values_;
    std::vector<Slice> slices_;
};

} // namespace canpinn
