#include "canpinn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace canpinn {

namespace {

constexpr char kMagic[8] = {'C', 'A', 'N', 'P', 'N', 'N', '0', '1'};

void write_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

static_assert(std::endian::native == std::endian::little, "checkpoint writer assumes a little-endian host");

} // namespace

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    nlohmann::json header;
    header["format"] = "canpinn-checkpoint";
    header["version"] = 1;
    header["network"] = {
        {"topology", c.network.topology()},
        {"sinusoidal_first", c.network.sinusoidal_first},
        {"first_layer_sigma", c.network.first_layer_sigma},
    };
    header["param_count"] = c.params.size();
    header["slices"] = nlohmann::json::array();
    for (const auto& s : c.params.slices())
        header["slices"].push_back({{"name", s.name}, {"offset", s.offset}, {"count", s.count}});
    if (!c.meta.is_null()) header["meta"] = c.meta;

    const std::string json = header.dump();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    out.write(kMagic, sizeof(kMagic));
    write_u64_le(out, json.size());
    out.write(json.data(), static_cast<std::streamsize>(json.size()));
    out.write(reinterpret_cast<const char*>(c.params.values().data()),
              static_cast<std::streamsize>(c.params.size() * sizeof(double)));
    if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const std::uint64_t json_len = read_u64_le(in);
    std::string json(json_len, '\0');
    in.read(json.data(), static_cast<std::streamsize>(json_len));
    if (!in) throw std::runtime_error("checkpoint: truncated header in " + path);

    const nlohmann::json header = nlohmann::json::parse(json);
    Checkpoint c;
    c.network = NetworkConfig::from_topology(header.at("network").at("topology").get<std::string>());
    c.network.sinusoidal_first = header.at("network").at("sinusoidal_first").get<bool>();
    c.network.first_layer_sigma = header.at("network").at("first_layer_sigma").get<double>();
    if (header.contains("meta")) c.meta = header["meta"];

    for (const auto& s : header.at("slices"))
        c.params.add_slice(s.at("name").get<std::string>(), s.at("count").get<std::size_t>());
    const auto count = header.at("param_count").get<std::size_t>();
    if (count != c.params.size()) throw std::runtime_error("checkpoint: slice/parameter count mismatch in " + path);

    in.read(reinterpret_cast<char*>(c.params.values().data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint: truncated parameters in " + path);
    return c;
}

} // namespace canpinn
