#include "vnlw/field_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vnlw {

namespace {

constexpr char kMagic[8] = {'V', 'N', 'L', 'W', 'F', 'L', 'D', '1'};
constexpr std::uint64_t kVersion = 1;

} // namespace

void write_field_snapshot(const std::string& path, const SpectralField& f,
                          double time) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");

    char header[32] = {};
    std::memcpy(header, kMagic, 8);
    const std::uint32_t n = static_cast<std::uint32_t>(f.grid->n());
    const std::uint32_t herm = f.hermitian ? 1 : 0;
    std::memcpy(header + 8, &n, 4);
    std::memcpy(header + 12, &herm, 4);
    std::memcpy(header + 16, &time, 8);
    std::memcpy(header + 24, &kVersion, 8);
    os.write(header, 32);
    os.write(reinterpret_cast<const char*>(f.coeff.data()),
             static_cast<std::streamsize>(f.coeff.size() * sizeof(cplx)));
    if (!os) throw std::runtime_error("short write to " + path);
    os.close();

    nlohmann::json meta;
    meta["modes_per_axis"] = f.grid->n();
    meta["pad_factor"] = f.grid->pad_factor();
    meta["hermitian"] = f.hermitian;
    meta["time"] = time;
    meta["ordering"] = "dft-rowmajor";
    meta["endianness"] = "little";
    meta["format_version"] = kVersion;
    std::ofstream js(path + ".json", std::ios::trunc);
    js << meta.dump(2) << "\n";
}

FieldSnapshot read_field_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    char header[32];
    is.read(header, 32);
    if (!is || std::memcmp(header, kMagic, 8) != 0) {
        throw std::runtime_error("bad field snapshot header in " + path);
    }
    std::uint32_t n = 0, herm = 0;
    double time = 0.0;
    std::memcpy(&n, header + 8, 4);
    std::memcpy(&herm, header + 12, 4);
    std::memcpy(&time, header + 16, 8);

    double pad = 1.5;
    {
        std::ifstream js(path + ".json");
        if (js) {
            nlohmann::json meta = nlohmann::json::parse(js, nullptr, false);
            if (!meta.is_discarded() && meta.contains("pad_factor")) {
                pad = meta["pad_factor"].get<double>();
            }
        }
    }

    FieldSnapshot snap;
    snap.time = time;
    snap.field = SpectralField(make_grid(static_cast<int>(n), pad), herm != 0);
    is.read(reinterpret_cast<char*>(snap.field.coeff.data()),
            static_cast<std::streamsize>(snap.field.coeff.size() * sizeof(cplx)));
    if (!is) throw std::runtime_error("truncated field snapshot " + path);
    return snap;
}

std::string file_content_hash(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot hash missing file " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[4096];
    while (is) {
        is.read(buf, sizeof(buf));
        const std::streamsize got = is.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    char out[32];
    std::snprintf(out, sizeof(out), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(h));
    return out;
}

} // namespace vnlw
