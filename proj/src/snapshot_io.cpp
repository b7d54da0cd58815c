#include "declab/snapshot_io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace declab {

namespace {

constexpr char magic[4] = {'D', 'L', 'S', 'F'};
constexpr std::uint32_t container_version = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_u8(std::ostream& os, std::uint8_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::uint8_t get_u8(std::istream& is) {
    std::uint8_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void write_header(std::ostream& os, const Grid& g, int nc, std::uint8_t domain) {
    os.write(magic, 4);
    put_u32(os, container_version);
    put_u32(os, static_cast<std::uint32_t>(g.num_points));
    put_u32(os, static_cast<std::uint32_t>(nc));
    put_f64(os, g.box_length);
    put_u8(os, domain);
}

struct Header {
    int num_points = 0;
    int components = 0;
    double box_length = 0.0;
    std::uint8_t domain = 0;
};

Header read_header(std::istream& is, const std::string& path) {
    char m[4] = {};
    is.read(m, 4);
    if (!is || std::memcmp(m, magic, 4) != 0)
        throw std::runtime_error(path + ": not a snapshot file");
    if (get_u32(is) != container_version)
        throw std::runtime_error(path + ": unsupported snapshot version");
    Header h;
    h.num_points = static_cast<int>(get_u32(is));
    h.components = static_cast<int>(get_u32(is));
    h.box_length = get_f64(is);
    h.domain = get_u8(is);
    if (!is) throw std::runtime_error(path + ": truncated snapshot header");
    return h;
}

} // namespace

void write_snapshot(const std::string& path, const RealField& f) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_header(os, f.grid, f.components(), 0);
    for (int c = 0; c < f.components(); ++c)
        for (int k = 0; k < f.grid.num_points; ++k) put_f64(os, f.values(c, k));
    if (!os) throw std::runtime_error("write failed: " + path);
}

void write_snapshot(const std::string& path, const SpectralField& f) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_header(os, f.grid, f.components(), 1);
    for (int c = 0; c < f.components(); ++c)
        for (int k = 0; k < f.grid.num_points; ++k) {
            put_f64(os, f.coeff(c, k).real());
            put_f64(os, f.coeff(c, k).imag());
        }
    if (!os) throw std::runtime_error("write failed: " + path);
}

bool read_snapshot(const std::string& path, RealField& real_out,
                   SpectralField& spectral_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    const Header h = read_header(is, path);
    const Grid g(h.num_points, h.box_length);
    if (h.domain == 0) {
        RealField f(g, h.components);
        for (int c = 0; c < h.components; ++c)
            for (int k = 0; k < h.num_points; ++k) f.values(c, k) = get_f64(is);
        if (!is) throw std::runtime_error(path + ": truncated payload");
        real_out = std::move(f);
        return false;
    }
    SpectralField f(g, h.components);
    for (int c = 0; c < h.components; ++c)
        for (int k = 0; k < h.num_points; ++k) {
            const double re = get_f64(is);
            const double im = get_f64(is);
            f.coeff(c, k) = std::complex<double>(re, im);
        }
    if (!is) throw std::runtime_error(path + ": truncated payload");
    spectral_out = std::move(f);
    return true;
}

void write_csv_series(const std::string& path,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    for (size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << '\n';
    os << std::setprecision(17);
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("csv row width mismatch");
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace declab
