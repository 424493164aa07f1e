#include "skewrd/snapshot_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "skewrd/config.hpp"
#include "skewrd/error.hpp"

namespace skewrd {

namespace {

constexpr std::uint32_t binary_version = 1;
constexpr const char* labels[6] = {"J_I", "A_I", "H_I", "J_S", "A_S", "H_S"};

const GridFunction2D<double>& density(const FieldState& s, int e) {
    const RealField& f = s.fields[static_cast<std::size_t>(e % 3)];
    return e < 3 ? f.I : f.S;
}

GridFunction2D<double>& density(FieldState& s, int e) {
    RealField& f = s.fields[static_cast<std::size_t>(e % 3)];
    return e < 3 ? f.I : f.S;
}

template <typename T>
void put_le(std::ostream& out, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    out.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
    unsigned char b[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(b), sizeof(T))) fail(ErrorCode::io_failure, "truncated snapshot file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

const char* density_label(int index) { return labels[index]; }

void write_snapshots_csv(const std::vector<FieldState>& snapshots, std::ostream& out) {
    out << "t,species,x,y,value\n";
    for (const FieldState& s : snapshots) {
        const std::string t = format_double(s.t);
        for (int e = 0; e < 6; ++e) {
            const GridFunction2D<double>& g = density(s, e);
            for (Eigen::Index i = 0; i <= g.nx(); ++i) {
                const std::string x = format_double(g.x(i));
                for (Eigen::Index j = 0; j <= g.ny(); ++j) {
                    out << t << ',' << labels[e] << ',' << x << ',' << format_double(g.y(j)) << ','
                        << format_double(g.values(i, j)) << '\n';
                }
            }
        }
    }
    if (!out) fail(ErrorCode::io_failure, "failed to write snapshot csv");
}

void write_snapshots_binary(const std::vector<FieldState>& snapshots, std::ostream& out) {
    out.write("SKPD", 4);
    Eigen::Index nI = 0, nS = 0, ny = 0;
    if (!snapshots.empty()) {
        nI = snapshots[0].fields[0].I.nx();
        nS = snapshots[0].fields[0].S.nx();
        ny = snapshots[0].fields[0].I.ny();
    }
    put_le<std::uint32_t>(out, binary_version);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(nI));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(nS));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ny));
    put_le<std::uint32_t>(out, 6);
    for (const FieldState& s : snapshots) {
        put_le<double>(out, s.t);
        for (int e = 0; e < 6; ++e) {
            const GridFunction2D<double>& g = density(s, e);
            for (Eigen::Index i = 0; i <= g.nx(); ++i)
                for (Eigen::Index j = 0; j <= g.ny(); ++j) put_le<double>(out, g.values(i, j));
        }
    }
    if (!out) fail(ErrorCode::io_failure, "failed to write binary snapshots");
}

std::vector<FieldState> read_snapshots_binary(std::istream& in, double ell, double L) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "SKPD", 4) != 0) {
        fail(ErrorCode::io_failure, "not a snapshot file (bad magic)");
    }
    if (get_le<std::uint32_t>(in) != binary_version) fail(ErrorCode::io_failure, "unsupported snapshot version");
    const auto nI = static_cast<Eigen::Index>(get_le<std::uint32_t>(in));
    const auto nS = static_cast<Eigen::Index>(get_le<std::uint32_t>(in));
    const auto ny = static_cast<Eigen::Index>(get_le<std::uint32_t>(in));
    if (get_le<std::uint32_t>(in) != 6) fail(ErrorCode::io_failure, "unexpected species count");
    std::vector<FieldState> out;
    while (in.peek() != std::char_traits<char>::eof()) {
        FieldState s;
        for (auto& f : s.fields) f = RealField(ell, L, nI, nS, ny);
        s.t = get_le<double>(in);
        for (int e = 0; e < 6; ++e) {
            GridFunction2D<double>& g = density(s, e);
            for (Eigen::Index i = 0; i <= g.nx(); ++i)
                for (Eigen::Index j = 0; j <= g.ny(); ++j) g.values(i, j) = get_le<double>(in);
        }
        out.push_back(std::move(s));
    }
    return out;
}

FieldState read_snapshot_csv(std::istream& in, double ell, double L, Eigen::Index nx_I,
                             Eigen::Index nx_S, Eigen::Index ny) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,species,x,y,value", 0) != 0) {
        fail(ErrorCode::io_failure, "snapshot csv must start with the header t,species,x,y,value");
    }
    struct Row {
        int e;
        double x, y, v;
    };
    std::map<double, std::vector<Row>> by_time;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cols[5];
        for (auto& c : cols) std::getline(ss, c, ',');
        int e = -1;
        for (int k = 0; k < 6; ++k)
            if (cols[1] == labels[k]) e = k;
        if (e < 0) fail(ErrorCode::io_failure, "line " + std::to_string(line_no) + ": unknown species '" + cols[1] + "'");
        try {
            by_time[std::stod(cols[0])].push_back({e, std::stod(cols[2]), std::stod(cols[3]), std::stod(cols[4])});
        } catch (const std::exception&) {
            fail(ErrorCode::io_failure, "line " + std::to_string(line_no) + ": malformed number");
        }
    }
    if (by_time.empty()) fail(ErrorCode::io_failure, "snapshot csv has no rows");
    FieldState s;
    for (auto& f : s.fields) f = RealField(ell, L, nx_I, nx_S, ny);
    s.t = by_time.rbegin()->first;
    std::vector<Eigen::ArrayXXi> seen;
    for (int e = 0; e < 6; ++e) {
        const GridFunction2D<double>& g = density(s, e);
        seen.push_back(Eigen::ArrayXXi::Zero(g.nx() + 1, g.ny() + 1));
    }
    for (const Row& r : by_time.rbegin()->second) {
        GridFunction2D<double>& g = density(s, r.e);
        const double fi = (r.x - g.x0) / g.hx(), fj = r.y * static_cast<double>(g.ny());
        const long i = std::lround(fi), j = std::lround(fj);
        if (std::abs(fi - i) > 1e-6 || std::abs(fj - j) > 1e-6 || i < 0 || j < 0 || i > g.nx() || j > g.ny()) {
            fail(ErrorCode::io_failure, std::string("snapshot node (") + format_double(r.x) + ", " +
                                            format_double(r.y) + ") of " + labels[r.e] +
                                            " does not lie on the configured grid");
        }
        g.values(i, j) = r.v;
        seen[static_cast<std::size_t>(r.e)](i, j) = 1;
    }
    for (int e = 0; e < 6; ++e) {
        if (!seen[static_cast<std::size_t>(e)].all()) {
            fail(ErrorCode::io_failure, std::string("snapshot csv is missing nodes of ") + labels[e]);
        }
    }
    return s;
}

FieldState read_snapshot_csv_file(const std::string& path, double ell, double L,
                                  Eigen::Index nx_I, Eigen::Index nx_S, Eigen::Index ny) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::io_failure, "cannot read snapshot file '" + path + "'");
    return read_snapshot_csv(f, ell, L, nx_I, nx_S, ny);
}

void write_complex_fields_csv(const std::vector<std::pair<std::string, ComplexField>>& fields,
                              std::ostream& out) {
    out << "species,x,y,re,im\n";
    for (const auto& [name, f] : fields) {
        for (int side = 0; side < 2; ++side) {
            const GridFunction2D<cplx>& g = side == 0 ? f.I : f.S;
            const std::string label = name + (side == 0 ? "_I" : "_S");
            for (Eigen::Index i = 0; i <= g.nx(); ++i) {
                const std::string x = format_double(g.x(i));
                for (Eigen::Index j = 0; j <= g.ny(); ++j) {
                    out << label << ',' << x << ',' << format_double(g.y(j)) << ','
                        << format_double(g.values(i, j).real()) << ','
                        << format_double(g.values(i, j).imag()) << '\n';
                }
            }
        }
    }
    if (!out) fail(ErrorCode::io_failure, "failed to write field csv");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::io_failure, "cannot open '" + path + "' for writing");
    f << content;
    if (!f) fail(ErrorCode::io_failure, "failed to write '" + path + "'");
}

}  // namespace skewrd
