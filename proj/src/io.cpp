#include "degell/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace degell {

namespace {

constexpr char kMagic[8] = {'D', 'G', 'L', 'G', 'R', 'D', '1', '\0'};

void put_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
}
void put_u32(std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& s, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& s, double v) { put_u64(s, std::bit_cast<std::uint64_t>(v)); }

struct Reader {
    const std::string& buf;
    size_t pos = 0;
    explicit Reader(const std::string& b) : buf(b) {}
    void need(size_t k) const {
        if (pos + k > buf.size()) throw std::runtime_error("grid binary: truncated file");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(static_cast<unsigned char>(buf[pos + static_cast<size_t>(i)])) << (8 * i);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + static_cast<size_t>(i)])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + static_cast<size_t>(i)])) << (8 * i);
        pos += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
};

nlohmann::ordered_json json_double_array(const std::vector<double>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write_text: cannot open " + tmp.string());
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw std::runtime_error("atomic_write_text: short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < header.size(); ++i) os << header[i] << (i + 1 < header.size() ? "," : "");
    os << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << row[i] << (i + 1 < row.size() ? "," : "");
        os << '\n';
    }
    return os.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    atomic_write_text(path, format_csv(header, rows));
}

void write_grid_csv(const std::filesystem::path& path, const GridField& u) {
    std::vector<std::string> header;
    for (int ax = 0; ax < u.grid.n; ++ax) header.push_back("x" + std::to_string(ax + 1));
    header.push_back("y");
    header.push_back("value");
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<size_t>(u.grid.total()));
    for (int i = 0; i < u.grid.total(); ++i) {
        const Vec p = u.grid.point(i);
        std::vector<double> row(p.data(), p.data() + p.size());
        row.push_back(u[i]);
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

void write_grid_binary(const std::filesystem::path& path, const GridField& u) {
    std::string s;
    s.reserve(32 + 24 * static_cast<size_t>(u.grid.axes()) + 8 * u.values.size());
    s.append(kMagic, 8);
    put_u16(s, 1);                                           // version
    put_u16(s, static_cast<std::uint16_t>(u.grid.axes()));   // axis count
    put_u32(s, 0);                                           // reserved
    put_u64(s, static_cast<std::uint64_t>(u.values.size()));
    put_u64(s, 0);  // reserved; header is exactly 32 bytes
    for (int ax = 0; ax < u.grid.n; ++ax) {
        put_u64(s, static_cast<std::uint64_t>(u.grid.counts[static_cast<size_t>(ax)]));
        put_f64(s, u.grid.x_lo);
        put_f64(s, u.grid.x_hi);
    }
    put_u64(s, static_cast<std::uint64_t>(u.grid.counts.back()));
    put_f64(s, 0.0);
    put_f64(s, u.grid.y_hi);
    for (double v : u.values) put_f64(s, v);
    atomic_write_text(path, s);
}

GridField read_grid_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_grid_binary: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string s = buf.str();
    Reader r(s);

    r.need(8);
    if (std::memcmp(s.data(), kMagic, 8) != 0)
        throw std::runtime_error("read_grid_binary: bad magic");
    r.pos = 8;
    const std::uint16_t version = r.u16();
    if (version != 1) throw std::runtime_error("read_grid_binary: unsupported version");
    const int axes = r.u16();
    r.u32();
    const std::uint64_t count = r.u64();
    r.u64();

    if (axes < 2) throw std::runtime_error("read_grid_binary: need at least two axes");
    std::vector<int> counts;
    double x_lo = 0.0, x_hi = 1.0, y_hi = 1.0;
    for (int ax = 0; ax < axes; ++ax) {
        counts.push_back(static_cast<int>(r.u64()));
        const double lo = r.f64();
        const double hi = r.f64();
        if (ax < axes - 1) {
            x_lo = lo;
            x_hi = hi;
        } else {
            y_hi = hi;
        }
    }
    Grid g(axes - 1, x_lo, x_hi, y_hi, counts);
    if (static_cast<std::uint64_t>(g.total()) != count)
        throw std::runtime_error("read_grid_binary: node count mismatch");
    GridField u(g);
    for (std::uint64_t i = 0; i < count; ++i) u[static_cast<int>(i)] = r.f64();
    return u;
}

std::string fichera_report_json(const FicheraReport& rep) {
    nlohmann::ordered_json j;
    j["resolution"] = rep.resolution;
    j["samples"] = rep.samples.size();
    j["sup_g"] = rep.sup_g;
    j["inf_g"] = rep.inf_g;
    j["a"] = rep.a;
    j["b"] = rep.b;
    j["window"] = {rep.window_lo, rep.window_hi};
    j["error_bar"] = rep.error_bar;
    return j.dump(2) + "\n";
}

std::string fichera_report_csv(const FicheraReport& rep) {
    std::vector<std::vector<double>> rows;
    rows.reserve(rep.samples.size());
    for (const auto& s : rep.samples) rows.push_back({s.x[0], s.x[1], s.g});
    return format_csv({"x1", "x2", "g"}, rows);
}

std::string plane_scan_json(const PlaneScanResult& res) {
    nlohmann::ordered_json j;
    j["lambda0"] = res.lambda0;
    j["bracketed"] = res.bracketed;
    j["monotone_positive_above"] = res.monotone_positive_above;
    j["gap_at_lambda0"] = res.gap_at_lambda0;
    j["gap_above"] = res.gap_above;
    j["refinement"] = res.refinement;
    j["lambdas"] = json_double_array(res.lambdas);
    j["gaps"] = json_double_array(res.gaps);
    return j.dump(2) + "\n";
}

std::string plane_scan_csv(const PlaneScanResult& res) {
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < res.lambdas.size(); ++i) rows.push_back({res.lambdas[i], res.gaps[i]});
    return format_csv({"lambda", "gap"}, rows);
}

std::string norm_report_json(const NormReport& rep) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : rep.terms) {
        nlohmann::ordered_json e;
        e["name"] = t.name;
        e["value"] = t.value;
        terms.push_back(e);
    }
    j["terms"] = terms;
    j["total"] = rep.total;
    j["note"] = rep.note;
    return j.dump(2) + "\n";
}

}  // namespace degell
