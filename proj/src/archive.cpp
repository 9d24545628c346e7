#include "orbitraise/archive.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>

namespace orbitraise {

static_assert(std::endian::native == std::endian::little,
              "archive layout assumes a little-endian host");

using nlohmann::json;

namespace {

constexpr std::array<char, 8> kMagic = {'O', 'R', 'A', 'I', 'S', 'E', 'V', 'F'};

std::uint32_t crc32(const char* data, std::size_t size) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < size; ++i) {
        crc = table[(crc ^ static_cast<unsigned char>(data[i])) & 0xFFu] ^ (crc >> 8);
    }
    return crc ^ 0xFFFFFFFFu;
}

template <typename T>
void append_raw(std::string& out, const T& value) {
    const auto* p = reinterpret_cast<const char*>(&value);
    out.append(p, sizeof(T));
}

template <typename T>
void append_array(std::string& out, const std::vector<T>& values) {
    if (values.empty()) return;
    out.append(reinterpret_cast<const char*>(values.data()), values.size() * sizeof(T));
}

template <typename T>
T read_raw(const std::string& buf, std::size_t& offset) {
    if (offset + sizeof(T) > buf.size()) {
        throw ArchiveError("truncated archive: header fields incomplete");
    }
    T value;
    std::memcpy(&value, buf.data() + offset, sizeof(T));
    offset += sizeof(T);
    return value;
}

}  // namespace

void save_solution(const SolutionArchive& archive, const std::filesystem::path& path) {
    json header;
    header["config"] = json::parse(canonical_config(archive.config));
    header["report"] = {{"engine", archive.report.engine},
                        {"iterations", archive.report.iterations},
                        {"residual", archive.report.residual},
                        {"wall_seconds", archive.report.wall_seconds},
                        {"converged", archive.report.converged}};
    const std::string header_text = header.dump();

    std::string buf;
    buf.reserve(32 + header_text.size() + archive.values.size() * 12);
    buf.append(kMagic.data(), kMagic.size());
    append_raw(buf, archive.version);
    append_raw(buf, static_cast<std::uint64_t>(header_text.size()));
    buf.append(header_text);
    append_raw(buf, static_cast<std::uint64_t>(archive.values.size()));
    append_array(buf, archive.values);
    append_array(buf, archive.policy);
    append_raw(buf, crc32(buf.data(), buf.size()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

SolutionArchive load_solution(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading " + path.string());

    if (buf.size() < kMagic.size() + sizeof(std::uint32_t) + 2 * sizeof(std::uint64_t) + 4) {
        throw ArchiveError("truncated archive: file shorter than the fixed layout");
    }
    if (std::memcmp(buf.data(), kMagic.data(), kMagic.size()) != 0) {
        throw ArchiveError("magic mismatch: not a solution archive");
    }

    const std::uint32_t stored_crc = [&] {
        std::uint32_t c;
        std::memcpy(&c, buf.data() + buf.size() - 4, 4);
        return c;
    }();
    if (crc32(buf.data(), buf.size() - 4) != stored_crc) {
        throw ArchiveError("checksum mismatch: archive corrupt or truncated");
    }

    std::size_t offset = kMagic.size();
    SolutionArchive archive;
    archive.version = read_raw<std::uint32_t>(buf, offset);
    if (archive.version != 1) {
        throw ArchiveError("unsupported archive version " + std::to_string(archive.version));
    }
    const auto header_len = read_raw<std::uint64_t>(buf, offset);
    if (offset + header_len > buf.size() - 4) {
        throw ArchiveError("truncated archive: header extends past the file");
    }
    const std::string header_text = buf.substr(offset, header_len);
    offset += header_len;

    json header;
    try {
        header = json::parse(header_text);
    } catch (const json::parse_error& e) {
        throw ArchiveError(std::string("invalid archive header: ") + e.what());
    }
    if (!header.contains("config") || !header.contains("report")) {
        throw ArchiveError("invalid archive header: missing config or report");
    }
    try {
        archive.config = parse_config(header["config"].dump());
    } catch (const ConfigError& e) {
        throw ArchiveError(std::string("invalid archive config echo: ") + e.what());
    }
    const json& rep = header["report"];
    archive.report.engine = rep.value("engine", std::string{});
    archive.report.iterations = rep.value("iterations", 0);
    archive.report.residual = rep.value("residual", 0.0);
    archive.report.wall_seconds = rep.value("wall_seconds", 0.0);
    archive.report.converged = rep.value("converged", false);

    const auto n = read_raw<std::uint64_t>(buf, offset);
    const auto grid_n = static_cast<std::uint64_t>(archive.config.grid.size());
    if (n != grid_n) {
        throw ArchiveError("value count " + std::to_string(n) + " does not match the grid (" +
                           std::to_string(grid_n) + " nodes)");
    }
    const std::size_t payload = static_cast<std::size_t>(n) * (sizeof(double) + sizeof(std::uint32_t));
    if (offset + payload + 4 != buf.size()) {
        throw ArchiveError("truncated archive: payload size mismatch");
    }
    archive.values.resize(n);
    std::memcpy(archive.values.data(), buf.data() + offset, n * sizeof(double));
    offset += n * sizeof(double);
    archive.policy.resize(n);
    std::memcpy(archive.policy.data(), buf.data() + offset, n * sizeof(std::uint32_t));
    return archive;
}

}  // namespace orbitraise
