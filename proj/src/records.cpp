#include "corrtomo/records.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace corrtomo {

namespace {

constexpr char kMagic[4] = {'C', 'T', 'R', 'C'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 4 + 4 + 8 + 4 + 4;

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("record file truncated");
    return v;
}

}  // namespace

std::size_t record_file_size(std::size_t channel_count, std::size_t shot_length,
                             std::size_t shot_count) {
    return kHeaderSize + shot_count * channel_count * shot_length * 2 * sizeof(float);
}

void save_records(const RecordSet& records, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");

    os.write(kMagic, 4);
    write_pod(os, kVersion);
    write_pod(os, std::uint32_t(records.channel_count));
    write_pod(os, records.sample_rate);
    write_pod(os, std::uint32_t(records.shot_length));
    write_pod(os, std::uint32_t(records.shots.size()));

    std::vector<float> buf;
    buf.reserve(records.shot_length * 2);
    for (const auto& shot : records.shots) {
        if (shot.size() != records.channel_count)
            throw std::invalid_argument("save_records: channel count mismatch");
        for (const auto& chan : shot) {
            if (chan.size() != records.shot_length)
                throw std::invalid_argument("save_records: shot length mismatch");
            buf.clear();
            for (const Cpx& s : chan) {
                buf.push_back(float(s.real()));
                buf.push_back(float(s.imag()));
            }
            os.write(reinterpret_cast<const char*>(buf.data()),
                     std::streamsize(buf.size() * sizeof(float)));
        }
    }
    if (!os) throw std::runtime_error("write error on " + path.string());
}

RecordSet load_records(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());

    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a record file (bad magic): " + path.string());
    auto version = read_pod<std::uint32_t>(is);
    if (version != kVersion)
        throw std::runtime_error("unsupported record file version " +
                                 std::to_string(version));

    RecordSet rec;
    rec.channel_count = read_pod<std::uint32_t>(is);
    rec.sample_rate = read_pod<double>(is);
    rec.shot_length = read_pod<std::uint32_t>(is);
    auto shot_count = read_pod<std::uint32_t>(is);

    rec.shots.resize(shot_count);
    std::vector<float> buf(rec.shot_length * 2);
    for (auto& shot : rec.shots) {
        shot.resize(rec.channel_count);
        for (auto& chan : shot) {
            is.read(reinterpret_cast<char*>(buf.data()),
                    std::streamsize(buf.size() * sizeof(float)));
            if (!is) throw std::runtime_error("record file truncated");
            chan.resize(rec.shot_length);
            for (std::size_t j = 0; j < rec.shot_length; ++j)
                chan[j] = Cpx(buf[2 * j], buf[2 * j + 1]);
        }
    }
    return rec;
}

void export_records_csv(const RecordSet& records, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << "shot,channel,sample,i,q\n";
    for (std::size_t s = 0; s < records.shots.size(); ++s)
        for (std::size_t c = 0; c < records.shots[s].size(); ++c)
            for (std::size_t j = 0; j < records.shots[s][c].size(); ++j)
                os << s << ',' << c << ',' << j << ',' << records.shots[s][c][j].real()
                   << ',' << records.shots[s][c][j].imag() << '\n';
}

}  // namespace corrtomo
