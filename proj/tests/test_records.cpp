#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "corrtomo/records.hpp"
#include "corrtomo/rng.hpp"

using namespace corrtomo;

namespace {

RecordSet random_records(std::size_t shots, std::size_t channels, std::size_t len,
                         std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    RecordSet r;
    r.sample_rate = 25e6;
    r.channel_count = channels;
    r.shot_length = len;
    for (std::size_t s = 0; s < shots; ++s) {
        std::vector<std::vector<Cpx>> shot(channels);
        for (auto& ch : shot) {
            ch.resize(len);
            // stored as 32-bit floats; use exactly representable dyadic values
            auto dyadic = [&] { return std::round(g(rng) * 1024.0) / 1024.0; };
            for (auto& x : ch) x = Cpx(dyadic(), dyadic());
        }
        r.shots.push_back(std::move(shot));
    }
    return r;
}

}  // namespace

TEST_CASE("record round trip") {
    auto dir = std::filesystem::temp_directory_path() / "corrtomo_rec_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "roundtrip.rec";

    RecordSet r = random_records(7, 2, 50, 61);
    save_records(r, path);
    RecordSet back = load_records(path);
    CHECK(back.sample_rate == r.sample_rate);
    CHECK(back.channel_count == 2);
    CHECK(back.shot_length == 50);
    REQUIRE(back.shots.size() == 7);
    for (std::size_t s = 0; s < 7; ++s)
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t j = 0; j < 50; ++j)
                CHECK(back.shots[s][c][j] == r.shots[s][c][j]);

    // save -> load -> save gives byte-identical files
    auto path2 = dir / "roundtrip2.rec";
    save_records(back, path2);
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::string b1((std::istreambuf_iterator<char>(f1)), {});
    std::string b2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(b1 == b2);

    // file size arithmetic: header + shots * channels * length * 8 bytes
    CHECK(std::filesystem::file_size(path) == record_file_size(2, 50, 7));
    CHECK(record_file_size(2, 1000, 100000) ==
          record_file_size(2, 1000, 0) + std::uintmax_t(100000) * 2 * 1000 * 8);

    std::filesystem::remove_all(dir);
}

TEST_CASE("record format errors") {
    auto dir = std::filesystem::temp_directory_path() / "corrtomo_rec_err";
    std::filesystem::create_directories(dir);
    auto path = dir / "bad.rec";

    RecordSet r = random_records(3, 1, 16, 62);
    save_records(r, path);

    // corrupt the magic
    {
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(0);
        f.write("XXXX", 4);
    }
    CHECK_THROWS_WITH_AS(load_records(path), doctest::Contains("magic"),
                         std::runtime_error);

    // truncated payload
    save_records(r, path);
    std::filesystem::resize_file(path, std::filesystem::file_size(path) - 10);
    CHECK_THROWS(load_records(path));

    CHECK_THROWS(load_records(dir / "missing.rec"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv export") {
    auto dir = std::filesystem::temp_directory_path() / "corrtomo_rec_csv";
    std::filesystem::create_directories(dir);
    RecordSet r = random_records(2, 1, 3, 63);
    export_records_csv(r, dir / "records.csv");
    std::ifstream f(dir / "records.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "shot,channel,sample,i,q");
    std::size_t lines = 0;
    for (std::string line; std::getline(f, line);) ++lines;
    CHECK(lines == 2 * 1 * 3);
    std::filesystem::remove_all(dir);
}
