#ifndef CORRTOMO_RECORDS_HPP
#define CORRTOMO_RECORDS_HPP

#include <cstddef>
#include <filesystem>
#include <vector>

#include "corrtomo/readout.hpp"

namespace corrtomo {

/// Uniform collection of multi-channel shot records.
/// shots[shot][channel] is a length-`shot_length` complex series.
struct RecordSet {
    double sample_rate = 0.0;  // Hz
    std::size_t channel_count = 0;
    std::size_t shot_length = 0;
    std::vector<std::vector<std::vector<Cpx>>> shots;
};

/// Binary layout: little-endian header (magic "CTRC", u32 version,
/// u32 channel count, f64 sample rate, u32 shot length, u32 shot count)
/// followed by interleaved 32-bit float I/Q pairs, shot-major then
/// channel then sample.
void save_records(const RecordSet& records, const std::filesystem::path& path);
RecordSet load_records(const std::filesystem::path& path);

std::size_t record_file_size(std::size_t channel_count, std::size_t shot_length,
                             std::size_t shot_count);

/// CSV export for small sets: shot,channel,sample,i,q rows.
void export_records_csv(const RecordSet& records, const std::filesystem::path& path);

}  // namespace corrtomo

#endif
