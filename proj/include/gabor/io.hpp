#ifndef GABOR_IO_HPP
#define GABOR_IO_HPP

#include <string>

#include "gabor/ofdm.hpp"
#include "gabor/signal.hpp"

namespace gabor {

// Window spec schema:
//   {"kind": "gaussian"|"rectangular"|"raised_cosine"|"samples",
//    "params": {...},
//    "grid": {"t0_samples": int, "dt_denominator": int, "length": int}}
// params: rectangular {"width_samples"}, raised_cosine {"half_width_samples"},
// samples {"re": [...], "im": [...] (optional)}; gaussian takes none.
Signal window_from_json(const std::string& text);

// Channel schema:
//   {"taps": [{"delay_samples": int, "doppler_cycles_per_grid": real,
//              "gain_re": real, "gain_im": real}],
//    "noise_sigma": real, "seed": int (optional),
//    "normalize_gains": bool (optional, default true)}
ChannelModel channel_from_json(const std::string& text);

// Signal CSV body: header "t,re,im" plus one row per sample, 17 significant
// digits.
std::string signal_to_csv(const Signal& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gabor

#endif
