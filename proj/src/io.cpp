#include "gabor/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "gabor/table.hpp"

namespace gabor {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) fail(ErrorCode::io, "malformed JSON");
    return j;
}

std::int64_t require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(ErrorCode::io, std::string("missing integer field '") + key + "'");
    return j[key].get<std::int64_t>();
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        fail(ErrorCode::io, std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

}  // namespace

Signal window_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("kind") || !j["kind"].is_string())
        fail(ErrorCode::io, "window spec needs a 'kind' string");
    if (!j.contains("grid") || !j["grid"].is_object())
        fail(ErrorCode::io, "window spec needs a 'grid' object");
    const json& jg = j["grid"];
    const Grid grid(require_int(jg, "t0_samples"), 1, require_int(jg, "dt_denominator"),
                    require_int(jg, "length"));
    const json params = j.contains("params") ? j["params"] : json::object();
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "gaussian") return make_gaussian(grid);
    if (kind == "rectangular")
        return make_rectangular(grid, require_int(params, "width_samples"));
    if (kind == "raised_cosine")
        return make_raised_cosine(grid, require_int(params, "half_width_samples"));
    if (kind == "samples") {
        if (!params.contains("re") || !params["re"].is_array())
            fail(ErrorCode::io, "samples window needs a 're' array");
        std::vector<cplx> samples;
        const json& re = params["re"];
        samples.reserve(re.size());
        for (const auto& v : re) samples.emplace_back(v.get<double>(), 0.0);
        if (params.contains("im")) {
            const json& im = params["im"];
            if (im.size() != samples.size())
                fail(ErrorCode::io, "'im' array length differs from 're'");
            for (std::size_t i = 0; i < samples.size(); ++i)
                samples[i].imag(im[i].get<double>());
        }
        if (static_cast<std::int64_t>(samples.size()) != grid.length)
            fail(ErrorCode::io, "sample array length differs from grid length");
        return make_from_samples(grid, std::move(samples));
    }
    fail(ErrorCode::io, "unknown window kind '" + kind + "'");
}

ChannelModel channel_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("taps") || !j["taps"].is_array())
        fail(ErrorCode::io, "channel spec needs a 'taps' array");
    std::vector<ChannelTap> taps;
    for (const auto& jt : j["taps"]) {
        ChannelTap tap;
        tap.delay_samples = require_int(jt, "delay_samples");
        tap.doppler_cycles_per_grid = require_number(jt, "doppler_cycles_per_grid");
        tap.gain = cplx(require_number(jt, "gain_re"), require_number(jt, "gain_im"));
        taps.push_back(tap);
    }
    const double sigma = require_number(j, "noise_sigma");
    const std::uint64_t seed =
        j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
    const bool normalize =
        j.contains("normalize_gains") ? j["normalize_gains"].get<bool>() : true;
    return make_channel(std::move(taps), sigma, seed, normalize);
}

std::string signal_to_csv(const Signal& s) {
    std::string out = "t,re,im\n";
    for (std::int64_t i = 0; i < s.length(); ++i) {
        out += format_double(s.time_at(i));
        out += ',';
        out += format_double(s[i].real());
        out += ',';
        out += format_double(s[i].imag());
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot write " + path);
    out << content;
    if (!out) fail(ErrorCode::io, "write failed for " + path);
}

}  // namespace gabor
