// Command-line harness for the Gabor frame duality toolkit. Links the C API
// only; file formats and orchestration live here, numerics in libgabor.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gabor/capi.h"

namespace {

using ordered_json = nlohmann::ordered_json;

struct Failure {
    gabor_status status;
    std::string detail;
};

void check(gabor_status status) {
    if (status != GABOR_OK) throw Failure{status, gabor_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) {
    throw Failure{GABOR_E_PARAMS, message};
}

int exit_code_for(gabor_status status) {
    switch (status) {
        case GABOR_OK:
            return 0;
        case GABOR_E_PARAMS:
        case GABOR_E_LATTICE:
        case GABOR_E_IO:
        case GABOR_E_GRID_MISMATCH:
        case GABOR_E_COMMENSURABILITY:
            return 1;
        default:
            return 2;  // numerical failures: not-a-frame, singular sections, ...
    }
}

template <typename T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
    Handle& operator=(Handle&& o) noexcept {
        if (this != &o) {
            Free(p);
            p = o.p;
            o.p = nullptr;
        }
        return *this;
    }
    ~Handle() { Free(p); }
};

using SignalPtr = Handle<gabor_signal, gabor_signal_free>;
using LatticePtr = Handle<gabor_lattice, gabor_lattice_free>;
using TablePtr = Handle<gabor_table, gabor_table_free>;
using OfdmPtr = Handle<gabor_ofdm, gabor_ofdm_free>;
using ChannelPtr = Handle<gabor_channel, gabor_channel_free>;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{GABOR_E_IO, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{GABOR_E_IO, "cannot write " + path};
    out << content;
    if (!out) throw Failure{GABOR_E_IO, "write failed for " + path};
}

void require_readable(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw Failure{GABOR_E_IO, "input file not found: " + path};
}

// Every emitted file starts with a timestamp comment (excluded from
// determinism comparisons) and the resolved run configuration.
std::string file_header(const ordered_json& config) {
    return "# timestamp: " + now_iso8601() + "\n# config: " + config.dump() + "\n";
}

std::string table_csv(const gabor_table* t) {
    const char* body = gabor_table_csv(t);
    if (!body) throw Failure{GABOR_E_INTERNAL, "table serialization failed"};
    return body;
}

std::string signal_csv(const gabor_signal* s) {
    const int64_t n = gabor_signal_length(s);
    std::vector<double> t(static_cast<std::size_t>(n));
    std::vector<double> re(static_cast<std::size_t>(n));
    std::vector<double> im(static_cast<std::size_t>(n));
    check(gabor_signal_time_axis(s, t.data()));
    check(gabor_signal_copy(s, re.data(), im.data()));
    std::string out = "t,re,im\n";
    for (int64_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i);
        out += fmt17(t[j]);
        out += ',';
        out += fmt17(re[j]);
        out += ',';
        out += fmt17(im[j]);
        out += '\n';
    }
    return out;
}

// ------------------------------------------------------------------ //

struct CommonOptions {
    std::string window_path;
    int p = 1;
    int q = 2;
    int64_t a_samples = 0;  // 0: one second worth of samples
    std::uint64_t seed = 0;
    std::string out_path;
};

struct LoadedSystem {
    SignalPtr window;
    LatticePtr lattice;
    int64_t dt_den = 0;
    int64_t a_samples = 0;
};

LoadedSystem load_system(const CommonOptions& opts) {
    require_readable(opts.window_path);
    LoadedSystem sys;
    check(gabor_signal_from_json(read_text_file(opts.window_path).c_str(),
                                 &sys.window.p));
    const double dt = gabor_signal_dt(sys.window.p);
    sys.dt_den = static_cast<int64_t>(std::llround(1.0 / dt));
    sys.a_samples = opts.a_samples > 0 ? opts.a_samples : sys.dt_den;
    check(gabor_lattice_create(opts.p, opts.q, sys.a_samples, sys.dt_den,
                               &sys.lattice.p));
    return sys;
}

ordered_json common_config(const CommonOptions& opts, const LoadedSystem& sys) {
    ordered_json j;
    j["window"] = opts.window_path;
    j["p"] = opts.p;
    j["q"] = opts.q;
    j["a_samples"] = sys.a_samples;
    j["dt_denominator"] = sys.dt_den;
    j["seed"] = opts.seed;
    return j;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    const auto colon = text.find(':');
    if (colon != std::string::npos && text.find(',') == std::string::npos) {
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        if (hi < lo) usage_error("empty n range " + text);
        for (int n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) usage_error("empty n list");
    return out;
}

std::vector<std::pair<int, int>> parse_pq_list(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) usage_error("pq entries look like p:q");
        out.emplace_back(std::stoi(item.substr(0, colon)),
                         std::stoi(item.substr(colon + 1)));
    }
    if (out.empty()) usage_error("empty pq list");
    return out;
}

std::vector<gabor_weight_spec> parse_weights(const std::string& text) {
    std::vector<gabor_weight_spec> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::vector<std::string> parts;
        std::stringstream ps(item);
        std::string part;
        while (std::getline(ps, part, ':')) parts.push_back(part);
        if (parts.empty()) continue;
        gabor_weight_spec w{0, 0.0, 0.0};
        if (parts[0] == "const" || parts[0] == "constant") {
            w.family = 0;
        } else if (parts[0] == "poly" || parts[0] == "polynomial") {
            if (parts.size() != 2) usage_error("poly weight needs poly:s");
            w.family = 1;
            w.param = std::stod(parts[1]);
        } else if (parts[0] == "subexp" || parts[0] == "subexponential") {
            if (parts.size() != 3)
                usage_error("subexp weight needs subexp:lambda:gamma");
            w.family = 2;
            w.param = std::stod(parts[1]);
            w.param2 = std::stod(parts[2]);
        } else if (parts[0] == "exp" || parts[0] == "exponential") {
            if (parts.size() != 2) usage_error("exp weight needs exp:lambda");
            w.family = 3;
            w.param = std::stod(parts[1]);
        } else {
            usage_error("unknown weight family " + parts[0]);
        }
        out.push_back(w);
    }
    if (out.empty()) usage_error("empty weight list");
    return out;
}

// ------------------------------------------------------------------ //

struct DualOptions {
    CommonOptions common;
    std::string n_list = "1:8";
    int n_ref = 0;  // 0: max(n_list) + 4
    int wr_m = 4;
    std::string dump_gram_path;
    int gram_n = 2;
    std::string gram_kind = "adjoint";
};

void run_dual_approx(const DualOptions& opts) {
    const LoadedSystem sys = load_system(opts.common);
    const std::vector<int> n_list = parse_n_list(opts.n_list);
    const int n_ref =
        opts.n_ref > 0 ? opts.n_ref
                       : *std::max_element(n_list.begin(), n_list.end()) + 4;

    ordered_json config = common_config(opts.common, sys);
    config["command"] = "dual-approx";
    config["n_list"] = opts.n_list;
    config["n_ref"] = n_ref;
    config["wr_m"] = opts.wr_m;

    TablePtr study;
    check(gabor_convergence_study(sys.window.p, sys.lattice.p, n_list.data(),
                                  static_cast<int>(n_list.size()), n_ref, opts.wr_m,
                                  &study.p));
    write_text_file(opts.common.out_path, file_header(config) + table_csv(study.p));

    if (!opts.dump_gram_path.empty()) {
        if (opts.gram_kind != "adjoint" && opts.gram_kind != "frame")
            usage_error("--gram-kind must be adjoint or frame");
        TablePtr gram;
        check(gabor_gram_table(sys.window.p, sys.lattice.p,
                               opts.gram_kind == "adjoint" ? 0 : 1, opts.gram_n,
                               &gram.p));
        ordered_json gconfig = config;
        gconfig["gram_n"] = opts.gram_n;
        gconfig["gram_kind"] = opts.gram_kind;
        write_text_file(opts.dump_gram_path, file_header(gconfig) + table_csv(gram.p));
    }
}

// ------------------------------------------------------------------ //

struct LaurentOptions {
    CommonOptions common;
    int K = 8;
    std::string emit = "bounds";
    int64_t t_count = 0;
    bool unit_norm = false;
};

void run_laurent(const LaurentOptions& opts) {
    const LoadedSystem sys = load_system(opts.common);
    ordered_json config = common_config(opts.common, sys);
    config["command"] = "laurent";
    config["K"] = opts.K;
    config["emit"] = opts.emit;

    if (opts.emit == "bounds") {
        config["t_count"] = opts.t_count;
        TablePtr bounds;
        check(gabor_bounds_table(sys.window.p, sys.lattice.p, opts.K, opts.t_count,
                                 &bounds.p));
        write_text_file(opts.common.out_path,
                        file_header(config) + table_csv(bounds.p));
    } else if (opts.emit == "dual") {
        SignalPtr dual;
        check(gabor_laurent_dual(sys.window.p, sys.lattice.p, opts.K, &dual.p));
        write_text_file(opts.common.out_path, file_header(config) + signal_csv(dual.p));
    } else if (opts.emit == "tight") {
        config["unit_norm"] = opts.unit_norm;
        SignalPtr tight;
        int floor_hits = 0;
        check(gabor_tight_window(sys.window.p, sys.lattice.p, opts.K,
                                 opts.unit_norm ? 1 : 0, &tight.p, &floor_hits));
        if (floor_hits > 0)
            std::fprintf(stderr, "W_FLOOR: %d eigenvalue floor hits in G^(-1/2)\n",
                         floor_hits);
        write_text_file(opts.common.out_path,
                        file_header(config) + signal_csv(tight.p));
    } else if (opts.emit == "decay") {
        const std::vector<gabor_weight_spec> weights = {
            {1, 2.0, 0.0}, {2, 1.0, 0.5}, {3, 1.0, 0.0}, {0, 0.0, 0.0}};
        TablePtr decay;
        check(gabor_decay_study(sys.window.p, sys.lattice.p, opts.K, weights.data(),
                                static_cast<int>(weights.size()), &decay.p));
        write_text_file(opts.common.out_path, file_header(config) + table_csv(decay.p));
    } else {
        usage_error("--emit must be bounds|dual|tight|decay");
    }
}

// ------------------------------------------------------------------ //

struct DecayOptions {
    CommonOptions common;
    int K = 8;
    std::string weights = "poly:2,subexp:1:0.5,exp:1,const";
};

void run_decay(const DecayOptions& opts) {
    const LoadedSystem sys = load_system(opts.common);
    const std::vector<gabor_weight_spec> weights = parse_weights(opts.weights);
    ordered_json config = common_config(opts.common, sys);
    config["command"] = "decay";
    config["K"] = opts.K;
    config["weights"] = opts.weights;
    TablePtr decay;
    check(gabor_decay_study(sys.window.p, sys.lattice.p, opts.K, weights.data(),
                            static_cast<int>(weights.size()), &decay.p));
    write_text_file(opts.common.out_path, file_header(config) + table_csv(decay.p));
}

// ------------------------------------------------------------------ //

struct OfdmOptions {
    CommonOptions common;
    int K = 8;
    std::string mode = "tight";
    std::string channel_path;
    int n_subcarriers = 16;
    int n_symbols = 8;
    int frames = 0;
    double guard = 2.0;
};

ChannelPtr load_channel(const std::string& path) {
    ChannelPtr ch;
    if (path.empty()) {
        const int64_t delays[] = {0};
        const double dopplers[] = {0.0};
        const double gre[] = {1.0};
        const double gim[] = {0.0};
        check(gabor_channel_create(delays, dopplers, gre, gim, 1, 0.0, 0, 1, &ch.p));
    } else {
        require_readable(path);
        check(gabor_channel_from_json(read_text_file(path).c_str(), &ch.p));
    }
    return ch;
}

void run_ofdm(const OfdmOptions& opts) {
    if (opts.mode != "tight" && opts.mode != "bfdm")
        usage_error("--mode must be tight or bfdm");
    const LoadedSystem sys = load_system(opts.common);
    const ChannelPtr channel = load_channel(opts.channel_path);

    OfdmPtr ofdm;
    check(gabor_ofdm_build(sys.window.p, sys.lattice.p, opts.K,
                           opts.mode == "tight" ? 0 : 1, opts.n_subcarriers,
                           opts.n_symbols, opts.guard, &ofdm.p));

    ordered_json config = common_config(opts.common, sys);
    config["command"] = "ofdm";
    config["K"] = opts.K;
    config["mode"] = opts.mode;
    config["channel"] = opts.channel_path.empty() ? "identity" : opts.channel_path;
    config["n_subcarriers"] = opts.n_subcarriers;
    config["n_symbols"] = opts.n_symbols;
    config["frames"] = opts.frames;
    config["guard_seconds"] = opts.guard;

    double sir_db = 0.0;
    TablePtr leakage;
    check(gabor_ofdm_interference(ofdm.p, channel.p, &sir_db, &leakage.p));

    ordered_json out;
    out["timestamp"] = now_iso8601();
    out["config"] = config;
    ordered_json metrics;
    metrics["tf"] = gabor_ofdm_tf(ofdm.p);
    metrics["orthogonality_error"] = gabor_ofdm_orthogonality_error(ofdm.p);
    metrics["frame_bound_ratio"] = gabor_ofdm_frame_bound_ratio(ofdm.p);
    metrics["heisenberg_product"] = gabor_ofdm_heisenberg(ofdm.p);
    metrics["sir_db"] = sir_db;

    double roundtrip = 0.0;
    check(gabor_ofdm_roundtrip(ofdm.p, opts.common.seed, &roundtrip));
    metrics["ideal_roundtrip_max_symbol_error"] = roundtrip;

    if (opts.frames > 0) {
        gabor_run_metrics m{};
        check(gabor_ofdm_ber(ofdm.p, channel.p, opts.frames, opts.common.seed, &m));
        metrics["ber"] = m.ber;
        metrics["ber_ci95"] = m.ber_ci95;
        metrics["mse"] = m.mse;
        metrics["n_bits"] = m.n_bits;
        metrics["bit_errors"] = m.bit_errors;
    }
    out["metrics"] = metrics;

    ordered_json rows = ordered_json::array();
    for (int64_t r = 0; r < gabor_table_rows(leakage.p); ++r) {
        ordered_json row;
        for (int64_t c = 0; c < gabor_table_cols(leakage.p); ++c) {
            double v = 0.0;
            check(gabor_table_number(leakage.p, r, c, &v));
            row[gabor_table_column_name(leakage.p, c)] = v;
        }
        rows.push_back(row);
    }
    out["leakage"] = rows;

    write_text_file(opts.common.out_path, out.dump(2) + "\n");
}

// ------------------------------------------------------------------ //

struct SweepOptions {
    CommonOptions common;
    int K = 8;
    std::string pq_list = "1:2,2:3,10:13,10:11";
};

void run_tf_sweep(const SweepOptions& opts) {
    require_readable(opts.common.window_path);
    SignalPtr window;
    check(gabor_signal_from_json(read_text_file(opts.common.window_path).c_str(),
                                 &window.p));
    const std::vector<std::pair<int, int>> pq = parse_pq_list(opts.pq_list);
    std::vector<int> ps, qs;
    for (const auto& [p, q] : pq) {
        ps.push_back(p);
        qs.push_back(q);
    }
    ordered_json config;
    config["command"] = "tf-sweep";
    config["window"] = opts.common.window_path;
    config["pq_list"] = opts.pq_list;
    config["K"] = opts.K;
    config["seed"] = opts.common.seed;

    TablePtr sweep;
    check(gabor_tf_sweep(window.p, ps.data(), qs.data(), static_cast<int>(ps.size()),
                         opts.K, &sweep.p));
    write_text_file(opts.common.out_path, file_header(config) + table_csv(sweep.p));
}

// ------------------------------------------------------------------ //
// reproduce-all: one artifact per acceptance criterion

struct ReproduceOptions {
    std::string out_dir;
    std::uint64_t seed = 0;
};

std::string gaussian_window_json(int64_t dt_den) {
    ordered_json j;
    j["kind"] = "gaussian";
    j["params"] = ordered_json::object();
    j["grid"]["t0_samples"] = -12 * dt_den;
    j["grid"]["dt_denominator"] = dt_den;
    j["grid"]["length"] = 24 * dt_den;
    return j.dump(2) + "\n";
}

std::string rect_window_json(int64_t dt_den, int64_t width_samples) {
    ordered_json j;
    j["kind"] = "rectangular";
    j["params"]["width_samples"] = width_samples;
    j["grid"]["t0_samples"] = -12 * dt_den;
    j["grid"]["dt_denominator"] = dt_den;
    j["grid"]["length"] = 24 * dt_den;
    return j.dump(2) + "\n";
}

void run_reproduce_all(const ReproduceOptions& opts) {
    namespace fs = std::filesystem;
    const std::string dir =
        opts.out_dir.empty() ? ("repro-" + now_iso8601()) : opts.out_dir;
    fs::create_directories(dir);

    // Work inside the output directory so the config echoes carry relative
    // paths: two runs into different directories stay byte-identical.
    const fs::path previous_cwd = fs::current_path();
    fs::current_path(dir);
    struct RestoreCwd {
        fs::path where;
        ~RestoreCwd() { std::filesystem::current_path(where); }
    } restore{previous_cwd};
    auto path = [](const std::string& name) { return name; };

    std::string summary;
    auto note = [&summary](const std::string& line) { summary += line + "\n"; };

    write_text_file(path("window_bench.json"), gaussian_window_json(32));
    write_text_file(path("window_rect_unit.json"), rect_window_json(32, 32));
    write_text_file(path("window_sweep.json"), gaussian_window_json(320));
    write_text_file(path("window_rect_t13.json"), rect_window_json(320, 416));
    {
        ordered_json ch;
        ordered_json tap;
        tap["delay_samples"] = 52;  // 0.125 T at T = 1.3 s, dt = 1/320
        tap["doppler_cycles_per_grid"] = 0.0;
        tap["gain_re"] = 1.0;
        tap["gain_im"] = 0.0;
        ch["taps"] = ordered_json::array({tap});
        ch["noise_sigma"] = 0.0;
        write_text_file(path("channel_delay_t13.json"), ch.dump(2) + "\n");
    }

    // c01: orthonormal sanity (rectangular window, a = b = 1).
    {
        CommonOptions c{path("window_rect_unit.json"), 1, 1, 0, opts.seed, ""};
        const LoadedSystem sys = load_system(c);
        SignalPtr dual;
        check(gabor_finite_section_dual(sys.window.p, sys.lattice.p, 3, &dual.p));
        double residual = 0.0;
        check(gabor_wexler_raz_residual(dual.p, sys.window.p, sys.lattice.p, 3,
                                        &residual));
        double A = 0, B = 0;
        check(gabor_frame_bounds(sys.window.p, sys.lattice.p, 3, 0, &A, &B, nullptr,
                                 nullptr, nullptr));
        SignalPtr atom;
        check(gabor_signal_translate_modulate(sys.window.p, sys.a_samples, 1.0,
                                              &atom.p));
        SignalPtr scaled;
        check(gabor_signal_scale(atom.p, 0.0, 0.5, &scaled.p));
        SignalPtr f;
        check(gabor_signal_add(sys.window.p, scaled.p, &f.p));
        double rec_error = 0.0;
        check(gabor_reconstruct_error(f.p, sys.window.p, dual.p, sys.lattice.p, 4, 0,
                                      &rec_error));
        ordered_json config{{"criterion", "c01"}};
        std::string csv = "quantity,value\n";
        csv += "wr_residual," + fmt17(residual) + "\n";
        csv += "frame_bound_A," + fmt17(A) + "\n";
        csv += "frame_bound_B," + fmt17(B) + "\n";
        csv += "reconstruction_error," + fmt17(rec_error) + "\n";
        write_text_file(path("c01_orthonormal.csv"), file_header(config) + csv);
        note("c01 wr_residual=" + fmt17(residual) + " A=" + fmt17(A) +
             " B=" + fmt17(B) + " rec_error=" + fmt17(rec_error));
    }

    // Benchmark gaussian system: dt = 1/32 on [-12, 12), a = 1, b = 1/2.
    CommonOptions bench{path("window_bench.json"), 1, 2, 0, opts.seed, ""};
    const LoadedSystem sys = load_system(bench);

    // c02: Wexler-Raz biorthogonality at n = 8.
    {
        SignalPtr dual;
        check(gabor_finite_section_dual(sys.window.p, sys.lattice.p, 8, &dual.p));
        double residual = 0.0;
        check(gabor_wexler_raz_residual(dual.p, sys.window.p, sys.lattice.p, 4,
                                        &residual));
        double ip_re = 0, ip_im = 0;
        check(gabor_signal_inner(dual.p, sys.window.p, &ip_re, &ip_im));
        ordered_json config{{"criterion", "c02"}};
        std::string csv = "quantity,value\n";
        csv += "wr_residual_m4," + fmt17(residual) + "\n";
        csv += "inner_re," + fmt17(ip_re) + "\n";
        csv += "inner_im," + fmt17(ip_im) + "\n";
        write_text_file(path("c02_wexler_raz.csv"), file_header(config) + csv);
        note("c02 wr_residual=" + fmt17(residual) + " <gamma,g>=" + fmt17(ip_re));
    }

    // c03 + c04: convergence and conditioning, n = 1..8 vs n_ref = 12.
    {
        DualOptions d;
        d.common = bench;
        d.common.out_path = path("c03_convergence.csv");
        d.n_list = "1:8";
        d.n_ref = 12;
        d.wr_m = 4;
        d.dump_gram_path = path("gram_adjoint_n2.csv");
        d.gram_n = 2;
        run_dual_approx(d);
        double A = 0, B = 0;
        check(gabor_frame_bounds(sys.window.p, sys.lattice.p, 8, 0, &A, &B, nullptr,
                                 nullptr, nullptr));
        ordered_json config{{"criterion", "c04"}};
        std::string csv = "quantity,value\n";
        csv += "adjoint_riesz_ratio," + fmt17(B / A) + "\n";
        write_text_file(path("c04_conditioning.csv"), file_header(config) + csv);
        note("c03/c04 study in c03_convergence.csv, B_over_A=" + fmt17(B / A));
    }

    // c05: cross-method dual comparison.
    {
        SignalPtr fs_dual;
        check(gabor_finite_section_dual(sys.window.p, sys.lattice.p, 10, &fs_dual.p));
        SignalPtr laurent_dual;
        check(gabor_laurent_dual(sys.window.p, sys.lattice.p, 8, &laurent_dual.p));
        double dist = 0.0;
        check(gabor_signal_l2_distance(fs_dual.p, laurent_dual.p, &dist));
        const double rel = dist / gabor_signal_norm(laurent_dual.p);
        ordered_json config{{"criterion", "c05"}};
        std::string csv = "quantity,value\n";
        csv += "cross_method_relative_l2," + fmt17(rel) + "\n";
        write_text_file(path("c05_crossmethod.csv"), file_header(config) + csv);
        note("c05 cross_method_relative_l2=" + fmt17(rel));
    }

    // c06: tightness and adjoint-lattice orthonormality.
    {
        SignalPtr tight;
        int hits = 0;
        check(gabor_tight_window(sys.window.p, sys.lattice.p, 8, 1, &tight.p, &hits));
        double A = 0, B = 0;
        check(gabor_frame_bounds(tight.p, sys.lattice.p, 8, 0, &A, &B, nullptr,
                                 nullptr, nullptr));
        const int64_t shift = sys.a_samples * 2;  // 1/b in samples
        double diag_re = 0, diag_im = 0;
        check(gabor_signal_inner(tight.p, tight.p, &diag_re, &diag_im));
        double worst_off = 0.0;
        for (int k = -3; k <= 3; ++k)
            for (int l = -3; l <= 3; ++l) {
                if (k == 0 && l == 0) continue;
                SignalPtr atom;
                check(gabor_signal_translate_modulate(tight.p, k * shift,
                                                      static_cast<double>(l),
                                                      &atom.p));
                double re = 0, im = 0;
                check(gabor_signal_inner(atom.p, tight.p, &re, &im));
                worst_off = std::max(worst_off, std::hypot(re, im));
            }
        ordered_json config{{"criterion", "c06"}};
        std::string csv = "quantity,value\n";
        csv += "tight_bound_ratio," + fmt17(B / A) + "\n";
        csv += "diag_inner," + fmt17(diag_re) + "\n";
        csv += "max_offdiag," + fmt17(worst_off) + "\n";
        csv += "floor_hits," + fmt17(hits) + "\n";
        write_text_file(path("c06_tightness.csv"), file_header(config) + csv);
        note("c06 B_over_A=" + fmt17(B / A) + " max_offdiag=" + fmt17(worst_off));
    }

    // c07: TSVD divergence vs regularization.
    {
        const int n_list[] = {2, 4, 6, 8};
        TablePtr study;
        check(gabor_tsvd_study(sys.window.p, sys.lattice.p, n_list, 4, 4, 1e-8, 1,
                               -1.0, opts.seed + 1, &study.p));
        ordered_json config{{"criterion", "c07"},
                            {"span_radius", 4},
                            {"delta", 1e-8},
                            {"smoothness_p", 1}};
        write_text_file(path("c07_tsvd.csv"), file_header(config) + table_csv(study.p));
        double plain2 = 0, plain8 = 0, rec8 = 0;
        check(gabor_table_number(study.p, 0, 1, &plain2));
        check(gabor_table_number(study.p, 3, 1, &plain8));
        check(gabor_table_number(study.p, 3, 5, &rec8));
        note("c07 plain_norm_growth=" + fmt17(plain8 / plain2) +
             " rec_error=" + fmt17(rec8));
    }

    // c08: decay preservation.
    {
        DecayOptions d;
        d.common = bench;
        d.common.out_path = path("c08_decay.csv");
        d.K = 8;
        d.weights = "poly:2,exp:1,subexp:1:0.5,const";
        run_decay(d);

        SignalPtr dual;
        check(gabor_laurent_dual(sys.window.p, sys.lattice.p, 8, &dual.p));
        SignalPtr tight;
        check(gabor_tight_window(sys.window.p, sys.lattice.p, 8, 0, &tight.p,
                                 nullptr));
        double rate_g = 0, c_g = 0, r2_g = 0;
        check(gabor_signal_decay_fit(sys.window.p, 0, &rate_g, &c_g, &r2_g));
        double rate_d = 0, c_d = 0, r2_d = 0;
        check(gabor_signal_decay_fit(dual.p, 0, &rate_d, &c_d, &r2_d));
        double rate_t = 0, c_t = 0, r2_t = 0;
        check(gabor_signal_decay_fit(tight.p, 0, &rate_t, &c_t, &r2_t));
        ordered_json config{{"criterion", "c08"}};
        std::string csv = "window,fitted_rate,fit_quality\n";
        csv += "g," + fmt17(rate_g) + "," + fmt17(r2_g) + "\n";
        csv += "dual," + fmt17(rate_d) + "," + fmt17(r2_d) + "\n";
        csv += "tight," + fmt17(rate_t) + "," + fmt17(r2_t) + "\n";
        write_text_file(path("c08_decay_fits.csv"), file_header(config) + csv);
        note("c08 rate_g=" + fmt17(rate_g) + " rate_dual=" + fmt17(rate_d) +
             " r2_dual=" + fmt17(r2_d) + " r2_tight=" + fmt17(r2_t));
    }

    // c09: gaussian STFT shape on the lattice.
    {
        std::string csv = "k,l,normalized_modulus\n";
        double lo = 1e300, hi = 0.0;
        const double pi = 3.14159265358979323846;
        for (int k = -4; k <= 4; ++k)
            for (int l = -8; l <= 8; ++l) {
                double re = 0, im = 0;
                check(gabor_signal_stft(sys.window.p, sys.window.p, k * sys.a_samples,
                                        0.5 * l, &re, &im));
                const double tau = k;
                const double omega = 0.5 * l;
                const double v = std::hypot(re, im) *
                                 std::exp(pi * (tau * tau + omega * omega) / 2.0);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                csv += std::to_string(k) + "," + std::to_string(l) + "," + fmt17(v) +
                       "\n";
            }
        ordered_json config{{"criterion", "c09"}};
        write_text_file(path("c09_stft.csv"), file_header(config) + csv);
        note("c09 normalized_modulus_range=[" + fmt17(lo) + "," + fmt17(hi) + "]");
    }

    // c10: OFDM end-to-end at TF = 2.
    {
        OfdmOptions o;
        o.common = bench;
        o.common.out_path = path("c10_ofdm_ideal.json");
        o.K = 8;
        o.mode = "tight";
        o.n_subcarriers = 16;
        o.n_symbols = 8;
        o.frames = 8;
        run_ofdm(o);
        note("c10 run written to c10_ofdm_ideal.json");
    }

    // c11: localization pays at TF = 1.3 under a pure delay.
    {
        CommonOptions gauss{path("window_sweep.json"), 10, 13, 0, opts.seed, ""};
        const LoadedSystem gsys = load_system(gauss);
        CommonOptions rect{path("window_rect_t13.json"), 10, 13, 0, opts.seed, ""};
        const LoadedSystem rsys = load_system(rect);
        const ChannelPtr ch = load_channel(path("channel_delay_t13.json"));

        double sir_gauss = 0, sir_rect = 0;
        {
            OfdmPtr ofdm;
            check(gabor_ofdm_build(gsys.window.p, gsys.lattice.p, 8, 0, 8, 3, 2.0,
                                   &ofdm.p));
            check(gabor_ofdm_interference(ofdm.p, ch.p, &sir_gauss, nullptr));
        }
        {
            OfdmPtr ofdm;
            check(gabor_ofdm_build(rsys.window.p, rsys.lattice.p, 8, 0, 8, 3, 2.0,
                                   &ofdm.p));
            check(gabor_ofdm_interference(ofdm.p, ch.p, &sir_rect, nullptr));
        }
        ordered_json config{{"criterion", "c11"}, {"delay_samples", 52}};
        std::string csv = "window,sir_db\n";
        csv += "gaussian_tight," + fmt17(sir_gauss) + "\n";
        csv += "rectangular_tight," + fmt17(sir_rect) + "\n";
        write_text_file(path("c11_localization.csv"), file_header(config) + csv);
        note("c11 sir_gauss=" + fmt17(sir_gauss) + " sir_rect=" + fmt17(sir_rect) +
             " margin_db=" + fmt17(sir_gauss - sir_rect));
    }

    // c12: TF trade-off sweep.
    {
        SweepOptions s;
        s.common.window_path = path("window_sweep.json");
        s.common.seed = opts.seed;
        s.common.out_path = path("c12_tf_sweep.csv");
        s.K = 8;
        s.pq_list = "1:2,2:3,10:13,10:11";
        run_tf_sweep(s);
        note("c12 sweep written to c12_tf_sweep.csv");
    }

    write_text_file(path("summary.txt"),
                    "# timestamp: " + now_iso8601() + "\n" + summary);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabor frame duality toolkit"};
    app.require_subcommand(0, 1);

    DualOptions dual;
    CLI::App* dual_cmd =
        app.add_subcommand("dual-approx", "Wexler-Raz finite-section dual study");
    dual_cmd->add_option("--window", dual.common.window_path, "window spec JSON")
        ->required();
    dual_cmd->add_option("--p", dual.common.p, "lattice numerator")->required();
    dual_cmd->add_option("--q", dual.common.q, "lattice denominator")->required();
    dual_cmd->add_option("--a-samples", dual.common.a_samples,
                         "time shift a in samples (default: one second)");
    dual_cmd->add_option("--n-list", dual.n_list, "sections, e.g. 1:8 or 1,2,4");
    dual_cmd->add_option("--n-ref", dual.n_ref, "reference radius (default max+4)");
    dual_cmd->add_option("--wr-m", dual.wr_m, "Wexler-Raz check radius");
    dual_cmd->add_option("--dump-gram", dual.dump_gram_path, "Gram dump CSV path");
    dual_cmd->add_option("--gram-n", dual.gram_n, "Gram dump radius");
    dual_cmd->add_option("--gram-kind", dual.gram_kind, "adjoint|frame");
    dual_cmd->add_option("--seed", dual.common.seed, "run seed");
    dual_cmd->add_option("--out", dual.common.out_path, "study CSV path")->required();

    LaurentOptions laurent;
    CLI::App* laurent_cmd =
        app.add_subcommand("laurent", "Laurent symbol: bounds, dual, tight, decay");
    laurent_cmd->add_option("--window", laurent.common.window_path, "window spec JSON")
        ->required();
    laurent_cmd->add_option("--p", laurent.common.p, "lattice numerator")->required();
    laurent_cmd->add_option("--q", laurent.common.q, "lattice denominator")
        ->required();
    laurent_cmd->add_option("--a-samples", laurent.common.a_samples,
                            "time shift a in samples (default: one second)");
    laurent_cmd->add_option("--K", laurent.K, "band radius");
    laurent_cmd->add_option("--emit", laurent.emit, "bounds|dual|tight|decay");
    laurent_cmd->add_option("--t-count", laurent.t_count,
                            "t samples in [0,a) (0 = every grid point)");
    laurent_cmd->add_flag("--unit-norm", laurent.unit_norm,
                          "normalize the tight window to unit L2 norm");
    laurent_cmd->add_option("--seed", laurent.common.seed, "run seed");
    laurent_cmd->add_option("--out", laurent.common.out_path, "output path")
        ->required();

    DecayOptions decay;
    CLI::App* decay_cmd = app.add_subcommand("decay", "decay preservation study");
    decay_cmd->add_option("--window", decay.common.window_path, "window spec JSON")
        ->required();
    decay_cmd->add_option("--p", decay.common.p, "lattice numerator")->required();
    decay_cmd->add_option("--q", decay.common.q, "lattice denominator")->required();
    decay_cmd->add_option("--a-samples", decay.common.a_samples,
                          "time shift a in samples (default: one second)");
    decay_cmd->add_option("--K", decay.K, "band radius");
    decay_cmd->add_option("--weights", decay.weights,
                          "e.g. poly:2,subexp:1:0.5,exp:1,const");
    decay_cmd->add_option("--seed", decay.common.seed, "run seed");
    decay_cmd->add_option("--out", decay.common.out_path, "decay CSV path")
        ->required();

    OfdmOptions ofdm;
    CLI::App* ofdm_cmd = app.add_subcommand("ofdm", "OFDM/BFDM transceiver run");
    ofdm_cmd->add_option("--window", ofdm.common.window_path, "window spec JSON")
        ->required();
    ofdm_cmd->add_option("--p", ofdm.common.p, "lattice numerator")->required();
    ofdm_cmd->add_option("--q", ofdm.common.q, "lattice denominator")->required();
    ofdm_cmd->add_option("--a-samples", ofdm.common.a_samples,
                         "time shift a in samples (default: one second)");
    ofdm_cmd->add_option("--K", ofdm.K, "band radius for the pulse construction");
    ofdm_cmd->add_option("--mode", ofdm.mode, "tight|bfdm");
    ofdm_cmd->add_option("--channel", ofdm.channel_path,
                         "channel JSON (default: identity)");
    ofdm_cmd->add_option("--n", ofdm.n_subcarriers, "subcarrier count");
    ofdm_cmd->add_option("--symbols", ofdm.n_symbols, "OFDM symbols per burst");
    ofdm_cmd->add_option("--frames", ofdm.frames, "Monte Carlo frames (0: skip BER)");
    ofdm_cmd->add_option("--guard", ofdm.guard, "burst guard seconds");
    ofdm_cmd->add_option("--seed", ofdm.common.seed, "run seed");
    ofdm_cmd->add_option("--out", ofdm.common.out_path, "run JSON path")->required();

    SweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand("tf-sweep", "TF trade-off sweep");
    sweep_cmd->add_option("--window", sweep.common.window_path, "window spec JSON")
        ->required();
    sweep_cmd->add_option("--pq-list", sweep.pq_list, "e.g. 1:2,2:3,10:13");
    sweep_cmd->add_option("--K", sweep.K, "band radius");
    sweep_cmd->add_option("--seed", sweep.common.seed, "run seed");
    sweep_cmd->add_option("--out", sweep.common.out_path, "sweep CSV path")
        ->required();

    ReproduceOptions repro;
    CLI::App* repro_cmd = app.add_subcommand(
        "reproduce-all", "emit every acceptance-criterion artifact");
    repro_cmd->add_option("--out-dir", repro.out_dir,
                          "output directory (default: repro-<timestamp>)");
    repro_cmd->add_option("--seed", repro.seed, "run seed");

    // A JSON config file may replace the flag list: {"command": ..., flags...}
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] != "--config") continue;
        if (i + 1 >= args.size()) {
            std::fprintf(stderr, "E_PARAMS: --config needs a file path\n");
            return 1;
        }
        try {
            const auto j = nlohmann::json::parse(read_text_file(args[i + 1]));
            if (!j.contains("command") || !j["command"].is_string()) {
                std::fprintf(stderr, "E_PARAMS: config file needs a command field\n");
                return 1;
            }
            std::vector<std::string> rebuilt{j["command"].get<std::string>()};
            for (const auto& [key, value] : j.items()) {
                if (key == "command") continue;
                if (value.is_boolean()) {
                    if (value.get<bool>()) rebuilt.push_back("--" + key);
                } else {
                    rebuilt.push_back("--" + key);
                    rebuilt.push_back(value.is_string() ? value.get<std::string>()
                                                        : value.dump());
                }
            }
            args = rebuilt;
        } catch (const Failure& f) {
            std::fprintf(stderr, "%s: %s\n", gabor_status_name(f.status),
                         f.detail.c_str());
            return exit_code_for(f.status);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "E_IO: %s\n", e.what());
            return 1;
        }
        break;
    }

    try {
        std::vector<std::string> full{"gabor"};
        for (const auto& a : args) full.push_back(a);
        std::vector<char*> cargs;
        for (auto& a : full) cargs.push_back(a.data());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (dual_cmd->parsed())
            run_dual_approx(dual);
        else if (laurent_cmd->parsed())
            run_laurent(laurent);
        else if (decay_cmd->parsed())
            run_decay(decay);
        else if (ofdm_cmd->parsed())
            run_ofdm(ofdm);
        else if (sweep_cmd->parsed())
            run_tf_sweep(sweep);
        else if (repro_cmd->parsed())
            run_reproduce_all(repro);
        else {
            std::fprintf(stderr, "E_PARAMS: no command given (see --help)\n");
            return 1;
        }
    } catch (const Failure& f) {
        std::fprintf(stderr, "%s: %s\n", gabor_status_name(f.status), f.detail.c_str());
        return exit_code_for(f.status);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "E_INTERNAL: %s\n", e.what());
        return 2;
    }
    return 0;
}
