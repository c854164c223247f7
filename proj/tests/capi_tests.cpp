#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "gabor/capi.h"

namespace {

struct SignalHandle {
    gabor_signal* ptr = nullptr;
    ~SignalHandle() { gabor_signal_free(ptr); }
};
struct LatticeHandle {
    gabor_lattice* ptr = nullptr;
    ~LatticeHandle() { gabor_lattice_free(ptr); }
};
struct TableHandle {
    gabor_table* ptr = nullptr;
    ~TableHandle() { gabor_table_free(ptr); }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::strlen(gabor_version()) > 0);
    CHECK(std::string(gabor_status_name(GABOR_OK)) == "OK");
    CHECK(std::string(gabor_status_name(GABOR_E_NOT_FRAME)) == "E_NOT_FRAME");
}

TEST_CASE("signal creation, getters, and data copy") {
    SignalHandle g;
    REQUIRE(gabor_signal_gaussian(-256, 32, 512, &g.ptr) == GABOR_OK);
    CHECK(gabor_signal_length(g.ptr) == 512);
    CHECK(gabor_signal_dt(g.ptr) == doctest::Approx(1.0 / 32.0));
    CHECK(gabor_signal_t0(g.ptr) == doctest::Approx(-8.0));
    CHECK(gabor_signal_norm(g.ptr) == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<double> re(512), im(512), t(512);
    REQUIRE(gabor_signal_copy(g.ptr, re.data(), im.data()) == GABOR_OK);
    REQUIRE(gabor_signal_time_axis(g.ptr, t.data()) == GABOR_OK);
    CHECK(t[0] == doctest::Approx(-8.0));
    CHECK(re[256] == doctest::Approx(std::pow(2.0, 0.25)));
    CHECK(im[256] == 0.0);
}

TEST_CASE("error paths set codes and a message") {
    SignalHandle bad;
    CHECK(gabor_signal_rectangular(-256, 32, 512, -5, &bad.ptr) == GABOR_E_PARAMS);
    CHECK(std::strlen(gabor_last_error()) > 0);
    CHECK(bad.ptr == nullptr);

    LatticeHandle lat;
    CHECK(gabor_lattice_create(2, 4, 32, 32, &lat.ptr) == GABOR_E_LATTICE);
    CHECK(gabor_signal_gaussian(-256, 32, 512, nullptr) == GABOR_E_PARAMS);
}

TEST_CASE("lattice handle exposes the derived geometry") {
    LatticeHandle lat;
    REQUIRE(gabor_lattice_create(1, 2, 32, 32, &lat.ptr) == GABOR_OK);
    CHECK(gabor_lattice_a(lat.ptr) == doctest::Approx(1.0));
    CHECK(gabor_lattice_b(lat.ptr) == doctest::Approx(0.5));
    CHECK(gabor_lattice_ab(lat.ptr) == doctest::Approx(0.5));
    CHECK(gabor_lattice_tf(lat.ptr) == doctest::Approx(2.0));
    CHECK(gabor_lattice_regime(lat.ptr) == -1);
}

TEST_CASE("window JSON entry point") {
    const char* spec = R"({
        "kind": "gaussian", "params": {},
        "grid": {"t0_samples": -384, "dt_denominator": 32, "length": 768}
    })";
    SignalHandle g;
    REQUIRE(gabor_signal_from_json(spec, &g.ptr) == GABOR_OK);
    CHECK(gabor_signal_length(g.ptr) == 768);
    SignalHandle bad;
    CHECK(gabor_signal_from_json("nope", &bad.ptr) == GABOR_E_IO);
}

TEST_CASE("dual pipeline through the C surface") {
    SignalHandle g;
    REQUIRE(gabor_signal_gaussian(-384, 32, 768, &g.ptr) == GABOR_OK);
    LatticeHandle lat;
    REQUIRE(gabor_lattice_create(1, 2, 32, 32, &lat.ptr) == GABOR_OK);

    SignalHandle dual;
    REQUIRE(gabor_finite_section_dual(g.ptr, lat.ptr, 4, &dual.ptr) == GABOR_OK);
    double residual = 1.0;
    REQUIRE(gabor_wexler_raz_residual(dual.ptr, g.ptr, lat.ptr, 2, &residual) ==
            GABOR_OK);
    CHECK(residual < 1e-4);

    SignalHandle laurent;
    REQUIRE(gabor_laurent_dual(g.ptr, lat.ptr, 8, &laurent.ptr) == GABOR_OK);
    double dist = 1.0;
    REQUIRE(gabor_signal_l2_distance(dual.ptr, laurent.ptr, &dist) == GABOR_OK);
    CHECK(dist < 1e-3);

    // undersampled lattice surfaces E_NOT_FRAME
    LatticeHandle bad;
    REQUIRE(gabor_lattice_create(3, 2, 33, 32, &bad.ptr) == GABOR_OK);
    SignalHandle no;
    CHECK(gabor_finite_section_dual(g.ptr, bad.ptr, 2, &no.ptr) == GABOR_E_NOT_FRAME);
}

TEST_CASE("frame bounds, tight window, and tables through the C surface") {
    SignalHandle g;
    REQUIRE(gabor_signal_gaussian(-384, 32, 768, &g.ptr) == GABOR_OK);
    LatticeHandle lat;
    REQUIRE(gabor_lattice_create(1, 2, 32, 32, &lat.ptr) == GABOR_OK);

    double A = 0, B = 0, tmin = 0, tmax = 0;
    int is_frame = 0;
    REQUIRE(gabor_frame_bounds(g.ptr, lat.ptr, 6, 0, &A, &B, &tmin, &tmax,
                               &is_frame) == GABOR_OK);
    CHECK(is_frame == 1);
    CHECK(B > A);
    CHECK(A > 0.0);

    SignalHandle tight;
    int hits = -1;
    REQUIRE(gabor_tight_window(g.ptr, lat.ptr, 6, 1, &tight.ptr, &hits) == GABOR_OK);
    CHECK(hits == 0);
    CHECK(gabor_signal_norm(tight.ptr) == doctest::Approx(1.0).epsilon(1e-9));

    TableHandle study;
    const int n_list[] = {1, 2, 3};
    REQUIRE(gabor_convergence_study(g.ptr, lat.ptr, n_list, 3, 7, 2, &study.ptr) ==
            GABOR_OK);
    CHECK(gabor_table_rows(study.ptr) == 3);
    CHECK(gabor_table_cols(study.ptr) == 4);
    CHECK(std::string(gabor_table_column_name(study.ptr, 1)) == "error_l2");
    double v0 = 0, v2 = 0;
    REQUIRE(gabor_table_number(study.ptr, 0, 1, &v0) == GABOR_OK);
    REQUIRE(gabor_table_number(study.ptr, 2, 1, &v2) == GABOR_OK);
    CHECK(v2 < v0);
    CHECK(gabor_table_csv(study.ptr) != nullptr);

    TableHandle bounds;
    REQUIRE(gabor_bounds_table(g.ptr, lat.ptr, 6, 16, &bounds.ptr) == GABOR_OK);
    CHECK(gabor_table_rows(bounds.ptr) == 16);
}

TEST_CASE("decay study and weights through the C surface") {
    SignalHandle g;
    REQUIRE(gabor_signal_gaussian(-384, 32, 768, &g.ptr) == GABOR_OK);
    LatticeHandle lat;
    REQUIRE(gabor_lattice_create(1, 2, 32, 32, &lat.ptr) == GABOR_OK);

    gabor_weight_spec weights[2] = {{1, 2.0, 0.0}, {3, 1.0, 0.0}};
    int grs = -1;
    REQUIRE(gabor_weight_satisfies_grs(&weights[0], &grs) == GABOR_OK);
    CHECK(grs == 1);
    REQUIRE(gabor_weight_satisfies_grs(&weights[1], &grs) == GABOR_OK);
    CHECK(grs == 0);

    TableHandle decay;
    REQUIRE(gabor_decay_study(g.ptr, lat.ptr, 8, weights, 2, &decay.ptr) == GABOR_OK);
    CHECK(gabor_table_rows(decay.ptr) == 2);
    const char* flags = gabor_table_text(decay.ptr, 0, 8);
    REQUIRE(flags != nullptr);
    CHECK(std::string(flags) == "111111");
}

TEST_CASE("ofdm chain through the C surface") {
    SignalHandle g;
    REQUIRE(gabor_signal_gaussian(-384, 32, 768, &g.ptr) == GABOR_OK);
    LatticeHandle lat;
    REQUIRE(gabor_lattice_create(1, 2, 32, 32, &lat.ptr) == GABOR_OK);

    gabor_ofdm* ofdm = nullptr;
    REQUIRE(gabor_ofdm_build(g.ptr, lat.ptr, 6, 0, 8, 4, 2.0, &ofdm) == GABOR_OK);
    CHECK(gabor_ofdm_tf(ofdm) == doctest::Approx(2.0));
    CHECK(gabor_ofdm_orthogonality_error(ofdm) <= 1e-7);

    double max_err = 1.0;
    REQUIRE(gabor_ofdm_roundtrip(ofdm, 5, &max_err) == GABOR_OK);
    CHECK(max_err <= 1e-6);

    const int64_t delays[] = {0};
    const double dopplers[] = {0.0};
    const double gre[] = {1.0};
    const double gim[] = {0.0};
    gabor_channel* ch = nullptr;
    REQUIRE(gabor_channel_create(delays, dopplers, gre, gim, 1, 0.0, 0, 1, &ch) ==
            GABOR_OK);

    double sir = 0.0;
    TableHandle leakage;
    REQUIRE(gabor_ofdm_interference(ofdm, ch, &sir, &leakage.ptr) == GABOR_OK);
    CHECK(sir >= 60.0);

    gabor_run_metrics metrics{};
    REQUIRE(gabor_ofdm_ber(ofdm, ch, 2, 7, &metrics) == GABOR_OK);
    CHECK(metrics.ber == 0.0);
    CHECK(metrics.n_bits == 2 * 8 * 4 * 2);

    gabor_channel_free(ch);
    gabor_ofdm_free(ofdm);
}

TEST_CASE("tf sweep through the C surface") {
    SignalHandle g;
    REQUIRE(gabor_signal_gaussian(-12 * 160, 160, 24 * 160, &g.ptr) == GABOR_OK);
    const int p[] = {1, 10};
    const int q[] = {2, 13};
    TableHandle sweep;
    REQUIRE(gabor_tf_sweep(g.ptr, p, q, 2, 8, &sweep.ptr) == GABOR_OK);
    CHECK(gabor_table_rows(sweep.ptr) == 2);
    double tf0 = 0;
    REQUIRE(gabor_table_number(sweep.ptr, 0, 0, &tf0) == GABOR_OK);
    CHECK(tf0 == doctest::Approx(1.3));
}
