#include "aqrm/aqrm.h"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace {

struct ModelHandle {
    aqrm_model* m = nullptr;
    ~ModelHandle() { aqrm_model_destroy(m); }
};

} // namespace

TEST_CASE("status strings and version") {
    CHECK(std::string(aqrm_version()).size() > 0);
    CHECK(std::string(aqrm_status_string(AQRM_OK)) == "ok");
    CHECK(std::string(aqrm_status_string(AQRM_ERR_CONFIG)) == "configuration error");
    CHECK(std::string(aqrm_status_string(static_cast<aqrm_status>(99))) == "unknown status");
}

TEST_CASE("model lifecycle and errors") {
    ModelHandle h;
    CHECK(aqrm_model_create(0.5, 1.0, 0.2, 1.5, 0, &h.m) == AQRM_ERR_CONFIG);
    CHECK(h.m == nullptr);
    CHECK(std::string(aqrm_last_error()).find("lambda") != std::string::npos);
    CHECK(aqrm_model_create(0.5, 1.0, 0.2, 0.3, 0, nullptr) == AQRM_ERR_INVALID_ARGUMENT);

    REQUIRE(aqrm_model_create_gs(0.5, 1.0, 2.0, 0.3, 0, &h.m) == AQRM_OK);
    CHECK(std::string(aqrm_last_error()).empty());
    aqrm_params p{};
    REQUIRE(aqrm_model_params(h.m, &p) == AQRM_OK);
    CHECK(p.g / p.g_s == doctest::Approx(2.0));
    CHECK(p.lambda == 0.3);

    size_t n = 0, dim = 0;
    REQUIRE(aqrm_model_n_max(h.m, &n) == AQRM_OK);
    REQUIRE(aqrm_model_dim(h.m, &dim) == AQRM_OK);
    CHECK(n >= 64);
    CHECK(dim == 2 * (n + 1));

    CHECK(aqrm_model_set_truncation(h.m, 10, AQRM_TRUNCATION_FIXED, 0) == AQRM_ERR_CONFIG);
    CHECK(aqrm_model_set_truncation(h.m, 10, AQRM_TRUNCATION_FIXED, 1) == AQRM_OK);
    REQUIRE(aqrm_model_n_max(h.m, &n) == AQRM_OK);
    CHECK(n == 10);
    CHECK(aqrm_model_set_truncation(h.m, 10, static_cast<aqrm_truncation_policy>(7), 1) ==
          AQRM_ERR_INVALID_ARGUMENT);

    double v = 0.0;
    CHECK(aqrm_model_hamiltonian_element(h.m, 0, 0, &v) == AQRM_OK);
    CHECK(v == doctest::Approx(0.5));
    CHECK(aqrm_model_hamiltonian_element(h.m, 3, 0, &v) == AQRM_OK);  // <1,-x|H|0,+x> = g
    CHECK(v == doctest::Approx(p.g));
    CHECK(aqrm_model_hamiltonian_element(h.m, 0, 3, &v) == AQRM_OK);
    CHECK(v == doctest::Approx(p.g));
    CHECK(aqrm_model_hamiltonian_element(h.m, 2, 1, &v) == AQRM_OK);  // <1,+x|H|0,-x> = g lambda
    CHECK(v == doctest::Approx(p.g * 0.3));
    CHECK(aqrm_model_hamiltonian_element(h.m, 22, 0, &v) == AQRM_ERR_INVALID_ARGUMENT);

    CHECK(aqrm_model_params(nullptr, &p) == AQRM_ERR_INVALID_ARGUMENT);
    aqrm_model_destroy(nullptr);
}

TEST_CASE("eigenpairs through the C surface") {
    ModelHandle h;
    REQUIRE(aqrm_model_create_gs(0.5, 1.0, 1.0, 0.0, 0, &h.m) == AQRM_OK);
    aqrm_params p{};
    aqrm_model_params(h.m, &p);

    aqrm_solution* s = nullptr;
    REQUIRE(aqrm_solve(h.m, 10, AQRM_SECTOR_FULL, &s) == AQRM_OK);
    size_t count = 0, dim = 0;
    aqrm_solution_count(s, &count);
    aqrm_solution_dim(s, &dim);
    CHECK(count == 10);
    const auto ref = oracle::jcm_levels(0.5, 1.0, p.g, 10);
    for (size_t i = 0; i < 10; ++i) {
        double e = 0.0, r = 1.0;
        REQUIRE(aqrm_solution_energy(s, i, &e) == AQRM_OK);
        REQUIRE(aqrm_solution_residual(s, i, &r) == AQRM_OK);
        CHECK(std::abs(e - ref[i]) < 1e-10);
        CHECK(r < 1e-9);
    }
    std::vector<double> buf(dim);
    CHECK(aqrm_solution_vector(s, 0, buf.data(), dim - 1) == AQRM_ERR_BUFFER_TOO_SMALL);
    REQUIRE(aqrm_solution_vector(s, 0, buf.data(), dim) == AQRM_OK);
    double norm = 0.0;
    for (double x : buf) norm += x * x;
    CHECK(norm == doctest::Approx(1.0));
    CHECK(aqrm_solution_energy(s, 10, &norm) == AQRM_ERR_INVALID_ARGUMENT);

    aqrm_observables o{};
    REQUIRE(aqrm_solution_observables(s, 0, &o) == AQRM_OK);
    CHECK(o.duality_mod >= 1.0 - 1e-8);
    aqrm_solution_destroy(s);

    REQUIRE(aqrm_solve(h.m, 3, AQRM_SECTOR_ODD, &s) == AQRM_OK);
    double e0 = 0.0;
    aqrm_solution_energy(s, 0, &e0);
    CHECK(e0 == doctest::Approx(-0.5));
    aqrm_solution_destroy(s);
    CHECK(aqrm_solve(h.m, 0, AQRM_SECTOR_EVEN, &s) == AQRM_ERR_CONFIG);
    CHECK(aqrm_solve(h.m, 1, static_cast<aqrm_sector>(5), &s) == AQRM_ERR_INVALID_ARGUMENT);

    aqrm_low_spectrum ls{};
    REQUIRE(aqrm_low_spectrum_compute(h.m, &ls) == AQRM_OK);
    CHECK(ls.e0 == doctest::Approx(ref[0]));
    CHECK(ls.gap == doctest::Approx(ref[1] - ref[0]));
    CHECK(ls.ground_parity == (ls.even_e0 < ls.odd_e0 ? 1 : -1));
}

TEST_CASE("waves and duality through the C surface") {
    ModelHandle h, minus;
    REQUIRE(aqrm_model_create_gs(0.5, 1.0, 5.2, 0.3, 0, &h.m) == AQRM_OK);
    aqrm_wave* w = nullptr;
    REQUIRE(aqrm_ground_wave(h.m, 0.0, 0.0, 0, &w) == AQRM_OK);
    size_t n = 0;
    aqrm_wave_size(w, &n);
    const double *x = nullptr, *up = nullptr, *dn = nullptr;
    REQUIRE(aqrm_wave_data(w, &x, &up, &dn) == AQRM_OK);
    CHECK(x[0] == -x[n - 1]);
    double norm = 0.0;
    aqrm_wave_norm(w, &norm);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
    int nz = -1, amb = -1;
    REQUIRE(aqrm_wave_count_zeros(w, AQRM_COMPONENT_MINUS, 0.0, &nz, &amb) == AQRM_OK);
    CHECK(nz == 2);
    CHECK(aqrm_wave_count_zeros(w, static_cast<aqrm_component>(4), 0.0, &nz, &amb) == AQRM_ERR_INVALID_ARGUMENT);
    CHECK(aqrm_wave_write_csv(w, "/nonexistent-dir/w.csv") == AQRM_ERR_IO);
    const std::string path = "test_capi_wave.csv";
    REQUIRE(aqrm_wave_write_csv(w, path.c_str()) == AQRM_OK);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == "# space=position");
    std::remove(path.c_str());
    aqrm_wave_destroy(w);
    CHECK(aqrm_ground_wave(h.m, 0.0, 1.0, 0, &w) == AQRM_ERR_CONFIG);

    ModelHandle a, b;
    REQUIRE(aqrm_model_create_gs(0.5, 1.0, 5.0, -0.1, 0, &a.m) == AQRM_OK);
    REQUIRE(aqrm_model_create_gs(0.5, 1.0, 5.0, 0.1, 0, &b.m) == AQRM_OK);
    double f = 0.0;
    REQUIRE(aqrm_dual_fidelity(a.m, b.m, &f) == AQRM_OK);
    CHECK(f >= 0.999);
}

TEST_CASE("boundary helpers through the C surface") {
    CHECK(aqrm_g_c_over_gs(-0.5) == doctest::Approx(4.0 / 3.0));
    CHECK(aqrm_g_t1_over_gs(0.8) == doctest::Approx(2.0 / 0.6));
    CHECK(std::isinf(aqrm_g_t1_over_gs(1.0)));
    double l = -1.0;
    CHECK(aqrm_lambda_t1(2.0, &l) == AQRM_OK);
    CHECK(l == doctest::Approx(0.0));
    CHECK(aqrm_lambda_t1(1.0, &l) == AQRM_ERR_CONFIG);
    double root = 0.0;
    REQUIRE(aqrm_e_omega_y_root_over_gs(0.3, 0.5, 1.0, &root) == AQRM_OK);
    CHECK(std::abs(root - aqrm_g_t1_over_gs(0.3)) < 1e-12 * root);
    CHECK(aqrm_e_omega_y_root_over_gs(1.0, 0.5, 1.0, &root) == AQRM_ERR_CONFIG);

    double gs[8];
    size_t count = 0;
    REQUIRE(aqrm_detect_crossings(0.5, 1.0, 0.6, 2.0, 4.0, 0, gs, 8, &count) == AQRM_OK);
    REQUIRE(count >= 1);
    CHECK(std::abs(gs[0] - 2.5) / 2.5 < 0.05);
    CHECK(aqrm_detect_crossings(0.5, 1.0, 0.0, 0.5, 6.0, 0, gs, 1, &count) == AQRM_ERR_BUFFER_TOO_SMALL);
    CHECK(count > 1);

    aqrm_boundary_request r{};
    aqrm_boundary_request_default(&r);
    r.lambda_steps = 2;
    r.lambda_max = 0.5;
    size_t points = 0;
    const std::string path = "test_capi_boundary.csv";
    REQUIRE(aqrm_boundary_export(&r, path.c_str(), &points) == AQRM_OK);
    CHECK(points >= 6);
    std::remove(path.c_str());
    r.lambda_steps = 0;
    CHECK(aqrm_boundary_export(&r, path.c_str(), &points) == AQRM_ERR_CONFIG);
}

TEST_CASE("scans and datasets through the C surface") {
    CHECK(aqrm_preset_count() == 9);
    CHECK(std::string(aqrm_preset_name(0)) == "fig1a");
    CHECK(aqrm_preset_name(99) == nullptr);
    aqrm_scan_config c{};
    CHECK(aqrm_preset_config("nope", &c) == AQRM_ERR_CONFIG);
    REQUIRE(aqrm_preset_config("fig1e", &c) == AQRM_OK);
    CHECK(c.lambda_steps == 201);

    aqrm_scan_config_default(&c);
    c.omega = 0.5;
    c.lambda_min = -0.5;
    c.lambda_max = 0.5;
    c.lambda_steps = 3;
    c.g_min_gs = 1.0;
    c.g_max_gs = 3.0;
    c.g_steps = 3;
    c.compute_nz = 1;
    aqrm_dataset* d = nullptr;
    REQUIRE(aqrm_scan_run(&c, "unit", &d) == AQRM_OK);
    size_t rows = 0, failed = 9;
    aqrm_dataset_size(d, &rows, &failed);
    CHECK(rows == 9);
    CHECK(failed == 0);
    aqrm_record rec{};
    REQUIRE(aqrm_dataset_record(d, 8, &rec) == AQRM_OK);
    CHECK(rec.lambda == doctest::Approx(0.5));
    CHECK(rec.g_over_gs == doctest::Approx(3.0));
    aqrm_phase_label label{};
    REQUIRE(aqrm_classify(&rec, &label) == AQRM_OK);
    CHECK(label.regime == AQRM_REGIME_X);
    CHECK(std::string(aqrm_regime_string(label.regime)) == "x-type");
    CHECK(aqrm_dataset_record(d, 9, &rec) == AQRM_ERR_INVALID_ARGUMENT);

    const std::string path = "test_capi_scan.csv";
    REQUIRE(aqrm_dataset_write(d, path.c_str(), "csv") == AQRM_OK);
    CHECK(aqrm_dataset_write(d, path.c_str(), "xml") == AQRM_ERR_INVALID_ARGUMENT);
    aqrm_dataset* back = nullptr;
    REQUIRE(aqrm_dataset_read_csv(path.c_str(), &back) == AQRM_OK);
    aqrm_record r2{};
    aqrm_dataset_record(back, 8, &r2);
    CHECK(r2.E0 == rec.E0);
    CHECK(r2.n_max_used == rec.n_max_used);
    aqrm_dataset_destroy(back);
    aqrm_dataset_destroy(d);
    std::remove(path.c_str());
    CHECK(aqrm_dataset_read_csv("/nonexistent-dir/x.csv", &back) == AQRM_ERR_IO);

    c.g_steps = 1;
    CHECK(aqrm_scan_run(&c, nullptr, &d) == AQRM_ERR_CONFIG);
}
