#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace gsx;
using testutil::matrix_power;

TEST_CASE("circular autocorrelation") {
    SECTION("zero lag is the energy") {
        const GraphSignal y = testutil::random_complex_signal(6, 1);
        CHECK(std::abs(autocorr_cyclic(y, 0) - cxd{energy(y), 0.0}) < 1e-12);
    }

    SECTION("delta signal") {
        const GraphSignal y = delta_signal(4, 0);
        CHECK(std::abs(autocorr_cyclic(y, 0) - cxd{1, 0}) < 1e-15);
        for (long l = 1; l < 4; ++l) CHECK(std::abs(autocorr_cyclic(y, l)) < 1e-15);
    }

    SECTION("matrix identity on the cyclic graph") {
        const Graph g = cyclic_graph(7);
        const CMatrix c = g.adjacency.cast<cxd>();
        const GraphSignal y = testutil::random_complex_signal(7, 5);
        for (long l = -7; l <= 14; ++l) {
            const Index lp = ((l % 7) + 7) % 7;
            const CVector shifted = matrix_power(c, lp) * y.values;
            const cxd expect = shifted.dot(y.values);
            CHECK(std::abs(autocorr_cyclic(y, l) - expect) < 1e-10);
        }
    }
}

TEST_CASE("circular cross-correlation") {
    SECTION("self at zero lag") {
        const GraphSignal x = testutil::random_complex_signal(5, 2);
        CHECK(std::abs(crosscorr_cyclic(x, x, 0) - cxd{energy(x), 0.0}) < 1e-12);
    }

    SECTION("deltas one step apart peak at lag n-1") {
        // y is x advanced one step along the cycle; the correlation that
        // undoes it sits at lag n-1 (= -1 mod n)
        const GraphSignal x = delta_signal(4, 0);
        const GraphSignal y = delta_signal(4, 1);
        for (long l = 0; l < 4; ++l) {
            const cxd v = crosscorr_cyclic(x, y, l);
            if (l == 3) CHECK(std::abs(v - cxd{1, 0}) < 1e-15);
            else CHECK(std::abs(v) < 1e-15);
        }
    }

    SECTION("matrix identity") {
        const Graph g = cyclic_graph(6);
        const CMatrix c = g.adjacency.cast<cxd>();
        const GraphSignal x = testutil::random_complex_signal(6, 3);
        const GraphSignal y = testutil::random_complex_signal(6, 4);
        for (long l = 0; l < 6; ++l) {
            const CVector shifted = matrix_power(c, l) * y.values;
            CHECK(std::abs(crosscorr_cyclic(x, y, l) - shifted.dot(x.values)) < 1e-10);
        }
        CHECK_THROWS_AS(crosscorr_cyclic(testutil::random_complex_signal(5, 1), y, 0),
                        DimensionMismatch);
    }
}

TEST_CASE("graph autocorrelation") {
    SECTION("dense matrix oracle on a directed graph") {
        const Graph g = directed_subsample(knn_sensor_graph(12, 4, 1).graph, 0.75, 3);
        REQUIRE(g.directed);
        const DecompPtr d = decompose_shared(g);
        const ShiftOperator s = make_a_e(d);
        const CMatrix aphi = s.matrix();
        const GraphSignal y = testutil::random_complex_signal(12, 9);
        for (Index l = 0; l <= 4; ++l)
            for (Index m = 0; m <= 4; ++m) {
                const CVector wl = matrix_power(aphi, l) * y.values;
                const CVector wm = matrix_power(aphi, m) * y.values;
                const cxd expect = wl.dot(wm);
                CHECK(std::abs(graph_autocorr(s, y, l, m) - expect) <=
                      1e-9 * (1.0 + std::abs(expect)));
            }
    }

    SECTION("equal lags on a unitary basis give the energy") {
        const DecompPtr d = decompose_shared(knn_sensor_graph(10, 3, 5).graph);
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(10, 21);
        for (Index l = 0; l <= 3; ++l)
            CHECK(std::abs(graph_autocorr(s, y, l, l) - cxd{energy(y), 0.0}) <=
                  1e-9 * energy(y));
    }

    SECTION("cyclic reduction") {
        const DecompPtr d = decompose_shared(cyclic_graph(8));
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(8, 6);
        for (Index l = 0; l <= 7; ++l)
            for (Index m = 0; m <= 7; ++m)
                CHECK(std::abs(graph_autocorr(s, y, l, m) -
                               autocorr_cyclic(y, static_cast<long>(l) - static_cast<long>(m))) <
                      1e-10);
    }

    SECTION("zero signal") {
        const DecompPtr d = decompose_shared(cyclic_graph(5));
        const ShiftOperator s = make_a_e(d);
        CHECK(std::abs(graph_autocorr(s, vertex_signal(CVector::Zero(5)), 2, 1)) == 0.0);
    }
}

TEST_CASE("graph cross-correlation") {
    const DecompPtr d = decompose_shared(cyclic_graph(8));
    const ShiftOperator s = make_a_e(d);
    const GraphSignal x = testutil::random_complex_signal(8, 31);
    const GraphSignal y = testutil::random_complex_signal(8, 32);

    SECTION("zero lag") {
        const cxd expect = y.values.dot(x.values);
        CHECK(std::abs(graph_crosscorr(s, x, y, 0) - expect) < 1e-12);
    }

    SECTION("cyclic reduction at every lag") {
        for (Index l = 0; l < 8; ++l)
            CHECK(std::abs(graph_crosscorr(s, x, y, l) -
                           crosscorr_cyclic(x, y, static_cast<long>(l))) < 1e-10);
    }

    SECTION("self-correlation at zero lag on a unitary basis") {
        CHECK(std::abs(graph_crosscorr(s, y, y, 0) - cxd{energy(y), 0.0}) <= 1e-9 * energy(y));
    }
}

TEST_CASE("autocorrelation matrix") {
    SECTION("single lag on a unitary basis") {
        const DecompPtr d = decompose_shared(knn_sensor_graph(10, 3, 5).graph);
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(10, 2);
        const CorrelationMatrix r = autocorr_matrix(s, y, 1, true);
        REQUIRE(r.lag_count == 1);
        CHECK(std::abs(r.r(0, 0) - cxd{energy(y), 0.0}) <= 1e-9 * energy(y));
    }

    SECTION("fast path equals the definitional path and is Toeplitz") {
        const DecompPtr d = decompose_shared(knn_sensor_graph(10, 3, 5).graph);
        REQUIRE(d->unitary_v);
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(10, 14);
        const CorrelationMatrix fast = autocorr_matrix(s, y, 4, true);
        const CorrelationMatrix slow = autocorr_matrix(s, y, 4, false);
        CHECK((fast.r - slow.r).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(fast.toeplitz);
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 4; ++j)
                if (i + 1 < 4 && j + 1 < 4)
                    CHECK(std::abs(fast.r(i, j) - fast.r(i + 1, j + 1)) < 1e-9);
    }

    SECTION("gram structure: Hermitian positive semidefinite") {
        const Graph g = directed_subsample(knn_sensor_graph(12, 4, 1).graph, 0.75, 3);
        const DecompPtr d = decompose_shared(g);
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(12, 3);
        const CorrelationMatrix r = autocorr_matrix(s, y, 5, false);
        CHECK(r.hermitian);
        CHECK_FALSE(r.toeplitz);
        CHECK((r.r - r.r.adjoint()).norm() < 1e-9 * r.r.norm());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(r.r);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9 * r.r.operatorNorm());
    }

    SECTION("fast path guarded on non-unitary bases") {
        const Graph g = directed_subsample(knn_sensor_graph(12, 4, 1).graph, 0.75, 3);
        const DecompPtr d = decompose_shared(g);
        REQUIRE_FALSE(d->unitary_v);
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(12, 4);
        CHECK_THROWS_AS(autocorr_matrix(s, y, 3, true), FastPathUnavailable);
        CHECK_NOTHROW(autocorr_matrix(s, y, 3, false));
    }

    SECTION("unit-shift consistency: powers collapse to lag differences") {
        const DecompPtr d = decompose_shared(knn_sensor_graph(10, 3, 5).graph);
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(10, 8);
        const CVector yf = d->v_inv * y.values;
        const CVector e = s.eigenvalues();
        const CorrelationMatrix r = autocorr_matrix(s, y, 4, true);
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 4; ++j) {
                cxd diff_form{0, 0};
                for (Index t = 0; t < 10; ++t)
                    diff_form += std::norm(yf(t)) *
                                 std::pow(e(t), static_cast<int>(j - i));
                CHECK(std::abs(r.r(i, j) - diff_form) < 1e-9);
            }
    }
}

TEST_CASE("cross-correlation vector") {
    SECTION("single lag") {
        const DecompPtr d = decompose_shared(knn_sensor_graph(10, 3, 5).graph);
        const ShiftOperator s = make_a_e(d);
        const GraphSignal x = testutil::random_complex_signal(10, 2);
        const GraphSignal y = testutil::random_complex_signal(10, 3);
        const CVector r = crosscorr_vector(s, x, y, 1, true);
        CHECK(std::abs(r(0) - y.values.dot(x.values)) < 1e-10);
    }

    SECTION("dual-path agreement on the cyclic graph") {
        const DecompPtr d = decompose_shared(cyclic_graph(9));
        const ShiftOperator s = make_a_e(d);
        const GraphSignal x = testutil::random_complex_signal(9, 4);
        const GraphSignal y = testutil::random_complex_signal(9, 5);
        const CVector fast = crosscorr_vector(s, x, y, 9, true);
        const CVector slow = crosscorr_vector(s, x, y, 9, false);
        CHECK((fast - slow).cwiseAbs().maxCoeff() <= 1e-10);
    }

    SECTION("zero input gives a zero vector") {
        const DecompPtr d = decompose_shared(cyclic_graph(5));
        const ShiftOperator s = make_a_e(d);
        const GraphSignal y = testutil::random_complex_signal(5, 6);
        const CVector r = crosscorr_vector(s, vertex_signal(CVector::Zero(5)), y, 3, true);
        CHECK(r.norm() == 0.0);
    }
}
