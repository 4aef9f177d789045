#include <catch2/catch_amalgamated.hpp>

#include "pulse/classify/classifier.hpp"
#include "pulse/classify/smo.hpp"
#include "pulse/rng.hpp"
#include "support/qp_oracle.hpp"

using namespace pulse;
using Catch::Approx;

namespace {

Matrix matrix_from(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

std::vector<std::vector<double>> kernel_matrix(const Matrix& x,
                                               KernelKind kind,
                                               const KernelParams& params) {
    std::vector<std::vector<double>> k(x.rows, std::vector<double>(x.rows));
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t j = 0; j < x.rows; ++j)
            k[i][j] = kernel_eval(
                kind, params,
                std::span<const double>(x.row(i), x.cols),
                std::span<const double>(x.row(j), x.cols));
    return k;
}

}  // namespace

TEST_CASE("two symmetric points solve in closed form", "[smo]") {
    const Matrix x = matrix_from({{-1.0}, {1.0}});
    const std::vector<double> y{-1.0, 1.0};
    MatrixKernelSource source(x, KernelKind::linear, {});
    KernelRowCache cache(source);
    const SmoResult res = smo_solve(cache, y, 10.0, 1e-8, 200);
    REQUIRE(res.converged);
    CHECK(res.alpha[0] == Approx(0.5).margin(1e-8));
    CHECK(res.alpha[1] == Approx(0.5).margin(1e-8));
    CHECK(res.b == Approx(0.0).margin(1e-8));

    // f(x) = x on the margin points.
    const double f1 = res.alpha[0] * y[0] * (-1.0 * 1.0) +
                      res.alpha[1] * y[1] * (1.0 * 1.0) + res.b;
    CHECK(f1 == Approx(1.0).margin(1e-8));
}

TEST_CASE("contradictory labels saturate the box and stay KKT-feasible",
          "[smo]") {
    const Matrix x = matrix_from({{0.5}, {0.5}});
    const std::vector<double> y{-1.0, 1.0};
    MatrixKernelSource source(x, KernelKind::linear, {});
    KernelRowCache cache(source);
    const SmoResult res = smo_solve(cache, y, 1.0, 1e-3, 200);
    REQUIRE(res.converged);
    CHECK(res.alpha[0] == Approx(1.0));
    CHECK(res.alpha[1] == Approx(1.0));
    const KktReport rep =
        kkt_audit(cache, y, res.alpha, res.b, 1.0, 1e-3);
    CHECK(rep.ok);
}

TEST_CASE("linear SVM through the classifier front end", "[smo]") {
    const Matrix x = matrix_from({{-1.0}, {1.0}});
    const std::vector<int> labels{1, 2};
    const TrainedModel model = fit({Method::SVM_LIN, {}}, x, labels);
    const auto& svm = std::get<SvmModel>(model.model);
    CHECK(svm.converged);
    // Standardizing {-1, 1} is the identity, so f(x) = x.
    CHECK(svm.decision_value(std::vector<double>{1.0}) ==
          Approx(1.0).margin(1e-3));
    CHECK(svm.decision_value(std::vector<double>{-1.0}) ==
          Approx(-1.0).margin(1e-3));
    CHECK(predict(model, std::vector<double>{0.2}) == 2);
    CHECK(predict(model, std::vector<double>{-0.2}) == 1);
}

TEST_CASE("SMO reaches the exhaustive dual optimum on small problems",
          "[smo]") {
    SplitMix64 rng(17);
    const KernelParams params;
    for (const KernelKind kind :
         {KernelKind::linear, KernelKind::rbf, KernelKind::quadratic}) {
        for (int rep = 0; rep < 8; ++rep) {
            const size_t n = 4 + rng.next_below(5);
            const size_t d = 1 + rng.next_below(3);
            Matrix x(n, d);
            std::vector<double> y(n);
            for (size_t i = 0; i < n; ++i) {
                y[i] = i % 2 == 0 ? -1.0 : 1.0;
                for (size_t j = 0; j < d; ++j)
                    x.at(i, j) = rng.next_normal() + (y[i] > 0 ? 0.7 : 0.0);
            }
            const double c_bound = 1.0;

            MatrixKernelSource source(x, kind, params);
            KernelRowCache cache(source);
            const SmoResult res = smo_solve(cache, y, c_bound, 1e-8, 500);
            REQUIRE(res.converged);

            const KktReport audit =
                kkt_audit(cache, y, res.alpha, res.b, c_bound, 1e-3);
            CHECK(audit.ok);

            const double got = dual_objective(cache, y, res.alpha);
            const double want = testsupport::qp_dual_max(
                kernel_matrix(x, kind, params), y, c_bound);
            CHECK(got == Approx(want).margin(1e-6));
        }
    }
}

TEST_CASE("Gram-backed rows match direct kernel rows", "[smo]") {
    SplitMix64 rng(29);
    const size_t n = 12, d = 3;
    Matrix x(n, d);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < d; ++j) x.at(i, j) = rng.next_normal();
    Matrix gram(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            gram.at(i, j) = dot(x.row(i), x.row(j), d);

    for (const KernelKind kind :
         {KernelKind::linear, KernelKind::quadratic, KernelKind::poly3,
          KernelKind::mlp, KernelKind::rbf}) {
        MatrixKernelSource direct(x, kind, {});
        GramKernelSource shared(gram, kind, {});
        for (size_t i = 0; i < n; ++i) {
            std::vector<double> a(n), b(n);
            direct.fill_row(i, a.data());
            shared.fill_row(i, b.data());
            CHECK(a == b);
            CHECK(direct.diag(i) == shared.diag(i));
        }
    }
}
