#include "oracles.hpp"

#include "lvqkit/error.hpp"
#include "lvqkit/margin.hpp"
#include "lvqkit/trainer.hpp"

#include <doctest.h>

#include <memory>

using namespace lvqkit;
using namespace testing;

namespace {

Vector vec(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

struct Scene {
    Codebook cb;
    Vector x;
    Label y = 1;
};

// Random codebook with 2 prototypes per class for 3 classes whose winners
// stay put under small perturbations.
Scene random_scene(Rng& rng, Index dim, const AdaptiveMetric& metric) {
    for (;;) {
        Scene s;
        s.cb.prototypes = random_matrix(rng, 6, dim);
        s.cb.labels = {1, 2, 3, 1, 2, 3};
        s.x = random_vector(rng, dim);
        s.y = 1 + static_cast<Label>(rng() % 3);
        std::vector<double> d(6);
        for (Index j = 0; j < 6; ++j) d[static_cast<std::size_t>(j)] = metric.distance(s.x, s.cb.row(j), j);
        if (winners_are_stable(d, s.cb.labels, s.y, 1e-3)) return s;
    }
}

OracleMetric oracle_of(const AdaptiveMetric& m) {
    OracleMetric o;
    for (const auto& r : m.relevances) o.lambdas.push_back(r.weights());
    for (const auto& om : m.omegas) o.omegas.push_back(om.omega());
    return o;
}

double max_rel(const Matrix& a, const Matrix& b) { return relative_error(a, b, 1e-6); }

}  // namespace

TEST_SUITE("margin") {

TEST_CASE("sigmoid") {
    CHECK(sigmoid(0) == 0.5);
    CHECK(sigmoid_prime(0) == 0.25);
    for (double z = -30; z <= 30; z += 0.7) {
        CHECK(sigmoid(z) > 0);
        CHECK(sigmoid(z) < 1);
        CHECK(sigmoid(z + 0.1) > sigmoid(z));
        CHECK(sigmoid_prime(z) == doctest::Approx(sigmoid(z) * (1 - sigmoid(z))));
    }
}

TEST_CASE("relative distance difference") {
    CHECK(mu(2, 2) == 0.0);
    CHECK(mu(0, 5) == -1.0);
    CHECK(mu(3, 1) == 0.5);
    CHECK_THROWS_AS(mu(0, 0), ContractError);
    auto t = margin_terms(1, 1);
    CHECK(t.mu_plus == 0.5);
    CHECK(t.mu_minus == 0.5);
}

TEST_CASE("glvq cost") {
    auto cb = make_codebook({{1, 0}, {-3, 0}}, {1, 2});
    LabeledDataset one;
    one.features = RowMatrix::Zero(1, 2);
    one.labels = {1};
    one.class_count = 2;
    auto cb13 = make_codebook({{1, 0}, {-std::sqrt(3.0), 0}}, {1, 2});
    CHECK(glvq_cost(one, cb13) == doctest::Approx(0.37754).epsilon(1e-5));

    LabeledDataset mid;
    mid.features = RowMatrix::Zero(4, 2);
    mid.labels = {1, 2, 1, 2};
    mid.class_count = 2;
    auto sym = make_codebook({{1, 0}, {-1, 0}}, {1, 2});
    CHECK(glvq_cost(mid, sym) == doctest::Approx(2.0));

    // Samples sitting on their own prototype: mu = -1 each.
    LabeledDataset perfect;
    perfect.features.resize(2, 2);
    perfect.features << 1, 0, -3, 0;
    perfect.labels = {1, 2};
    perfect.class_count = 2;
    CHECK(glvq_cost(perfect, cb) == doctest::Approx(2 * sigmoid(-1)));
    CHECK(sigmoid(-1) == doctest::Approx(0.2689).epsilon(1e-4));
}

TEST_CASE("glvq step worked example") {
    auto cb = make_codebook({{1, 0}, {-1, 0}}, {1, 2});
    glvq_step(cb, vec(0, 0), 1, 0.1);
    CHECK(cb.prototypes(0, 0) == doctest::Approx(0.975));
    CHECK(cb.prototypes(1, 0) == doctest::Approx(-1.025));
    CHECK(cb.prototypes(0, 1) == 0.0);
}

TEST_CASE("glvq step vanishes as d- grows") {
    double prev = 1e9;
    for (double far : {10.0, 100.0, 1000.0, 1e4}) {
        auto cb = make_codebook({{1, 0}, {far, 0}}, {1, 2});
        glvq_step(cb, vec(0, 0), 1, 0.1);
        const double moved = std::abs(cb.prototypes(0, 0) - 1.0);
        CHECK(moved < prev);
        prev = moved;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("glvq step moves w+ toward x") {
    Rng rng = make_rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        Scene s = random_scene(rng, 3, AdaptiveMetric::euclidean());
        auto d = prototype_distances(s.x, s.cb);
        auto w = find_winners(d, s.cb.labels, s.y);
        const Vector before = s.cb.row(w.plus);
        glvq_step(s.cb, s.x, s.y, 0.05);
        CHECK((s.cb.row(w.plus) - before).dot(s.x - before) >= 0);
    }
}

TEST_CASE("mu sign matches classification") {
    Rng rng = make_rng(32);
    for (int rep = 0; rep < 500; ++rep) {
        Scene s = random_scene(rng, 2, AdaptiveMetric::euclidean());
        auto d = prototype_distances(s.x, s.cb);
        auto w = find_winners(d, s.cb.labels, s.y);
        const double m = mu(w.d_plus, w.d_minus);
        CHECK(m >= -1);
        CHECK(m <= 1);
        CHECK((classify(s.x, s.cb) == s.y) == (m < 0));
    }
}

TEST_CASE("glvq step never shrinks the hypothesis margin of a correct sample") {
    Rng rng = make_rng(33);
    int checked = 0;
    for (int rep = 0; rep < 500; ++rep) {
        Scene s = random_scene(rng, 2, AdaptiveMetric::euclidean());
        auto d = prototype_distances(s.x, s.cb);
        auto w = find_winners(d, s.cb.labels, s.y);
        if (w.d_plus >= w.d_minus) continue;
        const double before = w.d_minus - w.d_plus;
        glvq_step(s.cb, s.x, s.y, 0.05);
        const double after = d_euclid2(s.x, s.cb.row(w.minus)) - d_euclid2(s.x, s.cb.row(w.plus));
        CHECK(after >= before);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("margin gradients match finite differences") {
    Rng rng = make_rng(34);
    const Index dim = 4;
    for (auto kind : {MetricKind::euclidean, MetricKind::relevance, MetricKind::matrix, MetricKind::local_relevance,
                      MetricKind::local_matrix}) {
        CAPTURE(to_string(kind));
        for (int rep = 0; rep < 20; ++rep) {
            AdaptiveMetric metric;
            switch (kind) {
                case MetricKind::relevance: metric = AdaptiveMetric::relevance(dim); break;
                case MetricKind::matrix: metric = AdaptiveMetric::matrix(dim); break;
                case MetricKind::local_relevance: metric = AdaptiveMetric::local_relevance(dim, 6); break;
                case MetricKind::local_matrix: metric = AdaptiveMetric::local_matrix(dim, 6); break;
                default: metric = AdaptiveMetric::euclidean();
            }
            for (auto& r : metric.relevances) r = RelevanceVector::normalized(random_simplex(rng, dim));
            for (auto& o : metric.omegas) o = MetricMatrix::normalized(random_square(rng, dim));
            Scene s = random_scene(rng, dim, metric);
            const OracleMetric om = oracle_of(metric);
            auto g = margin_gradient(s.x, s.y, s.cb, metric);

            std::function<double(const RowMatrix&)> by_w = [&](const RowMatrix& w) {
                return oracle_glvq(s.x, s.y, w, s.cb.labels, om);
            };
            CHECK(max_rel(g.prototypes, central_difference(by_w, s.cb.prototypes)) < 1e-5);

            const auto sp = metric.slot(g.winners.plus), sm = metric.slot(g.winners.minus);
            if (metric.uses_relevance()) {
                auto fd_at = [&](std::size_t slot) {
                    std::function<double(const Vector&)> f = [&](const Vector& l) {
                        OracleMetric o = om;
                        o.lambdas[slot] = l;
                        return oracle_glvq(s.x, s.y, s.cb.prototypes, s.cb.labels, o);
                    };
                    return central_difference(f, om.lambdas[slot]);
                };
                if (metric.local()) {
                    CHECK(max_rel(g.relevance_plus, fd_at(sp)) < 1e-5);
                    CHECK(max_rel(g.relevance_minus, fd_at(sm)) < 1e-5);
                } else {
                    CHECK(max_rel(g.relevance_plus + g.relevance_minus, fd_at(0)) < 1e-5);
                }
            }
            if (metric.uses_matrix()) {
                auto fd_at = [&](std::size_t slot) {
                    std::function<double(const Matrix&)> f = [&](const Matrix& o) {
                        OracleMetric m2 = om;
                        m2.omegas[slot] = o;
                        return oracle_glvq(s.x, s.y, s.cb.prototypes, s.cb.labels, m2);
                    };
                    return central_difference(f, om.omegas[slot]);
                };
                if (metric.local()) {
                    CHECK(max_rel(g.omega_plus, fd_at(sp)) < 1e-5);
                    CHECK(max_rel(g.omega_minus, fd_at(sm)) < 1e-5);
                } else {
                    CHECK(max_rel(g.omega_plus + g.omega_minus, fd_at(0)) < 1e-5);
                }
            }
        }
    }
}

TEST_CASE("glvq step is minus eps times the gradient") {
    Rng rng = make_rng(35);
    for (int rep = 0; rep < 50; ++rep) {
        Scene s = random_scene(rng, 3, AdaptiveMetric::euclidean());
        auto g = margin_gradient(s.x, s.y, s.cb, AdaptiveMetric::euclidean());
        RowMatrix want = s.cb.prototypes - 0.01 * g.prototypes;
        glvq_step(s.cb, s.x, s.y, 0.01);
        CHECK((s.cb.prototypes - want).norm() < 1e-14);
    }
}

TEST_CASE("h2mlvq") {
    SUBCASE("single prototype per side is glvq") {
        auto a = make_codebook({{1, 0.5}, {-1, 0.2}}, {1, 2});
        auto b = a;
        h2mlvq_step(a, vec(0.1, 0.3), 1, 0.1);
        glvq_step(b, vec(0.1, 0.3), 1, 0.1);
        CHECK((a.prototypes - b.prototypes).norm() < 1e-14);
    }
    SUBCASE("every prototype moves") {
        Rng rng = make_rng(36);
        Scene s = random_scene(rng, 3, AdaptiveMetric::euclidean());
        auto before = s.cb.prototypes;
        h2mlvq_step(s.cb, s.x, s.y, 0.05);
        for (Index j = 0; j < 6; ++j) CHECK(s.cb.prototypes.row(j) != before.row(j));
    }
    SUBCASE("gradient matches finite differences") {
        Rng rng = make_rng(37);
        for (int rep = 0; rep < 50; ++rep) {
            Scene s = random_scene(rng, 3, AdaptiveMetric::euclidean());
            auto g = h2mlvq_gradient(s.x, s.y, s.cb);
            std::function<double(const RowMatrix&)> f = [&](const RowMatrix& w) {
                return oracle_h2mlvq(s.x, s.y, w, s.cb.labels);
            };
            CHECK(max_rel(g.prototypes, central_difference(f, s.cb.prototypes)) < 1e-5);
            CHECK(h2mlvq_sample_cost(s.x, s.y, s.cb) == doctest::Approx(oracle_h2mlvq(s.x, s.y, s.cb.prototypes, s.cb.labels)));
        }
    }
    SUBCASE("exact hits stay finite") {
        auto cb = make_codebook({{0, 0}, {1, 0}, {3, 0}}, {1, 1, 2});
        h2mlvq_step(cb, vec(0, 0), 1, 0.1);
        CHECK(cb.prototypes.allFinite());
    }
}

TEST_CASE("sng") {
    SUBCASE("one prototype per class is glvq") {
        auto a = make_codebook({{1, 0.5}, {-1, 0.2}}, {1, 2});
        auto b = a;
        sng_step(a, vec(0.1, 0.3), 1, 0.1, 0.5);
        glvq_step(b, vec(0.1, 0.3), 1, 0.1);
        CHECK((a.prototypes - b.prototypes).norm() < 1e-14);
    }
    SUBCASE("a tiny range moves only the closest same-class prototype") {
        auto cb = make_codebook({{1, 0}, {2, 0}, {3, 0}, {-1, 0}}, {1, 1, 1, 2});
        auto before = cb.prototypes;
        sng_step(cb, vec(0, 0), 1, 0.1, 1e-3);
        CHECK(cb.prototypes.row(0) != before.row(0));
        CHECK((cb.prototypes.row(1) - before.row(1)).norm() < 1e-200);
        CHECK((cb.prototypes.row(2) - before.row(2)).norm() < 1e-200);
        CHECK(cb.prototypes.row(3) != before.row(3));
    }
    SUBCASE("closer ranks move farther") {
        auto cb = make_codebook({{1, 0}, {1.5, 0}, {2.5, 0}, {-1.2, 0}}, {1, 1, 1, 2});
        auto before = cb.prototypes;
        sng_step(cb, vec(0, 0), 1, 0.1, 1.5);
        const double m0 = (cb.prototypes.row(0) - before.row(0)).norm();
        const double m1 = (cb.prototypes.row(1) - before.row(1)).norm();
        const double m2 = (cb.prototypes.row(2) - before.row(2)).norm();
        CHECK(m0 >= m1);
        CHECK(m1 >= m2);
        CHECK(m2 > 0);
    }
    SUBCASE("range schedule") {
        CHECK(sng_range(6, 0.0) == doctest::Approx(3.0));
        CHECK(sng_range(6, 1.0) == doctest::Approx(0.01));
        CHECK(sng_range(6, 0.5) == doctest::Approx(std::sqrt(3.0 * 0.01)));
        CHECK(sng_range(6, 0.3) > sng_range(6, 0.6));
    }
}

TEST_CASE("sgng growth") {
    CHECK(sgng_target(3, 45, 0, 2000) == 3);
    CHECK(sgng_target(3, 45, 1000, 2000) == 45);
    CHECK(sgng_target(3, 45, 2000, 2000) == 45);
    CHECK(sgng_target(3, 45, 500, 2000) == 24);
    CHECK(sgng_target(7, 10, 2000, 2000) == 10);
    CHECK(sgng_target(10, 30, 2000, 2000) == 30);
    Index prev = 0;
    for (int e = 0; e <= 2000; ++e) {
        const Index n = sgng_target(3, 45, e, 2000);
        CHECK(n >= prev);
        prev = n;
    }

    auto data = two_blobs(3, 60, 2, 2.0);
    ModelConfig cfg;
    cfg.variant = Variant::sgng;
    cfg.np_max = 9;
    Schedule sched{0.05, 0.0, 0, 20};
    auto grown = sgng_train(data, cfg, sched, 5);
    CHECK(grown.model.codebook.size() == 9);
    CHECK_NOTHROW(grown.model.codebook.validate(2));

    cfg.np_max = 2;
    auto fixed = sgng_train(data, cfg, sched, 5);
    ModelConfig sng = cfg;
    sng.variant = Variant::sng;
    auto plain = train(data, sng, sched, InitStrategy{InitKind::class_means, 1, 0.0}, 5);
    CHECK(fixed.model.codebook.size() == 2);
    CHECK(fixed.model.codebook.prototypes == plain.model.codebook.prototypes);

    cfg.np_max = 1;
    CHECK_THROWS_AS(sgng_train(data, cfg, sched, 5), ContractError);
}

TEST_CASE("grlvq") {
    SUBCASE("symmetric sample leaves uniform relevances alone") {
        auto cb = make_codebook({{1, 1}, {-1, -1}}, {1, 2});
        auto metric = AdaptiveMetric::relevance(2);
        grlvq_step(cb, metric, vec(0, 0), 1, 0.05, 0.1);
        CHECK(metric.relevances[0][0] == doctest::Approx(0.5));
        CHECK(metric.relevances[0][1] == doctest::Approx(0.5));
    }
    SUBCASE("constraint holds after every step") {
        Rng rng = make_rng(38);
        auto metric = AdaptiveMetric::relevance(3);
        Scene s = random_scene(rng, 3, metric);
        for (int step = 0; step < 500; ++step) {
            Vector x = random_vector(rng, 3);
            grlvq_step(s.cb, metric, x, 1 + step % 3, 0.05, 0.05);
            CHECK(std::abs(metric.relevances[0].weights().sum() - 1) <= 1e-12);
            CHECK(metric.relevances[0].weights().minCoeff() >= 0);
        }
    }
    SUBCASE("noise feature loses relevance") {
        Rng rng = make_rng(39);
        LabeledDataset data;
        data.features.resize(200, 2);
        data.labels.resize(200);
        std::normal_distribution<double> n(0, 1);
        for (Index i = 0; i < 200; ++i) {
            const int c = i % 2 + 1;
            data.features(i, 0) = (c == 1 ? -1.5 : 1.5) + 0.5 * n(rng);
            data.features(i, 1) = 3 * n(rng);
            data.labels[static_cast<std::size_t>(i)] = c;
        }
        data.class_count = 2;
        ModelConfig cfg;
        cfg.variant = Variant::grlvq;
        cfg.metric.relevance = 0.01;
        cfg.metric.t0 = 0;
        auto r = train(data, cfg, Schedule{0.05, 0, 0, 30}, InitStrategy{}, 1);
        CHECK(r.model.metric.relevances[0][0] > r.model.metric.relevances[0][1]);
    }
}

TEST_CASE("gmlvq with diagonal omega follows grlvq") {
    Rng rng = make_rng(40);
    const Index dim = 3;
    Codebook a;
    a.prototypes = random_matrix(rng, 6, dim);
    a.labels = {1, 2, 3, 1, 2, 3};
    Codebook b = a;
    auto rel = AdaptiveMetric::relevance(dim);
    rel.relevances[0] = RelevanceVector::normalized(random_simplex(rng, dim));
    auto mat = AdaptiveMetric::matrix(dim);
    for (int step = 0; step < 1000; ++step) {
        Vector x = random_vector(rng, dim);
        const Label y = 1 + step % 3;
        mat.omegas[0] = MetricMatrix::from_relevance(rel.relevances[0]);
        grlvq_step(a, rel, x, y, 0.05, 0.01);
        gmlvq_step(b, mat, x, y, 0.05, OmegaRates{0, 0});
        REQUIRE((a.prototypes - b.prototypes).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("gmlvq keeps unit trace") {
    Rng rng = make_rng(41);
    auto metric = AdaptiveMetric::matrix(3);
    Scene s = random_scene(rng, 3, metric);
    for (int step = 0; step < 500; ++step) {
        gmlvq_step(s.cb, metric, random_vector(rng, 3), 1 + step % 3, 0.05, OmegaRates{0.05, 0.01});
        CHECK(std::abs(metric.omegas[0].lambda().trace() - 1) <= 1e-12);
    }
    auto wrong = AdaptiveMetric::relevance(3);
    CHECK_THROWS_AS(gmlvq_step(s.cb, wrong, random_vector(rng, 3), 1, 0.1, {}), ContractError);
}

TEST_CASE("local metrics") {
    Rng rng = make_rng(42);
    const Index dim = 3;
    SUBCASE("identical frozen local parameters classify like the global metric") {
        auto global = AdaptiveMetric::matrix(dim);
        global.omegas[0] = MetricMatrix::normalized(random_square(rng, dim));
        auto local = AdaptiveMetric::local_matrix(dim, 6);
        for (auto& o : local.omegas) o = global.omegas[0];
        Scene s = random_scene(rng, dim, global);
        Codebook a = s.cb, b = s.cb;
        for (int step = 0; step < 200; ++step) {
            Vector x = random_vector(rng, dim);
            const Label y = 1 + step % 3;
            gmlvq_step(a, global, x, y, 0.05, {});
            local_metric_step(b, local, x, y, 0.05, 0.0, {});
            Vector probe = random_vector(rng, dim);
            auto dg = [&](const VectorRef& p, Index j) { return global.distance(p, a.row(j), j); };
            auto dl = [&](const VectorRef& p, Index j) { return local.distance(p, b.row(j), j); };
            std::vector<double> g(6), l(6);
            for (Index j = 0; j < 6; ++j) {
                g[static_cast<std::size_t>(j)] = dg(probe, j);
                l[static_cast<std::size_t>(j)] = dl(probe, j);
            }
            CHECK(nearest_index(g) == nearest_index(l));
        }
    }
    SUBCASE("only the winners' parameters change") {
        for (auto kind : {MetricKind::local_relevance, MetricKind::local_matrix}) {
            auto metric = kind == MetricKind::local_relevance ? AdaptiveMetric::local_relevance(dim, 6)
                                                              : AdaptiveMetric::local_matrix(dim, 6);
            Scene s = random_scene(rng, dim, metric);
            for (int step = 0; step < 100; ++step) {
                Vector x = random_vector(rng, dim);
                const Label y = 1 + step % 3;
                auto d = std::vector<double>(6);
                for (Index j = 0; j < 6; ++j) d[static_cast<std::size_t>(j)] = metric.distance(x, s.cb.row(j), j);
                auto w = find_winners(d, s.cb.labels, y);
                const AdaptiveMetric before = metric;
                local_metric_step(s.cb, metric, x, y, 0.05, 0.05, OmegaRates{0.05, 0.01});
                for (Index j = 0; j < 6; ++j) {
                    const auto js = static_cast<std::size_t>(j);
                    if (j == w.plus || j == w.minus) continue;
                    if (metric.uses_relevance()) CHECK(metric.relevances[js].weights() == before.relevances[js].weights());
                    else CHECK(metric.omegas[js].omega() == before.omegas[js].omega());
                }
                CHECK_NOTHROW(metric.check_normalized(1e-12));
            }
        }
    }
    SUBCASE("parameter count must match") {
        auto metric = AdaptiveMetric::local_relevance(dim, 4);
        Scene s = random_scene(rng, dim, AdaptiveMetric::euclidean());
        CHECK_THROWS_AS(local_metric_step(s.cb, metric, s.x, s.y, 0.1, 0.1), ContractError);
    }
}

TEST_CASE("kglvq") {
    // Six points, one prototype per class.
    RowMatrix x(6, 2);
    x << 0, 0, 0.3, 0.1, -0.2, 0.4, 2, 2, 2.2, 1.7, 1.8, 2.4;
    const LabelVector labels{1, 1, 1, 2, 2, 2};
    auto gram = std::make_shared<KernelGram>(build_gram(x, 1.0));
    RowMatrix coeffs(2, 6);
    coeffs << 1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0, 0, 0, 0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3;

    SUBCASE("one pass matches a scalar hand trace") {
        KernelCodebook cb(gram, coeffs, {1, 2});
        Matrix g = coeffs;
        const Matrix& K = gram->gram;
        const double eps = 0.1;
        for (Index i = 0; i < 6; ++i) {
            const Label y = labels[static_cast<std::size_t>(i)];
            double d[2];
            for (int j = 0; j < 2; ++j) {
                double cross = 0, quad = 0;
                for (int m = 0; m < 6; ++m) cross += g(j, m) * K(i, m);
                for (int s = 0; s < 6; ++s)
                    for (int t = 0; t < 6; ++t) quad += g(j, s) * g(j, t) * K(s, t);
                d[j] = K(i, i) - 2 * cross + quad;
            }
            const int p = y - 1, m = 2 - y;
            const double sum = d[p] + d[m];
            const double muv = (d[p] - d[m]) / sum;
            const double phi = 1 / (1 + std::exp(-muv));
            const double fp = phi * (1 - phi);
            const double ap = eps * fp * 2 * d[m] / (sum * sum);
            const double am = eps * fp * 2 * d[p] / (sum * sum);
            for (int k = 0; k < 6; ++k) {
                g(p, k) = (1 - ap) * g(p, k) + (k == i ? ap : 0.0);
                g(m, k) = (1 + am) * g(m, k) - (k == i ? am : 0.0);
            }
            kglvq_step(cb, i, y, eps);
            for (int j = 0; j < 2; ++j) {
                for (Index t = 0; t < 6; ++t) {
                    double cross = 0, quad = 0;
                    for (int mm = 0; mm < 6; ++mm) cross += g(j, mm) * K(t, mm);
                    for (int s = 0; s < 6; ++s)
                        for (int u = 0; u < 6; ++u) quad += g(j, s) * g(j, u) * K(s, u);
                    CHECK(cb.distance(t, j) == doctest::Approx(K(t, t) - 2 * cross + quad).epsilon(1e-12));
                }
            }
        }
        CHECK((cb.coeffs() - RowMatrix(g)).norm() < 1e-14);
    }
    SUBCASE("row sums stay one and eps 0 changes nothing") {
        KernelCodebook cb(gram, coeffs, {1, 2});
        for (int rep = 0; rep < 60; ++rep) {
            kglvq_step(cb, rep % 6, labels[static_cast<std::size_t>(rep % 6)], 0.2);
            CHECK(cb.coeffs().row(0).sum() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(cb.coeffs().row(1).sum() == doctest::Approx(1.0).epsilon(1e-12));
        }
        const RowMatrix before = cb.coeffs();
        kglvq_step(cb, 2, 1, 0.0);
        CHECK(cb.coeffs() == before);
    }
}

TEST_CASE("rglvq follows its vectorial mirror") {
    Rng rng = make_rng(43);
    LabeledDataset data = two_blobs(4, 10, 3, 2.0);
    auto dis = std::make_shared<Matrix>(vectorial_to_dissimilarity(data).matrix);
    RowMatrix coeffs(4, 20);
    for (Index j = 0; j < 4; ++j) coeffs.row(j) = random_simplex(rng, 20).transpose();
    RelationalCodebook cb(dis, coeffs, {1, 2, 1, 2});
    for (int step = 0; step < 400; ++step) {
        const Index i = static_cast<Index>(rng() % 20);
        rglvq_step(cb, i, data.labels[static_cast<std::size_t>(i)], 0.05);
        for (Index j = 0; j < 4; ++j) {
            REQUIRE(std::abs(cb.coeffs().row(j).sum() - 1) <= 1e-12);
            const Vector w = data.features.transpose() * cb.coeffs().row(j).transpose();
            for (Index t = 0; t < 20; ++t) {
                const double want = (data.features.row(t).transpose() - w).squaredNorm();
                REQUIRE(std::abs(cb.distance(t, j) - want) <= 1e-9 * std::max(1.0, want));
            }
        }
    }
    const RowMatrix before = cb.coeffs();
    rglvq_step(cb, 3, data.labels[3], 0.0);
    CHECK((cb.coeffs() - before).norm() < 1e-12);
}

TEST_CASE("glvq cost decreases on separable data") {
    int monotone = 0;
    for (Seed seed = 0; seed < 50; ++seed) {
        auto data = two_blobs(seed, 40, 2, 6.0);
        ModelConfig cfg;
        cfg.variant = Variant::glvq;
        auto r = train(data, cfg, Schedule{0.01, 0, 0, 25}, InitStrategy{InitKind::class_means, 1, std::nullopt}, seed);
        bool ok = true;
        for (std::size_t t = 1; t < r.trace.size(); ++t) ok = ok && r.trace[t] <= r.trace[t - 1] + 1e-12;
        monotone += ok;
    }
    CHECK(monotone >= 48);
}

}
