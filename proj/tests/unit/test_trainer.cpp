#include "support.hpp"

#include "lvqkit/error.hpp"
#include "lvqkit/evaluation.hpp"
#include "lvqkit/trainer.hpp"

#include <doctest.h>

using namespace lvqkit;
using namespace testing;

namespace {

ModelConfig config_for(Variant v) {
    ModelConfig c;
    c.variant = v;
    c.metric.t0 = 0;
    c.np_max = 6;
    return c;
}

}  // namespace

TEST_SUITE("trainer") {

TEST_CASE("learning rate schedule") {
    Schedule s{0.05, 0.001, 10, 2000};
    CHECK(eps_at(s, 10) == 0.05);
    CHECK(eps_at(s, 3) == 0.05);
    CHECK(eps_at(s, 1010) == doctest::Approx(0.025));
    Schedule flat{0.05, 0.0, 0, 100};
    for (int t = 0; t < 100; ++t) CHECK(eps_at(flat, t) == 0.05);
    double prev = 1;
    for (int t = 0; t <= 2000; ++t) {
        const double e = eps_at(s, t);
        CHECK(e > 0);
        CHECK(e <= s.eps0);
        CHECK(e <= prev);
        prev = e;
    }
    CHECK_THROWS_AS((Schedule{0.0, 0, 0, 10}.validate()), ContractError);
    CHECK_THROWS_AS((Schedule{0.05, -1, 0, 10}.validate()), ContractError);
    CHECK(metric_rate_at(1e-3, 0.0, 5, 4) == 0.0);
    CHECK(metric_rate_at(1e-3, 0.0, 5, 5) == 1e-3);
    CHECK(metric_rate_at(1e-3, 1.0, 5, 6) == doctest::Approx(5e-4));
}

TEST_CASE("initialization") {
    auto data = two_blobs(1, 30, 3, 4.0);
    SUBCASE("class means without jitter") {
        auto cb = init_codebook(data, InitStrategy{InitKind::class_means, 1, 0.0}, 1);
        REQUIRE(cb.size() == 2);
        for (int c = 1; c <= 2; ++c) {
            Vector mean = Vector::Zero(3);
            for (Index i = 0; i < data.size(); ++i)
                if (data.labels[static_cast<std::size_t>(i)] == c) mean += data.features.row(i).transpose() / 30.0;
            CHECK((cb.row(c - 1) - mean).norm() < 1e-12);
        }
    }
    SUBCASE("data mean without jitter") {
        auto cb = init_codebook(data, InitStrategy{InitKind::data_mean_random, 3, 0.0}, 1);
        REQUIRE(cb.size() == 6);
        const Vector mean = data.features.colwise().mean().transpose();
        for (Index j = 0; j < 6; ++j) CHECK((cb.row(j) - mean).norm() < 1e-12);
        CHECK(cb.labels == LabelVector{1, 2, 1, 2, 1, 2});
    }
    SUBCASE("same seed gives the same codebook") {
        InitStrategy s{InitKind::data_mean_random, 4, std::nullopt};
        auto a = init_codebook(data, s, 9);
        auto b = init_codebook(data, s, 9);
        auto c = init_codebook(data, s, 10);
        CHECK(a.prototypes == b.prototypes);
        CHECK(a.prototypes != c.prototypes);
        for (Index j = 1; j < a.size(); ++j) CHECK(a.prototypes.row(j) != a.prototypes.row(0));
    }
    SUBCASE("coefficient rows") {
        auto cb = init_coefficients(data.labels, 2, InitStrategy{InitKind::class_means, 2, 0.0}, 1);
        REQUIRE(cb.size() == 4);
        for (Index j = 0; j < 4; ++j) {
            CHECK(cb.prototypes.row(j).sum() == doctest::Approx(1.0));
            for (Index i = 0; i < data.size(); ++i) {
                const bool same = data.labels[static_cast<std::size_t>(i)] == cb.labels[static_cast<std::size_t>(j)];
                CHECK(cb.prototypes(j, i) == doctest::Approx(same ? 1.0 / 30 : 0.0));
            }
        }
    }
    CHECK(round_robin_labels(3, 2) == LabelVector{1, 2, 3, 1, 2, 3});
    CHECK_THROWS_AS(init_codebook(data, InitStrategy{InitKind::class_means, 0, 0.0}, 1), ContractError);
    CHECK(init_kind_from_string("data_mean_random") == InitKind::data_mean_random);
}

TEST_CASE("zero epochs returns the initial state") {
    auto data = two_blobs(2, 20, 2, 3.0);
    InitStrategy init{InitKind::class_means, 2, std::nullopt};
    auto r = train(data, config_for(Variant::glvq), Schedule{0.05, 0, 0, 0}, init, 4);
    CHECK(r.trace.empty());
    CHECK(r.model.codebook.prototypes == init_codebook(data, init, 4).prototypes);
}

TEST_CASE("every variant trains and keeps its constraints") {
    auto data = two_blobs(3, 25, 3, 3.0);
    auto dis = vectorial_to_dissimilarity(data);
    for (Variant v : all_variants()) {
        CAPTURE(to_string(v));
        ModelConfig cfg = config_for(v);
        cfg.metric.relevance = 0.01;
        cfg.metric.omega = OmegaRates{0.01, 0.005};
        cfg.soft.sigma = 1.0;
        Schedule sched{0.05, 0.01, 0, 8};
        InitStrategy init{InitKind::class_means, 2, std::nullopt};
        TrainOptions opts;
        opts.check_every_step = true;
        TrainResult r = representation_of(v) == Representation::relational
                            ? train(dis, cfg, sched, init, 5, opts)
                            : train(data, cfg, sched, init, 5, opts);
        CHECK(r.trace.size() == 8);
        CHECK_NOTHROW(r.model.validate());
        for (double c : r.trace) CHECK(std::isfinite(c));
        if (family_of(v) == Family::likelihood) {
            for (double c : r.trace) CHECK(c <= 0);
        }
        if (representation_of(v) != Representation::vectorial) {
            for (Index j = 0; j < r.model.codebook.size(); ++j)
                CHECK(std::abs(r.model.codebook.prototypes.row(j).sum() - 1) <= 1e-9);
        }
    }
}

TEST_CASE("representation mismatches are contract errors") {
    auto data = two_blobs(3, 10, 2, 3.0);
    auto dis = vectorial_to_dissimilarity(data);
    InitStrategy init;
    Schedule sched{0.05, 0, 0, 2};
    try {
        train(data, config_for(Variant::rglvq), sched, init, 1);
        FAIL("expected a contract error");
    } catch (const ContractError& e) {
        CHECK(std::string(e.what()).find("rglvq") != std::string::npos);
        CHECK(std::string(e.what()).find("dissimilarity") != std::string::npos);
    }
    CHECK_THROWS_AS(train(dis, config_for(Variant::glvq), sched, init, 1), ContractError);
}

TEST_CASE("training is deterministic") {
    auto data = two_blobs(4, 30, 2, 2.0);
    for (Variant v : {Variant::glvq, Variant::gmlvq, Variant::sgng, Variant::krslvq}) {
        CAPTURE(to_string(v));
        ModelConfig cfg = config_for(v);
        InitStrategy init{InitKind::data_mean_random, 2, std::nullopt};
        auto a = train(data, cfg, Schedule{0.05, 0, 0, 6}, init, 8);
        auto b = train(data, cfg, Schedule{0.05, 0, 0, 6}, init, 8);
        CHECK(a.model.codebook.prototypes == b.model.codebook.prototypes);
        CHECK(a.trace == b.trace);
        CHECK(to_json(a.model) == to_json(b.model));
    }
}

TEST_CASE("h2mlvq ends on the glvq update") {
    auto data = two_blobs(9, 20, 2, 2.0);
    InitStrategy init{InitKind::class_means, 3, std::nullopt};
    auto h = train(data, config_for(Variant::h2mlvq), Schedule{0.05, 0, 0, 1}, init, 3);
    auto g = train(data, config_for(Variant::glvq), Schedule{0.05, 0, 0, 1}, init, 3);
    CHECK((h.model.codebook.prototypes - g.model.codebook.prototypes).norm() < 1e-12);
    auto h2 = train(data, config_for(Variant::h2mlvq), Schedule{0.05, 0, 0, 2}, init, 3);
    auto g2 = train(data, config_for(Variant::glvq), Schedule{0.05, 0, 0, 2}, init, 3);
    CHECK(h2.model.codebook.prototypes != g2.model.codebook.prototypes);
}

TEST_CASE("glvq reduces training error on separable data") {
    auto data = two_blobs(5, 50, 2, 5.0);
    InitStrategy init{InitKind::data_mean_random, 1, 0.0};
    auto start = train(data, config_for(Variant::glvq), Schedule{0.05, 0, 0, 0}, init, 2);
    auto end = train(data, config_for(Variant::glvq), Schedule{0.05, 0, 0, 20}, init, 2);
    CHECK(classification_error(end.model, data) < classification_error(start.model, data));
}

TEST_CASE("step errors carry context") {
    LabeledDataset data;
    data.features.resize(4, 1);
    data.features << 0, 1, 1e308, -1e308;
    data.labels = {1, 2, 1, 2};
    data.class_count = 2;
    try {
        train(data, config_for(Variant::glvq), Schedule{0.9, 0, 0, 50}, InitStrategy{InitKind::class_means, 1, 0.0}, 1);
        FAIL("expected overflow");
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        CHECK(msg.find("glvq") != std::string::npos);
        CHECK(msg.find("epoch") != std::string::npos);
    }
}

TEST_CASE("trace csv") {
    std::vector<double> trace{1.5, 0.25};
    CHECK(trace_to_csv(trace) == "epoch,cost\n1,1.5\n2,0.25\n");
}

TEST_CASE("model json round trip is exact") {
    auto data = two_blobs(6, 20, 3, 2.0);
    auto dis = vectorial_to_dissimilarity(data);
    for (Variant v : all_variants()) {
        CAPTURE(to_string(v));
        ModelConfig cfg = config_for(v);
        cfg.metric.relevance = 0.01;
        cfg.metric.omega = OmegaRates{0.01, 0.005};
        Schedule sched{0.05, 0, 0, 3};
        InitStrategy init{InitKind::class_means, 2, std::nullopt};
        Model m = representation_of(v) == Representation::relational ? train(dis, cfg, sched, init, 1).model
                                                                      : train(data, cfg, sched, init, 1).model;
        const std::string text = to_json(m);
        Model back = model_from_json(text);
        CHECK(to_json(back) == text);
        CHECK(back.codebook.prototypes == m.codebook.prototypes);
        CHECK(back.codebook.labels == m.codebook.labels);
        for (std::size_t k = 0; k < m.metric.relevances.size(); ++k)
            CHECK(back.metric.relevances[k].weights() == m.metric.relevances[k].weights());
        for (std::size_t k = 0; k < m.metric.omegas.size(); ++k)
            CHECK(back.metric.omegas[k].omega() == m.metric.omegas[k].omega());
        if (representation_of(v) == Representation::vectorial) {
            for (Index i = 0; i < data.size(); ++i)
                CHECK(back.predict(data.features.row(i).transpose()) == m.predict(data.features.row(i).transpose()));
        }
    }
    CHECK_THROWS_AS(model_from_json("{"), ParseError);
    CHECK_THROWS_AS(model_from_json(R"({"variant":"nope","class_count":1,"prototypes":[[0]],"labels":[1],"metric_kind":"euclidean"})"),
                    std::exception);
}

TEST_CASE("variant tags") {
    for (Variant v : all_variants()) CHECK(variant_from_string(to_string(v)) == v);
    CHECK(all_variants().size() == 16);
    CHECK_THROWS_AS(variant_from_string("lvq3"), ContractError);
    CHECK(representation_of(Variant::kglvq) == Representation::kernel);
    CHECK(representation_of(Variant::rrslvq) == Representation::relational);
    CHECK(family_of(Variant::mrslvq) == Family::likelihood);
    CHECK(family_of(Variant::lvq21) == Family::heuristic);
}

}
