#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "rapidpd/metrics.hpp"

using namespace rapidpd;
using Catch::Matchers::WithinAbs;

TEST_CASE("evaluate counts the confusion cells", "[metrics]") {
    const std::vector<int> predicted = {1, 1, 0, 0, 1, 0};
    const std::vector<int> labels = {1, 0, 1, 0, 1, 0};
    const auto r = evaluate(predicted, labels);
    CHECK(r.tp == 2);
    CHECK(r.fp == 1);
    CHECK(r.fn == 1);
    CHECK(r.tn == 2);
    CHECK(r.total() == 6);
    CHECK_THAT(r.accuracy, WithinAbs(4.0 / 6.0, 1e-15));
    CHECK_THAT(r.tpr, WithinAbs(2.0 / 3.0, 1e-15));
    CHECK_THAT(r.fpr, WithinAbs(1.0 / 3.0, 1e-15));
}

TEST_CASE("evaluate reproduces a near-perfect run's rates", "[metrics]") {
    std::vector<int> predicted;
    std::vector<int> labels;
    auto add = [&](int count, int p, int y) {
        for (int i = 0; i < count; ++i) {
            predicted.push_back(p);
            labels.push_back(y);
        }
    };
    add(146, 1, 1);  // tp
    add(1, 0, 1);    // fn
    add(120, 0, 0);  // tn
    add(2, 1, 0);    // fp
    const auto r = evaluate(predicted, labels);
    CHECK(r.tp == 146);
    CHECK(r.fn == 1);
    CHECK(r.tn == 120);
    CHECK(r.fp == 2);
    CHECK_THAT(r.tpr, WithinAbs(146.0 / 147.0, 1e-15));
    CHECK_THAT(r.fpr, WithinAbs(2.0 / 122.0, 1e-15));
    CHECK_THAT(r.accuracy, WithinAbs(266.0 / 269.0, 1e-15));
}

TEST_CASE("evaluate is invariant under reordering", "[metrics]") {
    std::mt19937_64 rng(79);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> predicted(200);
    std::vector<int> labels(200);
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        predicted[i] = coin(rng) ? 1 : 0;
        labels[i] = coin(rng) ? 1 : 0;
    }
    const auto before = evaluate(predicted, labels);
    std::vector<std::size_t> order(predicted.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> p2(order.size());
    std::vector<int> l2(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        p2[i] = predicted[order[i]];
        l2[i] = labels[order[i]];
    }
    const auto after = evaluate(p2, l2);
    CHECK(before.tp == after.tp);
    CHECK(before.fp == after.fp);
    CHECK(before.tn == after.tn);
    CHECK(before.fn == after.fn);
}

TEST_CASE("evaluate breaks results down by scenario", "[metrics]") {
    const std::vector<int> predicted = {1, 1, 0, 0};
    const std::vector<int> labels = {1, 1, 1, 0};
    const std::vector<std::string> scenarios = {"human", "human", "dog", "empty"};
    const auto r = evaluate(predicted, labels, scenarios);
    REQUIRE(r.per_scenario.size() == 3);
    CHECK(r.per_scenario.at("human") == std::pair<long, long>{2, 2});
    CHECK(r.per_scenario.at("dog") == std::pair<long, long>{0, 1});
    CHECK(r.per_scenario.at("empty") == std::pair<long, long>{1, 1});
}

TEST_CASE("evaluate rejects malformed input", "[metrics]") {
    const std::vector<int> predicted = {1, 0};
    const std::vector<int> labels = {1};
    CHECK_THROWS_AS(evaluate(predicted, labels), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
    const std::vector<int> ok = {1, 0};
    const std::vector<std::string> wrong = {"human"};
    CHECK_THROWS_AS(evaluate(ok, ok, wrong), std::invalid_argument);
}

TEST_CASE("empty-denominator rates report zero", "[metrics]") {
    const std::vector<int> all_pos = {1, 1, 1};
    const auto r = evaluate(all_pos, all_pos);
    CHECK(r.tpr == 1.0);
    CHECK(r.fpr == 0.0);
    const std::vector<int> none = {0, 0, 0};
    const auto r2 = evaluate(none, all_pos);
    CHECK(r2.tpr == 0.0);
    CHECK(r2.fpr == 0.0);  // no empty windows to false-alarm on
}

TEST_CASE("attach_cdf splits and sorts the statistic per class", "[metrics]") {
    EvaluationReport r;
    const std::vector<double> phi = {0.9, 0.1, 0.5, 0.2, 0.8};
    const std::vector<int> labels = {1, 0, 1, 0, 1};
    attach_cdf(r, phi, labels);
    CHECK(r.cdf_occupied == std::vector<double>{0.5, 0.8, 0.9});
    CHECK(r.cdf_empty == std::vector<double>{0.1, 0.2});
    CHECK_THROWS_AS(attach_cdf(r, phi, std::vector<int>{1, 0}), std::invalid_argument);
}

TEST_CASE("roc endpoints are fixed", "[metrics]") {
    const std::vector<double> phi = {0.1, 0.4, 0.35, 0.8};
    const std::vector<int> labels = {0, 0, 1, 1};
    const auto curve = roc_sweep(phi, labels);
    REQUIRE(curve.points.size() >= 2);
    CHECK(curve.points.front().fpr == 1.0);
    CHECK(curve.points.front().tpr == 1.0);
    CHECK(curve.points.back().fpr == 0.0);
    CHECK(curve.points.back().tpr == 0.0);
}

TEST_CASE("separated classes sweep to a perfect curve", "[metrics]") {
    const std::vector<double> phi = {0.05, 0.1, 0.15, 0.7, 0.8, 0.9};
    const std::vector<int> labels = {0, 0, 0, 1, 1, 1};
    const auto curve = roc_sweep(phi, labels);
    CHECK_THAT(curve.auc, WithinAbs(1.0, 1e-12));
    bool perfect_corner = false;
    for (const auto& p : curve.points)
        if (p.fpr == 0.0 && p.tpr == 1.0) perfect_corner = true;
    CHECK(perfect_corner);
}

TEST_CASE("an uninformative statistic scores near one half", "[metrics]") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    std::vector<double> phi(4000);
    std::vector<int> labels(4000);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        phi[i] = unif(rng);
        labels[i] = coin(rng) ? 1 : 0;
    }
    const auto curve = roc_sweep(phi, labels);
    CHECK(curve.auc > 0.45);
    CHECK(curve.auc < 0.55);
}

TEST_CASE("rates fall as the threshold rises", "[metrics]") {
    std::mt19937_64 rng(89);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> phi(500);
    std::vector<int> labels(500);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        labels[i] = (i % 2 == 0) ? 1 : 0;
        phi[i] = gauss(rng) + (labels[i] ? 0.8 : 0.0);
    }
    const auto curve = roc_sweep(phi, labels);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].eta > curve.points[i - 1].eta);
        CHECK(curve.points[i].fpr <= curve.points[i - 1].fpr);
        CHECK(curve.points[i].tpr <= curve.points[i - 1].tpr);
    }
    CHECK(curve.auc > 0.6);
}

TEST_CASE("fixed-resolution sweeps cover the observed range", "[metrics]") {
    const std::vector<double> phi = {0.0, 0.25, 0.5, 0.75, 1.0, 0.1, 0.9};
    const std::vector<int> labels = {0, 0, 0, 1, 1, 0, 1};
    const auto curve = roc_sweep(phi, labels, 11);
    REQUIRE(curve.points.size() == 12);  // 11 thresholds plus the above-max cap
    CHECK(curve.points.front().eta == 0.0);
    CHECK_THAT(curve.points[5].eta, WithinAbs(0.5, 1e-12));
    CHECK(curve.points.back().eta > 1.0);
    const auto exact = roc_sweep(phi, labels);
    CHECK_THAT(curve.auc, WithinAbs(exact.auc, 0.15));
}

TEST_CASE("roc_sweep needs both classes", "[metrics]") {
    const std::vector<double> phi = {0.1, 0.2};
    const std::vector<int> ones = {1, 1};
    const std::vector<int> zeros = {0, 0};
    CHECK_THROWS_AS(roc_sweep(phi, ones), std::invalid_argument);
    CHECK_THROWS_AS(roc_sweep(phi, zeros), std::invalid_argument);
    CHECK_THROWS_AS(roc_sweep(phi, std::vector<int>{1}), std::invalid_argument);
}
