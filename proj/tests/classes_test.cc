// Copyright 2026 The qpath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qpath/classes.h"

#include <cmath>
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "qpath/preparation.h"
#include "qpath/quantum.h"
#include "qpath/scenarios.h"
#include "qpath/stats.h"

using namespace qpath;

namespace {

const double kS = 1.0 / std::sqrt(2.0);
const Strength kOne = Strength::one();
const Strength kZero = Strength::zero();

Strength p2(std::uint32_t k) {
    return Strength::pow2(k);
}

OnticState make_state(PathIndex q, CVector u, std::vector<Strength> tau) {
    return OnticState{q, std::move(u), std::move(tau)};
}

OnticState clicked_state(std::size_t width, PathIndex j) {
    OnticState s;
    s.q = j;
    s.u.assign(width, Complex(0.3, -0.2));
    s.tau.assign(width, kZero);
    s.u[j] = 1.0;
    s.tau[j] = kOne;
    return s;
}

void expect_ray(const ClassLabel &got, const CVector &want) {
    EXPECT_TRUE(ray_equal(got.vector(), want, 1e-12)) << "ray distance " << ray_distance(got.vector(), want);
}

/// Random layer whose strength pattern hits the given proof case on its first splitter.
struct DeltaCase {
    Layer layer;
    std::vector<Strength> tau;
};

}  // namespace

TEST(dominant_strength, examples) {
    EXPECT_EQ(dominant_strength(make_state(0, {0, 0, 0}, {p2(1), p2(3), kZero})), p2(1));
    EXPECT_TRUE(dominant_strength(make_state(0, {0, 0}, {kZero, kZero})).is_zero());
    EXPECT_EQ(dominant_strength(make_state(0, {0, 0}, {p2(2), p2(2)})), p2(2));
}

TEST(delta_projection, examples) {
    EXPECT_EQ(delta_projection(make_state(0, {0.5, Complex(0, 0.8)}, {p2(1), p2(2)})), (CVector{0.5, 0.0}));
    EXPECT_EQ(delta_projection(make_state(0, {0.5, Complex(0, 0.8)}, {p2(1), p2(1)})),
              (CVector{0.5, Complex(0, 0.8)}));
    EXPECT_EQ(delta_projection(make_state(0, {0.0, 1.0}, {p2(1), p2(3)})), (CVector{0.0, 0.0}));
    EXPECT_THROW(delta_projection(make_state(0, {1.0}, {kZero})), std::invalid_argument);
}

TEST(extract_label, examples) {
    auto a = extract_label(clicked_state(4, 2));
    ASSERT_TRUE(a);
    expect_ray(*a, basis_vector(4, 2));

    auto b = extract_label(make_state(0, {Complex(0, 0.5 * kS), 0.5 * kS}, {p2(1), p2(1)}));
    ASSERT_TRUE(b);
    expect_ray(*b, {Complex(0, kS), kS});
    EXPECT_NEAR(norm(b->vector()), 1.0, 1e-15);

    EXPECT_FALSE(extract_label(make_state(0, {1.0, 1.0}, {kZero, kZero})));
    EXPECT_FALSE(extract_label(make_state(0, {0.0, 1.0}, {p2(1), p2(3)})));
}

TEST(class_label, rejects_zero_vector) {
    EXPECT_THROW(ClassLabel(CVector{0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(ClassLabel(CVector{}), std::invalid_argument);
}

TEST(in_class, examples) {
    const OnticState s = clicked_state(3, 1);
    const ClassLabel e1 = ClassLabel::basis(3, 1);
    EXPECT_TRUE(in_class(s, e1, 1));
    EXPECT_FALSE(in_class(s, e1, 0));
    EXPECT_FALSE(in_class(s, ClassLabel::basis(3, 0), 1));
}

TEST(in_class, particle_on_weaker_path) {
    // Click on path 1, then the particle sits on path 2 whose field was zeroed.
    OnticState s = clicked_state(2, 0);
    s.q = 1;
    s.tau[1] = kZero;
    EXPECT_FALSE(in_class(s, ClassLabel::basis(2, 0), 1));
    s.tau[1] = p2(2);
    EXPECT_FALSE(in_class(s, ClassLabel::basis(2, 0), 1));
}

TEST(in_class, all_strengths_zero) {
    EXPECT_FALSE(in_class(make_state(0, {1.0, 0.0}, {kZero, kZero}), ClassLabel::basis(2, 0), 0));
}

TEST(in_class, classes_are_disjoint) {
    Rng rng(31);
    int members = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const std::size_t n = 2 + rng() % 3;
        OnticState s;
        s.q = rng() % n;
        for (std::size_t j = 0; j < n; ++j) {
            s.u.push_back(rng() % 3 == 0 ? Complex(0.0) : std::polar(rng.uniform(), 6.283 * rng.uniform()));
            s.tau.push_back(rng() % 4 == 0 ? kZero : p2(static_cast<std::uint32_t>(rng() % 2)));
        }
        std::vector<ClassLabel> candidates;
        for (std::size_t j = 0; j < n; ++j) {
            candidates.push_back(ClassLabel::basis(n, j));
        }
        if (auto z = extract_label(s)) {
            candidates.push_back(*z);
            CVector rotated = z->vector();
            for (auto &x : rotated) {
                x *= std::polar(1.0, 0.9);
            }
            candidates.push_back(ClassLabel(rotated));
        }
        for (const ClassLabel &z1 : candidates) {
            for (PathIndex i1 = 0; i1 < n; ++i1) {
                if (!in_class(s, z1, i1)) {
                    continue;
                }
                ++members;
                for (const ClassLabel &z2 : candidates) {
                    for (PathIndex i2 = 0; i2 < n; ++i2) {
                        if (in_class(s, z2, i2)) {
                            EXPECT_EQ(i1, i2);
                            EXPECT_TRUE(z1.ray_equals(z2));
                        }
                    }
                }
            }
        }
    }
    EXPECT_GT(members, 1000);
}

TEST(predicted_label_update, splitter_without_detectors) {
    ClassLabel z = predicted_label_update(ClassLabel::basis(2, 0), Layer{{BeamSplitter{0, 1, 0.5}}}, std::nullopt);
    expect_ray(z, {Complex(0, kS), kS});
}

TEST(predicted_label_update, click_resets_label) {
    const ClassLabel z(CVector{0.6, Complex(0, 0.8)});
    expect_ray(predicted_label_update(z, Layer{{Detector{1}}}, PathIndex{1}), {0.0, 1.0});
    EXPECT_THROW(predicted_label_update(z, Layer{{Detector{1}}}, PathIndex{0}), std::invalid_argument);
}

TEST(predicted_label_update, silent_detector_matches_collapse) {
    const double t = 1.0 / std::sqrt(3.0);
    ClassLabel z = predicted_label_update(ClassLabel(CVector{t, t, t}), Layer{{Detector{0}}}, std::nullopt);
    expect_ray(z, {0.0, kS, kS});
    QuantumState q = apply_detection(QuantumState(CVector{t, t, t}), 0, Detection::kNoClick);
    expect_ray(z, q.amplitudes());
}

TEST(predicted_label_update, impossible_silence) {
    EXPECT_THROW(predicted_label_update(ClassLabel::basis(2, 0), Layer{{Detector{0}}}, std::nullopt),
                 ImpossibleOutcome);
}

TEST(verify_congruence, mach_zehnder_shots) {
    Circuit c = mach_zehnder(std::numbers::pi / 3);
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng junk = shot_stream(4, i, StreamLane::kJunk);
        Rng rng = shot_stream(4, i, StreamLane::kEngine);
        OnticShot shot = run_ontic_shot(c, source_prepare(2, 0, JunkSampler(), junk), rng, {}, true);
        CongruenceReport r = verify_congruence(shot.trajectory, shot.record, c, ClassLabel::basis(2, 0));
        EXPECT_TRUE(r.pass) << r.message;
        ASSERT_EQ(r.deviations.size(), c.depth() + 1);
        EXPECT_LT(r.max_deviation(), 1e-12);
    }
}

TEST(verify_congruence, corrupted_dominant_amplitude) {
    Circuit c = mach_zehnder(std::numbers::pi / 3);
    Rng junk(1);
    Rng rng(2);
    OnticShot shot = run_ontic_shot(c, source_prepare(2, 0, JunkSampler(), junk), rng, {}, true);
    // After the first splitter both paths carry the dominant strength.
    shot.trajectory[1].u[0] *= 0.5;
    CongruenceReport r = verify_congruence(shot.trajectory, shot.record, c, ClassLabel::basis(2, 0));
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.first_violation);
    EXPECT_EQ(*r.first_violation, 1u);
    EXPECT_GT(r.deviations[1], 1e-3);
}

TEST(verify_congruence, junk_amplitude_is_invisible) {
    Circuit c = mach_zehnder(std::numbers::pi / 3);
    Rng junk(1);
    Rng rng(2);
    OnticShot shot = run_ontic_shot(c, source_prepare(2, 0, JunkSampler(), junk), rng, {}, true);
    shot.trajectory[0].u[1] = 0.9;
    EXPECT_TRUE(verify_congruence(shot.trajectory, shot.record, c, ClassLabel::basis(2, 0)).pass);
}

TEST(verify_congruence, zero_layers) {
    Circuit c(3, {});
    CongruenceReport r = verify_congruence({clicked_state(3, 2)}, OutcomeRecord{}, c, ClassLabel::basis(3, 2));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.deviations.size(), 1u);
}

TEST(verify_congruence, wrong_length_or_record) {
    Circuit c = mach_zehnder(0.5);
    EXPECT_FALSE(verify_congruence({clicked_state(2, 0)}, OutcomeRecord{}, c, ClassLabel::basis(2, 0)).pass);
    Rng junk(1);
    Rng rng(2);
    OnticShot shot = run_ontic_shot(c, source_prepare(2, 0, JunkSampler(), junk), rng, {}, true);
    EXPECT_FALSE(verify_congruence(shot.trajectory, OutcomeRecord{}, c, ClassLabel::basis(2, 0)).pass);
}

TEST(verify_congruence, all_scenarios) {
    for (const Scenario &sc : builtin_scenarios()) {
        for (std::uint64_t i = 0; i < 300; ++i) {
            Rng junk = shot_stream(6, i, StreamLane::kJunk);
            Rng rng = shot_stream(6, i, StreamLane::kEngine);
            OnticShot shot = run_ontic_shot(sc.circuit, source_prepare(sc.circuit.width(), sc.input, JunkSampler(), junk),
                                            rng, {}, true);
            CongruenceReport r =
                verify_congruence(shot.trajectory, shot.record, sc.circuit, ClassLabel::basis(sc.circuit.width(), sc.input));
            ASSERT_TRUE(r.pass) << sc.file << ": " << r.message;
            EXPECT_LT(r.max_deviation(), 1e-9);
        }
    }
}

TEST(verify_congruence, click_frequencies_follow_label) {
    // Shots sharing a record prefix share the label; the final full detector
    // layer must then click on j with probability |z_j|^2.
    for (const Scenario &sc : builtin_scenarios()) {
        const Circuit &c = sc.circuit;
        const std::size_t last = c.depth() - 1;
        std::map<OutcomeRecord, std::pair<ClassLabel, std::vector<std::uint64_t>>> groups;
        const std::uint64_t n = 40000;
        for (std::uint64_t i = 0; i < n; ++i) {
            Rng junk = shot_stream(8, i, StreamLane::kJunk);
            Rng rng = shot_stream(8, i, StreamLane::kEngine);
            OnticShot shot = run_ontic_shot(c, source_prepare(c.width(), sc.input, JunkSampler(), junk), rng);
            OutcomeRecord prefix = shot.record;
            const auto final_click = prefix.events.back().click;
            ASSERT_TRUE(final_click) << sc.file;
            prefix.events.pop_back();
            auto it = groups.find(prefix);
            if (it == groups.end()) {
                ClassLabel z = ClassLabel::basis(c.width(), sc.input);
                for (std::size_t k = 0; k < last; ++k) {
                    const OutcomeEvent *e = prefix.find(k);
                    z = predicted_label_update(z, c.layer(k), e ? e->click : std::nullopt);
                }
                it = groups.emplace(prefix, std::make_pair(z, std::vector<std::uint64_t>(c.width(), 0))).first;
            }
            ++it->second.second[*final_click];
        }
        for (const auto &[prefix, entry] : groups) {
            const auto &[z, hits] = entry;
            std::uint64_t total = 0;
            for (auto h : hits) {
                total += h;
            }
            for (PathIndex j = 0; j < c.width(); ++j) {
                const double p = std::norm(z.vector()[j]);
                if (p <= kZeroProbability) {
                    EXPECT_EQ(hits[j], 0u) << sc.file;
                } else {
                    EXPECT_TRUE(binomial_interval(p, total).contains(static_cast<double>(hits[j]) / total))
                        << sc.file << " " << record_key(prefix) << " path " << j + 1;
                }
            }
        }
    }
}

TEST(delta_commutation, splitter_tie) {
    Layer l{{BeamSplitter{0, 1, 0.5}}};
    std::vector<Strength> tau = {kOne, kOne};
    EXPECT_TRUE(check_delta_commutation(l, tau, 2));
    auto sides = delta_commutation_sides(l, tau, 2);
    EXPECT_NEAR(std::abs(sides.lhs(0, 0) - Complex(0, kS)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sides.lhs(1, 0) - kS), 0.0, 1e-15);
}

TEST(delta_commutation, splitter_one_side_weaker) {
    Layer l{{BeamSplitter{0, 1, 0.5}}};
    std::vector<Strength> tau = {p2(1), kOne};
    EXPECT_TRUE(check_delta_commutation(l, tau, 2));
    auto sides = delta_commutation_sides(l, tau, 2);
    EXPECT_EQ(sides.lhs.col(0).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(sides.rhs.col(0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(delta_commutation, detector_phase_free) {
    Layer l{{Detector{0}, PhaseShifter{1, 0.4}}};
    EXPECT_TRUE(check_delta_commutation(l, {kOne, kOne, p2(3)}, 3));
    EXPECT_TRUE(check_delta_commutation(l, {kOne, p2(2), kOne}, 3));
    EXPECT_TRUE(check_delta_commutation(l, {p2(1), kOne, kZero}, 3));
}

TEST(delta_commutation, needs_dominant_path_without_detector) {
    // Only the detector path carries the top strength: after silence the
    // surviving top strength is on path 2, which the right side never selected.
    Layer l{{Detector{0}, PhaseShifter{1, 0.4}}};
    std::vector<Strength> tau = {kOne, p2(1), p2(2)};
    EXPECT_FALSE(delta_commutation_applies(l, tau));
    auto sides = delta_commutation_sides(l, tau, 3);
    EXPECT_NEAR(std::abs(sides.lhs(1, 1)), 1.0, 1e-15);
    EXPECT_EQ(std::abs(sides.rhs(1, 1)), 0.0);
    EXPECT_FALSE(check_delta_commutation(l, tau, 3));
}

TEST(delta_commutation, randomized_configurations) {
    Rng rng(41);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        Circuit c = random_circuit(n, 2, rng());
        const Layer &layer = c.layer(0);
        std::vector<Strength> tau(n);
        for (auto &t : tau) {
            t = rng() % 4 == 0 ? kZero : p2(static_cast<std::uint32_t>(rng() % 3));
        }
        if (!delta_commutation_applies(layer, tau)) {
            continue;
        }
        ++checked;
        EXPECT_TRUE(check_delta_commutation(layer, tau, n)) << trial;
    }
    EXPECT_GT(checked, 1000);
}

TEST(delta_commutation, strengths_after_layer) {
    Layer l{{BeamSplitter{0, 1, 0.5}, Detector{2}, PhaseShifter{3, 1.0}}};
    std::vector<Strength> after = strengths_after_layer(l, {p2(2), p2(1), kOne, kOne, p2(4)});
    EXPECT_EQ(after, (std::vector<Strength>{p2(2), p2(2), kZero, p2(1), p2(5)}));
}
