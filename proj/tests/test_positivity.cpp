// test_positivity.cpp: Conditional positivity, dissipativity and map-level tests

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rateaudit/generator.hpp"
#include "rateaudit/positivity.hpp"
#include "rateaudit/random.hpp"

using namespace rateaudit;

namespace {

Superoperator pauli_generator(double g1, double g2, double g3) { return build_superoperator(pauli_spec(g1, g2, g3)); }

Superoperator transpose_map(Eigen::Index d) {
    return Superoperator::from_map(d, [](const CMatrix& x) { return CMatrix(x.transpose()); });
}

}  // namespace

TEST_CASE("check_ccp", "[positivity]") {
    Rng rng(101);
    for (int t = 0; t < 10; ++t) {
        const auto v = check_ccp(build_superoperator(random_spec(2 + t % 3, rng)));
        CHECK(v.status == VerdictStatus::certified_pass);
    }
    const auto bad = check_ccp(pauli_generator(1, 1, -1));
    CHECK(bad.status == VerdictStatus::certified_fail);
    CHECK(bad.margin < 0.0);
    REQUIRE(std::holds_alternative<CVector>(bad.witness));
    // Replay: the witness lies in the complement of ψ⁺ and gives the margin.
    const CVector w = std::get<CVector>(bad.witness);
    const CMatrix c = 2.0 * oracle::choi_direct(pauli_generator(1, 1, -1));
    CHECK(std::abs(max_entangled(2).dot(w)) < 1e-10);
    CHECK(std::abs(w.dot(c * w).real() - bad.margin) < 1e-10);

    const auto ham = check_ccp(build_superoperator(hamiltonian_spec(rng.gaussian_hermitian(3))));
    CHECK(ham.status == VerdictStatus::certified_pass);
    CHECK(std::abs(ham.margin) < 1e-9);
}

TEST_CASE("conditional k-positivity sampler", "[positivity]") {
    SamplerConfig cfg{16, 200, 5};
    Rng rng(103);
    CHECK(check_conditional_k_positivity(build_superoperator(random_spec(2, rng)), 2, cfg).status ==
          VerdictStatus::no_violation_found);

    const auto v = check_conditional_k_positivity(pauli_generator(1, 1, -1), 2, cfg);
    CHECK(v.status == VerdictStatus::violation_found);
    REQUIRE(std::holds_alternative<VectorPair>(v.witness));
    const auto& pair = std::get<VectorPair>(v.witness);
    CHECK(std::abs(pair.phi.dot(pair.psi)) < 1e-10);
    CHECK(std::abs(conditional_k_value(pauli_generator(1, 1, -1), 2, pair.phi, pair.psi) - v.margin) < 1e-10);

    CHECK(check_conditional_k_positivity(pauli_generator(1, 1, -1), 1, cfg).status == VerdictStatus::no_violation_found);
    CHECK_THROWS_AS(check_conditional_k_positivity(pauli_generator(1, 1, 1), 0, cfg), InputError);
}

TEST_CASE("sampled checks never certify and are seed-deterministic", "[positivity]") {
    SamplerConfig cfg{8, 50, 77};
    const auto a = check_conditional_k_positivity(pauli_generator(1, 1, 1), 2, cfg);
    const auto b = check_conditional_k_positivity(pauli_generator(1, 1, 1), 2, cfg);
    CHECK_FALSE(a.certified());
    CHECK(a.margin == b.margin);
    CHECK(a.samples_used == 8);
    CHECK(a.seed == 77);
}

TEST_CASE("dissipativity sampler", "[positivity]") {
    SamplerConfig cfg{32, 200, 7};
    CHECK(check_dissipativity(adjoint_superoperator(pauli_generator(2, 2, -1)), cfg).status ==
          VerdictStatus::no_violation_found);
    const auto heis = adjoint_superoperator(pauli_generator(1, 1, -1));
    const auto v = check_dissipativity(heis, cfg);
    CHECK(v.status == VerdictStatus::violation_found);
    REQUIRE(std::holds_alternative<CMatrix>(v.witness));
    CHECK(std::abs(dissipativity_min_eig(heis, std::get<CMatrix>(v.witness)) - v.margin) < 1e-10);

    Rng rng(107);
    CHECK(check_dissipativity(adjoint_superoperator(build_superoperator(random_spec(3, rng))), cfg).status ==
          VerdictStatus::no_violation_found);
    // Amplitude damping read as a Heisenberg generator does not annihilate the identity.
    GeneratorSpec ad{2, CMatrix::Zero(2, 2), {{pauli::plus(), 1.0}}};
    const Superoperator non_unital(2, build_superoperator(ad).matrix(), Picture::heisenberg);
    CHECK_THROWS_AS(check_dissipativity(non_unital, cfg), InputError);
    CHECK_THROWS_AS(check_dissipativity(pauli_generator(1, 1, 1), cfg), InputError);
}

TEST_CASE("qubit Pauli classification", "[positivity]") {
    CHECK(qubit_pauli_classify(1, 1, 1) == PauliClass::cp);
    CHECK(qubit_pauli_classify(2, 2, -1) == PauliClass::schwarz_not_cp);
    CHECK(qubit_pauli_classify(1, 1, -1) == PauliClass::positive_not_schwarz);
    // Schwarz although γ₁ + 2γ₃ < 0: the pairwise-product condition is the exact one.
    CHECK(qubit_pauli_classify(1.2, 1.6, -0.65) == PauliClass::schwarz_not_cp);
    CHECK(qubit_pauli_classify(1, 2, -0.7) == PauliClass::positive_not_schwarz);
    CHECK(qubit_pauli_classify(1, -2, 0.5) == PauliClass::not_positive);
}

TEST_CASE("samplers agree with the Pauli oracle near the boundaries", "[positivity]") {
    // Offsets of ±0.05 around γ₃ = 0 (CP) and γ₁γ₂ + γ₂γ₃ + γ₃γ₁ = 0 (Schwarz).
    Rng rng(109);
    int agree_2p = 0, agree_s = 0, total = 0;
    SamplerConfig cfg{16, 200, 3};
    for (int t = 0; t < 50; ++t) {
        const double g1 = rng.uniform(0.5, 2.0), g2 = g1 + rng.uniform(0.0, 1.0);
        const double sign = t % 2 == 0 ? 1.0 : -1.0;
        const double g3_cp = sign * 0.05;
        const double g3_s = -g1 * g2 / (g1 + g2) + sign * 0.05;
        for (double g3 : {g3_cp, g3_s}) {
            ++total;
            const auto cls = qubit_pauli_classify(g1, g2, g3);
            const auto s = pauli_generator(g1, g2, g3);
            const bool cp = cls == PauliClass::cp;
            const bool schwarz = cp || cls == PauliClass::schwarz_not_cp;
            agree_2p += check_conditional_k_positivity(s, 2, cfg).violated() == !cp;
            agree_s += check_dissipativity(adjoint_superoperator(s), cfg).violated() == !schwarz;
        }
    }
    CHECK(agree_2p >= total * 99 / 100);
    CHECK(agree_s >= total * 99 / 100);
}

TEST_CASE("CCP implies no conditional k-positivity violation", "[positivity]") {
    Rng rng(113);
    SamplerConfig cfg{8, 100, 9};
    for (int t = 0; t < 20; ++t) {
        const auto s = build_superoperator(random_spec(2 + t % 2, rng));
        REQUIRE(check_ccp(s).status == VerdictStatus::certified_pass);
        for (std::size_t k : {1, 2, 3}) CHECK_FALSE(check_conditional_k_positivity(s, k, cfg).violated());
    }
}

TEST_CASE("map classes on identity, transposition and a Schwarz non-2-positive map", "[positivity]") {
    SamplerConfig cfg{32, 200, 13};
    CHECK(check_map_class(Superoperator::identity(2), MapClass::cp(), cfg).status == VerdictStatus::certified_pass);

    const auto t = transpose_map(2);
    CHECK(check_map_class(t, MapClass::cp(), cfg).status == VerdictStatus::certified_fail);
    const auto sv = check_map_class(t, MapClass::schwarz(), cfg);
    CHECK(sv.status == VerdictStatus::violation_found);
    REQUIRE(std::holds_alternative<CMatrix>(sv.witness));
    CHECK(std::abs(schwarz_min_eig(t, std::get<CMatrix>(sv.witness)) - sv.margin) < 1e-10);
    // The witness named in the text: X = |1⟩⟨2|.
    CHECK(schwarz_min_eig(t, basis_matrix(2, 0, 1)) < -0.5);
    CHECK(check_map_class(t, MapClass::k_positive(1), cfg).status == VerdictStatus::no_violation_found);
    CHECK(check_map_class(t, MapClass::k_positive(2), cfg).status == VerdictStatus::violation_found);

    const auto half = Superoperator::from_map(2, [](const CMatrix& x) {
        return CMatrix(0.5 * (0.5 * identity(2) * x.trace() + x.transpose()));
    });
    CHECK(check_map_class(half, MapClass::schwarz(), cfg).status == VerdictStatus::no_violation_found);
    CHECK(check_map_class(half, MapClass::cp(), cfg).status == VerdictStatus::certified_fail);

    GeneratorSpec ad{2, CMatrix::Zero(2, 2), {{pauli::plus(), 1.0}}};
    const auto nonunital = Superoperator(2, expm(build_superoperator(ad).matrix()));
    CHECK_THROWS_AS(check_map_class(nonunital, MapClass::schwarz(), cfg), InputError);
}

TEST_CASE("semigroup maps of CCP generators are CP, Schwarz and positive", "[positivity]") {
    Rng rng(127);
    SamplerConfig cfg{8, 100, 17};
    for (int n = 0; n < 3; ++n) {
        // Unital CCP generator: Hermitian jumps.
        GeneratorSpec spec{2, rng.gaussian_hermitian(2), {}};
        for (int k = 0; k < 3; ++k) spec.jumps.push_back({rng.gaussian_hermitian(2), rng.uniform()});
        const auto heis = adjoint_superoperator(build_superoperator(spec));
        for (double t : {0.1, 1.0, 10.0}) {
            const Superoperator map(2, expm(t * heis.matrix()), Picture::heisenberg);
            CHECK(check_map_class(map, MapClass::cp(), cfg).status == VerdictStatus::certified_pass);
            CHECK_FALSE(check_map_class(map, MapClass::schwarz(), cfg).violated());
            CHECK_FALSE(check_map_class(map, MapClass::k_positive(1), cfg).violated());
        }
    }
}

TEST_CASE("variance contractivity", "[positivity]") {
    const CMatrix half = 0.5 * identity(2);
    const auto id = variance_contractivity_check(Superoperator::identity(2, Picture::heisenberg), half, 50, 1);
    CHECK(id.status == VerdictStatus::no_violation_found);
    CHECK(std::abs(id.margin) < 1e-12);

    const double p = 0.3;
    const auto dep = Superoperator::from_map(
        3, [p](const CMatrix& a) { return CMatrix((1 - p) * a + p * a.trace() / 3.0 * identity(3)); },
        Picture::heisenberg);
    Rng rng(131);
    for (int t = 0; t < 10; ++t) {
        CMatrix a = rng.gaussian_matrix(3, 3);
        a -= a.trace() / 3.0 * identity(3);
        const CMatrix w = identity(3) / 3.0;
        CHECK(quantum_variance(w, dep.apply(a)) / quantum_variance(w, a) == Catch::Approx(0.49).epsilon(1e-10));
    }

    const auto heis = adjoint_superoperator(pauli_generator(2, 2, -1));
    const Superoperator map(2, expm(0.7 * heis.matrix()), Picture::heisenberg);
    CHECK(variance_contractivity_check(map, half, 500, 3).status == VerdictStatus::no_violation_found);

    CHECK_THROWS_AS(variance_contractivity_check(map, pauli::plus() * pauli::minus(), 10, 1), InputError);
}

TEST_CASE("extended application puts the ancilla first", "[positivity]") {
    Rng rng(137);
    const auto s = build_superoperator(random_spec(2, rng));
    const CMatrix a = rng.gaussian_matrix(3, 3), b = rng.gaussian_matrix(2, 2);
    CHECK((apply_extended(s, 3, oracle::kron_loop(a, b)) - oracle::kron_loop(a, s.apply(b))).norm() < 1e-12);
}
