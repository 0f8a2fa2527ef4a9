#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opnorm/equality.hpp"
#include "opnorm/fuzz.hpp"
#include "opnorm/refinement.hpp"
#include "opnorm/rng.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace opnorm;
using namespace opnorm::equality;

namespace {

// diagonal equality instance from the worked example: common eigenvalue 2
ineq::McIntoshInstance diagonal_equality_instance() {
    ineq::McIntoshInstance inst;
    inst.A = SymMatrix::diag({2.0, 3.0});
    inst.B = SymMatrix::diag({2.0, 5.0});
    inst.X = Matrix::diag({0.5, 0.05});
    inst.r = 0.5;
    inst.normalized = true; // ||AX|| = 1 = ||XB|| by construction
    return inst;
}

} // namespace

TEST_CASE("find_common_eigenvalues: overlap, disjoint, near-coincidence") {
    const auto da = spectral::eigendecompose(SymMatrix::diag({1.0, 2.0}));
    const auto db = spectral::eigendecompose(SymMatrix::diag({2.0, 3.0}));
    const auto common = find_common_eigenvalues(da, db);
    REQUIRE(common.size() == 1);
    CHECK(common[0].lambda == doctest::Approx(2.0));
    CHECK(common[0].mu == doctest::Approx(2.0));

    const auto dc = spectral::eigendecompose(SymMatrix::diag({7.0, 9.0}));
    CHECK(find_common_eigenvalues(da, dc).empty());

    const auto dd = spectral::eigendecompose(SymMatrix::diag({2.0 + 1e-12, 5.0}));
    CHECK(find_common_eigenvalues(db, dd).size() == 1);
}

TEST_CASE("analyze_mcintosh_equality: worked diagonal instance, v = e1 consistent") {
    const auto inst = diagonal_equality_instance();
    const auto verdict = analyze_mcintosh_equality(inst, {1.0, 0.0});
    CHECK(verdict.achieved == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(verdict.asserted);
    CHECK(verdict.consistent);
    REQUIRE(!verdict.common_eigenvalues.empty());
    CHECK(verdict.common_eigenvalues[0].lambda == doctest::Approx(2.0));

    // cluster mu = 2 has w = X pi v = 0.5 e1, A w = 2 w
    bool found = false;
    for (const auto& c : verdict.clusters)
        if (c.tested && std::abs(c.mu - 2.0) < 1e-9) {
            found = true;
            CHECK(c.proj_norm == doctest::Approx(0.5));
            CHECK(c.is_eigvec);
            CHECK(c.achieved_eigenvalue == doctest::Approx(2.0).epsilon(1e-10));
        }
    CHECK(found);
}

TEST_CASE("analyze_mcintosh_equality: v = e2 is inconsistent (A w = 3w != 5w)") {
    const auto inst = diagonal_equality_instance();
    const auto verdict = analyze_mcintosh_equality(inst, {0.0, 1.0});
    CHECK(verdict.achieved < 1.0 - 1e-6);
    CHECK_FALSE(verdict.asserted);
    CHECK_FALSE(verdict.consistent);
    bool found = false;
    for (const auto& c : verdict.clusters)
        if (c.tested && std::abs(c.mu - 5.0) < 1e-9) {
            found = true;
            CHECK_FALSE(c.is_eigvec);
            CHECK(c.achieved_eigenvalue == doctest::Approx(3.0).epsilon(1e-9));
        }
    CHECK(found);
}

TEST_CASE("analyze_mcintosh_equality: verdict invariant under orthogonal conjugation") {
    rng::Stream stream(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto synth = fuzz::synthesize_equality_instance(
            3 + static_cast<int>(stream.next_u64() % 2), std::exp(stream.next_uniform(-0.5, 0.5)),
            stream.next_u64());
        const auto verdict = analyze_mcintosh_equality(synth.inst, synth.v);
        CHECK(verdict.consistent);
        CHECK(verdict.achieved == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(!verdict.common_eigenvalues.empty());
    }
}

TEST_CASE("analyze_mcintosh_equality: explicit conjugation covariance oracle") {
    rng::Stream stream(43);
    for (int trial = 0; trial < 10; ++trial) {
        const auto base = diagonal_equality_instance();
        const Vec v = {1.0, 0.0};
        const auto before = analyze_mcintosh_equality(base, v);

        // conjugate: A -> U A U^T, B -> W B W^T, X -> U X W^T, v -> W v
        const double tu = stream.next_uniform(0.0, 6.28);
        const double tw = stream.next_uniform(0.0, 6.28);
        Matrix U(2, 2), W(2, 2);
        U(0, 0) = std::cos(tu); U(0, 1) = -std::sin(tu);
        U(1, 0) = std::sin(tu); U(1, 1) = std::cos(tu);
        W(0, 0) = std::cos(tw); W(0, 1) = -std::sin(tw);
        W(1, 0) = std::sin(tw); W(1, 1) = std::cos(tw);

        ineq::McIntoshInstance conj;
        conj.A = SymMatrix::from(U * base.A.full() * transpose(U), 1e-12);
        conj.B = SymMatrix::from(W * base.B.full() * transpose(W), 1e-12);
        conj.X = U * base.X * transpose(W);
        conj.r = base.r;
        conj.normalized = true;
        const Vec wv = W * v;
        const auto after = analyze_mcintosh_equality(conj, wv);

        CHECK(after.consistent == before.consistent);
        CHECK(after.achieved == doctest::Approx(before.achieved).epsilon(1e-9));
        REQUIRE(after.clusters.size() == before.clusters.size());
        for (std::size_t c = 0; c < after.clusters.size(); ++c) {
            CHECK(after.clusters[c].mu == doctest::Approx(before.clusters[c].mu).epsilon(1e-9));
            CHECK(after.clusters[c].proj_norm ==
                  doctest::Approx(before.clusters[c].proj_norm).epsilon(1e-8));
        }
        CHECK(after.common_eigenvalues.size() == before.common_eigenvalues.size());
    }
}

TEST_CASE("analyze_mcintosh_equality: requires normalization and unit v") {
    auto inst = diagonal_equality_instance();
    inst.normalized = false;
    CHECK_THROWS_AS(analyze_mcintosh_equality(inst, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(analyze_mcintosh_equality(diagonal_equality_instance(), {2.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("analyze_cordes_equality: AB = I diagonal instance") {
    ineq::CordesInstance inst;
    inst.A = SymMatrix::diag({2.0, 0.5});
    inst.B = SymMatrix::diag({0.5, 2.0});
    inst.s = 0.5;
    inst.normalized = true;

    const auto v1 = analyze_cordes_equality(inst, {1.0, 0.0});
    CHECK(v1.consistent);
    CHECK(v1.achieved == doctest::Approx(1.0).epsilon(1e-12));
    bool found = false;
    for (const auto& c : v1.clusters)
        if (c.tested && std::abs(c.mu - 0.5) < 1e-9) {
            found = true;
            CHECK(c.achieved_eigenvalue == doctest::Approx(2.0).epsilon(1e-10));
            CHECK(c.is_eigvec);
        }
    CHECK(found);

    const double inv = 1.0 / std::sqrt(2.0);
    const auto v2 = analyze_cordes_equality(inst, {inv, inv});
    CHECK(v2.consistent);
    CHECK(v2.achieved == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analyze_cordes_equality: perturbation grows residuals linearly") {
    ineq::CordesInstance base;
    base.A = SymMatrix::diag({2.0, 0.5});
    base.B = SymMatrix::diag({0.5, 2.0});
    base.s = 0.5;
    base.normalized = true;

    double prev_resid = 0.0;
    for (double eps : {1e-6, 1e-5, 1e-4}) {
        ineq::CordesInstance pert = base;
        pert.A = SymMatrix::from(base.A.full() + eps * oracles::rotated_diag(1.0, -1.0, 0.4).full(), 1.0);
        const auto verdict = analyze_cordes_equality(pert, {1.0, 0.0}, 1e-12);
        double resid = 0.0;
        for (const auto& c : verdict.clusters)
            if (c.tested) resid = std::max(resid, c.residual);
        CHECK(resid > 0.9 * prev_resid); // grows with eps
        if (prev_resid > 0.0) CHECK(resid / prev_resid == doctest::Approx(10.0).epsilon(0.5));
        prev_resid = resid;
    }
}

TEST_CASE("equality_transfer_check: diagonal equality instance transfers") {
    const auto inst = diagonal_equality_instance();
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
    const auto rep = equality_transfer_check(inst, {1.0, 0.0}, grid);
    CHECK(rep.precondition_met);
    CHECK(rep.all_one);
    CHECK(rep.max_deviation <= 1e-10);
}

TEST_CASE("equality_transfer_check: cordes corollary") {
    ineq::CordesInstance inst;
    inst.A = SymMatrix::diag({2.0, 0.5});
    inst.B = SymMatrix::diag({0.5, 2.0});
    inst.s = 0.4;
    inst.normalized = true;
    std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    const auto rep = equality_transfer_check(inst, {1.0, 0.0}, grid);
    CHECK(rep.precondition_met);
    CHECK(rep.all_one);
}

TEST_CASE("equality_transfer_check: strict instance takes the unmet path") {
    ineq::McIntoshInstance inst;
    inst.A = SymMatrix::diag({1.0, std::exp(-3.0)});
    inst.X = Matrix::diag({1.0, std::exp(1.0)});
    inst.B = SymMatrix::diag({std::exp(-1.0), std::exp(-1.0)});
    inst.r = 0.5;
    inst.normalized = true;
    const auto rep = equality_transfer_check(inst, {1.0, 0.0}, {0.3, 0.7});
    CHECK_FALSE(rep.precondition_met);
}

TEST_CASE("extremal_vector: diagonal, tie-break, and norm attainment") {
    ineq::McIntoshInstance inst;
    inst.A = SymMatrix::diag({1.0, 2.0, 1.5});
    inst.X = Matrix::identity(3);
    inst.B = SymMatrix::diag({1.0, 1.0, 1.0});
    inst.r = 0.5;
    const Vec v = extremal_vector(inst, 0.5);
    CHECK(std::abs(v[1]) == doctest::Approx(1.0)); // largest diagonal entry

    ineq::McIntoshInstance id;
    id.A = SymMatrix::identity(3);
    id.X = Matrix::identity(3);
    id.B = SymMatrix::identity(3);
    id.r = 0.5;
    const Vec w = extremal_vector(id, 0.5);
    CHECK(w[0] == doctest::Approx(1.0)); // tie-break to e1

    rng::Stream stream(17);
    for (int trial = 0; trial < 20; ++trial) {
        ineq::McIntoshInstance rnd;
        const int n = 3;
        rnd.A = fuzz::random_spd(n, {0.5, 1.0, 2.0}, stream.next_u64());
        rnd.B = fuzz::random_spd(n, {0.7, 1.3, 3.0}, stream.next_u64());
        rnd.X = fuzz::random_gaussian(n, stream.next_u64());
        rnd.r = 0.4;
        const Vec u = extremal_vector(rnd, 0.4);
        const auto da = spectral::eigendecompose(rnd.A);
        const auto db = spectral::eigendecompose(rnd.B);
        const Matrix op = spectral::real_power(da, 0.4).full() * rnd.X *
                          spectral::real_power(db, 0.6).full();
        const double norm = spectral::operator_norm(op).value;
        CHECK(norm2(op * u) >= (1.0 - 1e-8) * norm);
    }
}

TEST_CASE("completeness: synthesized diagonal recipes are consistent with common eigenvalue") {
    rng::Stream stream(23);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(stream.next_u64() % 4);
        const auto synth = fuzz::synthesize_equality_instance(
            n, std::exp(stream.next_uniform(-0.7, 0.7)), stream.next_u64());
        const auto verdict = analyze_mcintosh_equality(synth.inst, synth.v);
        CHECK(verdict.consistent);
        CHECK(!verdict.common_eigenvalues.empty());
    }
}

TEST_CASE("soundness probe: disjoint spectra keep the extremal value away from 1") {
    rng::Stream stream(29);
    int asserted_cases = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 3);
        std::vector<double> sa(n), sb(n);
        for (double& s : sa) s = std::exp(stream.next_uniform(-2.0, 2.0));
        // enforce pairwise log-gap >= 1e-3 against sa
        for (double& s : sb) {
            double cand = 0.0;
            for (int attempt = 0; attempt < 200; ++attempt) {
                cand = stream.next_uniform(-2.0, 2.0);
                bool ok = true;
                for (double a : sa)
                    if (std::abs(cand - std::log(a)) < 1e-3) ok = false;
                if (ok) break;
            }
            s = std::exp(cand);
        }
        ineq::McIntoshInstance inst;
        inst.A = fuzz::random_spd(n, sa, stream.next_u64());
        inst.B = fuzz::random_spd(n, sb, stream.next_u64());
        inst.X = fuzz::random_gaussian(n, stream.next_u64());
        inst.r = 0.5;
        const auto norm = ineq::normalize(inst);
        const Vec v = extremal_vector(norm, norm.r);
        const auto verdict = analyze_mcintosh_equality(norm, v);

        const auto gap = refine::compute_d(norm);
        if (gap.d > 0.0) {
            ++asserted_cases;
            CHECK(verdict.achieved <= 1.0 - 1e-6);
        }
    }
    CHECK(asserted_cases > 400);
}
