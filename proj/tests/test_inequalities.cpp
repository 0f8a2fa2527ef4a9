#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opnorm/fuzz.hpp"
#include "opnorm/inequalities.hpp"
#include "opnorm/rng.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace opnorm;
using namespace opnorm::ineq;

namespace {

McIntoshInstance random_instance(rng::Stream& stream, int n_max = 8) {
    const int n = 2 + static_cast<int>(stream.next_u64() % (n_max - 1));
    std::vector<double> sa(n), sb(n);
    for (double& s : sa) s = std::exp(stream.next_uniform(std::log(1e-2), std::log(1e2)));
    for (double& s : sb) s = std::exp(stream.next_uniform(std::log(1e-2), std::log(1e2)));
    McIntoshInstance inst;
    inst.A = fuzz::random_spd(n, sa, stream.next_u64());
    inst.B = fuzz::random_spd(n, sb, stream.next_u64());
    inst.X = fuzz::random_gaussian(n, stream.next_u64());
    inst.r = 0.1 + 0.1 * static_cast<double>(stream.next_u64() % 9);
    return inst;
}

} // namespace

TEST_CASE("normalize: scalars and idempotence") {
    McIntoshInstance inst;
    inst.A = SymMatrix::diag({2.0, 2.0});
    inst.X = Matrix::identity(2);
    inst.B = SymMatrix::diag({4.0, 4.0});
    inst.r = 0.5;
    const auto norm = normalize(inst);
    CHECK(norm.normalized);
    CHECK(norm.A(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm.B(0, 0) == doctest::Approx(1.0).epsilon(1e-12));

    const auto twice = normalize(norm);
    CHECK(std::abs(twice.A(0, 0) - norm.A(0, 0)) <= 1e-12);
    CHECK(std::abs(twice.B(0, 0) - norm.B(0, 0)) <= 1e-12);
}

TEST_CASE("normalize: ratio is invariant") {
    rng::Stream stream(11);
    for (int trial = 0; trial < 25; ++trial) {
        const McIntoshInstance inst = random_instance(stream, 5);
        const double before = evaluate_mcintosh(inst).ratio;
        const double after = evaluate_mcintosh(normalize(inst)).ratio;
        CHECK(std::abs(before - after) <= 1e-10 * std::max(1.0, std::abs(before)));
    }
}

TEST_CASE("normalize: degenerate instance throws") {
    McIntoshInstance inst;
    inst.A = SymMatrix::diag({1.0, 1.0});
    inst.X = Matrix(2, 2); // zero
    inst.B = SymMatrix::diag({1.0, 1.0});
    CHECK_THROWS_AS(normalize(inst), std::domain_error);
}

TEST_CASE("evaluate_mcintosh: worked diagonal example with a psd-only slot") {
    // A = diag(1,0), X = I, B = diag(1,2): lhs = 1, rhs = 2^{1-r}
    for (double r : {0.25, 0.5, 0.75}) {
        McIntoshInstance inst;
        inst.A = SymMatrix::diag({1.0, 0.0});
        inst.X = Matrix::identity(2);
        inst.B = SymMatrix::diag({1.0, 2.0});
        inst.r = r;
        const auto rep = evaluate_mcintosh(inst);
        CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.rhs == doctest::Approx(std::pow(2.0, 1.0 - r)).epsilon(1e-12));
        CHECK(rep.ratio < 1.0);
    }
}

TEST_CASE("evaluate_mcintosh: identity equality and the common-eigenvalue instance") {
    McIntoshInstance id;
    id.A = SymMatrix::identity(3);
    id.X = Matrix::identity(3);
    id.B = SymMatrix::identity(3);
    id.r = 0.5;
    const auto rid = evaluate_mcintosh(id);
    CHECK(rid.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rid.ratio == doctest::Approx(1.0).epsilon(1e-12));

    McIntoshInstance eq;
    eq.A = SymMatrix::diag({2.0, 3.0});
    eq.B = SymMatrix::diag({2.0, 5.0});
    eq.X = Matrix::diag({0.5, 0.05});
    eq.r = 0.5;
    const auto req = evaluate_mcintosh(eq);
    CHECK(req.lhs == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(req.rhs == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("evaluate_mcintosh: witness reproduces the lhs") {
    rng::Stream stream(21);
    for (int trial = 0; trial < 20; ++trial) {
        const McIntoshInstance inst = random_instance(stream, 6);
        const auto rep = evaluate_mcintosh(inst);
        const auto da = spectral::eigendecompose(inst.A);
        const auto db = spectral::eigendecompose(inst.B);
        const Matrix op = spectral::real_power(da, inst.r).full() * inst.X *
                          spectral::real_power(db, 1.0 - inst.r).full();
        CHECK(norm2(op * rep.witness) >= (1.0 - 1e-8) * rep.lhs);
    }
}

TEST_CASE("evaluate_cordes: AB = I gives ratio 1, endpoints trivial") {
    CordesInstance inst;
    inst.A = SymMatrix::diag({2.0, 0.5});
    inst.B = SymMatrix::diag({0.5, 2.0});
    for (double s : {0.2, 0.5, 0.9}) {
        inst.s = s;
        const auto rep = evaluate_cordes(inst);
        CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-11));
    }
    inst.s = 1.0;
    const auto rep1 = evaluate_cordes(inst);
    CHECK(rep1.lhs == doctest::Approx(rep1.rhs).epsilon(1e-11));
    inst.s = 0.0;
    const auto rep0 = evaluate_cordes(inst);
    CHECK(rep0.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep0.rhs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate_cordes: rotated strict instance stays below one") {
    CordesInstance inst;
    inst.A = SymMatrix::diag({4.0, 1.0});
    inst.B = oracles::rotated_diag(1.0, 0.25, 3.14159265358979323846 / 4.0);
    inst.s = 0.5;
    const auto rep = evaluate_cordes(inst);
    CHECK(rep.ratio < 1.0 - 1e-6);
    CHECK(rep.ratio <= 1.0 + 1e-9);
}

TEST_CASE("fujii-furuta: commuting example and relabeling equivalence") {
    // P = Q = diag(1,2): ||PQP|| = 8 = rhs
    const SymMatrix p = SymMatrix::diag({1.0, 2.0});
    const auto rep = evaluate_fujii_furuta(p, p.full(), p);
    CHECK(rep.lhs == doctest::Approx(8.0).epsilon(1e-11));
    CHECK(rep.rhs == doctest::Approx(8.0).epsilon(1e-11));

    rng::Stream stream(31);
    for (int trial = 0; trial < 20; ++trial) {
        const McIntoshInstance base = random_instance(stream, 5);
        const auto ff = evaluate_fujii_furuta(base.A, base.X, base.B);
        McIntoshInstance relabeled;
        relabeled.A = SymMatrix::from(base.A * base.A, 1e-9);
        relabeled.B = SymMatrix::from(base.B * base.B, 1e-9);
        relabeled.X = base.X;
        relabeled.r = 0.5;
        const auto mc = evaluate_mcintosh(relabeled);
        CHECK(std::abs(ff.lhs - mc.lhs) <= 1e-10 * std::max(1.0, mc.lhs));
        CHECK(std::abs(ff.rhs - mc.rhs) <= 1e-10 * std::max(1.0, mc.rhs));
        CHECK(ff.ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("heinz-kato: identity case, zero operator, diagonal case") {
    const SymMatrix id = SymMatrix::identity(2);
    const Vec e1 = {1.0, 0.0};
    const auto rep = evaluate_heinz_kato(Matrix::identity(2), id, id, 0.5, e1, e1);
    CHECK_FALSE(rep.hypotheses_unmet);
    CHECK(rep.lhs == doctest::Approx(1.0));
    CHECK(rep.rhs == doctest::Approx(1.0));

    const auto zero = evaluate_heinz_kato(Matrix(2, 2), id, id, 0.3, e1, e1);
    CHECK_FALSE(zero.hypotheses_unmet);
    CHECK(zero.lhs == doctest::Approx(0.0));

    rng::Stream stream(41);
    const SymMatrix d12 = SymMatrix::diag({1.0, 2.0});
    for (int trial = 0; trial < 20; ++trial) {
        Vec x = {stream.next_gaussian(), stream.next_gaussian()};
        Vec y = {stream.next_gaussian(), stream.next_gaussian()};
        const auto r = evaluate_heinz_kato(Matrix::diag({1.0, 2.0}), d12, d12, 0.3, x, y);
        CHECK_FALSE(r.hypotheses_unmet);
        CHECK(r.lhs <= r.rhs * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("heinz-kato: hypothesis violation is flagged, not asserted") {
    const SymMatrix small = SymMatrix::diag({0.5, 0.5});
    const Vec e1 = {1.0, 0.0};
    const auto rep = evaluate_heinz_kato(Matrix::diag({2.0, 2.0}), small, small, 0.5, e1, e1);
    CHECK(rep.hypotheses_unmet);
}

TEST_CASE("loewner-heinz: scalar, endpoint, rotated") {
    const auto scalar = evaluate_loewner_heinz(SymMatrix::diag({4.0, 4.0}), SymMatrix::identity(2), 0.5);
    CHECK(scalar.hypothesis_ok);
    CHECK(scalar.holds);

    const auto endpoint = evaluate_loewner_heinz(SymMatrix::diag({4.0, 4.0}), SymMatrix::identity(2), 1.0);
    CHECK(endpoint.holds);

    const SymMatrix b = oracles::rotated_diag(1.5, 0.2, 0.6);
    const auto rot = evaluate_loewner_heinz(SymMatrix::diag({2.0, 2.0}), b, 0.5);
    CHECK(rot.hypothesis_ok);
    CHECK(rot.holds);
    CHECK(rot.min_eigenvalue_diff == doctest::Approx(std::sqrt(2.0) - std::sqrt(1.5)).epsilon(1e-9));

    const auto unmet = evaluate_loewner_heinz(SymMatrix::identity(2), SymMatrix::diag({2.0, 2.0}), 0.5);
    CHECK_FALSE(unmet.hypothesis_ok);
}

TEST_CASE("property: 1000 random McIntosh instances never violate") {
    rng::Stream stream(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const McIntoshInstance inst = random_instance(stream);
        const auto rep = evaluate_mcintosh(inst);
        CHECK(rep.ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("property: scaling covariance of the ratio") {
    rng::Stream stream(102);
    for (int trial = 0; trial < 50; ++trial) {
        const McIntoshInstance inst = random_instance(stream, 5);
        const double base = evaluate_mcintosh(inst).ratio;
        McIntoshInstance scaled = inst;
        scaled.A = stream.next_uniform(0.1, 10.0) * inst.A;
        scaled.B = stream.next_uniform(0.1, 10.0) * inst.B;
        const double c = stream.next_uniform(0.1, 10.0);
        Matrix x = inst.X;
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) x(i, j) *= c;
        scaled.X = x;
        CHECK(std::abs(evaluate_mcintosh(scaled).ratio - base) <= 1e-9 * std::max(1.0, base));
    }
}
