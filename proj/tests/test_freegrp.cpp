#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncvx/freegrp.hpp"
#include "ncvx/rng.hpp"

#include <cmath>
#include <random>

using namespace ncvx;
using freegrp::ExactPolynomial;
using freegrp::GroupPolynomial;
using freegrp::RationalComplex;
using freegrp::Word;

namespace {

Word w(std::initializer_list<int> letters) { return Word::from_letters(letters); }

Word random_word(std::mt19937_64& gen, int rank, int max_len) {
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<int> letter_dist(1, 2 * rank);
    std::vector<int> letters;
    const int len = len_dist(gen);
    for (int i = 0; i < len; ++i) {
        const int raw = letter_dist(gen);
        letters.push_back(raw <= rank ? raw : -(raw - rank));
    }
    return Word::from_letters(letters);
}

GroupPolynomial all_ones_s1(int rank) {
    GroupPolynomial x(rank);
    for (int i = 1; i <= rank; ++i) {
        x.add(Word::generator(i), 1.0);
        x.add(Word::generator(-i), 1.0);
    }
    return x;
}

ExactPolynomial all_ones_s1_exact(int rank) {
    ExactPolynomial x(rank);
    for (int i = 1; i <= rank; ++i) {
        x.add(Word::generator(i), RationalComplex(1));
        x.add(Word::generator(-i), RationalComplex(1));
    }
    return x;
}

}  // namespace

TEST_CASE("word reduction and multiplication") {
    CHECK((Word::generator(1) * Word::generator(-1)).is_identity());
    CHECK(w({1, 2}) * w({-2, 1}) == w({1, 1}));
    CHECK(w({1, -1, 2}) == w({2}));
    CHECK(w({1, 2, -2, -1}).is_identity());
    CHECK(w({1, 2, 3}).inverse() == w({-3, -2, -1}));
    CHECK(w({1, 2}).length() == 2);
}

TEST_CASE("word multiplication is associative over random samples") {
    std::mt19937_64 gen(2024);
    for (int t = 0; t < 10000; ++t) {
        const Word a = random_word(gen, 2, 8);
        const Word b = random_word(gen, 2, 8);
        const Word c = random_word(gen, 2, 8);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("polynomial products: lambda representation and hand expansions") {
    const Word g = w({1, 2});
    const Word h = w({-2, -1, 1});
    const GroupPolynomial lg = GroupPolynomial::lambda(2, g, 1.0);
    const GroupPolynomial lh = GroupPolynomial::lambda(2, h, 1.0);
    const GroupPolynomial prod = freegrp::poly_multiply(lg, lh);
    CHECK(prod.support_size() == 1);
    CHECK(std::abs(prod.at(g * h) - std::complex<double>(1.0)) == 0.0);

    // x = a + a^-1 on F_1: x^2 = 2e + a^2 + a^-2.
    GroupPolynomial x(1);
    x.add(Word::generator(1), 1.0);
    x.add(Word::generator(-1), 1.0);
    const GroupPolynomial sq = freegrp::poly_multiply(x, x);
    CHECK(sq.support_size() == 3);
    CHECK(sq.at(Word()).real() == doctest::Approx(2.0));
    CHECK(sq.at(w({1, 1})).real() == doctest::Approx(1.0));
    CHECK(sq.at(w({-1, -1})).real() == doctest::Approx(1.0));

    // All-ones on S_1 of F_2: x^2 = 4e + the 12 reduced length-2 words.
    const GroupPolynomial s1 = all_ones_s1(2);
    const GroupPolynomial s1sq = freegrp::poly_multiply(s1, s1);
    CHECK(s1sq.support_size() == 13);
    CHECK(s1sq.at(Word()).real() == doctest::Approx(4.0));
    int length2 = 0;
    for (const auto& [word, coeff] : s1sq.coeffs()) {
        if (word.length() == 2) {
            ++length2;
            CHECK(coeff.real() == doctest::Approx(1.0));
        }
    }
    CHECK(length2 == 12);
}

TEST_CASE("adjoint is an involution and reverses products") {
    CHECK(freegrp::adjoint(GroupPolynomial::lambda(2, w({1}), 1.0)).at(w({-1})) ==
          std::complex<double>(1.0));
    std::mt19937_64 gen(5);
    std::normal_distribution<double> normal;
    GroupPolynomial x(2), y(2);
    for (int t = 0; t < 12; ++t) {
        x.add(random_word(gen, 2, 4), {normal(gen), normal(gen)});
        y.add(random_word(gen, 2, 4), {normal(gen), normal(gen)});
    }
    const GroupPolynomial xss = freegrp::adjoint(freegrp::adjoint(x));
    for (const auto& [word, coeff] : x.coeffs()) {
        CHECK(xss.at(word) == coeff);
    }
    const GroupPolynomial lhs = freegrp::adjoint(freegrp::poly_multiply(x, y));
    const GroupPolynomial rhs =
        freegrp::poly_multiply(freegrp::adjoint(y), freegrp::adjoint(x));
    for (const auto& [word, coeff] : lhs.coeffs()) {
        CHECK(std::abs(coeff - rhs.at(word)) <= 1e-12);
    }
}

TEST_CASE("canonical trace") {
    CHECK(freegrp::canonical_trace(GroupPolynomial::lambda(2, w({1, 2}), 1.0)) ==
          std::complex<double>(0.0));
    CHECK(freegrp::canonical_trace(GroupPolynomial::lambda(2, Word(), 1.0)) ==
          std::complex<double>(1.0));

    std::mt19937_64 gen(6);
    std::normal_distribution<double> normal;
    GroupPolynomial x(2);
    for (int t = 0; t < 10; ++t) x.add(random_word(gen, 2, 4), {normal(gen), normal(gen)});
    double l2sq = 0.0;
    for (const auto& [word, coeff] : x.coeffs()) l2sq += std::norm(coeff);
    const std::complex<double> tr =
        freegrp::canonical_trace(freegrp::poly_multiply(freegrp::adjoint(x), x));
    CHECK(tr.real() == doctest::Approx(l2sq).epsilon(1e-12));
    CHECK(std::abs(tr.imag()) <= 1e-12 * std::max(1.0, l2sq));

    // tau(xy) = tau(yx)
    GroupPolynomial y(2);
    for (int t = 0; t < 10; ++t) y.add(random_word(gen, 2, 4), {normal(gen), normal(gen)});
    const auto txy = freegrp::canonical_trace(freegrp::poly_multiply(x, y));
    const auto tyx = freegrp::canonical_trace(freegrp::poly_multiply(y, x));
    CHECK(std::abs(txy - tyx) <= 1e-12);
}

TEST_CASE("even L_q norms: closed moments in floating and exact mode") {
    CHECK(freegrp::lq_norm_even(GroupPolynomial::lambda(2, w({1, 2}), 1.0), 6) ==
          doctest::Approx(1.0));

    // q = 2 agrees with the coefficient l2 norm and with the moment route.
    std::mt19937_64 gen2(84);
    std::normal_distribution<double> normal2;
    GroupPolynomial r(2);
    for (int i = 0; i < 9; ++i) r.add(random_word(gen2, 2, 3), {normal2(gen2), normal2(gen2)});
    if (r.support_size() > 0) {
        CHECK(freegrp::lq_norm_even(r, 2) == doctest::Approx(freegrp::l2_norm(r)));
        CHECK(freegrp::lq_norm_even(r, 2) ==
              doctest::Approx(std::sqrt(freegrp::moment_even(r, 1).real())).epsilon(1e-12));
    }

    const GroupPolynomial x = all_ones_s1(2);
    CHECK(freegrp::l2_norm(x) == doctest::Approx(2.0));
    CHECK(std::pow(freegrp::lq_norm_even(x, 4), 4) == doctest::Approx(28.0).epsilon(1e-12));

    // Exact rational mode: tau((x*x)^2) = 8n^2 - 2n on S_1 of F_n.
    for (int n : {2, 3, 4}) {
        const ExactPolynomial xe = all_ones_s1_exact(n);
        const RationalComplex moment = freegrp::moment_even(xe, 2);
        CHECK(moment.im == RationalComplex::Rat(0));
        CHECK(moment.re == RationalComplex::Rat(8 * n * n - 2 * n));
        // ratio^4 = (8n^2-2n)/(4n^2) = 2 - 1/(2n), exactly.
        const RationalComplex::Rat ratio4 = moment.re / RationalComplex::Rat(4 * n * n);
        CHECK(ratio4 == RationalComplex::Rat(2) - RationalComplex::Rat(1, 2 * n));
    }
}

TEST_CASE("exact moments match the lattice-walk count up to m = 4") {
    // x = a + a^-1 on F_1 = Z: tau((x*x)^m) = tau(x^(2m)) counts the length-2m
    // walks on Z returning to the origin, i.e. binomial(2m, m).
    ExactPolynomial x(1);
    x.add(Word::generator(1), RationalComplex(1));
    x.add(Word::generator(-1), RationalComplex(1));
    const long long expected[] = {2, 6, 20, 70};
    for (int m = 1; m <= 4; ++m) {
        const RationalComplex mom = freegrp::moment_even(x, m);
        CHECK(mom.re == RationalComplex::Rat(expected[m - 1]));
        CHECK(mom.im.numerator() == 0);
    }
}

TEST_CASE("no explicit zeros are stored") {
    GroupPolynomial x(2);
    x.add(w({1, 2}), {0.5, -1.0});
    x.add(w({1}), {2.0, 0.0});
    const GroupPolynomial diff = x - x;
    CHECK(diff.support_size() == 0);
    x.add(w({1}), {-2.0, 0.0});
    CHECK(x.support_size() == 1);
    CHECK(x.at(w({1})) == std::complex<double>(0.0));
}

TEST_CASE("khintchine ratio: single word, closed form, sharpness trend") {
    CHECK(freegrp::khintchine_ratio(GroupPolynomial::lambda(2, w({1, 2, 1}), 2.5), 4) ==
          doctest::Approx(1.0));

    const double r2 = freegrp::khintchine_ratio(all_ones_s1(2), 4);
    CHECK(r2 == doctest::Approx(std::pow(28.0 / 16.0, 0.25)).epsilon(1e-12));
    CHECK(r2 <= std::pow(2.0, 0.25) + 1e-10);

    double prev = r2;
    for (int n : {3, 5, 9}) {
        const double r = freegrp::khintchine_ratio(all_ones_s1(n), 4);
        CHECK(r == doctest::Approx(std::pow(2.0 - 0.5 / n, 0.25)).epsilon(1e-12));
        CHECK(r > prev);  // increases toward 2^(1/4)
        prev = r;
    }

    GroupPolynomial mixed(2);
    mixed.add(w({1}), 1.0);
    mixed.add(w({1, 2}), 1.0);
    CHECK_THROWS_AS(freegrp::khintchine_ratio(mixed, 4), std::invalid_argument);
}

TEST_CASE("khintchine bound holds on random homogeneous samples") {
    for (int n : {2, 3}) {
        for (int k : {1, 2, 3}) {
            const std::vector<Word> sk = freegrp::sphere(n, k);
            for (int t = 0; t < 50; ++t) {
                auto gen = rng::engine_for(5000 + 10 * n + k, t);
                std::normal_distribution<double> normal;
                GroupPolynomial x(n);
                for (const Word& word : sk) x.add(word, {normal(gen), normal(gen)});
                CHECK(freegrp::khintchine_ratio(x, 4) <= std::pow(k + 1.0, 0.25) + 1e-10);
            }
        }
    }
}

TEST_CASE("moments are real nonnegative; norms are monotone in q") {
    std::mt19937_64 gen(77);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 10; ++t) {
        GroupPolynomial x(2);
        for (int i = 0; i < 6; ++i) x.add(random_word(gen, 2, 3), {normal(gen), normal(gen)});
        if (x.support_size() == 0) continue;
        for (int m : {1, 2, 3}) {
            const std::complex<double> mom = freegrp::moment_even(x, m);
            CHECK(mom.real() >= -1e-12);
            CHECK(std::abs(mom.imag()) <= 1e-12 * std::max(1.0, mom.real()));
        }
        const double n2 = freegrp::lq_norm_even(x, 2);
        const double n4 = freegrp::lq_norm_even(x, 4);
        const double n6 = freegrp::lq_norm_even(x, 6);
        CHECK(n2 <= n4 * (1.0 + 1e-12));
        CHECK(n4 <= n6 * (1.0 + 1e-12));
    }
}

TEST_CASE("cauchy-schwarz for the trace") {
    std::mt19937_64 gen(78);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 30; ++t) {
        GroupPolynomial x(2), y(2);
        for (int i = 0; i < 5; ++i) {
            x.add(random_word(gen, 2, 3), {normal(gen), normal(gen)});
            y.add(random_word(gen, 2, 3), {normal(gen), normal(gen)});
        }
        const auto t_xy =
            freegrp::canonical_trace(freegrp::poly_multiply(freegrp::adjoint(x), y));
        CHECK(std::abs(t_xy) <=
              freegrp::l2_norm(x) * freegrp::l2_norm(y) * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("poisson semigroup: multiplier values and exact semigroup law") {
    const GroupPolynomial e = GroupPolynomial::lambda(2, Word(), 1.0);
    CHECK(freegrp::poisson_apply(e, 3.0).at(Word()).real() == doctest::Approx(1.0));

    const Word g = w({1, 2, 1});
    const GroupPolynomial lg = GroupPolynomial::lambda(2, g, 1.0);
    CHECK(freegrp::poisson_apply(lg, 0.7).at(g).real() ==
          doctest::Approx(std::exp(-0.7 * 3)).epsilon(1e-15));

    std::mt19937_64 gen(79);
    std::normal_distribution<double> normal;
    GroupPolynomial x(2);
    for (int i = 0; i < 8; ++i) x.add(random_word(gen, 2, 4), {normal(gen), normal(gen)});
    const GroupPolynomial ab = freegrp::poisson_apply(freegrp::poisson_apply(x, 0.3), 0.5);
    const GroupPolynomial once = freegrp::poisson_apply(x, 0.8);
    for (const auto& [word, coeff] : once.coeffs()) {
        CHECK(std::abs(ab.at(word) - coeff) <= 1e-15 * std::abs(coeff));
    }
    const GroupPolynomial p0 = freegrp::poisson_apply(x, 0.0);
    for (const auto& [word, coeff] : x.coeffs()) CHECK(p0.at(word) == coeff);
}

TEST_CASE("homogeneous components reassemble exactly") {
    std::mt19937_64 gen(80);
    std::normal_distribution<double> normal;
    GroupPolynomial x(2);
    for (int i = 0; i < 10; ++i) x.add(random_word(gen, 2, 4), {normal(gen), normal(gen)});
    x.add(Word(), {normal(gen), 0.0});

    const GroupPolynomial c0 = freegrp::homogeneous_component(x, 0);
    CHECK(c0.at(Word()) == x.at(Word()));

    GroupPolynomial sum(2);
    for (int k = 0; k <= 4; ++k) sum = sum + freegrp::homogeneous_component(x, k);
    for (const auto& [word, coeff] : x.coeffs()) CHECK(sum.at(word) == coeff);
    CHECK(sum.support_size() == x.support_size());
}

TEST_CASE("sphere and ball sizes") {
    CHECK(freegrp::sphere(2, 1).size() == 4);
    CHECK(freegrp::sphere(2, 2).size() == 12);
    CHECK(freegrp::sphere(3, 2).size() == 30);
    CHECK(freegrp::ball(2, 2).size() == 17);
    CHECK(freegrp::ball(2, 6).size() == 1457);
}

TEST_CASE("haagerup lower bound: single word and the radial element") {
    const VerificationReport single =
        freegrp::haagerup_lower_check(GroupPolynomial::lambda(2, w({1, 2}), 1.0), 4);
    CHECK(single.passed());

    // All-ones on S_1 of F_2: true norm 2 sqrt(3); the lower bound must land
    // in [||x||_4^2 / ||x||_2, 2 ||x||_2].
    const GroupPolynomial x = all_ones_s1(2);
    const VerificationReport rad = freegrp::haagerup_lower_check(x, 6);
    CHECK(rad.passed());
    double lower = 0.0;
    for (const Outcome& o : rad.outcomes) {
        if (o.name == "lower_bound") lower = o.value;
    }
    CHECK(lower >= std::sqrt(28.0) / 2.0 - 1e-9);
    CHECK(lower <= 4.0 + 1e-9);
    CHECK(lower <= 2.0 * std::sqrt(3.0) + 1e-9);

    // Random real polynomial on S_2.
    auto gen = rng::engine_for(81, 0);
    std::normal_distribution<double> normal;
    GroupPolynomial y(2);
    for (const Word& word : freegrp::sphere(2, 2)) y.add(word, {normal(gen), 0.0});
    const VerificationReport r2 = freegrp::haagerup_lower_check(y, 6);
    CHECK(r2.passed());
}

TEST_CASE("haagerup radius precondition") {
    CHECK_THROWS_AS(freegrp::haagerup_lower_check(all_ones_s1(2), 2), std::invalid_argument);
}

TEST_CASE("budget guards raise resource errors") {
    GroupPolynomial x(2);
    std::mt19937_64 gen(82);
    std::normal_distribution<double> normal;
    for (const Word& word : freegrp::ball(2, 5)) x.add(word, {normal(gen), normal(gen)});
    CHECK_THROWS_AS(freegrp::moment_even(x, 4), freegrp::ResourceError);
    CHECK_THROWS_AS(freegrp::ball(2, 40), freegrp::ResourceError);
}

TEST_CASE("text format round trip is bit exact") {
    std::mt19937_64 gen(83);
    std::normal_distribution<double> normal;
    GroupPolynomial x(3);
    x.add(Word(), {normal(gen), normal(gen)});
    for (int i = 0; i < 12; ++i) x.add(random_word(gen, 3, 5), {normal(gen), normal(gen)});

    const std::string text = freegrp::format_polynomial(x);
    const GroupPolynomial back = freegrp::parse_polynomial(text, 3);
    CHECK(back.support_size() == x.support_size());
    for (const auto& [word, coeff] : x.coeffs()) {
        const std::complex<double> parsed = back.at(word);
        CHECK(parsed.real() == coeff.real());
        CHECK(parsed.imag() == coeff.imag());
    }
    CHECK(freegrp::format_polynomial(back) == text);

    CHECK_THROWS_AS(freegrp::parse_polynomial("1.0 oops : 1"), std::invalid_argument);
    CHECK_THROWS_AS(freegrp::parse_polynomial("1.0 0.0 : 0"), std::invalid_argument);
    CHECK_THROWS_AS(freegrp::parse_polynomial("inf 0.0 : 1"), std::invalid_argument);
    CHECK_THROWS_AS(freegrp::parse_polynomial("1.0 0.0 : 3", 2), std::invalid_argument);
}
