#include <doctest.h>

#include "oracles.hpp"
#include "specband/algebra.hpp"

using namespace specband;

TEST_CASE("operator sum doubles entries") {
    BandedOperator<double> d = taylor_derivative();
    CHECK((d + d).entry(1, 2) == 2.0);
    CHECK((d + d).bandinds() == BandRange{0, 1});
}

TEST_CASE("Toeplitz sum equals padded coefficient sum") {
    BandedOperator<double> s =
        taylor_multiplication<double>({1.0}) + taylor_multiplication<double>({0.0, 1.0});
    CHECK(s.entry(1, 1) == 1.0);
    CHECK(s.entry(2, 1) == 1.0);
    CHECK(s.entry(2, 2) == 1.0);
    // oracle: T[a] + T[b] acts like multiplication by a+b = 1+z
    Fun<double> u(Space::taylor(), {2.0, -1.0, 3.0});
    Fun<double> viaSum = s * u;
    Fun<double> direct = taylor_multiplication<double>({1.0, 1.0}) * u;
    for (Index j = 1; j <= 4; ++j) {
        CHECK(viaSum.coefficient(j) == doctest::Approx(direct.coefficient(j)).epsilon(1e-15));
    }
}

TEST_CASE("sum promotes ranges up the conversion ladder") {
    BandedOperator<double> d1 = ultraspherical_derivative(1);  // Cheb -> C^(1)
    BandedOperator<double> id = identity_operator<double>(Space::chebyshev());
    BandedOperator<double> s = d1 + id;
    CHECK(s.rangespace() == Space::ultraspherical(1));
    CHECK(s.domainspace() == Space::chebyshev());
    // pointwise oracle for u' + u
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> a(10);
    for (auto& v : a) v = coeff(oracle::rng());
    Fun<double> u(Space::chebyshev(), a);
    Fun<double> su = s * u;
    Fun<double> du = d1 * u;
    const double h = 1e-5;
    for (double x : {-0.6, 0.0, 0.52}) {
        const double fd = (evaluate(u, x + h) - evaluate(u, x - h)) / (2.0 * h);
        CHECK(evaluate(su, x) == doctest::Approx(fd + evaluate(u, x)).epsilon(1e-6));
        CHECK(evaluate(su, x) == doctest::Approx(evaluate(du, x) + evaluate(u, x)).epsilon(1e-12));
    }
}

TEST_CASE("promotion failure across families") {
    CHECK_THROWS_AS(taylor_derivative<double>() + identity_operator<double>(Space::chebyshev()),
                    NoConversionError);
}

TEST_CASE("product of derivatives against a padded dense product") {
    BandedOperator<double> d = taylor_derivative();
    BandedOperator<double> dd = d * d;
    CHECK(dd.entry(1, 3) == 2.0);
    CHECK(dd.bandinds() == BandRange{0, 2});
    Eigen::MatrixXd dense =
        (oracle::dense_taylor_derivative(5) * oracle::dense_taylor_derivative(5));
    for (Index k = 1; k <= 3; ++k) {
        for (Index j = 1; j <= 5; ++j) {
            CHECK(dd.entry(k, j) == doctest::Approx(dense(k - 1, j - 1)));
        }
    }
}

TEST_CASE("identity is a multiplicative unit on rows 1..10") {
    BandedOperator<double> b = taylor_multiplication<double>({1.0, -0.5, 2.0});
    BandedOperator<double> ib = identity_operator<double>(Space::taylor()) * b;
    for (Index k = 1; k <= 10; ++k) {
        for (Index j = std::max<Index>(1, k - 2); j <= k; ++j) {
            CHECK(ib.entry(k, j) == b.entry(k, j));
        }
    }
}

TEST_CASE("second-order variable-coefficient tree matches the dense oracle") {
    // D T[a] D + T[b]
    const std::vector<double> a{1.0, 0.5}, b{-2.0, 0.0, 1.0};
    BandedOperator<double> tree = taylor_derivative() * taylor_multiplication<double>(a) *
                                      taylor_derivative() +
                                  taylor_multiplication<double>(b);
    const Index N = 40;
    Eigen::MatrixXd dense = oracle::dense_taylor_derivative(N) *
                                oracle::dense_taylor_multiplication(a, N) *
                                oracle::dense_taylor_derivative(N) +
                            oracle::dense_taylor_multiplication(b, N);
    for (Index k = 1; k <= 20; ++k) {
        for (Index j = 1; j <= 25; ++j) {
            CHECK(tree.entry(k, j) == doctest::Approx(dense(k - 1, j - 1)).epsilon(1e-14));
        }
    }
    // factors are stored flattened
    const auto* times = dynamic_cast<const TimesOperatorImpl<double>*>(
        (taylor_derivative<double>() * taylor_multiplication<double>(a) * taylor_derivative<double>())
            .impl()
            .get());
    REQUIRE(times != nullptr);
    CHECK(times->factors().size() == 3);
}

TEST_CASE("random operator trees agree with dense sections") {
    std::mt19937 gen(1234u);
    for (int rep = 0; rep < 25; ++rep) {
        oracle::TaylorTree t = oracle::random_taylor_tree(gen, 3, 60);
        double scale = std::max(1.0, t.dense.block(0, 0, 30, 30).cwiseAbs().maxCoeff());
        for (Index k = 1; k <= 30; ++k) {
            const BandRange bd = t.op.bandinds();
            for (Index j = std::max<Index>(1, k + bd.lower); j <= std::min<Index>(30, k + bd.upper);
                 ++j) {
                CHECK(std::abs(t.op.entry(k, j) - t.dense(k - 1, j - 1)) <= 1e-13 * scale);
            }
        }
    }
}

TEST_CASE("band ranges always contain the actual nonzero pattern") {
    std::mt19937 gen(99u);
    for (int rep = 0; rep < 10; ++rep) {
        oracle::TaylorTree t = oracle::random_taylor_tree(gen, 3, 80);
        const BandRange bd = t.op.bandinds();
        for (Index k = 1; k <= 40; ++k) {
            for (Index j = 1; j <= 40; ++j) {
                if (t.dense(k - 1, j - 1) != 0.0) CHECK(bd.contains_offset(j - k));
            }
        }
    }
}

TEST_CASE("functional sums") {
    Functional<double> b = taylor_evaluation(0.5);
    CHECK((b + b).entries({1, 3}) == std::vector<double>{2.0, 1.0, 0.5});
    Functional<double> c1 = evaluation_functional(Space::chebyshev(), 1.0);
    Functional<double> c2 = evaluation_functional(Space::chebyshev(), -1.0);
    CHECK((c1 + c2).entries({1, 4}) == std::vector<double>{2.0, 0.0, 2.0, 0.0});
    // adding the zero functional changes nothing
    Functional<double> zero =
        b * (0.0 * identity_operator<double>(Space::taylor()));
    auto sum = (b + zero).entries({1, 6});
    CHECK(sum == b.entries({1, 6}));
    CHECK_THROWS_AS(b + c1, NoConversionError);
}

TEST_CASE("functional times operator") {
    Functional<double> b1 = taylor_evaluation(1.0);
    Functional<double> comp = b1 * taylor_derivative<double>();
    CHECK(comp.entries({1, 4}) == std::vector<double>{0.0, 1.0, 2.0, 3.0});  // u -> u'(1)
    Functional<double> b0 = taylor_evaluation(0.0);
    CHECK((b0 * taylor_derivative<double>()).entries({1, 3}) ==
          std::vector<double>{0.0, 1.0, 0.0});
    // composing with the identity is a no-op
    Functional<double> same = b1 * identity_operator<double>(Space::taylor());
    CHECK(same.entries({1, 7}) == b1.entries({1, 7}));
    CHECK_THROWS_AS(b1 * ultraspherical_derivative(1), NoConversionError);
}

TEST_CASE("saved operator is transparent and caches rows") {
    SavedOperator<double> s = saved(taylor_derivative<double>());
    BandedBlock<double> first = s.block({1, 5});
    BandedBlock<double> second = s.block({1, 5});
    for (Index k = 1; k <= 5; ++k) {
        CHECK(first.at(k, k + 1) == static_cast<double>(k));
        CHECK(second.at(k, k + 1) == static_cast<double>(k));
    }
    CHECK(s.rows_generated() == 5);  // the inner generator ran once per row
    s.block({1, 10});
    CHECK(s.rows_generated() == 10);
    s.block({1, 50});
    CHECK(s.rows_generated() == 50);  // extension did not recompute rows 1..10
}

TEST_CASE("saved wrapper over a product matches the product") {
    BandedOperator<double> prod =
        taylor_derivative<double>() * taylor_multiplication<double>({1.0, 2.0});
    SavedOperator<double> s = saved(prod);
    for (Index k = 1; k <= 20; ++k) {
        for (Index j = std::max<Index>(1, k - 1); j <= k + 1; ++j) {
            CHECK(s.entry(k, j) == doctest::Approx(prod.entry(k, j)));
        }
    }
}

TEST_CASE("interlace of two identities is the identity") {
    BandedOperator<double> i = identity_operator<double>(Space::taylor());
    BandedOperator<double> ii = interlace<double>({i, i});
    for (Index k = 1; k <= 10; ++k) {
        CHECK(ii.entry(k, k) == 1.0);
        CHECK(ii.entry(k, k + 2) == 0.0);
        CHECK(ii.entry(k + 1, k) == 0.0);
    }
}

TEST_CASE("interlace round-robin semantics by explicit enumeration") {
    BandedOperator<double> d = taylor_derivative();
    BandedOperator<double> i = identity_operator<double>(Space::taylor());
    BandedOperator<double> m = interlace<double>({d, i});
    // row r: part (r-1) mod 2, part row ceil(r/2), columns in the same residue
    for (Index r = 1; r <= 12; ++r) {
        for (Index c = 1; c <= 14; ++c) {
            double expected = 0.0;
            if ((r - 1) % 2 == (c - 1) % 2) {
                const Index q = (r - 1) / 2 + 1, jq = (c - 1) / 2 + 1;
                expected = (r % 2 == 1) ? d.entry(q, jq) : i.entry(q, jq);
            }
            CHECK(m.entry(r, c) == expected);
        }
    }
    // D's row 1 lands in row 1 spread to odd columns
    CHECK(m.entry(1, 3) == 1.0);
    CHECK(m.entry(1, 2) == 0.0);
}

TEST_CASE("interlace band range is sound and within the derived bound") {
    BandedOperator<double> d = taylor_derivative();
    BandedOperator<double> m = interlace<double>({d, d});
    const BandRange bd = m.bandinds();
    // derived bound for two 0:1 parts
    CHECK(bd.lower >= -1);
    CHECK(bd.upper <= 3);
    // brute force over a 12x12 section: all nonzeros inside the computed band
    for (Index r = 1; r <= 12; ++r) {
        for (Index c = 1; c <= 12; ++c) {
            BandedBlock<double> blk({r, r}, {bd.lower - 4, bd.upper + 4});
            m.add_entries(blk, {r, r});
            if (blk.at(r, c) != 0.0) CHECK(bd.contains_offset(c - r));
        }
    }
    CHECK_THROWS_AS(interlace<double>(std::vector<BandedOperator<double>>{d}),
                    InvalidArgumentError);
}

TEST_CASE("interlaced functionals alternate entries") {
    Functional<double> f = taylor_evaluation(0.5);
    Functional<double> g = taylor_evaluation(-0.5);
    Functional<double> m = interlace<double>(std::vector<Functional<double>>{f, g});
    CHECK(m.entries({1, 6}) == std::vector<double>{1.0, 1.0, 0.5, -0.5, 0.25, 0.25});
}

TEST_CASE("promoted sums evaluate consistently") {
    BandedOperator<double> d2 = ultraspherical_derivative(2);           // Cheb -> C^(2)
    BandedOperator<double> d1 = ultraspherical_derivative(1);           // Cheb -> C^(1)
    BandedOperator<double> s = d2 + d1;                                 // promotes C^(1) up
    CHECK(s.rangespace() == Space::ultraspherical(2));
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> a(9);
    for (auto& v : a) v = coeff(oracle::rng());
    Fun<double> u(Space::chebyshev(), a);
    Fun<double> lhs = s * u;
    Fun<double> r1 = d2 * u, r2 = d1 * u;
    for (double x : {-0.41, 0.3, 0.88}) {
        CHECK(evaluate(lhs, x) ==
              doctest::Approx(evaluate(r1, x) + evaluate(r2, x)).epsilon(1e-12));
    }
}
