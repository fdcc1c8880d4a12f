#include "doctest.h"

#include "subcode/gf.hpp"

#include <random>

using namespace subcode;

namespace {

// naive polynomial remainder over F_p, coefficients low degree first
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p)
{
    int db = int(b.size()) - 1;
    int inv_lead = 1;
    while (inv_lead * b.back() % p != 1) ++inv_lead;
    for (int i = int(a.size()) - 1; i >= db; --i) {
        int c = a[i] * inv_lead % p;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
    a.resize(db);
    return a;
}

bool brute_irreducible(const std::vector<int>& f, int p)
{
    int m = int(f.size()) - 1;
    for (int d = 1; d <= m / 2; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int n = 0; n < count; ++n) {
            std::vector<int> g(d + 1);
            int t = n;
            for (int i = 0; i < d; ++i) { g[i] = t % p; t /= p; }
            g[d] = 1;
            auto r = poly_rem(f, g, p);
            bool zero = true;
            for (int x : r) zero = zero && x == 0;
            if (zero) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("moduli are the least irreducible polynomials")
{
    for (auto [p, mmax] : {std::pair{2, 9}, {3, 5}, {5, 3}, {7, 3}}) {
        for (int m = 2; m <= mmax; ++m) {
            auto mod = default_modulus(p, m);
            REQUIRE(int(mod.size()) == m + 1);
            CHECK(mod.back() == 1);
            CHECK(brute_irreducible(mod, p));
            int value = 0;
            for (int i = m - 1; i >= 0; --i) value = value * p + mod[i];
            for (int smaller = 0; smaller < value; ++smaller) {
                std::vector<int> g(m + 1);
                int t = smaller;
                for (int i = 0; i < m; ++i) { g[i] = t % p; t /= p; }
                g[m] = 1;
                CHECK_FALSE(brute_irreducible(g, p));
            }
        }
    }
}

TEST_CASE("F_4 arithmetic")
{
    auto f = Field::get(2, 2);
    auto x = FieldElement::parse(f, "10");
    CHECK((x * x).to_string() == "11");
    CHECK(x.trace(1).to_string() == "01");
    CHECK((x * x * x).to_string() == "01");
    CHECK(x.inverse().to_string() == "11");
}

TEST_CASE("F_8 arithmetic")
{
    auto f = Field::get(2, 3);
    auto a = FieldElement::parse(f, "010");
    auto a2 = FieldElement::parse(f, "100");
    CHECK((a * a2).to_string() == "011");
    CHECK(a.trace(1).is_zero());
    CHECK(FieldElement::parse(f, "001").trace(1).to_string() == "001");
}

TEST_CASE("error cases")
{
    auto f = Field::get(2, 3);
    CHECK_THROWS_AS(FieldElement(f, 0).inverse(), std::domain_error);
    CHECK_THROWS_AS(FieldElement(f, 3).trace(2), std::invalid_argument);
    CHECK_THROWS(FieldElement::parse(f, "12"));
    CHECK_THROWS(FieldElement::parse(f, "01"));
    CHECK_THROWS(Field::get(2, 10));
    CHECK_THROWS(Field::of_order(6));
}

TEST_CASE("field axioms")
{
    std::mt19937 rng(7);
    for (auto [p, m] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {2, 6}, {3, 4}, {2, 9}}) {
        auto f = Field::get(p, m);
        int q = f->order();
        std::uniform_int_distribution<int> pick(0, q - 1);
        for (int it = 0; it < 2000; ++it) {
            elem_t a = elem_t(pick(rng)), b = elem_t(pick(rng)), c = elem_t(pick(rng));
            CHECK(f->add(a, b) == f->add(b, a));
            CHECK(f->mul(a, b) == f->mul(b, a));
            CHECK(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
            CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a) CHECK(f->mul(a, f->inv(a)) == 1);
            CHECK(f->pow(a, q) == a);
            CHECK(f->frobenius(f->add(a, b), 1) == f->add(f->frobenius(a, 1), f->frobenius(b, 1)));
            for (int s = 1; s <= m; ++s)
                if (m % s == 0) CHECK(f->in_subfield(f->trace(a, s), s));
        }
    }
}

TEST_CASE("towers")
{
    for (auto [q, n] : {std::pair{2, 3}, {2, 4}, {4, 3}, {3, 3}, {9, 2}, {4, 2}, {2, 2}}) {
        Tower t(q, n);
        const Field& b = *t.base();
        const Field& e = *t.ext();
        int qn = 1;
        for (int i = 0; i < n; ++i) qn *= q;
        CHECK(e.order() == qn);
        for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y) {
                CHECK(t.embed(b.add(x, y)) == e.add(t.embed(x), t.embed(y)));
                CHECK(t.embed(b.mul(x, y)) == e.mul(t.embed(x), t.embed(y)));
            }
        for (int z = 0; z < e.order(); ++z) {
            CHECK(t.from_coords(t.coords(elem_t(z))) == z);
            CHECK(t.trace_to_base(elem_t(z)) < q);
        }
        for (int s = 1; s <= n; ++s) {
            if (n % s) continue;
            auto sb = t.subfield_basis(s);
            CHECK(int(sb.size()) == s);
            for (auto w : sb) CHECK(t.frob_q(w, s) == w);
        }
    }
}
