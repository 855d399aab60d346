#include <doctest.h>

#include "rse/errors.hpp"
#include "rse/lattice.hpp"
#include "rse/rng.hpp"
#include "test_support.hpp"

using namespace rse;
using rse::test::comp;
using rse::test::el;

TEST_CASE("meet is the coordinatewise minimum") {
  CHECK(meet(el({"1", "0", "2"}), el({"0", "1", "2"})) == el({"0", "0", "2"}));
  CHECK(meet(el({"-1", "3"}), el({"2", "-4"})) == el({"-1", "-4"}));
  const Element p = el({"1", "0", "1"});
  CHECK(meet(p, sub(Element::unit(3), p)).is_zero());
  CHECK_THROWS_AS(meet(el({"1"}), el({"1", "2"})), DimensionMismatch);
}

TEST_CASE("join, abs and the linear operations") {
  CHECK(join(el({"1", "0"}), el({"0", "1"})) == el({"1", "1"}));
  CHECK(abs(el({"-2", "3"})) == el({"2", "3"}));
  CHECK(scale(0, el({"5", "-1/3"})).is_zero());
  CHECK(add(el({"1/2", "1"}), el({"1/2", "-1"})) == el({"1", "0"}));
  CHECK_THROWS_AS(join(el({"1"}), el({"1", "2"})), DimensionMismatch);
  CHECK_THROWS_AS(add(el({"1"}), el({"1", "2"})), DimensionMismatch);
}

TEST_CASE("f-product") {
  CHECK(f_product(el({"1", "1", "0"}), el({"0", "1", "1"})) == el({"0", "1", "0"}));
  CHECK(f_product(el({"1/2", "2"}), el({"4", "1/3"})) == el({"2", "2/3"}));
  const Element f = el({"-7/3", "0", "5"});
  CHECK(f_product(Element::unit(3), f) == f);
  CHECK_THROWS_AS(f_product(el({"1"}), el({"1", "2"})), DimensionMismatch);
}

TEST_CASE("f-product equals meet on components, exhaustively for n <= 4") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t a = 0; a < (1U << n); ++a) {
      for (std::uint64_t b = 0; b < (1U << n); ++b) {
        const Element p = Component::from_mask(n, a).to_element();
        const Element q = Component::from_mask(n, b).to_element();
        CHECK(f_product(p, q) == meet(p, q));
        CHECK(is_component(meet(p, q)));
        CHECK(is_component(join(p, q)));
      }
    }
  }
}

TEST_CASE("f-product equals meet on random components up to n = 16") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.between(1, 16);
    const Element p = test::random_component(rng, n).to_element();
    const Element q = test::random_component(rng, n).to_element();
    CHECK(f_product(p, q) == meet(p, q));
  }
}

TEST_CASE("is_component") {
  CHECK(is_component(el({"1", "0", "1"})));
  CHECK_FALSE(is_component(el({"1/2", "0"})));
  CHECK(is_component(Element::unit(5)));
  CHECK_FALSE(is_component(el({"-1", "0"})));
}

TEST_CASE("band projection") {
  CHECK(band_project(comp({1, 0}), el({"3", "5"})) == el({"3", "0"}));
  const Element f = el({"1", "2", "3"});
  CHECK(band_project(Component::unit(3), f) == f);
  const Component p = comp({0, 1, 1});
  CHECK(band_project(p, band_project(p, f)) == band_project(p, f));
  CHECK(band_project(p, Element::unit(3)) == p.to_element());
  CHECK_THROWS_AS(band_project(comp({1}), f), DimensionMismatch);
}

TEST_CASE("band projection is linear and positive") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = rng.between(1, 8);
    const Component p = test::random_component(rng, n);
    const Element f = test::random_element(rng, n);
    const Element g = test::random_element(rng, n);
    const Rational c(static_cast<long>(rng.below(7)) - 3, 2);
    CHECK(band_project(p, add(f, scale(c, g))) == add(band_project(p, f), scale(c, band_project(p, g))));
    CHECK(band_project(p, abs(f)).is_positive());
  }
}

TEST_CASE("component of a band") {
  CHECK(component_of_band(el({"0", "3", "1/2"})) == comp({0, 1, 1}));
  CHECK(component_of_band(Element::zero(2)) == Component::zero(2));
  CHECK(component_of_band(Element::unit(3)) == Component::unit(3));
  CHECK_THROWS_AS(component_of_band(el({"1", "-1"})), NegativeInput);
}

TEST_CASE("lattice identities hold exactly") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.between(1, 10);
    const Element a = test::random_element(rng, n);
    const Element b = test::random_element(rng, n);
    CHECK(add(a, b) == add(meet(a, b), join(a, b)));
    CHECK(abs(a) == join(a, negate(a)));
  }
}

TEST_CASE("rational wire form") {
  CHECK(format_rational(parse_rational("2/4")) == "1/2");
  CHECK(format_rational(parse_rational("-6/3")) == "-2");
  CHECK(format_rational(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
