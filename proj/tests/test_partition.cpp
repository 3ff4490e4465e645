#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace stabletensor;

TEST_CASE("partitions canonicalize by stripping trailing zeros", "[partition]") {
  CHECK(Partition{2, 1, 1, 0, 0} == Partition{2, 1, 1});
  CHECK(Partition{0, 0} == Partition{});
  CHECK(Partition{}.empty());
  CHECK(Partition{}.to_text() == "0");
  CHECK(Partition{2, 1, 1}.to_text() == "2,1,1");

  SECTION("padding then canonicalizing is the identity") {
    for (const auto& p : testsupport::partitions_up_to(6, 4)) {
      Partition again(p.padded(8));
      CHECK(again == p);
    }
  }
}

TEST_CASE("partition validation", "[partition]") {
  CHECK_THROWS_AS(Partition({1, 2}), InputError);
  CHECK_THROWS_AS(Partition({2, -1}), InputError);
  CHECK_THROWS_AS(Partition({2, 0, 1}), InputError);
  CHECK_THROWS_AS(Partition({1'000'001}), InputError);
  CHECK_THROWS_AS(Partition(std::vector<long long>(65, 1)), InputError);
  CHECK_NOTHROW(Partition(std::vector<long long>(64, 1)));
  CHECK_NOTHROW(Partition({1'000'000}));
}

TEST_CASE("partition accessors", "[partition]") {
  Partition p{3, 1, 1};
  CHECK(p.length() == 3);
  CHECK(p.size() == 5);
  CHECK(p[0] == 3);
  CHECK(p[2] == 1);
  CHECK(p[3] == 0);
  CHECK(p[100] == 0);
  CHECK(p.last() == 1);
  CHECK(p.dropped_last() == Partition{3, 1});
  CHECK(Partition{}.dropped_last() == Partition{});
  CHECK(p.padded(5) == WeightVector{3, 1, 1, 0, 0});
  CHECK_THROWS_AS(p.padded(2), InputError);
}

TEST_CASE("horizontal strip test", "[partition]") {
  CHECK(is_horizontal_strip(Partition{4, 2, 1}, Partition{3, 2}));
  CHECK(is_horizontal_strip(Partition{2, 1}, Partition{2, 1}));
  CHECK(is_horizontal_strip(Partition{3}, Partition{}));
  CHECK_FALSE(is_horizontal_strip(Partition{2, 2}, Partition{1}));     // two boxes in a column
  CHECK_FALSE(is_horizontal_strip(Partition{2, 1}, Partition{3}));     // containment fails
  CHECK(is_horizontal_strip(Partition{3, 3}, Partition{3, 1}));        // row 2 adds one box per column
  CHECK_FALSE(is_horizontal_strip(Partition{3, 3}, Partition{1, 1}));  // columns 2,3 get two boxes each
  CHECK(is_horizontal_strip(Partition{3, 1}, Partition{1, 1}));
  // inner[i] >= outer[i+1] is the at-most-one-box-per-column condition
  CHECK_FALSE(is_horizontal_strip(Partition{3, 2, 2}, Partition{3, 1}));
}

TEST_CASE("skew sizes", "[partition]") {
  CHECK(skew_size(Partition{4, 2, 1}, Partition{3, 2}) == 2);
  CHECK(skew_size(Partition{2, 1}, Partition{2, 1}) == 0);
  CHECK(skew_size(Partition{5}, Partition{}) == 5);
  CHECK_THROWS_AS(skew_size(Partition{2}, Partition{3}), InputError);
}

TEST_CASE("descent order", "[partition]") {
  CHECK(order_less(Partition{}, Partition{1}));
  CHECK(order_less(Partition{5}, Partition{1, 1}));        // shorter wins
  CHECK(order_less(Partition{3, 1}, Partition{2, 2}));     // equal length: last part decides
  CHECK_FALSE(order_less(Partition{2, 2}, Partition{3, 1}));
  CHECK_FALSE(order_less(Partition{}, Partition{}));
  CHECK_FALSE(order_less(Partition{3, 1}, Partition{4, 1}));  // tie: incomparable
  CHECK_FALSE(order_less(Partition{4, 1}, Partition{3, 1}));

  SECTION("irreflexive and asymmetric on a small universe") {
    auto all = testsupport::partitions_up_to(5, 3);
    for (const auto& a : all) {
      CHECK_FALSE(order_less(a, a));
      for (const auto& b : all)
        if (order_less(a, b)) CHECK_FALSE(order_less(b, a));
    }
  }
}
