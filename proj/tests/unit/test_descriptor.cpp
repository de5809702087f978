#include <gtest/gtest.h>

#include "lshlab/descriptor.hpp"
#include "lshlab/hash_family.hpp"

using namespace lshlab;

TEST(Descriptor, RoundTripsEveryKind) {
  std::vector<WeightedFunction> fns{
      {HashFunction::projection(4, 2), Probability(1, 6)},
      {HashFunction::subset(4, {0, 3}), Probability(1, 6)},
      {HashFunction::parity(4, {1, 2}), Probability(1, 6)},
      {HashFunction::constant(4), Probability(1, 6)},
      {HashFunction::minhash(4, {3, 1, 0, 2}), Probability(1, 6)},
      {HashFunction::pair_collapse(Point::from_string("0000"), Point::from_string("0100")), Probability(1, 12)},
      {HashFunction::table(4, std::vector<Label>(16, 2)), Probability(1, 12)},
  };
  const auto f = power(explicit_family(4, fns), 2);
  const auto text = format_descriptor(f.descriptor());
  EXPECT_EQ(parse_descriptor(text), f.descriptor());
  EXPECT_EQ(format_descriptor(parse_descriptor(text)), text);
}

TEST(Descriptor, BuiltinKinds) {
  for (const auto& f : {bit_sampling_family(7), minhash_family(5, 3), trivial_family(4, 2), constant_family(2)}) {
    const auto d = parse_descriptor(format_descriptor(f.descriptor()));
    EXPECT_EQ(d, f.descriptor());
    EXPECT_EQ(HashFamily::from_descriptor(d).support().size(), f.support().size());
  }
}

TEST(Descriptor, CommentsAndErrors) {
  const auto d = parse_descriptor("# bit sampling\nlshlab-family 1\nkind bit-sampling\nd 5\nk 2\nseed 1\n");
  EXPECT_EQ(d.dim, 5u);
  EXPECT_EQ(d.power, 2u);
  EXPECT_THROW(parse_descriptor("kind bit-sampling\nd 5\n"), std::invalid_argument);
  EXPECT_THROW(parse_descriptor("lshlab-family 1\nkind nope\nd 5\n"), std::invalid_argument);
  EXPECT_THROW(parse_function(3, "projection 3"), std::invalid_argument);
}
