#include "oracle.hpp"
#include "twistkit/calculus.hpp"
#include "twistkit/symplectic.hpp"
#include "twistkit/tensor.hpp"

#include <gtest/gtest.h>

using namespace twistkit;

namespace {

TensorSeries S(char const *text, int genus = 2, int trunc = kDefaultTrunc)
{
	return TensorSeries::parse(text, genus, trunc);
}

TensorSeries random_series(int genus, int trunc, Rng &rng)
{
	std::vector<TensorSeries::Term> t;
	int const n = rng.uniform(1, 6);
	for (int i = 0; i < n; ++i) {
		std::vector<int> codes(static_cast<std::size_t>(rng.uniform(0, trunc)));
		for (auto &c : codes)
			c = rng.uniform(0, 2 * genus - 1);
		t.emplace_back(Word(std::span<const int>(codes)), rng.rational());
	}
	return TensorSeries::from_terms(genus, trunc, std::move(t));
}

} // namespace

TEST(Word, EncodingAndOrder)
{
	EXPECT_EQ(Letter::a(1).code(), 0);
	EXPECT_EQ(Letter::b(1).code(), 1);
	EXPECT_EQ(Letter::a(3).code(), 4);
	EXPECT_EQ(Letter::from_code(5).name(), "B3");
	EXPECT_EQ(Letter::parse("B2"), Letter::b(2));

	auto const w = Word::parse("A1*B2*A1");
	EXPECT_EQ(w.degree(), 3);
	EXPECT_EQ(w.letters(), (std::vector<int>{0, 3, 0}));
	EXPECT_EQ(w.to_string(), "A1*B2*A1");
	EXPECT_EQ(w.rotate(1).to_string(), "B2*A1*A1");
	EXPECT_EQ(w.prefix(1).concat(w.suffix_from(1)), w);
	EXPECT_TRUE((Word{0, 1} < Word{1, 0}));
	EXPECT_TRUE((Word{7} < Word{0, 0}));
	EXPECT_TRUE(Word::parse("1").empty());
}

TEST(Word, RejectsOverlongWords)
{
	std::vector<int> codes(static_cast<std::size_t>(kMaxDegree) + 1, 0);
	EXPECT_THROW(Word(std::span<const int>(codes)), DegreeError);
}

TEST(Scalar, Rendering)
{
	EXPECT_EQ(to_string(Scalar(3, 6)), "1/2");
	EXPECT_EQ(to_string(Scalar(-4, 2)), "-2");
	EXPECT_EQ(parse_scalar("-6/8"), Scalar(-3, 4));
}

TEST(TensorSeries, Add)
{
	EXPECT_TRUE((S("A1") + S("-A1")).is_zero());
	auto const om = symplectic_form(2);
	EXPECT_EQ(om + TensorSeries(2), om);
	EXPECT_EQ(S("A1*B1") + S("B1*A1"), cyclic_sum(S("A1*B1")));
	EXPECT_EQ((S("A1") + S("-A1")).to_string(), "0");
}

TEST(TensorSeries, AddMismatchIsStructural)
{
	EXPECT_THROW(S("A1", 2, 4) + S("A1", 2, 5), StructuralError);
	EXPECT_THROW(S("A1", 2) + S("A1", 3), StructuralError);
	EXPECT_THROW(S("A3", 2), StructuralError);
}

TEST(TensorSeries, Mul)
{
	EXPECT_EQ(S("1 + A1") * S("1 + B1"), S("1 + A1 + B1 + A1*B1"));
	EXPECT_TRUE((S("A1", 2, 1) * S("B1", 2, 1)).is_zero());
	auto const c = commutator(S("A1"), S("B1"));
	EXPECT_EQ((c * c).coefficient(Word::parse("A1*B1*A1*B1")), 1);
}

TEST(TensorSeries, Commutator)
{
	EXPECT_EQ(commutator(S("A1"), S("B1")), S("A1*B1 - B1*A1"));
	auto const u = S("A1 + 1/2*B1*A2 - 3*B2");
	EXPECT_TRUE(commutator(u, u).is_zero());
	EXPECT_EQ(commutator(S("A1"), commutator(S("A1"), S("B1"))), S("A1*A1*B1 - 2*A1*B1*A1 + B1*A1*A1"));
}

TEST(TensorSeries, Projections)
{
	auto const om = symplectic_form(2);
	EXPECT_EQ(exp(om).degree_part(4), Scalar(1, 2) * om * om);
	EXPECT_EQ(om.coefficient(Word::parse("A1*B1")), 1);
	EXPECT_EQ(om.coefficient(Word::parse("B1*A1")), -1);
	EXPECT_EQ(S("1 + A1 + A1*B1").truncate(1), S("1 + A1"));
	EXPECT_THROW(om.degree_part(9), DegreeError);
	EXPECT_THROW(om.truncate(-1), DegreeError);
	EXPECT_EQ(S("A1*B1*A1", 2, 8).with_trunc(2), TensorSeries(2, 2));
	EXPECT_EQ(S("A1", 2, 2).with_trunc(5).trunc(), 5);
}

TEST(TensorSeries, RenderingRoundTrip)
{
	auto const u = S("B1*A1 - 1/3*A2 + 2 + A1*B1");
	EXPECT_EQ(u.to_string(), "2 - 1/3*A2 + A1*B1 + B1*A1");
	EXPECT_EQ(S(u.to_string().c_str()), u);
	EXPECT_EQ(S("0"), TensorSeries(2));
}

TEST(TensorSeriesProperty, RingAxioms)
{
	Rng rng(11);
	for (int trial = 0; trial < 100; ++trial) {
		int const trunc = rng.uniform(1, 8);
		auto const a = random_series(2, trunc, rng), b = random_series(2, trunc, rng), c = random_series(2, trunc, rng);
		auto const one = TensorSeries::unit(2, trunc);
		ASSERT_EQ((a * b) * c, a * (b * c));
		ASSERT_EQ(a * (b + c), a * b + a * c);
		ASSERT_EQ((a + b) * c, a * c + b * c);
		ASSERT_EQ(one * a, a);
		ASSERT_EQ(a * one, a);
	}
}

TEST(TensorSeriesProperty, MatchesNaiveProduct)
{
	Rng rng(12);
	for (int trial = 0; trial < 100; ++trial) {
		int const trunc = rng.uniform(1, 8);
		auto const a = random_series(3, trunc, rng), b = random_series(3, trunc, rng);
		ASSERT_EQ(a * b, oracle::to(oracle::mul(oracle::from(a), oracle::from(b), trunc), 3, trunc));
		ASSERT_EQ(a + b, oracle::to(oracle::add(oracle::from(a), oracle::from(b)), 3, trunc));
	}
}

TEST(TensorSeriesProperty, DegreeAdditive)
{
	Rng rng(13);
	for (int trial = 0; trial < 100; ++trial) {
		int const trunc = rng.uniform(1, 8);
		auto const a = random_series(2, trunc, rng), b = random_series(2, trunc, rng);
		int const m = rng.uniform(0, trunc);
		TensorSeries sum(2, trunc);
		for (int i = 0; i <= m; ++i)
			sum += a.degree_part(i) * b.degree_part(m - i);
		ASSERT_EQ((a * b).degree_part(m), sum);
	}
}

TEST(TensorSeriesProperty, TruncationCommutesWithProduct)
{
	Rng rng(14);
	for (int trial = 0; trial < 100; ++trial) {
		int const trunc = rng.uniform(1, 8);
		auto const a = random_series(2, trunc, rng), b = random_series(2, trunc, rng);
		int const d = rng.uniform(0, trunc);
		ASSERT_EQ((a * b).truncate(d), (a.truncate(d) * b.truncate(d)).truncate(d));
	}
}
