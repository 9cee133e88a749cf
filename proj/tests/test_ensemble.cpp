#include <doctest.h>

#include "oracles.hpp"

#include <psel/ensemble.hpp>
#include <psel/learner_config.hpp>

#include <random>

using namespace psel;

namespace {

RankedList ranking(std::initializer_list<std::size_t> ids)
{
	RankedList list;
	double score = static_cast<double>(ids.size());
	for(auto i : ids)
		list.entries.push_back({constant_id(i), score--});
	return list;
}

std::vector<ConstantId> pool(std::size_t n)
{
	std::vector<ConstantId> out;
	for(std::size_t i = 0; i < n; ++i)
		out.push_back(constant_id(i));
	return out;
}

RankedList random_ranking(std::mt19937_64& rng, std::size_t n)
{
	auto ids = pool(n);
	std::shuffle(ids.begin(), ids.end(), rng);
	ids.resize(rng() % (n + 1));
	RankedList list;
	double score = 0.0;
	for(auto id : ids)
		list.entries.push_back({id, score--});
	return list;
}

} // namespace

TEST_CASE("harmonic combine examples")
{
	auto cands = pool(4);
	std::vector<RankedList> lists = {ranking({0, 1, 2}), ranking({1, 2, 0})};
	std::vector<double> w = {1.0, 1.0};

	// Candidate 0 sits at positions 1 and 3: 2 / (1 + 1/3) = 1.5.
	auto out = harmonic_combine(lists, w, cands, 10);
	auto find = [&](std::size_t i) {
		for(const auto& e : out.entries)
			if(e.id == constant_id(i))
				return -e.score;
		return -1.0;
	};
	CHECK(find(0) == doctest::Approx(1.5).epsilon(1e-15));
	CHECK(find(1) == doctest::Approx(2.0 / (0.5 + 1.0)));
	// Candidate 3 is absent from both lists of length 3: position 4 in each.
	CHECK(find(3) == doctest::Approx(4.0));
	CHECK(out.ids() == std::vector<ConstantId>{constant_id(1), constant_id(0), constant_id(2), constant_id(3)});

	// Absent from a length-10 list: position 11.
	RankedList ten;
	for(std::size_t i = 1; i <= 10; ++i)
		ten.entries.push_back({constant_id(i), -static_cast<double>(i)});
	std::vector<RankedList> two = {ranking({0}), ten};
	out = harmonic_combine(two, w, std::vector<ConstantId>{constant_id(0)}, 10);
	CHECK(-out.entries[0].score == doctest::Approx(2.0 / (1.0 + 1.0 / 11.0)));
}

TEST_CASE("harmonic combine errors")
{
	auto cands = pool(3);
	std::vector<RankedList> lists = {ranking({0}), ranking({1})};
	std::vector<double> one = {1.0};
	std::vector<double> zero = {1.0, 0.0};
	std::vector<double> negative = {1.0, -2.0};
	std::vector<double> nan = {1.0, std::nan("")};
	CHECK_THROWS_AS(harmonic_combine(lists, one, cands, 3), ConfigError);
	CHECK_THROWS_AS(harmonic_combine(lists, zero, cands, 3), ConfigError);
	CHECK_THROWS_AS(harmonic_combine(lists, negative, cands, 3), ConfigError);
	CHECK_THROWS_AS(harmonic_combine(lists, nan, cands, 3), ConfigError);
	std::vector<RankedList> single = {ranking({0})};
	CHECK_THROWS_AS(harmonic_combine(single, one, cands, 3), ConfigError);
}

TEST_CASE("harmonic combine properties")
{
	std::mt19937_64 rng(11);
	for(int iter = 0; iter < 300; ++iter)
	{
		std::size_t n = 1 + rng() % 25;
		auto cands = pool(n);
		std::size_t cutoff = 1 + rng() % (n + 2);
		std::size_t m = 2 + rng() % 3;
		std::vector<RankedList> lists;
		std::vector<double> w;
		for(std::size_t i = 0; i < m; ++i)
		{
			lists.push_back(random_ranking(rng, n));
			w.push_back(0.1 + static_cast<double>(rng() % 100) / 10.0);
		}
		auto base = harmonic_combine(lists, w, cands, cutoff);
		CHECK(oracle::contract_violation(base, cands, cutoff, {}) == "");

		// Idempotence: copies of one complete ranking.
		auto full = lists[0];
		{
			std::set<ConstantId> in;
			for(const auto& e : full.entries)
				in.insert(e.id);
			double s = full.empty() ? 0.0 : full.entries.back().score;
			for(auto c : cands)
				if(!in.count(c))
					full.entries.push_back({c, --s});
		}
		std::vector<RankedList> copies(m, full);
		auto same = harmonic_combine(copies, w, cands, cutoff);
		auto expected = full.ids();
		expected.resize(std::min(cutoff, expected.size()));
		CHECK(same.ids() == expected);

		// Permutation invariance, exactly.
		std::vector<std::size_t> perm(m);
		std::iota(perm.begin(), perm.end(), 0);
		std::shuffle(perm.begin(), perm.end(), rng);
		std::vector<RankedList> plists;
		std::vector<double> pw;
		for(auto i : perm)
		{
			plists.push_back(lists[i]);
			pw.push_back(w[i]);
		}
		CHECK(harmonic_combine(plists, pw, cands, cutoff) == base);

		// Weight-scale invariance of the order. Powers of two keep the arithmetic exact.
		for(double gamma : {0.25, 8.0})
		{
			auto sw = w;
			for(auto& x : sw)
				x *= gamma;
			CHECK(harmonic_combine(lists, sw, cands, cutoff).ids() == base.ids());
		}

		// Dominance.
		auto complete = harmonic_combine(lists, w, cands, n);
		std::vector<std::size_t> pos(n);
		for(std::size_t i = 0; i < complete.size(); ++i)
			pos[to_index(complete.entries[i].id)] = i;
		auto position = [](const RankedList& l, std::size_t id) {
			for(std::size_t i = 0; i < l.size(); ++i)
				if(l.entries[i].id == constant_id(id))
					return i + 1;
			return l.size() + 1;
		};
		for(std::size_t d = 0; d < n; ++d)
			for(std::size_t e = 0; e < n; ++e)
			{
				if(d == e)
					continue;
				bool dominates = true;
				for(const auto& l : lists)
					dominates = dominates && position(l, d) < position(l, e);
				if(dominates)
					CHECK(pos[d] < pos[e]);
			}
	}
}

TEST_CASE("ensemble ranker combines member rankings")
{
	oracle::Prepared p("A\tx\tp\nB\ty\tq\nC\tx\tp q\n");
	LearnerConfig cfg;
	cfg.method = Method::Ensemble;
	cfg.ensemble = {{Method::Knn, 1.0}, {Method::NaiveBayes, 1.0}};
	auto ens = make_ranker(cfg, p.ties);
	LearnerConfig knn_cfg;
	knn_cfg.method = Method::Knn;
	auto knn = make_ranker(knn_cfg, p.ties);
	auto nb = make_ranker(LearnerConfig{}, p.ties);
	for(const auto* name : {"A", "B"})
	{
		ens->train(p.datum(name));
		knn->train(p.datum(name));
		nb->train(p.datum(name));
	}
	std::vector<ConstantId> cands = {p.id("q"), p.id("p"), p.id("A"), p.id("B")};
	const auto& q = p.datum("C").features;
	std::vector<RankedList> members = {knn->rank(q, cands, 2), nb->rank(q, cands, 2)};
	std::vector<double> w = {1.0, 1.0};
	CHECK(ens->rank(q, cands, 2) == harmonic_combine(members, w, cands, 2, p.ties));
	CHECK(ens->order(q, cands, 2).size() == cands.size());
}
