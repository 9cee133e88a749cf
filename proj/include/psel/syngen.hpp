#pragma once

#include <psel/corpus.hpp>

#include <cstdint>
#include <random>

namespace psel {

/// Synthetic corpus parameters. Each latent topic owns a contiguous block of the
/// features and of the premise constants; inside a topic every feature is tied to
/// one premise. A fact draws a topic and features from its block; each dependency
/// is, with probability 1 - noise, the premise tied to one of those features, and
/// otherwise a uniformly drawn premise.
struct SynParams
{
	std::size_t n_facts = 500;
	std::size_t n_features = 50;
	std::size_t n_premise_constants = 250;
	std::size_t topics = 5;
	double deps_per_fact = 8.0;
	double features_per_fact = 6.0;
	double noise = 0.0;          // probability that a dependency ignores the topic
	double fact_dep_prob = 0.05; // probability that a fact also uses an earlier fact
	std::uint64_t seed = 42;

	/// Throws ParamError on counts < 1, fewer features or premises than topics,
	/// means < 1, or probabilities outside [0, 1].
	void validate() const;
};

/// Fixed generator so that corpora are identical across platforms: std::mt19937_64
/// (fully specified by the standard) with our own integer and Bernoulli sampling
/// instead of the implementation-defined std distributions.
class SynRng
{
public:
	explicit SynRng(std::uint64_t seed) : engine_(seed) {}

	/// Uniform in [0, n), n >= 1, by rejection.
	std::uint64_t below(std::uint64_t n);
	/// Uniform in [0, 1) with 53 bits.
	double unit();
	bool chance(double p) { return unit() < p; }

private:
	std::mt19937_64 engine_;
};

/// Generated facts are named syn.T<i>, features syn.f<j>, premise constants syn.p<j>.
/// Features only appear in statements, premises and fact names only in proofs, and
/// facts only reference earlier facts, so the corpus is acyclic in declaration order.
Corpus generate(const SynParams& params);

} // namespace psel
