#pragma once

#include <psel/knn.hpp>
#include <psel/mepo.hpp>
#include <psel/naive_bayes.hpp>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace psel {

enum class Method { Knn, NaiveBayes, Mepo, Ensemble };

std::string_view to_string(Method method);

/// Accepts knn, nbayes, mepo, ensemble. Throws ConfigError otherwise.
Method parse_method(std::string_view text);

struct EnsembleMember
{
	Method method;
	double weight;

	friend bool operator==(const EnsembleMember&, const EnsembleMember&) = default;
};

/// Parses `knn:1.0,nbayes:1.0,mepo:1.0`. A member without `:weight` gets weight 1.
/// Throws ConfigError on unknown or nested methods, bad weights, or fewer than two members.
std::vector<EnsembleMember> parse_ensemble(std::string_view text);

std::string format_ensemble(const std::vector<EnsembleMember>& members);

struct LearnerConfig
{
	Method method = Method::NaiveBayes;
	KnnConfig knn;
	NbConfig nb;
	MepoConfig mepo;
	std::vector<EnsembleMember> ensemble = {
		{Method::Knn, 1.0}, {Method::NaiveBayes, 1.0}, {Method::Mepo, 1.0}};

	void validate() const;
};

std::unique_ptr<Ranker> make_ranker(const LearnerConfig& cfg, const TieOrder& ties = {});

} // namespace psel
