#include <psel/learner_config.hpp>

#include <psel/ensemble.hpp>

#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace psel {

namespace {

std::string_view trim(std::string_view s)
{
	while(!s.empty() && (s.front() == ' ' || s.front() == '\t'))
		s.remove_prefix(1);
	while(!s.empty() && (s.back() == ' ' || s.back() == '\t'))
		s.remove_suffix(1);
	return s;
}

std::unique_ptr<Ranker> make_single(Method method, const LearnerConfig& cfg, const TieOrder& ties)
{
	switch(method)
	{
	case Method::Knn: return std::make_unique<KnnRanker>(cfg.knn, ties);
	case Method::NaiveBayes: return std::make_unique<NaiveBayesRanker>(cfg.nb, ties);
	case Method::Mepo: return std::make_unique<MepoRanker>(cfg.mepo, ties);
	case Method::Ensemble: break;
	}
	throw ConfigError("ensemble members cannot be ensembles");
}

} // namespace

std::string_view to_string(Method method)
{
	switch(method)
	{
	case Method::Knn: return "knn";
	case Method::NaiveBayes: return "nbayes";
	case Method::Mepo: return "mepo";
	case Method::Ensemble: return "ensemble";
	}
	return "?";
}

Method parse_method(std::string_view text)
{
	for(auto m : {Method::Knn, Method::NaiveBayes, Method::Mepo, Method::Ensemble})
		if(text == to_string(m))
			return m;
	throw ConfigError(fmt::format("unknown method '{}' (expected knn, nbayes, mepo or ensemble)", text));
}

std::vector<EnsembleMember> parse_ensemble(std::string_view text)
{
	std::vector<EnsembleMember> members;
	while(!text.empty())
	{
		auto comma = text.find(',');
		auto item = trim(text.substr(0, comma));
		text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
		if(item.empty())
			throw ConfigError("empty ensemble member");

		auto colon = item.find(':');
		EnsembleMember member{parse_method(trim(item.substr(0, colon))), 1.0};
		if(member.method == Method::Ensemble)
			throw ConfigError("ensemble members cannot be ensembles");
		if(colon != std::string_view::npos)
		{
			auto w = trim(item.substr(colon + 1));
			auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), member.weight);
			if(ec != std::errc{} || ptr != w.data() + w.size())
				throw ConfigError(fmt::format("bad ensemble weight '{}'", w));
		}
		if(!(member.weight > 0.0) || !std::isfinite(member.weight))
			throw ConfigError(fmt::format("ensemble weight for {} must be finite and > 0", to_string(member.method)));
		members.push_back(member);
	}
	if(members.size() < 2)
		throw ConfigError("ensemble needs at least two members");
	return members;
}

std::string format_ensemble(const std::vector<EnsembleMember>& members)
{
	std::string out;
	for(const auto& m : members)
	{
		if(!out.empty())
			out += ',';
		out += fmt::format("{}:{}", to_string(m.method), m.weight);
	}
	return out;
}

void LearnerConfig::validate() const
{
	knn.validate();
	nb.validate();
	mepo.validate();
	if(method == Method::Ensemble)
	{
		if(ensemble.size() < 2)
			throw ConfigError("ensemble needs at least two members");
		for(const auto& m : ensemble)
		{
			if(m.method == Method::Ensemble)
				throw ConfigError("ensemble members cannot be ensembles");
			if(!(m.weight > 0.0) || !std::isfinite(m.weight))
				throw ConfigError("ensemble weights must be finite and > 0");
		}
	}
}

std::unique_ptr<Ranker> make_ranker(const LearnerConfig& cfg, const TieOrder& ties)
{
	cfg.validate();
	if(cfg.method != Method::Ensemble)
		return make_single(cfg.method, cfg, ties);

	std::vector<std::unique_ptr<Ranker>> members;
	std::vector<double> weights;
	for(const auto& m : cfg.ensemble)
	{
		members.push_back(make_single(m.method, cfg, ties));
		weights.push_back(m.weight);
	}
	return std::make_unique<EnsembleRanker>(std::move(members), std::move(weights), ties);
}

} // namespace psel
