#include <psel/types.hpp>

#include <algorithm>
#include <iterator>

#include <fmt/format.h>

namespace psel {

void normalize(ConstantSet& set)
{
	std::sort(set.begin(), set.end());
	set.erase(std::unique(set.begin(), set.end()), set.end());
}

bool contains(const ConstantSet& set, ConstantId id)
{
	return std::binary_search(set.begin(), set.end(), id);
}

ConstantSet set_intersection(const ConstantSet& a, const ConstantSet& b)
{
	ConstantSet out;
	std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return out;
}

const char* to_string(ParseError::Kind kind)
{
	switch(kind)
	{
	case ParseError::Kind::UnterminatedString: return "UnterminatedString";
	case ParseError::Kind::UnbalancedParen: return "UnbalancedParen";
	case ParseError::Kind::UnexpectedToken: return "UnexpectedToken";
	}
	return "?";
}

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& detail)
	: Error(fmt::format("{} at byte offset {}: {}", to_string(kind), offset, detail))
	, kind_(kind)
	, offset_(offset)
{}

namespace {

const char* corpus_kind_name(CorpusError::Kind kind)
{
	return kind == CorpusError::Kind::DuplicateFactName ? "DuplicateFactName" : "MalformedLine";
}

std::string cycle_message(const std::vector<std::string>& cycle)
{
	std::string msg = "CycleDetected:";
	for(const auto& name : cycle)
		msg += " " + name + " ->";
	if(!cycle.empty())
		msg += " " + cycle.front();
	return msg;
}

} // namespace

CorpusError::CorpusError(Kind kind, std::size_t line, const std::string& detail)
	: Error(fmt::format("{} at line {}: {}", corpus_kind_name(kind), line, detail))
	, kind_(kind)
	, line_(line)
{}

CycleDetected::CycleDetected(std::vector<std::string> cycle)
	: Error(cycle_message(cycle))
	, cycle_(std::move(cycle))
{}

MetricError::MetricError(Kind kind, const std::string& detail)
	: Error(fmt::format("{}: {}", kind == Kind::EmptyDeps ? "EmptyDeps" : "DegenerateClasses", detail))
	, kind_(kind)
{}

} // namespace psel
