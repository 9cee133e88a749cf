#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace psel {

/// Interned constant name. Values are dense indices in first-appearance order.
enum class ConstantId : std::uint32_t {};

constexpr std::uint32_t to_index(ConstantId id) { return static_cast<std::uint32_t>(id); }
constexpr ConstantId constant_id(std::size_t index) { return static_cast<ConstantId>(index); }

/// Sorted, duplicate-free set of constants.
using ConstantSet = std::vector<ConstantId>;

/// Sorts and deduplicates in place.
void normalize(ConstantSet& set);

bool contains(const ConstantSet& set, ConstantId id);

ConstantSet set_intersection(const ConstantSet& a, const ConstantSet& b);

class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Raw dump syntax error, located by byte offset.
class ParseError : public Error
{
public:
	enum class Kind { UnterminatedString, UnbalancedParen, UnexpectedToken };

	ParseError(Kind kind, std::size_t offset, const std::string& detail);

	Kind kind() const { return kind_; }
	std::size_t offset() const { return offset_; }

private:
	Kind kind_;
	std::size_t offset_;
};

const char* to_string(ParseError::Kind kind);

/// Canonical TSV error, located by 1-based line number.
class CorpusError : public Error
{
public:
	enum class Kind { DuplicateFactName, MalformedLine };

	CorpusError(Kind kind, std::size_t line, const std::string& detail);

	Kind kind() const { return kind_; }
	std::size_t line() const { return line_; }

private:
	Kind kind_;
	std::size_t line_;
};

class CycleDetected : public Error
{
public:
	explicit CycleDetected(std::vector<std::string> cycle);

	/// Fact names along the cycle; each one references the next, the last references the first.
	const std::vector<std::string>& cycle() const { return cycle_; }

private:
	std::vector<std::string> cycle_;
};

class ConfigError : public Error
{
public:
	using Error::Error;
};

/// Invalid synthetic-corpus parameters.
class ParamError : public ConfigError
{
public:
	using ConfigError::ConfigError;
};

/// Metric precondition violations (EmptyDeps, DegenerateClasses).
class MetricError : public Error
{
public:
	enum class Kind { EmptyDeps, DegenerateClasses };

	MetricError(Kind kind, const std::string& detail);

	Kind kind() const { return kind_; }

private:
	Kind kind_;
};

} // namespace psel
