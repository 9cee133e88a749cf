#include <psel/corpus.hpp>

namespace psel {

namespace {

bool is_ws(char c)
{
	return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class RawLexer
{
public:
	explicit RawLexer(std::string_view text) : text_(text) {}

	void skip_ws()
	{
		while(pos_ < text_.size() && is_ws(text_[pos_]))
			++pos_;
	}

	bool at_end() const { return pos_ >= text_.size(); }
	char peek() const { return text_[pos_]; }
	std::size_t pos() const { return pos_; }
	void advance() { ++pos_; }

	// Expects the cursor on an opening quote.
	std::string quoted()
	{
		std::size_t open = pos_++;
		auto close = text_.find('"', pos_);
		if(close == std::string_view::npos)
			throw ParseError(ParseError::Kind::UnterminatedString, open, "end of input inside quoted name");
		std::string value(text_.substr(pos_, close - pos_));
		pos_ = close + 1;
		return value;
	}

	[[noreturn]] void unexpected(const char* expected) const
	{
		std::string found = at_end() ? std::string("end of input") : "'" + std::string(1, text_[pos_]) + "'";
		throw ParseError(ParseError::Kind::UnexpectedToken, pos_, std::string("expected ") + expected + ", found " + found);
	}

private:
	std::string_view text_;
	std::size_t pos_ = 0;
};

} // namespace

std::vector<RawRecord> parse_raw_deps(std::string_view text)
{
	std::vector<RawRecord> records;
	RawLexer lex(text);
	for(;;)
	{
		lex.skip_ws();
		if(lex.at_end())
			break;

		char c = lex.peek();
		if(c == '(' || c == ')')
			throw ParseError(ParseError::Kind::UnbalancedParen, lex.pos(), "dependency list without a record name");
		if(c != '"')
			lex.unexpected("'\"'");

		RawRecord record;
		record.name = lex.quoted();

		lex.skip_ws();
		if(lex.at_end() || lex.peek() != '(')
		{
			if(!lex.at_end() && lex.peek() == ')')
				throw ParseError(ParseError::Kind::UnbalancedParen, lex.pos(), "')' without matching '('");
			lex.unexpected("'('");
		}
		std::size_t open = lex.pos();
		lex.advance();

		for(;;)
		{
			lex.skip_ws();
			if(lex.at_end())
				throw ParseError(ParseError::Kind::UnbalancedParen, open, "'(' is never closed");
			c = lex.peek();
			if(c == ')')
			{
				lex.advance();
				break;
			}
			if(c == '(')
				throw ParseError(ParseError::Kind::UnbalancedParen, lex.pos(), "nested '(' in dependency list");
			if(c != '"')
				lex.unexpected("'\"' or ')'");
			record.deps.push_back(lex.quoted());
		}
		records.push_back(std::move(record));
	}
	return records;
}

} // namespace psel
